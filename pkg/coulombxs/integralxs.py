# coulombxs/integralxs.py
"""
Total and transport cross-sections at a finite distance r.

With w(z) = e^{∓πξ} |U(1±iξ,1,iz)|² (upper sign attraction),

    σ_tot = (2π r ξ² / k) ∫₀^{2kr} w dz ≈ (2π r / k) ξ² I±(ξ),   I±(ξ) = ∫₀^∞ w dz
    σ_tr  = (2π ξ² / k²) ∫₀^{2kr} w z dz = (2π ξ² / k²) σ_tr′.

For large z, z² w = |Σ_n e_n z^{-n}|² = Σ_m P_m z^{-m} with e_n = i^n ((1±iξ)_n)²/n!,
which supplies the analytic tail beyond z_cut for both integrals.
"""
import logging
import math
from functools import lru_cache
from typing import List, Optional, Tuple, Union

import numpy as np

from coulombxs.core.config import get_settings
from coulombxs.core.errors import DomainError
from coulombxs.quadrature import QuadratureResult, integrate_adaptive
from coulombxs.schemas import (
    CoulombInteraction,
    CrossSectionValue,
    Sign,
    TransportDecomposition,
    UniversalTotals,
    XsMethod,
)
from coulombxs.specfun import asymptotic_coefficients, coulomb_u

logger = logging.getLogger(__name__)

TAIL_ORDER = 12
SignLike = Union[Sign, str]


def _check_xi(xi: float) -> None:
    xi_max = get_settings().xi_max
    if not 0.0 < xi <= xi_max:
        raise DomainError(f"xi must lie in (0, {xi_max}]", xi=xi)


def default_z_cut(xi: float) -> float:
    return max(1e3, 50.0 * xi ** 2)


# ==========================================
# 1. INTEGRANDS AND TAIL COEFFICIENTS
# ==========================================
def weighted_modulus(xi: float, sign: SignLike, z: np.ndarray) -> np.ndarray:
    """w(z) = e^{∓πξ}|U(1±iξ,1,iz)|², tending to 1/z²."""
    sign = Sign(sign)
    u = coulomb_u(xi, sign, z)
    return math.exp(-sign.s * math.pi * xi) * np.abs(u) ** 2


def tail_coefficients(xi: float, sign: SignLike, order: int = TAIL_ORDER) -> np.ndarray:
    """P_m, m = 0..order, of z² w(z) = Σ P_m z^{-m}; P_0 = 1 and P_1 = -4(±ξ)."""
    sign = Sign(sign)
    d = asymptotic_coefficients(1.0 + 1j * sign.s * xi, order)
    e = d * (1j ** np.arange(order + 1))
    p = np.array([np.sum(e[: m + 1] * np.conj(e[m::-1])).real for m in range(order + 1)])
    return p


def _breakpoints(upper: float) -> List[float]:
    points = [p for p in (0.5, 2.0, 8.0, 30.0) if p < upper]
    edge = 100.0
    while edge < upper:
        points.append(edge)
        edge *= 4.0
    return points


def _integrate_w(xi: float, sign: Sign, lower: float, upper: float, power: int,
                 subtract_asymptote: bool = False) -> QuadratureResult:
    """∫ w z^power dz on [lower, upper], optionally minus the 1/z^{2-power} asymptote."""
    def integrand(z: np.ndarray) -> np.ndarray:
        w = weighted_modulus(xi, sign, z)
        if subtract_asymptote:
            return (z * z * w - 1.0) / z ** (2 - power)
        return w * z ** power

    points = [p for p in _breakpoints(upper) if p > lower]
    return integrate_adaptive(integrand, lower, upper, points=points)


# ==========================================
# 2. UNIVERSAL TOTAL I±(ξ)
# ==========================================
@lru_cache(maxsize=256)
def _universal_total(xi: float, sign: Sign, z_cut: float) -> Tuple[float, float]:
    head = _integrate_w(xi, sign, 0.0, z_cut, power=0)
    p = tail_coefficients(xi, sign)
    m = np.arange(p.size)
    terms = p * z_cut ** (-1.0 - m) / (1.0 + m)
    tail = float(np.sum(terms))
    err = head.abs_error_estimate + abs(float(terms[-1]))
    logger.debug(f"I({xi}, {sign.value}): head={head.value:.12g}, tail={tail:.6g}, z_cut={z_cut:g}")
    return float(head.value) + tail, err


def universal_total(xi: float, sign: SignLike, z_cut: Optional[float] = None) -> float:
    """I±(ξ) = e^{∓πξ}∫₀^∞ |U(1±iξ,1,iz)|² dz, quadrature up to z_cut and the 1/z² series beyond."""
    _check_xi(xi)
    sign = Sign(sign)
    return _universal_total(float(xi), sign, float(z_cut or default_z_cut(xi)))[0]


def universal_totals(xi: float, z_cut: Optional[float] = None) -> UniversalTotals:
    _check_xi(xi)
    z_cut = float(z_cut or default_z_cut(xi))
    attract, err_a = _universal_total(float(xi), Sign.ATTRACT, z_cut)
    repel, err_r = _universal_total(float(xi), Sign.REPEL, z_cut)
    return UniversalTotals(xi=xi, I_attract=attract, I_repel=repel, err=err_a + err_r)


def total_remainder(ci: CoulombInteraction) -> float:
    """πξ²/k², the r-independent piece dropped by the (2πr/k)ξ²I± form."""
    return math.pi * ci.xi ** 2 / ci.k ** 2


def _auto_method(kr: float, method: Optional[XsMethod]) -> XsMethod:
    if method is not None:
        return XsMethod(method)
    return XsMethod.DIRECT if kr < get_settings().kr_warn else XsMethod.REGULARIZED


def sigma_total(ci: CoulombInteraction, r: float, method: Optional[XsMethod] = None) -> CrossSectionValue:
    """
    Regularized: (2πr/k)ξ²I±(ξ), linear in r. Direct: the finite integral over
    [0, 2kr], which differs from the regularized value by about πξ²/k².
    """
    if not r > 0:
        raise DomainError("r must be positive", r=r)
    kr = ci.k * r
    chosen = _auto_method(kr, method)
    if chosen is XsMethod.DIRECT:
        _check_xi(ci.xi)
        bracket = _integrate_w(ci.xi, ci.sign, 0.0, 2.0 * kr, power=0).value
    else:
        bracket = universal_total(ci.xi, ci.sign)
    value = 2.0 * math.pi * r / ci.k * ci.xi ** 2 * bracket
    return CrossSectionValue(value=value, r_used=r, method=chosen)


# ==========================================
# 3. TRANSPORT CROSS-SECTION
# ==========================================
@lru_cache(maxsize=256)
def _transport_decomposition(xi: float, sign: Sign, z_cut: float) -> TransportDecomposition:
    weight = math.exp(sign.s * math.pi * xi)
    head = _integrate_w(xi, sign, 0.0, 1.0, power=1)
    near_tail = _integrate_w(xi, sign, 1.0, z_cut, power=1, subtract_asymptote=True)

    p = tail_coefficients(xi, sign)
    m = np.arange(1, p.size)
    terms = p[1:] * z_cut ** (-1.0 * m) / m
    far_tail = float(np.sum(terms))

    # w is already scaled by e^{∓πξ}; the stored pieces carry |U|² itself
    return TransportDecomposition(
        xi=xi,
        sign=sign,
        head=weight * float(head.value),
        tail_reg=weight * (float(near_tail.value) + far_tail),
        log_coeff=weight,
        err=weight * (head.abs_error_estimate + near_tail.abs_error_estimate + abs(float(terms[-1]))),
    )


def transport_decomposition(xi: float, sign: SignLike, z_cut: Optional[float] = None) -> TransportDecomposition:
    """
    head = ∫₀¹|U|² z dz, tail_reg = ∫₁^∞ [|U|² − e^{±πξ}/z²] z dz, log_coeff = e^{±πξ},
    so that σ_tr′(kr) ≈ e^{∓πξ}[head + tail_reg + log_coeff·ln 2kr].
    """
    _check_xi(xi)
    sign = Sign(sign)
    return _transport_decomposition(float(xi), sign, float(z_cut or default_z_cut(xi)))


def universal_transport(xi: float, sign: SignLike) -> float:
    """I^tr±(ξ) = lim k²σ_tr − 2πξ² ln(2kr)."""
    return transport_decomposition(xi, sign).universal()


def sigma_tr_prime(xi: float, sign: SignLike, kr: float, method: XsMethod = XsMethod.DIRECT) -> float:
    """σ_tr′ = e^{∓πξ}∫₀^{2kr}|U(1±iξ,1,iz)|² z dz, so that σ_tr = 2π(ξ²/k²)σ_tr′."""
    if not kr > 0:
        raise DomainError("kr must be positive", kr=kr)
    _check_xi(xi)
    sign = Sign(sign)
    if XsMethod(method) is XsMethod.REGULARIZED:
        return transport_decomposition(xi, sign).bracket(kr)
    return float(_integrate_w(xi, sign, 0.0, 2.0 * kr, power=1).value)


def sigma_transport(ci: CoulombInteraction, r: float, method: Optional[XsMethod] = None) -> CrossSectionValue:
    """σ_tr = 2π(ξ²/k²)σ_tr′; direct below the k r warning threshold, regularized above."""
    if not r > 0:
        raise DomainError("r must be positive", r=r)
    kr = ci.k * r
    chosen = _auto_method(kr, method)
    prime = sigma_tr_prime(ci.xi, ci.sign, kr, chosen)
    value = 2.0 * math.pi * ci.xi ** 2 / ci.k ** 2 * prime
    return CrossSectionValue(value=value, r_used=r, method=chosen)
