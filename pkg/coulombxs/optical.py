# coulombxs/optical.py
"""
Scattering-operator quantities: the forward amplitude A, the kernel f̂ and
the finite-r flux balance (the Coulomb form of the optical theorem).
"""
import logging
import math
from typing import Union

import numpy as np

from coulombxs.core.errors import CoincidentDirections, DomainError
from coulombxs.integralxs import universal_total
from coulombxs.quadrature import integrate_adaptive, integrate_oscillatory, integrate_panels
from coulombxs.schemas import ComplexValue, CoulombInteraction, FluxBalance, Sign
from coulombxs.specfun import complex_digamma, complex_gamma, coulomb_f, reciprocal_gamma, tricomi_u

logger = logging.getLogger(__name__)

SignLike = Union[Sign, str]
ABEL_ETAS = (0.04, 0.02, 0.01)
AMPLITUDE_METHODS = ("closed", "contour", "acceleration", "abel")


# ==========================================
# 1. FORWARD AMPLITUDE
# ==========================================
def _amplitude_closed(xi: float, sign: Sign) -> complex:
    return math.exp(-sign.s * math.pi * xi / 2.0) * reciprocal_gamma(1.0 + 1j * sign.s * xi)


def _amplitude_contour(xi: float, sign: Sign) -> complex:
    """Rotated path z = -is: A = e^{∓πξ/2}∫₀^∞ e^{-s} U(±iξ,1,s) ds."""
    a = 1j * sign.s * xi

    def integrand(s: np.ndarray) -> np.ndarray:
        return np.exp(-s) * tricomi_u(a, s.astype(complex))

    result = integrate_adaptive(integrand, 0.0, 60.0, points=[0.5, 2.0, 8.0, 30.0])
    return math.exp(-sign.s * math.pi * xi / 2.0) * complex(result.value)


def _amplitude_acceleration(xi: float, sign: Sign) -> complex:
    """A = i e^{∓πξ/2}∫₀^∞ e^{-iz} U(±iξ,1,iz) dz by averaged half-period sums."""
    a = 1j * sign.s * xi

    def envelope(z: np.ndarray) -> np.ndarray:
        return tricomi_u(a, 1j * z)

    result = integrate_oscillatory(envelope, 1.0, a=0.0, min_terms=12)
    # the integrand is log-singular at z = 0; the first half-period is refined adaptively
    return 1j * math.exp(-sign.s * math.pi * xi / 2.0) * complex(result.value)


def _amplitude_abel(xi: float, sign: Sign, etas=ABEL_ETAS) -> complex:
    """Damping e^{-ηz} at several η, Richardson-extrapolated to η → 0."""
    a = 1j * sign.s * xi
    values = []
    for eta in etas:
        def integrand(z: np.ndarray, eta=eta) -> np.ndarray:
            return np.exp(-(1j + eta) * z) * tricomi_u(a, 1j * z)

        upper = 40.0 / eta
        points = list(np.arange(math.pi, upper, math.pi))
        part = integrate_adaptive(integrand, 0.0, upper, points=points)
        values.append(1j * math.exp(-sign.s * math.pi * xi / 2.0) * complex(part.value))

    # η halves at each step; damping error is analytic in η
    first = [2.0 * values[i + 1] - values[i] for i in range(len(values) - 1)]
    if len(first) == 1:
        return first[0]
    return (4.0 * first[1] - first[0]) / 3.0


def forward_amplitude(xi: float, sign: SignLike, method: str = "closed") -> ComplexValue:
    """
    A = i e^{∓πξ/2}∫₀^∞ e^{-iz} U(±iξ,1,iz) dz = e^{∓πξ/2}/Γ(1±iξ).
    The integral converges only conditionally; "acceleration" averages
    half-period sums, "abel" damps it, "contour" rotates the path.
    """
    sign = Sign(sign)
    if not 0.0 < xi <= 5.0:
        raise DomainError("forward_amplitude needs 0 < xi <= 5", xi=xi)
    if method == "closed":
        value = _amplitude_closed(xi, sign)
    elif method == "contour":
        value = _amplitude_contour(xi, sign)
    elif method == "acceleration":
        value = _amplitude_acceleration(xi, sign)
    elif method == "abel":
        value = _amplitude_abel(xi, sign)
    else:
        raise DomainError(f"Unknown amplitude method '{method}'", allowed=AMPLITUDE_METHODS)
    logger.debug(f"A({xi}, {sign.value}, {method}) = {value}")
    return ComplexValue.from_complex(value)


# ==========================================
# 2. SCATTERING KERNEL
# ==========================================
def _kernel_values(xi: float, sign: Sign, kr: float, one_minus_cos: np.ndarray) -> np.ndarray:
    a = 1j * sign.s * xi
    prefactor = (-1j * kr / (2.0 * math.pi) * complex_gamma(1.0 - a) * reciprocal_gamma(a)
                 * math.exp(-sign.s * math.pi * xi / 2.0))
    return prefactor * tricomi_u(1.0 - a, -1j * kr * one_minus_cos)


def scattering_kernel(xi: float, sign: SignLike, kr: float, cos_theta: float) -> ComplexValue:
    """f̂ = -(i kr Γ(1∓iξ)/(2π Γ(±iξ))) e^{∓πξ/2} U[1∓iξ, 1, -ikr(1 - cos Θ)]."""
    sign = Sign(sign)
    if not (xi > 0 and kr > 0):
        raise DomainError("scattering_kernel needs xi > 0 and kr > 0", xi=xi, kr=kr)
    if cos_theta == 1.0:
        raise CoincidentDirections("Kernel is singular for coincident directions", cos_theta=cos_theta)
    if not -1.0 <= cos_theta < 1.0:
        raise DomainError("cos_theta must lie in [-1, 1)", cos_theta=cos_theta)
    value = _kernel_values(xi, sign, kr, np.array([1.0 - cos_theta]))[0]
    return ComplexValue.from_complex(value)


def kernel_total(xi: float, sign: SignLike, kr: float) -> float:
    """∫|f̂|² dΩ′, integrated over v = 1 - cos Θ ∈ (0, 2]."""
    sign = Sign(sign)

    def integrand(v: np.ndarray) -> np.ndarray:
        return 2.0 * math.pi * np.abs(_kernel_values(xi, sign, kr, v)) ** 2

    points = [p / kr for p in (0.5, 2.0, 8.0, 30.0, 100.0, 1e3, 1e4, 1e5, 1e6) if p / kr < 2.0]
    return float(integrate_adaptive(integrand, 0.0, 2.0, points=points).value)


# ==========================================
# 3. FLUX BALANCE
# ==========================================
def _flux_pieces(xi: float, sign: Sign, kr: float):
    a = 1j * sign.s * xi
    upper = 2.0 * kr
    # breakpoints every 2π keep each panel within one interference period
    edges = [0.0] + list(np.arange(2.0 * math.pi, upper, 2.0 * math.pi)) + [upper]

    def modulus(z: np.ndarray) -> np.ndarray:
        return np.abs(coulomb_f(a, z)) ** 2

    def weighted(z: np.ndarray) -> np.ndarray:
        return modulus(z) * z

    def recursion(z: np.ndarray) -> np.ndarray:
        f = coulomb_f(a, z)
        shifted = coulomb_f(1.0 + a, z)
        return np.abs(f) ** 2 - (np.conj(f) * shifted).real

    j1 = integrate_panels(modulus, edges).value
    j2 = integrate_panels(weighted, edges).value / kr
    j3 = sign.s * xi / kr * integrate_panels(recursion, edges).value
    return float(j1), float(j2), float(j3)


def flux_balance(xi: float, kr: float, sign: SignLike = Sign.ATTRACT) -> FluxBalance:
    """
    J1 = ∫₀^{2kr}|F(iξ,1,iz)|² dz against J2 + J3, numerically and in closed
    large-kr form. Repulsion is experimental: the closed forms are derived
    for attraction only.

    The closed forms carry L - 3/2 in J2 and 2ξC(1 + ξ/kr) in J3, as the
    expansion of the integrals gives them; these are the terms that make
    J1 - J2 - J3 vanish through O(1/kr).
    """
    sign = Sign(sign)
    if not 0.0 < xi <= 5.0:
        raise DomainError("flux_balance needs 0 < xi <= 5", xi=xi)
    if kr < 1e2:
        raise DomainError("flux_balance needs kr >= 100", kr=kr)
    if sign is Sign.REPEL:
        logger.warning("Flux balance for repulsion is experimental; asymptotic forms assume attraction")

    j1, j2, j3 = _flux_pieces(xi, sign, kr)

    c = math.exp(-math.pi * xi) * math.sinh(math.pi * xi) / (math.pi * xi)
    log_2kr = math.log(2.0 * kr)
    phase = complex_gamma(1.0 + 1j * xi) * reciprocal_gamma(-1j * xi)
    oscillating = (phase * np.exp(-2j * kr - 2j * xi * log_2kr)).real
    psi = complex_digamma(1.0 + 1j * xi).real

    j1_asym = c * (2.0 * kr + 2.0 * xi - (xi ** 2 + oscillating) / kr)
    j2_asym = c * (2.0 * kr + (2.0 / kr) * (xi ** 2 * (log_2kr - 1.5 - psi) - oscillating))
    j3_asym = (2.0 * xi * c * (1.0 + xi / kr)
               - (2.0 * c / kr) * (xi ** 2 * (log_2kr - psi) - 0.5 * oscillating))

    balance = FluxBalance(
        xi=xi,
        kr=kr,
        J1_num=j1,
        J2_num=j2,
        J3_num=j3,
        J1_asym=j1_asym,
        J2_asym=j2_asym,
        J3_asym=j3_asym,
        oscillating_term=float(oscillating),
        residual=abs(j1 - (j2_asym + j3_asym)) / j1,
        conservation_residual=abs(j1 - j2 - j3) / j1,
    )
    logger.info(f"Flux balance at xi={xi}, kr={kr:g}: residual={balance.residual:.3e}")
    return balance


def flux_ratio(ci: CoulombInteraction, r: float) -> float:
    """σ_tot/r² = (2π/kr) ξ² I±(ξ)."""
    if not r > 0:
        raise DomainError("r must be positive", r=r)
    return 2.0 * math.pi / (ci.k * r) * ci.xi ** 2 * universal_total(ci.xi, ci.sign)
