# coulombxs/specfun.py
"""
Complex special functions for the Coulomb problem: Γ, ψ, Kummer M = F(a,b,t),
Tricomi U(a,1,t), the pair U1/U2 that splits F into outgoing and plane-wave
parts, and the kernels G1/G2.

U(a,1,t) is evaluated in three regimes keyed on |t|: the logarithmic
near-zone series, the Laplace-type integral
    U(a,1,t) = t^{-a} G(a,t) / Γ(a),  G(a,t) = ∫₀^∞ e^{-w} w^{a-1} (1 + w/t)^{-a} dw
taken along the real w axis (the rotation w = t·u of the textbook form), and
the large-|t| expansion U ~ t^{-a} Σ ((a)_n)² / n! (-t)^{-n} with optimal
truncation. The same integral and expansion, with the exponent b-a-1, give
U(a,b,t) for the connection formula that carries Kummer M to large |t|.
Scalars in, Python complex out; arrays in, numpy arrays out.
"""
import cmath
import logging
import math
from typing import Optional, Tuple, Union

import numpy as np

from coulombxs.core.config import get_settings
from coulombxs.core.errors import BranchError, DomainError, NoConvergence, OverflowGuard, PoleError
from coulombxs.quadrature import GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES, integrate_adaptive
from coulombxs.schemas import EvalRegime, QuadratureConfig, RegimeTag, Sign

logger = logging.getLogger(__name__)

ComplexLike = Union[complex, float, np.ndarray]

EULER_GAMMA = 0.57721566490153286060651209008240243
POLE_TOL = 1e-14
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)
_STIRLING_MIN = 17.0

# B_2 .. B_20
_BERNOULLI = (
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0,
)


def _is_pole(w: complex) -> bool:
    nearest = round(w.real)
    return nearest <= 0 and abs(w.imag) <= POLE_TOL and abs(w.real - nearest) <= POLE_TOL


def _check_pole(w: complex, name: str) -> None:
    if _is_pole(w):
        raise PoleError(f"{name} is singular at nonpositive integers", w=w)


def _finite(value: complex, name: str, **context) -> complex:
    if not cmath.isfinite(value):
        raise OverflowGuard(f"{name} overflowed", **context)
    return value


def _shift_up(w: complex, threshold: float) -> Tuple[complex, int]:
    n = 0
    while abs(w + n) < threshold:
        n += 1
    return w + n, n


# ==========================================
# 1. GAMMA AND DIGAMMA
# ==========================================
def log_gamma(w: ComplexLike) -> complex:
    """A logarithm of Γ(w) (equal to ln Γ up to multiples of 2πi)."""
    w = complex(w)
    _check_pole(w, "log_gamma")
    if w.real < 0.5:
        return _LOG_PI - cmath.log(cmath.sin(math.pi * w)) - log_gamma(1.0 - w)

    shifted, n = _shift_up(w, _STIRLING_MIN)
    inv = 1.0 / shifted
    inv2 = inv * inv
    power = inv
    series = 0j
    for k, bernoulli in enumerate(_BERNOULLI, start=1):
        series += bernoulli / (2 * k * (2 * k - 1)) * power
        power *= inv2
    value = (shifted - 0.5) * cmath.log(shifted) - shifted + _HALF_LOG_2PI + series
    if n:
        value -= sum(cmath.log(w + j) for j in range(n))
    return value


def complex_gamma(w: ComplexLike) -> complex:
    """Γ(w) by reflection and shifted Stirling series."""
    w = complex(w)
    _check_pole(w, "complex_gamma")
    try:
        if w.real < 0.5:
            value = math.pi / (cmath.sin(math.pi * w) * complex_gamma(1.0 - w))
        else:
            value = cmath.exp(log_gamma(w))
    except OverflowError as e:
        raise OverflowGuard("complex_gamma overflowed", w=w) from e
    if w.imag == 0.0:
        value = complex(value.real, 0.0)
    return _finite(value, "complex_gamma", w=w)


def reciprocal_gamma(w: ComplexLike) -> complex:
    """1/Γ(w), entire; exactly zero at the poles of Γ."""
    w = complex(w)
    if _is_pole(w):
        return 0j
    return 1.0 / complex_gamma(w)


def complex_digamma(w: ComplexLike, shift_to: Optional[float] = None) -> complex:
    """ψ(w); `shift_to` sets the modulus the recurrence lifts w to before the asymptotic series."""
    w = complex(w)
    _check_pole(w, "complex_digamma")
    if w.real < 0.5:
        return complex_digamma(1.0 - w, shift_to) - math.pi / cmath.tan(math.pi * w)

    shifted, n = _shift_up(w, shift_to or _STIRLING_MIN)
    inv = 1.0 / shifted
    inv2 = inv * inv
    power = inv2
    series = 0j
    for k, bernoulli in enumerate(_BERNOULLI, start=1):
        series += bernoulli / (2 * k) * power
        power *= inv2
    value = cmath.log(shifted) - 0.5 * inv - series
    if n:
        value -= sum(1.0 / (w + j) for j in range(n))
    if w.imag == 0.0:
        value = complex(value.real, 0.0)
    return _finite(value, "complex_digamma", w=w)


# ==========================================
# 2. TRICOMI U: NEAR-ZONE SERIES
# ==========================================
def _laguerre_u(m: int, t: np.ndarray) -> np.ndarray:
    """U(-m,1,t) = (-1)^m m! L_m(t)."""
    total = np.zeros_like(t)
    coeff = 1.0
    for k in range(m + 1):
        total = total + coeff * (-t) ** k
        coeff = coeff * (m - k) / ((k + 1) ** 2)
    return (-1) ** m * math.factorial(m) * total


def _series_u(c: complex, t: np.ndarray) -> np.ndarray:
    """
    U(c,1,t) = -(1/Γ(c)) Σ_k (c)_k t^k/(k!)² [ln t + ψ(c+k) - 2ψ(1+k)],
    principal ln t (so ln(iz) = ln z + iπ/2).
    """
    if _is_pole(c):
        return _laguerre_u(-int(round(c.real)), t)

    settings = get_settings()
    log_t = np.log(t)
    psi_c = complex_digamma(c)
    psi_one = -EULER_GAMMA
    term = np.ones_like(t)
    total = log_t + (psi_c - 2.0 * psi_one)
    quiet = 0
    for k in range(settings.series_max_terms):
        term = term * (c + k) * t / (k + 1) ** 2
        psi_c += 1.0 / (c + k)
        psi_one += 1.0 / (k + 1)
        contribution = term * (log_t + (psi_c - 2.0 * psi_one))
        total = total + contribution
        if np.all(np.abs(contribution) < settings.series_eps * np.abs(total)):
            quiet += 1
            if quiet >= 3:
                break
        else:
            quiet = 0
    else:
        raise NoConvergence("Near-zone series did not converge", a=c, terms=settings.series_max_terms)
    return -reciprocal_gamma(c) * total


# ==========================================
# 3. TRICOMI U: LARGE-|t| EXPANSION
# ==========================================
def asymptotic_coefficients(c: ComplexLike, order: int) -> np.ndarray:
    """((c)_n)² / n! for n = 0..order."""
    c = complex(c)
    coeffs = np.empty(order + 1, dtype=complex)
    coeffs[0] = 1.0
    for n in range(order):
        coeffs[n + 1] = coeffs[n] * (c + n) ** 2 / (n + 1)
    return coeffs


def _asymptotic_u(c: complex, t: np.ndarray, b: complex = 1.0,
                  max_order: int = 500) -> Tuple[np.ndarray, np.ndarray]:
    """
    U(c,b,t) ~ t^{-c} Σ (c)_n (c-b+1)_n / n! (-t)^{-n}, optimally truncated;
    returns values and the relative size of the last term kept.
    """
    eps = get_settings().series_eps
    inv = 1.0 / t
    term = np.ones_like(t)
    total = np.ones_like(t)
    last = np.ones(t.shape)
    error = np.zeros(t.shape)
    active = np.ones(t.shape, dtype=bool)

    for n in range(max_order):
        if not np.any(active):
            break
        nxt = np.where(active, -term * (c + n) * (c - b + 1.0 + n) / (n + 1) * inv, 0.0)
        size = np.abs(nxt)

        diverging = active & (size > last)
        error[diverging] = last[diverging]
        active &= ~diverging

        total[active] += nxt[active]
        negligible = active & (size <= eps * np.abs(total))
        error[negligible] = size[negligible]
        active &= ~negligible

        term = np.where(active, nxt, 0.0)
        last = np.where(active, size, last)
    error[active] = last[active]

    values = np.exp(-c * np.log(t)) * total
    return values, error / np.abs(total)


# ==========================================
# 4. TRICOMI U: INTEGRAL REPRESENTATION
# ==========================================
_NEAR_PANELS = 50
_FAR_EDGES = (1.0, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0, 24.0, 32.0, 48.0, 64.0)


def _build_rule():
    edges = np.array([2.0 ** (-j) for j in range(_NEAR_PANELS, 0, -1)] + list(_FAR_EDGES))
    lo, hi = edges[:-1], edges[1:]
    center = 0.5 * (lo + hi)[:, None]
    half = 0.5 * (hi - lo)[:, None]
    nodes = center + half * NODES[None, :]
    near = (hi <= 1.0)[:, None] & np.ones((1, NODES.size), dtype=bool)
    for array in (nodes, half, near):
        array.setflags(write=False)
    return nodes, half, near


# Immutable after import
_RULE_NODES, _RULE_HALF, _RULE_NEAR = _build_rule()
_RULE_FLOOR = 2.0 ** (-_NEAR_PANELS)
_BATCH = 64


def _kernel(c: complex, b: complex, t: np.ndarray, w: np.ndarray, near: np.ndarray,
            subtract: bool) -> np.ndarray:
    """w^{c-1} e^{-w} (1 + w/t)^{b-c-1}, with w^{c-1} removed on w < 1 when subtracting."""
    exponent = -w + (b - c - 1.0) * np.log1p(w / t)
    power = np.exp((c - 1.0) * np.log(w))
    if not subtract:
        return power * np.exp(exponent)
    return np.where(near, power * np.expm1(exponent), power * np.exp(exponent))


def _kernel_fixed(c: complex, b: complex, t: np.ndarray, subtract: bool) -> Tuple[np.ndarray, np.ndarray]:
    """Composite Kronrod rule on geometric panels, vectorized over t."""
    values = _kernel(c, b, t[:, None, None], _RULE_NODES[None], _RULE_NEAR[None], subtract)
    kronrod = values @ KRONROD_WEIGHTS
    gauss = values @ GAUSS_WEIGHTS
    mean = 0.5 * kronrod
    resasc = np.abs(values - mean[..., None]) @ KRONROD_WEIGHTS
    half = _RULE_HALF[None, :, 0]

    raw = np.abs(half * (kronrod - gauss))
    resasc = half * resasc
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = np.where(resasc > 0, resasc * np.minimum(1.0, (200.0 * raw / resasc) ** 1.5), raw)

    total = (half * kronrod).sum(axis=1)
    if subtract:
        total += 1.0 / c
    else:
        # leading term of the panel below the finest edge
        total += np.exp(c * math.log(_RULE_FLOOR)) / c
    return total, scaled.sum(axis=1)


def _kernel_adaptive(c: complex, b: complex, t: complex, subtract: bool, cfg: QuadratureConfig) -> complex:
    def near(w: np.ndarray) -> np.ndarray:
        return _kernel(c, b, t, w, np.ones(w.shape, dtype=bool), subtract)

    def far(w: np.ndarray) -> np.ndarray:
        return _kernel(c, b, t, w, np.zeros(w.shape, dtype=bool), False)

    head = integrate_adaptive(near, 0.0, 1.0, cfg).value
    tail = integrate_adaptive(far, 1.0, _FAR_EDGES[-1], cfg, points=_FAR_EDGES[1:-1]).value
    return head + tail + (1.0 / c if subtract else 0.0)


def _laplace_kernel(c: complex, b: complex, t: np.ndarray) -> np.ndarray:
    """G(c,b,t) = ∫₀^∞ e^{-w} w^{c-1} (1 + w/t)^{b-c-1} dw, so that U(c,b,t) = t^{-c} G / Γ(c)."""
    if c.real <= -1.0:
        raise DomainError("Integral representation needs Re(a) > -1", a=c)
    settings = get_settings()
    cfg = QuadratureConfig.from_settings(settings)
    subtract = c.real < 1.0
    kernel = np.empty_like(t)

    for start in range(0, t.size, _BATCH):
        chunk = t[start:start + _BATCH]
        total, err = _kernel_fixed(c, b, chunk, subtract)
        good = err <= 0.1 * settings.rel_tol * np.abs(total)
        kernel[start:start + _BATCH] = total
        for i in np.flatnonzero(~good):
            logger.debug(f"Kernel fallback to adaptive quadrature at t={chunk[i]}, a={c}")
            kernel[start + i] = _kernel_adaptive(c, b, complex(chunk[i]), subtract, cfg)
    return kernel


def _integral_u(c: complex, t: np.ndarray, b: complex = 1.0) -> np.ndarray:
    return np.exp(-c * np.log(t)) * _laplace_kernel(c, b, t) * reciprocal_gamma(c)


# ==========================================
# 5. TRICOMI U: REGIME DISPATCH
# ==========================================
def _regime_plan(regime: Optional[Union[EvalRegime, RegimeTag]]) -> EvalRegime:
    settings = get_settings()
    if isinstance(regime, RegimeTag):
        return EvalRegime(tag=regime, switch_z_low=settings.switch_z_low,
                          switch_z_high=settings.switch_z_high)
    return regime or EvalRegime.from_settings(settings)


def _regime_tags(plan: EvalRegime, t: np.ndarray) -> np.ndarray:
    return np.array([plan.select(float(m)).value for m in np.abs(t)])


def _dispatch_u(c: complex, b: complex, t: np.ndarray, plan: EvalRegime) -> np.ndarray:
    """U(c,b,t) on a flat array; the near-zone series exists for b = 1 only."""
    tags = _regime_tags(plan, t)
    if b != 1:
        tags = np.where(tags == RegimeTag.NEAR_ZONE_SERIES.value, RegimeTag.INTEGRAL_REP.value, tags)

    out = np.empty_like(t)
    series = tags == RegimeTag.NEAR_ZONE_SERIES.value
    asymptotic = tags == RegimeTag.ASYMPTOTIC.value
    integral = tags == RegimeTag.INTEGRAL_REP.value

    if np.any(series):
        out[series] = _series_u(c, t[series])
    if np.any(asymptotic):
        values, rel_error = _asymptotic_u(c, t[asymptotic], b)
        if plan.tag is RegimeTag.ASYMPTOTIC:
            out[asymptotic] = values
        else:
            accepted = rel_error <= get_settings().asymptotic_tol
            idx = np.flatnonzero(asymptotic)
            out[idx[accepted]] = values[accepted]
            integral[idx[~accepted]] = True
            if not np.all(accepted):
                logger.debug(f"Asymptotic expansion rejected at {np.count_nonzero(~accepted)} points, a={c}")
    if np.any(integral):
        out[integral] = _integral_u(c, t[integral], b)
    return out


def tricomi_u(a: ComplexLike, t: ComplexLike,
              regime: Optional[Union[EvalRegime, RegimeTag]] = None) -> ComplexLike:
    """U(a,1,t) for |arg t| < π. `regime` forces one evaluation path."""
    a = complex(a)
    scalar = np.ndim(t) == 0
    shape = np.shape(t)
    t_arr = np.atleast_1d(np.asarray(t, dtype=complex)).ravel()

    if np.any(t_arr == 0):
        raise DomainError("tricomi_u is singular at t = 0", a=a)
    if np.any((t_arr.imag == 0) & (t_arr.real < 0)):
        raise BranchError("tricomi_u argument on the negative real axis", a=a)

    out = _dispatch_u(a, 1.0, t_arr, _regime_plan(regime))
    if not np.all(np.isfinite(out)):
        raise OverflowGuard("tricomi_u produced a non-finite value", a=a)
    if scalar:
        return complex(out[0])
    return out.reshape(shape)


# ==========================================
# 6. KUMMER M
# ==========================================
def _neumaier(total: np.ndarray, comp: np.ndarray, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    nxt = total + x
    comp = comp + np.where(np.abs(total) >= np.abs(x), (total - nxt) + x, (x - nxt) + total)
    return nxt, comp


def _kummer_series(a: complex, b: complex, t: np.ndarray) -> np.ndarray:
    settings = get_settings()
    term = np.ones_like(t)
    re, re_c = np.ones(t.shape), np.zeros(t.shape)
    im, im_c = np.zeros(t.shape), np.zeros(t.shape)
    quiet = 0
    for k in range(settings.series_max_terms):
        term = term * (a + k) / (b + k) * t / (k + 1)
        re, re_c = _neumaier(re, re_c, term.real)
        im, im_c = _neumaier(im, im_c, term.imag)
        total = np.abs((re + re_c) + 1j * (im + im_c))
        if np.all(np.abs(term) < settings.series_eps * total):
            quiet += 1
            if quiet >= 3:
                break
        else:
            quiet = 0
    else:
        raise NoConvergence("Kummer series did not converge", a=a, b=b, terms=settings.series_max_terms)
    return (re + re_c) + 1j * (im + im_c)


def _kummer_connection(a: complex, b: complex, t: np.ndarray) -> np.ndarray:
    """
    F(a,b,t)/Γ(b) = e^{iπas} U(a,b,t)/Γ(b-a) + e^{-iπ(b-a)s} e^t U(b-a,b,-t)/Γ(a),
    s = sign(Im t). For b = 1 the two pieces are U2/Γ(1-a) and U1/Γ(a).
    """
    side = np.where(t.imag > 0, 1.0, -1.0)
    plan = EvalRegime.from_settings()
    plane = np.exp(1j * math.pi * a * side) * _dispatch_u(a, b, t, plan)
    outgoing = np.exp(t) * np.exp(-1j * math.pi * (b - a) * side) * _dispatch_u(b - a, b, -t, plan)
    return complex_gamma(b) * (plane * reciprocal_gamma(b - a) + outgoing * reciprocal_gamma(a))


def _kummer_right(a: complex, b: complex, t: np.ndarray) -> np.ndarray:
    """F(a,b,t) for Re t >= 0."""
    if a == 0:
        return np.ones_like(t)
    if _is_pole(a):
        return _kummer_series(a, b, t)
    if _is_pole(b - a):
        return np.exp(t) * _kummer_series(b - a, b, -t)

    out = np.empty_like(t)
    far = (np.abs(t) > get_settings().kummer_series_radius) & (np.abs(t.imag) >= t.real)
    if np.any(far) and min(a.real, (b - a).real) <= -1.0:
        logger.warning(f"kummer_m summing the series at |t| up to {np.max(np.abs(t[far])):.3g} "
                       f"with Re(a) or Re(b-a) <= -1; cancellation may limit accuracy (a={a}, b={b})")
        far[:] = False
    if np.any(~far):
        out[~far] = _kummer_series(a, b, t[~far])
    if np.any(far):
        out[far] = _kummer_connection(a, b, t[far])
    return out


def kummer_m(a: ComplexLike, b: ComplexLike, t: ComplexLike) -> ComplexLike:
    """
    Confluent hypergeometric F(a,b,t). Re t < 0 goes through F(a,b,t) = e^t F(b-a,b,-t);
    the Maclaurin series is summed near the origin and on the real side, and large |t|
    off the positive real sector uses the U connection formula.
    """
    a, b = complex(a), complex(b)
    _check_pole(b, "kummer_m")
    settings = get_settings()
    scalar = np.ndim(t) == 0
    shape = np.shape(t)
    t_arr = np.atleast_1d(np.asarray(t, dtype=complex)).ravel()

    if np.any(np.abs(t_arr) > settings.kummer_guard):
        raise OverflowGuard("kummer_m argument beyond the overflow guard",
                            t_max=float(np.max(np.abs(t_arr))), guard=settings.kummer_guard)

    out = np.ones_like(t_arr)
    if a != 0:
        nonzero = t_arr != 0
        flip = nonzero & (t_arr.real < 0)
        keep = nonzero & ~flip
        if np.any(keep):
            out[keep] = _kummer_right(a, b, t_arr[keep])
        if np.any(flip):
            out[flip] = np.exp(t_arr[flip]) * _kummer_right(b - a, b, -t_arr[flip])

    if not np.all(np.isfinite(out)):
        raise OverflowGuard("kummer_m produced a non-finite value", a=a, b=b)
    if scalar:
        return complex(out[0])
    return out.reshape(shape)


def coulomb_f(a: ComplexLike, z: ComplexLike) -> ComplexLike:
    """F(a,1,iz) for real z ≥ 0; beyond the series radius always via the U1/U2 split, so no overflow guard applies."""
    a = complex(a)
    scalar = np.ndim(z) == 0
    z_arr = np.atleast_1d(np.asarray(z, dtype=float)).ravel()
    if np.any(z_arr < 0):
        raise DomainError("coulomb_f needs z >= 0", z_min=float(np.min(z_arr)))

    radius = get_settings().kummer_series_radius
    out = np.empty(z_arr.shape, dtype=complex)
    near = z_arr <= radius
    if np.any(near):
        out[near] = kummer_m(a, 1.0, 1j * z_arr[near])
    if np.any(~near):
        out[~near] = _kummer_connection(a, 1.0, 1j * z_arr[~near])
    if scalar:
        return complex(out[0])
    return out.reshape(np.shape(z))


# ==========================================
# 7. COULOMB PAIR U1/U2 AND KERNELS G1/G2
# ==========================================
def _coulomb_args(xi: float, sign: Union[Sign, str], z: ComplexLike) -> Tuple[complex, np.ndarray]:
    if not xi > 0:
        raise DomainError("xi must be positive", xi=xi)
    z_arr = np.asarray(z, dtype=float)
    if np.any(z_arr <= 0):
        raise DomainError("z must be positive", z_min=float(np.min(z_arr)))
    return 1j * Sign(sign).s * xi, z_arr


def _shaped(values: np.ndarray, z: ComplexLike) -> ComplexLike:
    if np.ndim(z) == 0:
        return complex(values[0])
    return values.reshape(np.shape(z))


def g1(xi: float, sign: Union[Sign, str], z: ComplexLike) -> ComplexLike:
    """
    G1 = ∫₀^∞ e^{-u} u^{-a} (1 - u/iz)^{a} / (iz - u) du. Along the real u axis this is
    G(1-a, -iz)/(iz) with the Laplace kernel of U(1-a,1,-iz).
    """
    a, z_arr = _coulomb_args(xi, sign, z)
    t = 1j * np.atleast_1d(z_arr).ravel()
    values = _laplace_kernel(1.0 - a, 1.0, -t) / t
    if not np.all(np.isfinite(values)):
        raise OverflowGuard("g1 produced a non-finite value", xi=xi)
    return _shaped(values, z)


def g2(xi: float, sign: Union[Sign, str], z: ComplexLike) -> ComplexLike:
    """
    G2 = ∫₀^∞ e^{-u} u^{a-1} (1 + u/iz)^{-a} du. For a = ±iξ the u^{a-1}
    endpoint is integrated analytically (1/a) and the remainder by quadrature.
    """
    a, z_arr = _coulomb_args(xi, sign, z)
    t = 1j * np.atleast_1d(z_arr).ravel()
    values = _laplace_kernel(a, 1.0, t)
    if not np.all(np.isfinite(values)):
        raise OverflowGuard("g2 produced a non-finite value", xi=xi)
    return _shaped(values, z)


def u1_u2(xi: float, sign: Union[Sign, str], z: ComplexLike) -> Tuple[ComplexLike, ComplexLike]:
    """
    U1(a,1,iz) = e^{iz} e^{iπ(a-1)} U(1-a,1,-iz) and U2(a,1,iz) = e^{iπa} U(a,1,iz),
    a = ±iξ (upper sign attraction), so that F(a,1,iz) = U1/Γ(a) + U2/Γ(1-a).

    The near-zone and asymptotic regimes go through `tricomi_u`; in between the pair
    is rebuilt from the kernels, U2 = e^{iπa/2} z^{-a} G2/Γ(a) and
    U1 = e^{iz} z^{a} e^{iπa/2} G1/Γ(1-a).
    """
    a, z_arr = _coulomb_args(xi, sign, z)
    flat = np.atleast_1d(z_arr).ravel()
    t = 1j * flat
    plan = EvalRegime.from_settings()
    kernels = _regime_tags(plan, t) == RegimeTag.INTEGRAL_REP.value
    u1 = np.empty_like(t)
    u2 = np.empty_like(t)

    if np.any(kernels):
        zk = flat[kernels]
        phase = np.exp(0.5j * math.pi * a)
        u2[kernels] = phase * np.exp(-a * np.log(zk)) * g2(xi, sign, zk) * reciprocal_gamma(a)
        u1[kernels] = (np.exp(1j * zk) * np.exp(a * np.log(zk)) * phase
                       * g1(xi, sign, zk) * reciprocal_gamma(1.0 - a))
    rest = ~kernels
    if np.any(rest):
        u2[rest] = np.exp(1j * math.pi * a) * tricomi_u(a, t[rest], plan)
        u1[rest] = np.exp(t[rest]) * np.exp(1j * math.pi * (a - 1.0)) * tricomi_u(1.0 - a, -t[rest], plan)
    return _shaped(u1, z), _shaped(u2, z)


def coulomb_u(xi: float, sign: Union[Sign, str], z: ComplexLike) -> ComplexLike:
    """U(1±iξ,1,iz), the function behind every cross-section integrand."""
    a, z_arr = _coulomb_args(xi, sign, z)
    return tricomi_u(1.0 + a, 1j * z_arr)
