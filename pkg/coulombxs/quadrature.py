# coulombxs/quadrature.py
"""
Adaptive Gauss-Kronrod quadrature for finite, semi-infinite and oscillatory
integrals. Integrands are vectorized: they receive a numpy array of nodes and
return an array of real or complex values.
"""
import heapq
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from coulombxs.core.errors import (
    AccelerationStalled,
    MaxDepthExceeded,
    NonFiniteIntegrand,
    TailNotDecaying,
)
from coulombxs.schemas import QuadratureConfig

logger = logging.getLogger(__name__)

Number = Union[float, complex]
Integrand = Callable[[np.ndarray], np.ndarray]

# ==========================================
# 1. GAUSS-KRONROD 7/15 RULE (QUADPACK qk15)
# ==========================================
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# Full 15-point layout on [-1, 1], ascending
NODES = np.concatenate([-_XGK[:7], _XGK[7:], _XGK[6::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:7], _WGK[7:], _WGK[6::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]
GAUSS_WEIGHTS[[13, 11, 9]] = _WG[:3]

_EPMACH = np.finfo(float).eps
_UFLOW = np.finfo(float).tiny
MAX_INTERVALS = 5000


@dataclass(frozen=True)
class QuadratureResult:
    value: Number
    abs_error_estimate: float
    evaluations: int

    def __post_init__(self):
        if self.abs_error_estimate < 0 or self.evaluations <= 0:
            raise ValueError("QuadratureResult needs a nonnegative error and a positive evaluation count")


def _as_values(f: Integrand, x: np.ndarray) -> np.ndarray:
    fx = np.asarray(f(x))
    if fx.shape != x.shape:
        fx = np.broadcast_to(fx, x.shape)
    if not np.all(np.isfinite(fx)):
        bad = x[~np.isfinite(fx)]
        raise NonFiniteIntegrand("Integrand returned a non-finite value", at=float(bad[0]))
    return fx


def gk15(f: Integrand, a: float, b: float) -> Tuple[Number, float]:
    """One Kronrod panel on [a, b]: (estimate, QUADPACK-scaled error)."""
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fx = _as_values(f, center + half * NODES)

    kronrod = np.dot(KRONROD_WEIGHTS, fx)
    gauss = np.dot(GAUSS_WEIGHTS, fx)
    mean = 0.5 * kronrod
    resabs = abs(half) * float(np.dot(KRONROD_WEIGHTS, np.abs(fx)))
    resasc = abs(half) * float(np.dot(KRONROD_WEIGHTS, np.abs(fx - mean)))

    err = abs(half * (kronrod - gauss))
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > _UFLOW / (50.0 * _EPMACH):
        err = max(50.0 * _EPMACH * resabs, err)

    value = half * kronrod
    if np.iscomplexobj(fx):
        return complex(value), float(err)
    return float(value), float(err)


def _ordered_sum(values: Sequence[Number]) -> Number:
    """Compensated sum that does not depend on the order panels were refined in."""
    if any(isinstance(v, complex) for v in values):
        return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))
    return math.fsum(values)


# ==========================================
# 2. GLOBAL ADAPTIVE BISECTION
# ==========================================
def integrate_adaptive(
    f: Integrand,
    a: float,
    b: float,
    cfg: Optional[QuadratureConfig] = None,
    points: Optional[Sequence[float]] = None,
) -> QuadratureResult:
    """Integrate f over [a, b], always bisecting the panel with the largest error."""
    cfg = cfg or QuadratureConfig.from_settings()
    if not a < b:
        raise ValueError(f"integrate_adaptive needs a < b, got a={a}, b={b}")

    edges = [a] + sorted(p for p in (points or ()) if a < p < b) + [b]

    # Panels keyed by left edge so the final reduction is order independent
    panels = {}
    heap = []
    evaluations = 0
    for lo, hi in zip(edges[:-1], edges[1:]):
        value, err = gk15(f, lo, hi)
        evaluations += 15
        panels[lo] = (hi, value, err, 0)
        heapq.heappush(heap, (-err, lo))

    while True:
        values = [panels[key][1] for key in sorted(panels)]
        total = _ordered_sum(values)
        total_err = math.fsum(p[2] for p in panels.values())
        if total_err <= max(cfg.abs_tol, cfg.rel_tol * abs(total)):
            return QuadratureResult(total, total_err, evaluations)

        _, lo = heapq.heappop(heap)
        hi, _, err, depth = panels[lo]
        mid = 0.5 * (lo + hi)
        if depth >= cfg.max_depth or len(panels) >= MAX_INTERVALS or not lo < mid < hi:
            best = QuadratureResult(total, total_err, evaluations)
            logger.warning(f"Adaptive quadrature stopped at depth {depth} on [{lo:.6g}, {hi:.6g}]")
            raise MaxDepthExceeded("Adaptive quadrature exhausted its subdivision budget",
                                   best=best, interval=(lo, hi), error=total_err)

        del panels[lo]
        for left, right in ((lo, mid), (mid, hi)):
            value, err = gk15(f, left, right)
            evaluations += 15
            panels[left] = (right, value, err, depth + 1)
            heapq.heappush(heap, (-err, left))


def integrate_panels(
    f: Integrand,
    edges: Sequence[float],
    cfg: Optional[QuadratureConfig] = None,
) -> QuadratureResult:
    """
    Integrate f over [edges[0], edges[-1]] one panel at a time, each panel with
    its own subdivision budget. Suits long ranges cut into many periods, where a
    single global budget would be spent on the starting panels alone.
    """
    cfg = cfg or QuadratureConfig.from_settings()
    if len(edges) < 2 or any(lo >= hi for lo, hi in zip(edges[:-1], edges[1:])):
        raise ValueError("integrate_panels needs at least two strictly increasing edges")

    parts = [integrate_adaptive(f, lo, hi, cfg) for lo, hi in zip(edges[:-1], edges[1:])]
    total = _ordered_sum([part.value for part in parts])
    error = math.fsum(part.abs_error_estimate for part in parts)
    logger.debug(f"Panel quadrature over {len(parts)} panels: error={error:.3e}")
    return QuadratureResult(total, error, sum(part.evaluations for part in parts))


# ==========================================
# 3. SEMI-INFINITE RANGE
# ==========================================
def integrate_semi_infinite(
    f: Integrand,
    a: float,
    cfg: Optional[QuadratureConfig] = None,
    points: Optional[Sequence[float]] = None,
    max_panels: int = 200,
) -> QuadratureResult:
    """
    Integrate f over [a, ∞). The map z = a + t/(1 - t) sends the panels
    t_k = 1 - 2^-k to z-panels [a + 2^k - 1, a + 2^(k+1) - 1]; each panel is
    integrated adaptively in z and panels are added until the contribution of
    the last one falls below the tail threshold.
    """
    cfg = cfg or QuadratureConfig.from_settings()
    contributions = []
    total_err = 0.0
    evaluations = 0
    rising = 0

    for k in range(max_panels):
        lo = a + (2.0 ** k - 1.0)
        hi = a + (2.0 ** (k + 1) - 1.0)
        part = integrate_adaptive(f, lo, hi, cfg, points=points)
        contributions.append(part.value)
        total_err += part.abs_error_estimate
        evaluations += part.evaluations

        size = abs(part.value)
        total = _ordered_sum(contributions)
        if k >= 2 and size < max(cfg.tail_threshold, cfg.abs_tol, cfg.rel_tol * abs(total)):
            return QuadratureResult(total, total_err + size, evaluations)

        if k >= 4 and size >= abs(contributions[-2]):
            rising += 1
            if rising >= 3:
                raise TailNotDecaying("Tail panels stopped decreasing", panel=k, contribution=size)
        else:
            rising = 0

    raise TailNotDecaying("Tail did not fall below threshold", panels=max_panels)


# ==========================================
# 4. OSCILLATORY RANGE
# ==========================================
def accelerate_alternating(partial_sums: Sequence[Number]) -> Tuple[Number, float]:
    """
    Iterated averaging (Euler transform) of partial sums whose terms alternate.
    Returns the accelerated limit and the change from the previous table row.
    """
    m = len(partial_sums) - 1
    if m < 2:
        raise AccelerationStalled("Need at least three partial sums", available=m + 1)

    def euler(order: int) -> Number:
        sums = partial_sums[: order + 1]
        weights = [math.comb(order, j) / 2 ** order for j in range(order + 1)]
        return _ordered_sum([w * s for w, s in zip(weights, sums)])

    current = euler(m)
    previous = euler(m - 1)
    return current, abs(current - previous)


def integrate_oscillatory(
    f_envelope: Integrand,
    phase_rate: float,
    a: float = 0.0,
    cfg: Optional[QuadratureConfig] = None,
    method: str = "accelerate",
    min_terms: int = 8,
    max_terms: int = 600,
    stall_window: int = 40,
) -> QuadratureResult:
    """
    ∫_a^∞ envelope(z)·e^{-i·phase_rate·z} dz.

    method="accelerate": half-period partial sums with iterated averaging;
    method="contour": rotate to z = a - i s, valid when the envelope is
    analytic and algebraically bounded in the lower half plane.
    """
    cfg = cfg or QuadratureConfig.from_settings()
    if phase_rate <= 0:
        raise ValueError("phase_rate must be positive")

    if method == "contour":
        def rotated(s: np.ndarray) -> np.ndarray:
            return np.asarray(f_envelope(a - 1j * s)) * np.exp(-phase_rate * s)

        part = integrate_semi_infinite(rotated, 0.0, cfg)
        value = -1j * np.exp(-1j * phase_rate * a) * part.value
        return QuadratureResult(complex(value), part.abs_error_estimate, part.evaluations)

    if method != "accelerate":
        raise ValueError(f"Unknown oscillatory method '{method}'")

    def integrand(z: np.ndarray) -> np.ndarray:
        return np.asarray(f_envelope(z)) * np.exp(-1j * phase_rate * z)

    step = math.pi / phase_rate
    running = []
    panel_err = 0.0
    evaluations = 0
    best_err = math.inf
    since_best = 0
    converged = 0
    for n in range(max_terms):
        part = integrate_adaptive(integrand, a + n * step, a + (n + 1) * step, cfg)
        panel_err += part.abs_error_estimate
        evaluations += part.evaluations
        running.append(part.value if not running else running[-1] + part.value)

        if n + 1 < min_terms:
            continue
        # the first half-period carries the endpoint behaviour; average the rest
        value, change = accelerate_alternating(running[1:])
        if change <= max(cfg.abs_tol, cfg.rel_tol * abs(value)):
            converged += 1
            if converged >= 2:
                return QuadratureResult(complex(value), change + panel_err, evaluations)
        else:
            converged = 0

        if change < best_err:
            best_err, since_best = change, 0
        else:
            since_best += 1
            if since_best >= stall_window:
                raise AccelerationStalled("Averaging table stopped contracting",
                                          terms=n + 1, change=change)

    raise AccelerationStalled("Acceleration budget exhausted", terms=max_terms, change=best_err)
