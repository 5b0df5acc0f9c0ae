# coulombxs/scattering.py
"""
Differential Coulomb cross-section at a finite distance r from the center.

All cross-sections here are densities per unit θ: the azimuthal 2π and the
sin θ Jacobian are included, so σ₁(θ) and the Rutherford reference are
directly comparable. Divide by 2π sin θ for per-solid-angle values.
"""
import logging
import math
from typing import Union

import numpy as np

from coulombxs.core.config import get_settings
from coulombxs.core.errors import DomainError, SingularAngle
from coulombxs.quadrature import integrate_adaptive
from coulombxs.schemas import (
    CoulombInteraction,
    FluxDensity,
    ObservationGeometry,
    ZoneReport,
)
from coulombxs.specfun import coulomb_u

logger = logging.getLogger(__name__)


def _sign_weight(ci: CoulombInteraction) -> float:
    """e^{∓πξ}: upper sign for attraction."""
    return math.exp(-ci.sign.s * math.pi * ci.xi)


# ==========================================
# 1. GEOMETRY
# ==========================================
def kinematic_angle(k: float, r: float) -> float:
    """θ₀ = sqrt(2/(k r)), the angle separating the near and wave zones."""
    if not (k > 0 and r > 0):
        raise DomainError("kinematic_angle needs k > 0 and r > 0", k=k, r=r)
    return math.sqrt(2.0 / (k * r))


def theta_from_x(k: float, r: float, x: float) -> float:
    return x * kinematic_angle(k, r)


def geometry(ci: CoulombInteraction, r: float, theta: float) -> ObservationGeometry:
    g = ObservationGeometry(k=ci.k, r=r, theta=theta)
    if g.kr < get_settings().kr_warn:
        logger.warning(f"k*r = {g.kr:.4g} is outside the k r >> 1 regime; results are still computed")
    return g


def _check_same_k(ci: CoulombInteraction, g: ObservationGeometry) -> None:
    if not math.isclose(ci.k, g.k, rel_tol=1e-12):
        raise DomainError("Interaction and geometry use different wavenumbers", k_interaction=ci.k, k_geometry=g.k)


# ==========================================
# 2. DIFFERENTIAL CROSS-SECTION
# ==========================================
def sigma_one(ci: CoulombInteraction, r: float, theta: Union[float, np.ndarray]) -> np.ndarray:
    """
    σ₁(θ) = 2πξ² e^{∓πξ} |U(1±iξ,1,iz)|² r² sin θ with z = 2kr sin²(θ/2),
    vectorized over θ. Zero where z vanishes.
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    z = 2.0 * ci.k * r * np.sin(0.5 * theta) ** 2
    out = np.zeros(theta.shape)
    live = z > 0
    if np.any(live):
        u = coulomb_u(ci.xi, ci.sign, z[live])
        out[live] = (2.0 * math.pi * ci.xi ** 2 * _sign_weight(ci)
                     * np.abs(u) ** 2 * r ** 2 * np.sin(theta[live]))
    return out


def differential_xs(ci: CoulombInteraction, g: ObservationGeometry) -> float:
    """Nonasymptotic σ₁(θ) per unit θ; finite on [0, π] and zero at θ = 0."""
    _check_same_k(ci, g)
    if g.theta == 0.0:
        return 0.0
    return float(sigma_one(ci, g.r, g.theta)[0])


def rutherford_xs(ci: CoulombInteraction, theta: float) -> float:
    """(ξ/2k)² / sin⁴(θ/2) · 2π sin θ, blind to the sign of the interaction."""
    if not 0.0 < theta <= math.pi:
        raise SingularAngle("Rutherford cross-section needs theta in (0, pi]", theta=theta)
    half = math.sin(0.5 * theta)
    return (ci.xi / (2.0 * ci.k)) ** 2 / half ** 4 * 2.0 * math.pi * math.sin(theta)


def small_angle_xs(ci: CoulombInteraction, g: ObservationGeometry) -> float:
    """Leading near-zone law 8√2 ξ e^{∓πξ} sinh(πξ) x (ln x)² r^{3/2}/√k for x < 1."""
    _check_same_k(ci, g)
    x = g.x
    if x >= 1.0:
        raise DomainError("small_angle_xs applies only inside the near zone (x < 1)", x=x)
    if x == 0.0:
        return 0.0
    return (8.0 * math.sqrt(2.0) * ci.xi * _sign_weight(ci) * math.sinh(math.pi * ci.xi)
            * x * math.log(x) ** 2 * g.r ** 1.5 / math.sqrt(ci.k))


# ==========================================
# 3. FLUX DENSITIES
# ==========================================
def flux_density(ci: CoulombInteraction, g: ObservationGeometry) -> FluxDensity:
    """Scattered-to-incident flux ratio j_sc/j₀ = ξ² e^{∓πξ} |U(1±iξ,1,iz)|²."""
    _check_same_k(ci, g)
    if g.z <= 0.0:
        raise SingularAngle("Flux density diverges logarithmically at z = 0", theta=g.theta)
    u = coulomb_u(ci.xi, ci.sign, g.z)
    return FluxDensity(j_over_j0=ci.xi ** 2 * _sign_weight(ci) * abs(u) ** 2)


def rutherford_flux(ci: CoulombInteraction, g: ObservationGeometry) -> FluxDensity:
    """Wave-zone reference ξ²/z²."""
    if g.z <= 0.0:
        raise SingularAngle("Rutherford flux is singular at z = 0", theta=g.theta)
    return FluxDensity(j_over_j0=(ci.xi / g.z) ** 2)


def near_zone_count(ci: CoulombInteraction, r: float) -> float:
    """∫₀^{θ₀} σ₁ dθ: the particle count (per unit incident flux) landing in the near zone."""
    theta0 = kinematic_angle(ci.k, r)
    upper = min(theta0, math.pi)
    result = integrate_adaptive(lambda th: sigma_one(ci, r, th), 0.0, upper)
    return float(result.value)


# ==========================================
# 4. ZONE DIAGNOSTICS
# ==========================================
def zone_report(ci: CoulombInteraction, r: float, packet_width_a: float, screening_Rs: float) -> ZoneReport:
    """
    Near/wave zone angles and the two conditions under which the kinematic
    angle θ₀ controls the small-angle cut-off: k R_s²/r > 1 (screening) and
    k a²/r < 1 (wave packet). Boundaries count as not dominating.
    """
    if not (r > 0 and screening_Rs > 0 and packet_width_a >= 0):
        raise DomainError("zone_report needs r > 0, Rs > 0 and a >= 0",
                          r=r, Rs=screening_Rs, a=packet_width_a)
    k = ci.k
    report = ZoneReport(
        theta0=kinematic_angle(k, r),
        theta_int=packet_width_a / r,
        theta_s=1.0 / (k * screening_Rs),
        interference_fraction=k * packet_width_a ** 2 / (2.0 * r),
        wave_zone_ok=k * r >= get_settings().kr_warn,
        kinematic_dominates_screening=k * screening_Rs ** 2 / r > 1.0,
        kinematic_dominates_packet=k * packet_width_a ** 2 / r < 1.0,
    )
    logger.debug(f"Zone report at kr={k * r:.4g}: {report.model_dump()}")
    return report
