# coulombxs/semiconductor.py
"""
Ionized-impurity mobility of an extrinsic semiconductor built on the
nonasymptotic transport cross-section, with the Conwell-Weisskopf baseline.
Internal arithmetic is Gaussian-CGS; mobilities are reported in cm²/(V·s).
"""
import logging
import math
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.interpolate import RectBivariateSpline

from coulombxs.core.config import get_settings
from coulombxs.core.errors import DegenerateCompensation, DomainError, IntegrandUnderflow
from coulombxs.integralxs import sigma_tr_prime
from coulombxs.quadrature import integrate_adaptive
from coulombxs.schemas import (
    CoulombInteraction,
    KinematicValidity,
    MobilityMethod,
    MobilityResult,
    QuadratureConfig,
    ScatteringEnvironment,
    SemiconductorSample,
    Sign,
    SweepScale,
    SweepSpec,
    ZoneReport,
)
from coulombxs.scattering import zone_report
from coulombxs.utils.parallel import ordered_map

logger = logging.getLogger(__name__)

# ==========================================
# 1. CONSTANTS (Gaussian-CGS)
# ==========================================
E_CHARGE = 4.80320425e-10   # esu
HBAR = 1.054571817e-27      # erg s
M_ELECTRON = 9.1093837e-28  # g
K_BOLTZMANN = 1.380649e-16  # erg/K
STATVOLT_IN_VOLTS = 299.792458

# n used by the K- and T-sweep presets
PRESET_N = 1e16

# carriers attract to donors (r₁) and are repelled by acceptors (r₂)
DONOR_ACCEPTOR_SIGNS = (Sign.ATTRACT, Sign.REPEL)


def to_practical_units(mu_cgs: float) -> float:
    """cm²/(statV·s) → cm²/(V·s)."""
    return mu_cgs / STATVOLT_IN_VOLTS


def to_cgs_mobility(mu: float) -> float:
    """cm²/(V·s) → cm²/(statV·s)."""
    return mu * STATVOLT_IN_VOLTS


class CarrierKinematics(NamedTuple):
    k: float
    v: float
    xi1: float
    xi2: float


# ==========================================
# 2. SAMPLE DERIVED QUANTITIES
# ==========================================
def environment(sample: SemiconductorSample) -> ScatteringEnvironment:
    """Donor/acceptor concentrations, half mean spacings and Debye radius (n_e = n)."""
    denom = sample.Z1 - sample.K * sample.Z2
    if denom <= 0:
        raise DegenerateCompensation("Z1 - K*Z2 must be positive", Z1=sample.Z1, Z2=sample.Z2, K=sample.K)
    n1 = sample.n / denom
    n2 = sample.n * sample.K / denom
    return ScatteringEnvironment(
        n1=n1,
        n2=n2,
        r1=0.5 * n1 ** (-1.0 / 3.0),
        r2=0.5 * n2 ** (-1.0 / 3.0) if n2 > 0 else None,
        Rs=math.sqrt(sample.eps * K_BOLTZMANN * sample.T / (4.0 * math.pi * E_CHARGE ** 2 * sample.n)),
    )


def kinematic_validity(sample: SemiconductorSample) -> KinematicValidity:
    """(3εm*)^{1/2}(k_B T)^{3/2} / (4π e² ħ n^{2/3}): the k R_s²/r > 1 condition at thermal k."""
    m_eff = sample.m_eff_ratio * M_ELECTRON
    kT = K_BOLTZMANN * sample.T
    ratio = (math.sqrt(3.0 * sample.eps * m_eff) * kT ** 1.5
             / (4.0 * math.pi * E_CHARGE ** 2 * HBAR * sample.n ** (2.0 / 3.0)))
    if ratio <= 1.0:
        logger.warning(f"Kinematic angle does not dominate screening at T={sample.T}, n={sample.n:.3g} "
                       f"(ratio {ratio:.3g})")
    return KinematicValidity(ratio=ratio, ok=ratio > 1.0)


def carrier_kinematics(sample: SemiconductorSample, E: float) -> CarrierKinematics:
    if not E > 0:
        raise DomainError("Carrier energy must be positive", E=E)
    m_eff = sample.m_eff_ratio * M_ELECTRON
    k = math.sqrt(2.0 * m_eff * E) / HBAR
    v = math.sqrt(2.0 * E / m_eff)
    coupling = E_CHARGE ** 2 / (sample.eps * HBAR * v)
    return CarrierKinematics(k=k, v=v, xi1=sample.Z1 * coupling, xi2=sample.Z2 * coupling)


def sample_zone_report(sample: SemiconductorSample) -> ZoneReport:
    """Zone diagnostics at E = 3k_BT with r = r₁ and packet width 1/k."""
    env = environment(sample)
    kin = carrier_kinematics(sample, 3.0 * K_BOLTZMANN * sample.T)
    ci = CoulombInteraction(xi=kin.xi1, sign=Sign.ATTRACT, k=kin.k)
    return zone_report(ci, env.r1, 1.0 / kin.k, env.Rs)


def x_floor(sample: SemiconductorSample) -> float:
    """Smallest x = E/k_BT at which every ξ_i stays below the configured cap."""
    cap = get_settings().xi_cap
    m_eff = sample.m_eff_ratio * M_ELECTRON
    z_max = sample.Z1 if sample.K == 0 else max(sample.Z1, sample.Z2)
    v_min = z_max * E_CHARGE ** 2 / (sample.eps * HBAR * cap)
    # nudged inward so rounding never lifts ξ past the cap
    return 0.5 * m_eff * v_min ** 2 / (K_BOLTZMANN * sample.T) * (1.0 + 1e-9)


# ==========================================
# 3. TRANSPORT FACTOR TABLE
# ==========================================
def _prime_point(args: Tuple[float, str, float]) -> float:
    xi, sign, kr = args
    return sigma_tr_prime(xi, Sign(sign), kr)


class TransportTable:
    """Immutable bicubic table of ln σ_tr′ over (ln ξ, ln kr) for one sign."""

    def __init__(self, sign: Sign, log_xi: np.ndarray, log_kr: np.ndarray, log_values: np.ndarray):
        self.sign = Sign(sign)
        self.log_xi = np.array(log_xi, dtype=float)
        self.log_kr = np.array(log_kr, dtype=float)
        for array in (self.log_xi, self.log_kr):
            array.setflags(write=False)
        self._spline = RectBivariateSpline(self.log_xi, self.log_kr, log_values, kx=3, ky=3)

    @classmethod
    def build(cls, sign: Sign, xi_range: Tuple[float, float], kr_range: Tuple[float, float],
              points: Tuple[int, int] = (32, 32), threads: Optional[int] = None) -> "TransportTable":
        if not (0 < xi_range[0] < xi_range[1] and 0 < kr_range[0] < kr_range[1]):
            raise DomainError("Table ranges must be positive and increasing", xi_range=xi_range, kr_range=kr_range)
        sign = Sign(sign)
        log_xi = np.linspace(math.log(xi_range[0]), math.log(xi_range[1]), max(points[0], 4))
        log_kr = np.linspace(math.log(kr_range[0]), math.log(kr_range[1]), max(points[1], 4))
        grid = [(float(math.exp(a)), sign.value, float(math.exp(b))) for a in log_xi for b in log_kr]

        logger.info(f"Building {sign.value} transport table: {len(grid)} nodes, "
                    f"xi in [{xi_range[0]:.4g}, {xi_range[1]:.4g}], kr in [{kr_range[0]:.4g}, {kr_range[1]:.4g}]")
        values = np.array(ordered_map(_prime_point, grid, threads)).reshape(log_xi.size, log_kr.size)
        return cls(sign, log_xi, log_kr, np.log(values))

    def covers(self, xi: float, kr: float) -> bool:
        a, b = math.log(xi), math.log(kr)
        return (self.log_xi[0] <= a <= self.log_xi[-1]) and (self.log_kr[0] <= b <= self.log_kr[-1])

    def lookup(self, xi: float, kr: float) -> float:
        """σ_tr′ from the table; points outside it are computed directly."""
        if not self.covers(xi, kr):
            logger.debug(f"Table miss at xi={xi:.4g}, kr={kr:.4g}; computing directly")
            return sigma_tr_prime(xi, self.sign, kr)
        return float(math.exp(self._spline(math.log(xi), math.log(kr))[0, 0]))


TransportTables = Dict[Sign, TransportTable]


def build_tables(samples: Sequence[SemiconductorSample], points: Tuple[int, int] = (32, 32),
                 threads: Optional[int] = None) -> TransportTables:
    """Tables covering every (ξ, kr) the thermal integral visits for the given samples."""
    settings = get_settings()
    bounds: Dict[Sign, List[float]] = {}
    for sample in samples:
        env = environment(sample)
        kT = K_BOLTZMANN * sample.T
        for x in (x_floor(sample), settings.x_max):
            kin = carrier_kinematics(sample, x * kT)
            pairs = [(Sign.ATTRACT, kin.xi1, kin.k * env.r1)]
            if env.r2 is not None:
                pairs.append((Sign.REPEL, kin.xi2, kin.k * env.r2))
            for sign, xi, kr in pairs:
                box = bounds.setdefault(sign, [math.inf, -math.inf, math.inf, -math.inf])
                box[0], box[1] = min(box[0], xi), max(box[1], xi)
                box[2], box[3] = min(box[2], kr), max(box[3], kr)

    pad = 1.02
    tables = {}
    for sign, (xi_lo, xi_hi, kr_lo, kr_hi) in bounds.items():
        xi_range = (xi_lo / pad, min(xi_hi * pad, settings.xi_max))
        tables[sign] = TransportTable.build(sign, xi_range, (kr_lo / pad, kr_hi * pad), points, threads)
    return tables


# ==========================================
# 4. MOBILITY MODELS
# ==========================================
def transport_primes(sample: SemiconductorSample, E: float, tables: Optional[TransportTables] = None,
                     env: Optional[ScatteringEnvironment] = None,
                     signs: Tuple[Sign, Sign] = DONOR_ACCEPTOR_SIGNS) -> Tuple[float, float]:
    """σ′ for donors (r₁) and acceptors (r₂) at carrier energy E; `signs` gives their potential signs."""
    env = env or environment(sample)
    kin = carrier_kinematics(sample, E)

    def prime(sign: Sign, xi: float, kr: float) -> float:
        if tables and sign in tables:
            return tables[sign].lookup(xi, kr)
        return sigma_tr_prime(xi, sign, kr)

    sigma1 = prime(signs[0], kin.xi1, kin.k * env.r1)
    sigma2 = prime(signs[1], kin.xi2, kin.k * env.r2) if env.r2 is not None else 0.0
    return sigma1, sigma2


def _mobility_prefactor(sample: SemiconductorSample, env: ScatteringEnvironment) -> float:
    m_eff = sample.m_eff_ratio * M_ELECTRON
    kT = K_BOLTZMANN * sample.T
    return (2.0 ** 2.5 * sample.eps ** 2 * kT ** 1.5
            / (3.0 * math.pi ** 1.5 * E_CHARGE ** 3 * math.sqrt(m_eff) * env.n1))


def _denominator(sample: SemiconductorSample, sigma1: float, sigma2: float) -> float:
    value = sample.Z1 ** 2 * sigma1 + sample.K * sample.Z2 ** 2 * sigma2
    if not value > 0:
        raise IntegrandUnderflow("Transport factors vanished", sigma1=sigma1, sigma2=sigma2)
    return value


def _result(sample: SemiconductorSample, mu_cgs: float, method: MobilityMethod,
            tables: Optional[TransportTables], env: ScatteringEnvironment,
            signs: Tuple[Sign, Sign]) -> MobilityResult:
    sigma1, sigma2 = transport_primes(sample, 3.0 * K_BOLTZMANN * sample.T, tables, env, signs)
    return MobilityResult(
        mu_nonasym=to_practical_units(mu_cgs),
        mu_cw=mobility_cw(sample),
        sigma_tr1_prime=sigma1,
        sigma_tr2_prime=sigma2,
        validity=kinematic_validity(sample),
        method=method,
    )


def mobility_integral(sample: SemiconductorSample, tables: Optional[TransportTables] = None,
                      signs: Tuple[Sign, Sign] = DONOR_ACCEPTOR_SIGNS) -> MobilityResult:
    """
    μ = 2^{5/2}ε²(k_BT)^{3/2} / (3π^{3/2}e³m*^{1/2}n₁) ∫ x³e^{-x} / [Z₁²σ′₁ + KZ₂²σ′₂] dx.
    Below x_floor the integrand follows its local power law.
    """
    settings = get_settings()
    env = environment(sample)
    kT = K_BOLTZMANN * sample.T
    x_min = x_floor(sample)
    if x_min >= settings.x_max:
        raise DomainError("Coupling too strong for the thermal window", x_min=x_min, x_max=settings.x_max)

    def integrand(x: np.ndarray) -> np.ndarray:
        out = np.empty(x.shape)
        for i, xv in enumerate(x):
            sigma1, sigma2 = transport_primes(sample, float(xv) * kT, tables, env, signs)
            out[i] = xv ** 3 * math.exp(-xv) / _denominator(sample, sigma1, sigma2)
        return out

    cfg = QuadratureConfig(rel_tol=1e-8, abs_tol=1e-14, max_depth=40, tail_threshold=1e-14)
    points = [p for p in (1.0, 3.0, 8.0, 20.0) if x_min < p < settings.x_max]
    body = integrate_adaptive(integrand, x_min, settings.x_max, cfg, points=points).value

    g0, g1 = integrand(np.array([x_min, 1.05 * x_min]))
    slope = math.log(g1 / g0) / math.log(1.05)
    if slope <= -1.0:
        slope = 3.0
    head = g0 * x_min / (slope + 1.0)
    logger.debug(f"Thermal integral: body={body:.8g}, head={head:.3g} below x={x_min:.4g}")

    mu_cgs = _mobility_prefactor(sample, env) * (body + head)
    return _result(sample, mu_cgs, MobilityMethod.INTEGRAL, tables, env, signs)


def mobility_analytic(sample: SemiconductorSample, tables: Optional[TransportTables] = None,
                      signs: Tuple[Sign, Sign] = DONOR_ACCEPTOR_SIGNS) -> MobilityResult:
    """σ′ frozen at E = 3k_BT: μ = 2^{7/2}ε²(Z₁−KZ₂)(k_BT)^{3/2} / (π^{3/2}e³m*^{1/2}n[Z₁²σ′₁ + KZ₂²σ′₂])."""
    env = environment(sample)
    m_eff = sample.m_eff_ratio * M_ELECTRON
    kT = K_BOLTZMANN * sample.T
    sigma1, sigma2 = transport_primes(sample, 3.0 * kT, tables, env, signs)
    mu_cgs = (2.0 ** 3.5 * sample.eps ** 2 * (sample.Z1 - sample.K * sample.Z2) * kT ** 1.5
              / (math.pi ** 1.5 * E_CHARGE ** 3 * math.sqrt(m_eff) * sample.n
                 * _denominator(sample, sigma1, sigma2)))
    return _result(sample, mu_cgs, MobilityMethod.ANALYTIC, tables, env, signs)


def mobility_cw(sample: SemiconductorSample) -> float:
    """Conwell-Weisskopf mobility in cm²/(V·s), Z₁ = Z₂ = Z."""
    if sample.K >= 1:
        raise DomainError("Conwell-Weisskopf model needs K < 1", K=sample.K)
    if sample.Z1 != sample.Z2:
        raise DomainError("Conwell-Weisskopf model needs Z1 == Z2", Z1=sample.Z1, Z2=sample.Z2)
    m_eff = sample.m_eff_ratio * M_ELECTRON
    kT = K_BOLTZMANN * sample.T
    K = sample.K
    argument = (3.0 * sample.eps * kT * (1.0 - K) ** (1.0 / 3.0)
                / (sample.Z1 * E_CHARGE ** 2 * (sample.n * (1.0 + K)) ** (1.0 / 3.0)))
    mu_cgs = (2.0 ** 3.5 * sample.eps ** 2 * (1.0 - K) * kT ** 1.5
              / (math.pi ** 1.5 * E_CHARGE ** 3 * math.sqrt(m_eff) * sample.n * (1.0 + K)
                 * math.log1p(argument ** 2)))
    return to_practical_units(mu_cgs)


def mobility(sample: SemiconductorSample, method: MobilityMethod = MobilityMethod.INTEGRAL,
             tables: Optional[TransportTables] = None,
             signs: Tuple[Sign, Sign] = DONOR_ACCEPTOR_SIGNS) -> MobilityResult:
    if MobilityMethod(method) is MobilityMethod.ANALYTIC:
        return mobility_analytic(sample, tables, signs)
    return mobility_integral(sample, tables, signs)


# ==========================================
# 5. SWEEPS
# ==========================================
SWEEPABLE = ("n", "T", "K", "eps", "m_eff_ratio")

SWEEP_PRESETS: Dict[str, SweepSpec] = {
    "n": SweepSpec(variable="n", start=1e14, stop=1e17, points=40, scale=SweepScale.LOG),
    "K": SweepSpec(variable="K", start=0.0, stop=0.9, points=19),
    "T": SweepSpec(variable="T", start=20.0, stop=300.0, points=29),
}


def reference_sample(**overrides) -> SemiconductorSample:
    """T = 78 K, ε = 10, m* = 0.2 m₀, K = 0.15; n = 1e16 cm⁻³ unless overridden."""
    params = dict(T=78.0, n=PRESET_N, K=0.15, eps=10.0, m_eff_ratio=0.2, Z1=1, Z2=1)
    params.update(overrides)
    return SemiconductorSample(**params)


def sweep_samples(base: SemiconductorSample, spec: SweepSpec) -> List[SemiconductorSample]:
    if spec.variable not in SWEEPABLE:
        raise DomainError(f"Cannot sweep '{spec.variable}'", allowed=SWEEPABLE)
    return [SemiconductorSample(**{**base.model_dump(), spec.variable: value}) for value in spec.values()]
