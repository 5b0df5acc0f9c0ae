# coulombxs/schemas.py
import math
from enum import Enum
from typing import Dict, List, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator

from coulombxs.core.config import Settings, get_settings

# =======================
# 1. ENUMS
# =======================

class Sign(str, Enum):
    ATTRACT = "attract"
    REPEL = "repel"

    @property
    def s(self) -> int:
        """+1 for attraction (upper sign in the formulas), -1 for repulsion."""
        return 1 if self is Sign.ATTRACT else -1

    def flipped(self) -> "Sign":
        return Sign.REPEL if self is Sign.ATTRACT else Sign.ATTRACT


class RegimeTag(str, Enum):
    NEAR_ZONE_SERIES = "near_zone_series"
    INTEGRAL_REP = "integral_rep"
    ASYMPTOTIC = "asymptotic"


class XsMethod(str, Enum):
    DIRECT = "direct"
    REGULARIZED = "regularized"


class MobilityMethod(str, Enum):
    INTEGRAL = "integral"
    ANALYTIC = "analytic"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class SweepScale(str, Enum):
    LINEAR = "linear"
    LOG = "log"


# =======================
# 2. VALIDATORS MIXIN (Shared Logic)
# =======================

class FiniteMixin:
    @field_validator('*', mode='after')
    @classmethod
    def validate_finite(cls, v):
        if isinstance(v, float) and not math.isfinite(v):
            raise ValueError('Value must be finite')
        return v


class PositiveMixin:
    @field_validator('xi', 'k', 'r', check_fields=False)
    @classmethod
    def validate_positive(cls, v: float):
        if v <= 0:
            raise ValueError('Value must be positive')
        return v


# =======================
# 3. NUMERICAL PLUMBING
# =======================

class ComplexValue(BaseModel, FiniteMixin):
    model_config = ConfigDict(frozen=True)

    re: float
    im: float

    @classmethod
    def from_complex(cls, value: complex) -> "ComplexValue":
        value = complex(value)
        return cls(re=value.real, im=value.imag)

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


class EvalRegime(BaseModel):
    """Switch points between the three evaluation regimes of U(a,1,t)."""

    model_config = ConfigDict(frozen=True)

    tag: Optional[RegimeTag] = None
    switch_z_low: float = 2.0
    switch_z_high: float = 30.0

    @model_validator(mode="after")
    def check_order(self):
        if not 0 < self.switch_z_low < self.switch_z_high:
            raise ValueError('Require 0 < switch_z_low < switch_z_high')
        return self

    @classmethod
    def from_settings(cls, settings: Optional[Settings] = None) -> "EvalRegime":
        settings = settings or get_settings()
        return cls(switch_z_low=settings.switch_z_low, switch_z_high=settings.switch_z_high)

    def select(self, modulus: float) -> RegimeTag:
        if self.tag is not None:
            return self.tag
        if modulus < self.switch_z_low:
            return RegimeTag.NEAR_ZONE_SERIES
        if modulus > self.switch_z_high:
            return RegimeTag.ASYMPTOTIC
        return RegimeTag.INTEGRAL_REP


class QuadratureConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_depth: int = 60
    tail_threshold: float = 1e-14

    @field_validator('rel_tol', 'abs_tol', 'tail_threshold')
    @classmethod
    def validate_tolerance(cls, v: float):
        if not v > 0:
            raise ValueError('Tolerances must be positive')
        return v

    @field_validator('max_depth')
    @classmethod
    def validate_depth(cls, v: int):
        if v < 1:
            raise ValueError('max_depth must be at least 1')
        return v

    @classmethod
    def from_settings(cls, settings: Optional[Settings] = None) -> "QuadratureConfig":
        settings = settings or get_settings()
        return cls(
            rel_tol=settings.rel_tol,
            abs_tol=settings.abs_tol,
            max_depth=settings.max_depth,
            tail_threshold=settings.tail_threshold,
        )


# =======================
# 4. SCATTERING GEOMETRY
# =======================

class CoulombInteraction(BaseModel, FiniteMixin, PositiveMixin):
    model_config = ConfigDict(frozen=True)

    xi: float
    sign: Sign
    k: float = 1.0


class ObservationGeometry(BaseModel, FiniteMixin, PositiveMixin):
    model_config = ConfigDict(frozen=True)

    k: float
    r: float
    theta: float

    @field_validator('theta')
    @classmethod
    def validate_theta(cls, v: float):
        if v < 0 or v > math.pi:
            raise ValueError('theta must lie in [0, pi]')
        return v

    @computed_field
    @property
    def kr(self) -> float:
        return self.k * self.r

    @computed_field
    @property
    def z(self) -> float:
        # k r (1 - cos θ) written without cancellation at small θ
        return 2.0 * self.k * self.r * math.sin(0.5 * self.theta) ** 2

    @computed_field
    @property
    def theta0(self) -> float:
        return math.sqrt(2.0 / (self.k * self.r))

    @computed_field
    @property
    def x(self) -> float:
        return self.theta / self.theta0


class ZoneReport(BaseModel):
    theta0: float = Field(ge=0)
    theta_int: float = Field(ge=0)
    theta_s: float = Field(ge=0)
    interference_fraction: float = Field(ge=0)
    wave_zone_ok: bool
    kinematic_dominates_screening: bool
    kinematic_dominates_packet: bool


class FluxDensity(BaseModel):
    j_over_j0: float = Field(ge=0)


# =======================
# 5. INTEGRAL CROSS-SECTIONS
# =======================

class UniversalTotals(BaseModel, FiniteMixin):
    xi: float
    I_attract: float = Field(gt=0)
    I_repel: float = Field(gt=0)
    err: float = Field(ge=0)


class TransportDecomposition(BaseModel, FiniteMixin):
    model_config = ConfigDict(frozen=True)

    xi: float
    sign: Sign
    head: float
    tail_reg: float
    log_coeff: float
    err: float = 0.0

    def bracket(self, kr: float) -> float:
        """e^{∓πξ}·∫₀^{2kr}|U|² z dz reconstructed from the split."""
        weight = math.exp(-self.sign.s * math.pi * self.xi)
        return weight * (self.head + self.tail_reg + self.log_coeff * math.log(2.0 * kr))

    def universal(self) -> float:
        """k²σ_tr − 2πξ² ln(2kr) in the kr → ∞ limit."""
        weight = math.exp(-self.sign.s * math.pi * self.xi)
        return 2.0 * math.pi * self.xi ** 2 * weight * (self.head + self.tail_reg)


class CrossSectionValue(BaseModel):
    value: float = Field(ge=0)
    r_used: float = Field(gt=0)
    method: XsMethod


# =======================
# 6. OPTICAL THEOREM
# =======================

class FluxBalance(BaseModel, FiniteMixin):
    xi: float
    kr: float
    J1_num: float
    J2_num: float
    J3_num: float
    J1_asym: float
    J2_asym: float
    J3_asym: float
    oscillating_term: float
    residual: float = Field(ge=0)
    conservation_residual: float = Field(ge=0)


# =======================
# 7. SEMICONDUCTOR
# =======================

class SemiconductorSample(BaseModel, FiniteMixin):
    model_config = ConfigDict(frozen=True)

    T: float = Field(gt=0, description="Temperature, K")
    n: float = Field(gt=0, description="Net carrier concentration, cm^-3")
    K: float = Field(default=0.15, ge=0, lt=1, description="Compensation n2/n1")
    eps: float = Field(default=10.0, ge=1, description="Static dielectric constant")
    m_eff_ratio: float = Field(default=0.2, gt=0, description="m*/m0")
    Z1: int = Field(default=1, ge=1)
    Z2: int = Field(default=1, ge=1)


class ScatteringEnvironment(BaseModel):
    n1: float = Field(gt=0)
    n2: float = Field(ge=0)
    r1: float = Field(gt=0)
    r2: Optional[float] = None
    Rs: float = Field(gt=0)


class KinematicValidity(BaseModel):
    ratio: float = Field(ge=0)
    ok: bool


class MobilityResult(BaseModel, FiniteMixin):
    mu_nonasym: float = Field(gt=0, description="cm^2/(V s)")
    mu_cw: float = Field(gt=0, description="cm^2/(V s)")
    sigma_tr1_prime: float = Field(ge=0)
    sigma_tr2_prime: float = Field(ge=0)
    validity: KinematicValidity
    method: MobilityMethod


# =======================
# 8. CLI PLUMBING
# =======================

class SweepSpec(BaseModel):
    variable: str
    start: float
    stop: float
    points: int = Field(ge=2)
    scale: SweepScale = SweepScale.LINEAR

    @model_validator(mode="after")
    def check_range(self):
        if not self.start < self.stop:
            raise ValueError('Sweep start must be below stop')
        if self.scale is SweepScale.LOG and self.start <= 0:
            raise ValueError('Log scale requires start > 0')
        return self

    @classmethod
    def parse(cls, token: str, variable: Optional[str] = None,
              default_scale: SweepScale = SweepScale.LINEAR) -> "SweepSpec":
        """Parse `name:start:stop:points[:scale]` (name omitted when `variable` is given)."""
        parts = token.split(":")
        if variable is None:
            if len(parts) < 4:
                raise ValueError(f"Sweep '{token}' must look like name:start:stop:points[:scale]")
            variable, parts = parts[0], parts[1:]
        if len(parts) not in (3, 4):
            raise ValueError(f"Sweep '{token}' must look like start:stop:points[:scale]")
        scale = SweepScale(parts[3]) if len(parts) == 4 else default_scale
        return cls(variable=variable, start=float(parts[0]), stop=float(parts[1]),
                   points=int(parts[2]), scale=scale)

    def values(self) -> List[float]:
        if self.scale is SweepScale.LOG:
            grid = np.geomspace(self.start, self.stop, self.points)
        else:
            grid = np.linspace(self.start, self.stop, self.points)
        return [float(v) for v in grid]


class Command(BaseModel):
    model_config = ConfigDict(extra="forbid")

    subcommand: str
    params: Dict[str, Union[float, int, str, bool, None]] = Field(default_factory=dict)
    output: OutputFormat = OutputFormat.CSV
    out_path: Optional[str] = None

    @field_validator('subcommand')
    @classmethod
    def validate_subcommand(cls, v: str):
        allowed = {"diff-xs", "total-xs", "transport-xs", "universal",
                   "optical-check", "mobility", "specfun-eval"}
        if v not in allowed:
            raise ValueError(f"Unknown subcommand '{v}'")
        return v
