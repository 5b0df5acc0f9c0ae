# coulombxs/core/config.py
import logging
import os
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, model_validator

load_dotenv()

logger = logging.getLogger(__name__)


class Settings(BaseModel):
    """Numerical and runtime settings, read once from the environment."""

    model_config = ConfigDict(frozen=True)

    # Regime switching for U(a,1,iz)
    switch_z_low: float = 2.0
    switch_z_high: float = 30.0
    asymptotic_tol: float = 1e-10

    # Quadrature
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_depth: int = 60
    tail_threshold: float = 1e-14

    # Series summation
    series_eps: float = 1e-15
    series_max_terms: int = 1_000_000
    kummer_guard: float = 1e4
    kummer_series_radius: float = 12.0

    # Physics limits
    xi_max: float = 5.0
    kr_warn: float = 1e3
    x_max: float = 40.0
    xi_cap: float = 5.0

    # Runtime
    threads: int = 1
    log_level: str = "INFO"
    log_dir: Optional[str] = None

    @model_validator(mode="after")
    def check_consistency(self):
        if not 0 < self.switch_z_low < self.switch_z_high:
            raise ValueError("switch_z_low must satisfy 0 < switch_z_low < switch_z_high")
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("Quadrature tolerances must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")
        return self


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Build the settings from COULOMB_* environment variables (and .env)."""
    settings = Settings(
        switch_z_low=float(os.getenv("COULOMB_SWITCH_Z_LOW", "2")),
        switch_z_high=float(os.getenv("COULOMB_SWITCH_Z_HIGH", "30")),
        asymptotic_tol=float(os.getenv("COULOMB_ASYMPTOTIC_TOL", "1e-10")),
        rel_tol=float(os.getenv("COULOMB_REL_TOL", "1e-10")),
        abs_tol=float(os.getenv("COULOMB_ABS_TOL", "1e-14")),
        max_depth=int(os.getenv("COULOMB_MAX_DEPTH", "60")),
        tail_threshold=float(os.getenv("COULOMB_TAIL_THRESHOLD", "1e-14")),
        series_eps=float(os.getenv("COULOMB_SERIES_EPS", "1e-15")),
        series_max_terms=int(os.getenv("COULOMB_SERIES_MAX_TERMS", "1000000")),
        kummer_guard=float(os.getenv("COULOMB_KUMMER_GUARD", "1e4")),
        kummer_series_radius=float(os.getenv("COULOMB_KUMMER_SERIES_RADIUS", "12")),
        xi_max=float(os.getenv("COULOMB_XI_MAX", "5")),
        kr_warn=float(os.getenv("COULOMB_KR_WARN", "1e3")),
        x_max=float(os.getenv("COULOMB_X_MAX", "40")),
        xi_cap=float(os.getenv("COULOMB_XI_CAP", "5")),
        threads=int(os.getenv("COULOMB_THREADS", str(os.cpu_count() or 1))),
        log_level=os.getenv("COULOMB_LOG_LEVEL", "INFO"),
        log_dir=os.getenv("COULOMB_LOG_DIR") or None,
    )
    logger.debug(f"Settings loaded: {settings.model_dump()}")
    return settings
