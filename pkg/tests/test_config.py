# tests/test_config.py
import pytest
from pydantic import ValidationError

from coulombxs.core.config import Settings
from coulombxs.core.errors import (
    BranchError,
    CoulombError,
    DomainError,
    IoError,
    MaxDepthExceeded,
    NoConvergence,
    OverflowGuard,
    PoleError,
    UsageError,
)
from coulombxs.schemas import EvalRegime, QuadratureConfig, RegimeTag


# ==========================================
# 1. SETTINGS
# ==========================================
def test_defaults(fresh_settings, monkeypatch):
    monkeypatch.delenv("COULOMB_XI_MAX", raising=False)
    monkeypatch.delenv("COULOMB_REL_TOL", raising=False)
    settings = fresh_settings()
    assert settings.xi_max == 5.0
    assert settings.rel_tol == 1e-10
    assert settings.threads == 1


def test_environment_overrides(fresh_settings, monkeypatch):
    monkeypatch.setenv("COULOMB_SWITCH_Z_HIGH", "40")
    monkeypatch.setenv("COULOMB_LOG_LEVEL", "DEBUG")
    monkeypatch.setenv("COULOMB_THREADS", "3")
    settings = fresh_settings()
    assert settings.switch_z_high == 40.0
    assert settings.log_level == "DEBUG"
    assert settings.threads == 3
    assert EvalRegime.from_settings(settings).switch_z_high == 40.0


def test_settings_are_cached(fresh_settings):
    assert fresh_settings() is fresh_settings()


def test_settings_are_frozen(fresh_settings):
    with pytest.raises(ValidationError):
        fresh_settings().xi_max = 1.0


@pytest.mark.parametrize("overrides", [
    {"switch_z_low": 30.0, "switch_z_high": 2.0},
    {"rel_tol": 0.0},
    {"max_depth": 0},
    {"threads": 0},
])
def test_invalid_combinations(overrides):
    with pytest.raises(ValidationError):
        Settings(**overrides)


# ==========================================
# 2. NUMERICAL PLUMBING
# ==========================================
@pytest.mark.parametrize("modulus, tag", [
    (0.5, RegimeTag.NEAR_ZONE_SERIES),
    (2.0, RegimeTag.INTEGRAL_REP),
    (30.0, RegimeTag.INTEGRAL_REP),
    (31.0, RegimeTag.ASYMPTOTIC),
])
def test_regime_selection(modulus, tag):
    assert EvalRegime().select(modulus) is tag


def test_forced_regime():
    assert EvalRegime(tag=RegimeTag.ASYMPTOTIC).select(0.1) is RegimeTag.ASYMPTOTIC


def test_regime_order_is_checked():
    with pytest.raises(ValidationError):
        EvalRegime(switch_z_low=5.0, switch_z_high=1.0)


def test_quadrature_config_validation():
    with pytest.raises(ValidationError):
        QuadratureConfig(rel_tol=-1.0)
    with pytest.raises(ValidationError):
        QuadratureConfig(max_depth=0)
    assert QuadratureConfig.from_settings().rel_tol > 0


# ==========================================
# 3. ERRORS
# ==========================================
@pytest.mark.parametrize("error, code", [
    (DomainError, 2),
    (PoleError, 2),
    (BranchError, 2),
    (NoConvergence, 3),
    (OverflowGuard, 3),
    (IoError, 3),
])
def test_exit_codes(error, code):
    assert error.exit_code == code
    assert issubclass(error, CoulombError)


def test_error_context_is_rendered():
    error = NoConvergence("Series did not converge", terms=100, last=1e-3)
    assert str(error) == "Series did not converge (terms=100, last=0.001)"
    assert error.context == {"terms": 100, "last": 1e-3}


def test_usage_error_names_the_flag():
    error = UsageError("--kr", "must be positive")
    assert error.flag == "--kr"
    assert str(error) == "--kr: must be positive"
    assert error.exit_code == 2


def test_max_depth_keeps_best_estimate():
    error = MaxDepthExceeded("Out of depth", best=1.5, depth=60)
    assert error.best == 1.5
    assert "depth=60" in str(error)
