# tests/test_schemas.py
import math

import pytest
from pydantic import ValidationError

from coulombxs.schemas import (
    Command,
    ComplexValue,
    CoulombInteraction,
    Sign,
    SweepScale,
    SweepSpec,
    TransportDecomposition,
)


def test_sign_helpers():
    assert Sign.ATTRACT.s == 1
    assert Sign.REPEL.s == -1
    assert Sign.ATTRACT.flipped() is Sign.REPEL
    assert Sign("repel") is Sign.REPEL


@pytest.mark.parametrize("fields", [{"xi": 0.0}, {"xi": -1.0}, {"xi": math.inf}, {"xi": 1.0, "k": 0.0}])
def test_interaction_validation(fields):
    with pytest.raises(ValidationError):
        CoulombInteraction(sign=Sign.ATTRACT, **fields)


def test_complex_value_round_trip():
    value = ComplexValue.from_complex(1.5 - 2j)
    assert value.re == 1.5 and value.im == -2.0
    assert value.to_complex() == 1.5 - 2j
    with pytest.raises(ValidationError):
        ComplexValue(re=math.nan, im=0.0)


def test_transport_decomposition_bracket():
    split = TransportDecomposition(xi=1.0, sign=Sign.ATTRACT, head=2.0, tail_reg=1.0, log_coeff=math.exp(math.pi))
    weight = math.exp(-math.pi)
    assert split.bracket(50.0) == pytest.approx(3.0 * weight + math.log(100.0))
    assert split.universal() == pytest.approx(2.0 * math.pi * 3.0 * weight)


# ==========================================
# 1. SWEEPS
# ==========================================
def test_sweep_parse_named():
    spec = SweepSpec.parse("n:1e14:1e17:4:log")
    assert spec.variable == "n"
    assert spec.scale is SweepScale.LOG
    assert spec.values() == pytest.approx([1e14, 1e15, 1e16, 1e17])


def test_sweep_parse_with_known_variable():
    spec = SweepSpec.parse("0:1:5", variable="theta")
    assert spec.values() == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert SweepSpec.parse("1:100:3", variable="kr", default_scale=SweepScale.LOG).values() == pytest.approx(
        [1.0, 10.0, 100.0])


@pytest.mark.parametrize("token, variable", [
    ("1:2", "kr"),
    ("n:1:2", None),
    ("2:1:5", "kr"),
    ("0:1:5:log", "theta"),
    ("1:2:1", "kr"),
    ("1:2:3:cubic", "kr"),
    ("a:b:3", "kr"),
])
def test_sweep_parse_rejects(token, variable):
    with pytest.raises(ValueError):
        SweepSpec.parse(token, variable=variable)


# ==========================================
# 2. COMMAND
# ==========================================
def test_command_accepts_known_subcommands():
    command = Command(subcommand="mobility", params={"n": 1e15, "method": "integral"})
    assert command.output.value == "csv"
    assert command.out_path is None


def test_command_rejects_unknown_subcommand():
    with pytest.raises(ValidationError):
        Command(subcommand="plot")


def test_command_rejects_extra_fields():
    with pytest.raises(ValidationError):
        Command(subcommand="universal", verbose=True)
