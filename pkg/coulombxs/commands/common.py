# coulombxs/commands/common.py
import argparse
import math
from typing import List, Optional

from pydantic import ValidationError

from coulombxs.core.errors import UsageError
from coulombxs.schemas import Sign, SweepScale, SweepSpec


def parse_sweep(token: Optional[str], flag: str, variable: Optional[str] = None,
                scale: SweepScale = SweepScale.LINEAR) -> SweepSpec:
    """SweepSpec.parse with failures reported against the flag."""
    if token is None:
        raise UsageError(flag, "a sweep is required")
    try:
        return SweepSpec.parse(token, variable=variable, default_scale=scale)
    except ValidationError as e:
        raise UsageError(flag, e.errors()[0]["msg"].replace("Value error, ", "")) from e
    except ValueError as e:
        raise UsageError(flag, str(e)) from e


def sweep_values(token: Optional[str], flag: str, variable: str,
                 scale: SweepScale = SweepScale.LINEAR) -> List[float]:
    return parse_sweep(token, flag, variable, scale).values()


def values_or_sweep(single: Optional[float], token: Optional[str], flag: str, variable: str,
                    scale: SweepScale) -> List[float]:
    if single is not None and token is not None:
        raise UsageError(flag, f"give either --{variable} or {flag}, not both")
    if single is not None:
        return [single]
    return sweep_values(token, flag, variable, scale)


def add_interaction_args(parser: argparse.ArgumentParser, xi_required: bool = True) -> None:
    parser.add_argument("--xi", type=float, required=xi_required, help="Sommerfeld parameter ξ > 0")
    parser.add_argument("--sign", choices=[s.value for s in Sign], default=Sign.ATTRACT.value,
                        help="attract (upper sign) or repel")
    parser.add_argument("--k", type=float, default=1.0, help="Wavenumber (1/length)")


def add_distance_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--kr", type=float, help="Single k·r value")
    parser.add_argument("--kr-sweep", help="k·r sweep start:stop:points[:scale]")
    parser.add_argument("--scale", choices=[s.value for s in SweepScale], default=SweepScale.LOG.value,
                        help="Default sweep scale")


def to_radians(values: List[float], degrees: bool) -> List[float]:
    return [math.radians(v) for v in values] if degrees else values
