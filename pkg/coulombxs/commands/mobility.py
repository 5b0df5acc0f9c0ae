# coulombxs/commands/mobility.py
import argparse
import json
import logging
import os
from typing import Dict, List, Optional, Tuple

from pydantic import ValidationError

from coulombxs.commands.common import parse_sweep
from coulombxs.core.errors import UsageError
from coulombxs.schemas import MobilityMethod, SemiconductorSample, SweepSpec
from coulombxs.semiconductor import (
    SWEEP_PRESETS,
    SWEEPABLE,
    build_tables,
    mobility,
    reference_sample,
    sweep_samples,
)
from coulombxs.utils.emit import Table
from coulombxs.utils.parallel import ordered_map

logger = logging.getLogger(__name__)

SAMPLE_KEYS = tuple(SemiconductorSample.model_fields)


# ==========================================
# 1. SAMPLE CONFIG (JSON or key=value)
# ==========================================
def _parse_pairs(lines: List[str], flag: str) -> Dict[str, str]:
    pairs = {}
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(flag, f"expected key=value, got '{line}'")
        key, value = (part.strip() for part in line.split("=", 1))
        pairs[key] = value
    return pairs


def load_sample_config(path: str) -> Dict[str, object]:
    """Read sample parameters from a JSON object or key=value lines."""
    if not os.path.isfile(path):
        raise UsageError("--config", f"no such file '{path}'")
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()

    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise UsageError("--config", f"invalid JSON ({e.msg})") from e
    else:
        data = _parse_pairs(text.splitlines(), "--config")
    _check_keys(data, "--config")
    return data


def _check_keys(data: Dict[str, object], flag: str) -> None:
    unknown = sorted(set(data) - set(SAMPLE_KEYS))
    if unknown:
        raise UsageError(flag, f"unknown key(s) {', '.join(unknown)}; allowed: {', '.join(SAMPLE_KEYS)}")


def build_sample(config_path: Optional[str], overrides: List[str]) -> SemiconductorSample:
    params: Dict[str, object] = {}
    if config_path:
        params.update(load_sample_config(config_path))
    extra = _parse_pairs(overrides, "--param")
    _check_keys(extra, "--param")
    params.update(extra)

    try:
        return reference_sample(**params)
    except ValidationError as e:
        error = e.errors()[0]
        key = error["loc"][0] if error["loc"] else "sample"
        flag = "--param" if key in extra else "--config"
        raise UsageError(flag, f"{key}: {error['msg'].replace('Value error, ', '')}") from e


# ==========================================
# 2. SWEEP SELECTION
# ==========================================
def _sweep_spec(args: argparse.Namespace) -> Optional[SweepSpec]:
    if args.sweep and args.preset:
        raise UsageError("--sweep", "give either --sweep or --preset, not both")
    if args.preset:
        return SWEEP_PRESETS[args.preset]
    if not args.sweep:
        return None

    spec = parse_sweep(args.sweep, "--sweep")
    if spec.variable not in SWEEPABLE:
        raise UsageError("--sweep", f"cannot sweep '{spec.variable}'; allowed: {', '.join(SWEEPABLE)}")
    return spec


def _sweep_samples(base: SemiconductorSample, spec: Optional[SweepSpec], flag: str) -> List[SemiconductorSample]:
    if spec is None:
        return [base]
    try:
        return sweep_samples(base, spec)
    except ValidationError as e:
        error = e.errors()[0]
        key = error["loc"][0] if error["loc"] else spec.variable
        raise UsageError(flag, f"{key}: {error['msg'].replace('Value error, ', '')}") from e


# ==========================================
# 3. ROWS
# ==========================================
def _mobility_row(args: Tuple[Dict, str, Optional[str], object]) -> Dict:
    params, method, variable, tables = args
    sample = SemiconductorSample(**params)
    result = mobility(sample, MobilityMethod(method), tables)
    row = {variable: getattr(sample, variable)} if variable else {}
    row.update({
        "mu_nonasym": result.mu_nonasym,
        "mu_cw": result.mu_cw,
        "ratio": result.mu_nonasym / result.mu_cw,
        "sigma_tr1_prime": result.sigma_tr1_prime,
        "sigma_tr2_prime": result.sigma_tr2_prime,
        "kinematic_ratio": result.validity.ratio,
        "kinematic_ok": result.validity.ok,
    })
    return row


def mobility_sweep(args: argparse.Namespace) -> Table:
    base = build_sample(args.config, args.param or [])
    spec = _sweep_spec(args)
    samples = _sweep_samples(base, spec, "--preset" if args.preset else "--sweep")
    variable = spec.variable if spec is not None else None

    method = MobilityMethod(args.method)
    if args.no_table:
        points = [(s.model_dump(), method.value, variable, None) for s in samples]
        rows = ordered_map(_mobility_row, points, args.threads)
    else:
        tables = build_tables(samples, (args.table_points, args.table_points), args.threads)
        rows = [_mobility_row((s.model_dump(), method.value, variable, tables)) for s in samples]

    parameters = {**base.model_dump(), "method": method.value,
                  "sweep": spec.model_dump(mode="json") if spec is not None else None,
                  "table": not args.no_table}
    return Table(rows=rows, parameters=parameters)


def register(subparsers, parents) -> None:
    p = subparsers.add_parser("mobility", parents=parents,
                              help="Ionized-impurity mobility vs Conwell-Weisskopf")
    p.add_argument("--config", help="Sample file: JSON object or key=value lines")
    p.add_argument("--param", action="append", metavar="KEY=VALUE", help="Override one sample parameter")
    p.add_argument("--sweep", help=f"name:start:stop:points[:scale], name in {{{','.join(SWEEPABLE)}}}")
    p.add_argument("--preset", choices=sorted(SWEEP_PRESETS), help="Built-in sweep")
    p.add_argument("--method", choices=[m.value for m in MobilityMethod], default=MobilityMethod.INTEGRAL.value)
    p.add_argument("--no-table", action="store_true", help="Evaluate σ_tr′ directly instead of interpolating")
    p.add_argument("--table-points", type=int, default=32, help="Nodes per axis of the σ_tr′ table")
    p.set_defaults(handler=mobility_sweep)
