# coulombxs/commands/optical.py
import argparse
import logging
from typing import Dict, Tuple

from coulombxs.commands.common import add_distance_args, values_or_sweep
from coulombxs.optical import AMPLITUDE_METHODS, flux_balance, forward_amplitude, kernel_total
from coulombxs.schemas import Sign, SweepScale
from coulombxs.utils.emit import Table
from coulombxs.utils.parallel import ordered_map

logger = logging.getLogger(__name__)


def _balance_row(args: Tuple[float, str, float, bool]) -> Dict:
    xi, sign, kr, with_kernel = args
    balance = flux_balance(xi, kr, Sign(sign))
    row = balance.model_dump()
    if with_kernel:
        row["kernel_total"] = kernel_total(xi, Sign(sign), kr)
    return row


def optical_check(args: argparse.Namespace) -> Table:
    sign = Sign(args.sign)
    krs = values_or_sweep(args.kr, args.kr_sweep, "--kr-sweep", "kr", SweepScale(args.scale))
    amplitude = forward_amplitude(args.xi, sign, args.amplitude)
    logger.info(f"optical-check: xi={args.xi}, sign={sign.value}, A=({amplitude.re:.6g}, {amplitude.im:.6g}) "
                f"via {args.amplitude}")

    rows = ordered_map(_balance_row, [(args.xi, sign.value, kr, args.kernel) for kr in krs], args.threads)
    parameters = {"xi": args.xi, "sign": sign.value, "amplitude_method": args.amplitude,
                  "amplitude_re": amplitude.re, "amplitude_im": amplitude.im}
    return Table(rows=rows, parameters=parameters)


def register(subparsers, parents) -> None:
    p = subparsers.add_parser("optical-check", parents=parents,
                              help="Flux balance J1 vs J2 + J3 at finite kr (attractive by default)")
    p.add_argument("--xi", type=float, required=True, help="Sommerfeld parameter ξ > 0")
    p.add_argument("--sign", choices=[s.value for s in Sign], default=Sign.ATTRACT.value,
                   help="repel is experimental")
    add_distance_args(p)
    p.add_argument("--amplitude", choices=list(AMPLITUDE_METHODS), default="closed",
                   help="Forward-amplitude path reported in the metadata")
    p.add_argument("--kernel", action="store_true", help="Add the solid-angle integral of |f̂|²")
    p.set_defaults(handler=optical_check)
