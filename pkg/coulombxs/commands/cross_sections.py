# coulombxs/commands/cross_sections.py
import argparse
import logging
from typing import Dict, Tuple

from coulombxs.commands.common import (
    add_distance_args,
    add_interaction_args,
    sweep_values,
    to_radians,
    values_or_sweep,
)
from coulombxs.core.errors import UsageError
from coulombxs.integralxs import (
    sigma_total,
    sigma_transport,
    total_remainder,
    universal_totals,
    universal_transport,
)
from coulombxs.scattering import differential_xs, geometry, rutherford_xs
from coulombxs.schemas import CoulombInteraction, Sign, SweepScale, XsMethod
from coulombxs.utils.emit import Table
from coulombxs.utils.parallel import ordered_map

logger = logging.getLogger(__name__)


# ==========================================
# 1. DIFFERENTIAL CROSS-SECTION (diff-xs)
# ==========================================
def _diff_row(args: Tuple[float, str, float, float, float]) -> Dict:
    xi, sign, k, r, theta = args
    ci = CoulombInteraction(xi=xi, sign=Sign(sign), k=k)
    g = geometry(ci, r, theta)
    return {
        "theta": theta,
        "x": g.x,
        "sigma1": differential_xs(ci, g),
        "sigma_rutherford": rutherford_xs(ci, theta) if theta > 0 else None,
    }


def diff_xs(args: argparse.Namespace) -> Table:
    ci = CoulombInteraction(xi=args.xi, sign=Sign(args.sign), k=args.k)
    thetas = values_or_sweep(args.theta, args.theta_sweep, "--theta-sweep", "theta", SweepScale(args.scale))
    thetas = to_radians(thetas, args.degrees)
    if not args.kr > 0:
        raise UsageError("--kr", "k·r must be positive")
    r = args.kr / ci.k
    logger.info(f"diff-xs: xi={ci.xi}, sign={ci.sign.value}, kr={args.kr:g}, {len(thetas)} angles")

    rows = ordered_map(_diff_row, [(ci.xi, ci.sign.value, ci.k, r, th) for th in thetas], args.threads)
    return Table(rows=rows, parameters={"xi": ci.xi, "sign": ci.sign.value, "k": ci.k, "kr": args.kr})


# ==========================================
# 2. TOTAL AND TRANSPORT (total-xs, transport-xs)
# ==========================================
def _method(value: str):
    return None if value == "auto" else XsMethod(value)


def _total_row(args: Tuple[float, str, float, float, str]) -> Dict:
    xi, sign, k, kr, method = args
    ci = CoulombInteraction(xi=xi, sign=Sign(sign), k=k)
    result = sigma_total(ci, kr / k, _method(method))
    return {"kr": kr, "r": result.r_used, "sigma_tot": result.value,
            "method": result.method.value, "remainder": total_remainder(ci)}


def _transport_row(args: Tuple[float, str, float, float, str]) -> Dict:
    xi, sign, k, kr, method = args
    ci = CoulombInteraction(xi=xi, sign=Sign(sign), k=k)
    result = sigma_transport(ci, kr / k, _method(method))
    return {"kr": kr, "r": result.r_used, "sigma_tr": result.value, "method": result.method.value}


def _integral_xs(args: argparse.Namespace, row_fn) -> Table:
    ci = CoulombInteraction(xi=args.xi, sign=Sign(args.sign), k=args.k)
    krs = values_or_sweep(args.kr, args.kr_sweep, "--kr-sweep", "kr", SweepScale(args.scale))
    if any(kr <= 0 for kr in krs):
        raise UsageError("--kr", "k·r must be positive")
    points = [(ci.xi, ci.sign.value, ci.k, kr, args.method) for kr in krs]
    rows = ordered_map(row_fn, points, args.threads)
    return Table(rows=rows, parameters={"xi": ci.xi, "sign": ci.sign.value, "k": ci.k, "method": args.method})


def total_xs(args: argparse.Namespace) -> Table:
    return _integral_xs(args, _total_row)


def transport_xs(args: argparse.Namespace) -> Table:
    return _integral_xs(args, _transport_row)


# ==========================================
# 3. UNIVERSAL FUNCTIONS (universal)
# ==========================================
def _universal_row(args: Tuple[float, str]) -> Dict:
    xi, kind = args
    if kind == "transport":
        return {"xi": xi,
                "Itr_attract": universal_transport(xi, Sign.ATTRACT),
                "Itr_repel": universal_transport(xi, Sign.REPEL)}
    totals = universal_totals(xi)
    return {"xi": xi, "I_attract": totals.I_attract, "I_repel": totals.I_repel, "err": totals.err}


def universal(args: argparse.Namespace) -> Table:
    xis = sweep_values(args.xi_sweep, "--xi-sweep", "xi", SweepScale(args.scale))
    rows = ordered_map(_universal_row, [(xi, args.kind) for xi in xis], args.threads)
    return Table(rows=rows, parameters={"kind": args.kind, "xi_sweep": args.xi_sweep})


# ==========================================
# 4. PARSERS
# ==========================================
def register(subparsers, parents) -> None:
    p = subparsers.add_parser("diff-xs", parents=parents, help="Differential cross-section σ₁(θ) vs Rutherford")
    add_interaction_args(p)
    p.add_argument("--kr", type=float, required=True, help="k·r of the detector")
    p.add_argument("--theta", type=float, help="Single angle")
    p.add_argument("--theta-sweep", help="Angle sweep start:stop:points[:scale]")
    p.add_argument("--scale", choices=[s.value for s in SweepScale], default=SweepScale.LINEAR.value)
    p.set_defaults(handler=diff_xs)

    for name, handler, text in (("total-xs", total_xs, "Total cross-section at finite r"),
                                ("transport-xs", transport_xs, "Transport cross-section at finite r")):
        p = subparsers.add_parser(name, parents=parents, help=text)
        add_interaction_args(p)
        add_distance_args(p)
        p.add_argument("--method", choices=["auto", "direct", "regularized"], default="auto")
        p.set_defaults(handler=handler)

    p = subparsers.add_parser("universal", parents=parents, help="Universal functions I±(ξ) or I^tr±(ξ)")
    p.add_argument("--xi-sweep", required=True, help="ξ sweep start:stop:points[:scale]")
    p.add_argument("--kind", choices=["total", "transport"], default="total")
    p.add_argument("--scale", choices=[s.value for s in SweepScale], default=SweepScale.LINEAR.value)
    p.set_defaults(handler=universal)
