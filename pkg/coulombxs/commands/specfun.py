# coulombxs/commands/specfun.py
# Diagnostic evaluation of the special functions; not listed in --help.
import argparse
import logging
from typing import Dict, Optional

from coulombxs.commands.common import sweep_values
from coulombxs.core.errors import UsageError
from coulombxs.schemas import RegimeTag, Sign, SweepScale
from coulombxs.specfun import (
    complex_digamma,
    complex_gamma,
    coulomb_u,
    g1,
    g2,
    kummer_m,
    log_gamma,
    reciprocal_gamma,
    tricomi_u,
    u1_u2,
)
from coulombxs.utils.emit import Table

logger = logging.getLogger(__name__)

ONE_ARGUMENT = {
    "gamma": complex_gamma,
    "loggamma": log_gamma,
    "rgamma": reciprocal_gamma,
    "digamma": complex_digamma,
}
COULOMB_ARGUMENT = {
    "coulomb-u": coulomb_u,
    "g1": g1,
    "g2": g2,
}
FUNCTIONS = tuple(ONE_ARGUMENT) + ("kummer", "tricomi", "u1u2") + tuple(COULOMB_ARGUMENT)


def _complex(token: Optional[str], flag: str) -> complex:
    if token is None:
        raise UsageError(flag, "value required for this function")
    try:
        return complex(token.replace(" ", "").replace("i", "j"))
    except ValueError as e:
        raise UsageError(flag, f"not a complex number: '{token}'") from e


def _row(label: str, arg: float, value: complex) -> Dict:
    return {label: arg, "re": value.real, "im": value.imag}


def specfun_eval(args: argparse.Namespace) -> Table:
    name = args.function
    regime = RegimeTag(args.regime) if args.regime else None

    if name in COULOMB_ARGUMENT or name == "u1u2":
        if args.xi is None:
            raise UsageError("--xi", f"{name} needs --xi")
        zs = sweep_values(args.z_sweep, "--z-sweep", "z", SweepScale(args.scale)) if args.z_sweep else [args.z]
        if zs == [None]:
            raise UsageError("--z", "give --z or --z-sweep")
        if name == "u1u2":
            u1, u2 = u1_u2(args.xi, Sign(args.sign), zs)
            rows = [{"z": z, "u1_re": complex(p).real, "u1_im": complex(p).imag,
                     "u2_re": complex(q).real, "u2_im": complex(q).imag} for z, p, q in zip(zs, u1, u2)]
        else:
            values = COULOMB_ARGUMENT[name](args.xi, Sign(args.sign), zs)
            rows = [_row("z", z, complex(v)) for z, v in zip(zs, values)]
        return Table(rows=rows, parameters={"function": name, "xi": args.xi, "sign": args.sign})

    if name in ONE_ARGUMENT:
        w = _complex(args.w, "--w")
        value = complex(ONE_ARGUMENT[name](w))
        return Table(rows=[{"function": name, "re": value.real, "im": value.imag}],
                     parameters={"function": name, "w": args.w})

    a = _complex(args.a, "--a")
    if args.z_sweep:
        # t = i z along the positive imaginary axis
        zs = sweep_values(args.z_sweep, "--z-sweep", "z", SweepScale(args.scale))
        ts = [1j * z for z in zs]
        if name == "kummer":
            values = kummer_m(a, _complex(args.b, "--b"), ts)
        else:
            values = tricomi_u(a, ts, regime)
        rows = [_row("z", z, complex(v)) for z, v in zip(zs, values)]
        return Table(rows=rows, parameters={"function": name, "a": args.a, "b": args.b,
                                            "regime": args.regime})

    t = _complex(args.t, "--t")
    if name == "kummer":
        value = complex(kummer_m(a, _complex(args.b, "--b"), t))
    else:
        value = complex(tricomi_u(a, t, regime))
    logger.debug(f"{name}(a={a}, t={t}) = {value}")
    return Table(rows=[{"function": name, "re": value.real, "im": value.imag}],
                 parameters={"function": name, "a": args.a, "b": args.b, "t": args.t,
                             "regime": args.regime})


def register(subparsers, parents) -> None:
    p = subparsers.add_parser("specfun-eval", parents=parents)
    p.add_argument("--function", choices=list(FUNCTIONS), required=True)
    p.add_argument("--w", help="Argument of Γ, ln Γ, 1/Γ or ψ, e.g. 1+2j")
    p.add_argument("--a", help="First parameter of M or U")
    p.add_argument("--b", default="1", help="Second parameter of M")
    p.add_argument("--t", help="Argument of M or U")
    p.add_argument("--regime", choices=[r.value for r in RegimeTag], help="Force a U evaluation regime")
    p.add_argument("--xi", type=float, help="ξ for coulomb-u, g1, g2 and u1u2")
    p.add_argument("--sign", choices=[s.value for s in Sign], default=Sign.ATTRACT.value)
    p.add_argument("--z", type=float, help="Single z for coulomb-u, g1, g2 and u1u2")
    p.add_argument("--z-sweep", help="z sweep start:stop:points[:scale] (t = iz)")
    p.add_argument("--scale", choices=[s.value for s in SweepScale], default=SweepScale.LINEAR.value)
    p.set_defaults(handler=specfun_eval)
