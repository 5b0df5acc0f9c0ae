# coulombxs/main.py
import argparse
import logging
import sys
from typing import Dict, List, Optional

from pydantic import ValidationError

from coulombxs import __version__
from coulombxs.commands import cross_sections, mobility, optical, specfun
from coulombxs.core.config import get_settings
from coulombxs.core.errors import CoulombError, UsageError
from coulombxs.core.logging_config import setup_logging
from coulombxs.schemas import Command, OutputFormat
from coulombxs.utils.emit import emit, write_output

logger = logging.getLogger(__name__)

PROG = "coulombxs"
VISIBLE_COMMANDS = "{diff-xs,total-xs,transport-xs,universal,optical-check,mobility}"


# ==========================================
# 1. PARSER
# ==========================================
def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.CSV.value,
                        help="Table format on stdout or --out")
    common.add_argument("--out", help="Write the table to this file instead of stdout")
    common.add_argument("--threads", type=int, help="Worker processes for sweeps (default: all cores)")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        help="Console log level (stderr)")
    common.add_argument("--degrees", action="store_true", help="Read angles in degrees")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Nonasymptotic Coulomb scattering: cross-sections at finite distance and carrier mobility",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="subcommand", metavar=VISIBLE_COMMANDS, required=True)

    parents = [_common_parser()]
    cross_sections.register(subparsers, parents)
    optical.register(subparsers, parents)
    mobility.register(subparsers, parents)
    specfun.register(subparsers, parents)
    return parser


def _params(args: argparse.Namespace) -> Dict:
    skip = {"handler", "subcommand", "format", "out"}
    params = {}
    for key, value in vars(args).items():
        if key in skip:
            continue
        params[key] = ",".join(value) if isinstance(value, list) else value
    return params


def _flag_for(error: ValidationError, args: argparse.Namespace) -> str:
    """The option behind a validation error, or the subcommand when no option matches."""
    loc = error.errors()[0].get("loc") or ()
    key = str(loc[0]) if loc else ""
    if key and key in vars(args) and key not in {"handler", "subcommand"}:
        return "--" + key.replace("_", "-")
    return args.subcommand


# ==========================================
# 2. ENTRY POINT
# ==========================================
def run(argv: Optional[List[str]] = None) -> int:
    """Parse, compute, emit. Returns 0, 2 (usage or domain error) or 3 (numerical failure)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 on --help/--version
        return int(e.code or 0)

    settings = get_settings()
    setup_logging(args.log_level or settings.log_level, settings.log_dir)

    try:
        if args.threads is not None and args.threads < 1:
            raise UsageError("--threads", "must be at least 1")
        command = Command(subcommand=args.subcommand, params=_params(args),
                          output=args.format, out_path=args.out)
        logger.info(f"Running {command.subcommand}")

        table = args.handler(args)
        write_output(emit(table, command.output), command.out_path)
        return 0

    except UsageError as e:
        logger.error(f"Usage error: {e}")
        print(f"{PROG}: error: {e}", file=sys.stderr)
        return 2
    except ValidationError as e:
        message = e.errors()[0]["msg"].replace("Value error, ", "")
        logger.error(f"Validation failed: {message}")
        print(f"{PROG}: error: {_flag_for(e, args)}: {message}", file=sys.stderr)
        return 2
    except CoulombError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"{PROG}: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        logger.error(f"Invalid value: {e}")
        print(f"{PROG}: error: {e}", file=sys.stderr)
        return 2
    except Exception as e:
        logger.exception(f"Unexpected failure in {args.subcommand}: {e}")
        raise
