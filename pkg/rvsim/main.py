"""Command-line entry point: assemble, run, bench, metrics, disasm."""

import argparse
import logging
import sys
from typing import Callable, Sequence

from .config import LOG_LEVEL, check_settings
from .core.context import CliConfig
from .core.errors import handle_error
from .handlers import assemble_cmd, bench_cmd, disasm_cmd, metrics_cmd, run_cmd
from .utils.text import parse_hex

logger = logging.getLogger(__name__)

HANDLERS: dict[str, Callable[[CliConfig], int]] = {
    "assemble": assemble_cmd,
    "run": run_cmd,
    "bench": bench_cmd,
    "metrics": metrics_cmd,
    "disasm": disasm_cmd,
}


def _hex_arg(text: str) -> int:
    try:
        value = parse_hex(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a hex number")
    if value < 0 or value >> 32:
        raise argparse.ArgumentTypeError(f"{text!r} is not a 32-bit address")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rvsim", description="RV32I simulator, assembler and bench harness")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("assemble", help="assemble a source file into a memory image")
    p.add_argument("input", metavar="in.s")
    p.add_argument("-o", "--output", metavar="out.hex")
    p.add_argument("--origin", type=_hex_arg, help="load address (hex), default: instruction window base")
    p.add_argument("--format", dest="image_format", choices=("hex", "bin"), default="hex")

    p = sub.add_parser("run", help="run a memory image on the single-cycle core")
    p.add_argument("input", metavar="image")
    p.add_argument("--pc-reset", type=_hex_arg)
    p.add_argument("--imem-base", type=_hex_arg)
    p.add_argument("--imem-size", type=_hex_arg)
    p.add_argument("--dmem-base", type=_hex_arg)
    p.add_argument("--dmem-size", type=_hex_arg)
    p.add_argument("--max-cycles", type=_positive_int)
    p.add_argument("--trace", metavar="out.vcd", help="write the core trace as VCD")
    p.add_argument("--dump", action="store_true", help="print pc, registers, cycle and status")

    p = sub.add_parser("bench", help="run builtin bench scenarios")
    p.add_argument("input", metavar="component|scenario|all")
    p.add_argument("--trace-dir", metavar="dir", help="write one VCD per scenario")
    p.add_argument("--scenarios", dest="scenarios_dir", metavar="dir", help="scenario directory")

    p = sub.add_parser("metrics", help="summarize a code-generation trial log")
    p.add_argument("input", metavar="trials.log")
    p.add_argument("--format", dest="metrics_format", choices=("table", "csv"), default="table")

    p = sub.add_parser("disasm", help="disassemble a memory image")
    p.add_argument("input", metavar="image")
    p.add_argument("--origin", type=_hex_arg, help="address of words without an @ line (hex)")

    return parser


def parse_config(argv: Sequence[str]) -> CliConfig:
    """Parse an argument vector; argparse exits with status 2 on usage errors."""
    return CliConfig.from_args(build_parser().parse_args(list(argv)))


def dispatch(argv: Sequence[str]) -> int:
    """
    Run one command and return its exit status: 0 success, 1 failed
    scenario or error halt, 2 usage, input or parse error.
    """
    try:
        config = parse_config(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    logger.debug(f"Dispatching {config.command}: {config}")
    try:
        check_settings()
        return HANDLERS[config.command](config)
    except Exception as e:
        return handle_error(e)


def run() -> None:
    logging.basicConfig(
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        level=getattr(logging, LOG_LEVEL, logging.WARNING),
        stream=sys.stderr,
    )
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    run()
