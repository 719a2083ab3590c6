"""Handlers module: one function per CLI subcommand."""

from .assemble import assemble_cmd
from .bench import bench_cmd
from .disasm import disasm_cmd
from .metrics import metrics_cmd
from .run import run_cmd

__all__ = ["assemble_cmd", "bench_cmd", "disasm_cmd", "metrics_cmd", "run_cmd"]
