"""RV32I simulator, assembler, bench harness and trial metrics."""

__version__ = "0.1.0"
