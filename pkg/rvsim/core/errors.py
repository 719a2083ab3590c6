"""Unified error handling for the simulator and its tools."""

import logging
import sys

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class SimError(Exception):
    """Base exception for all rvsim errors."""
    pass


class ConfigurationError(SimError):
    """Invalid memory map or settings."""
    pass


class IsaError(SimError):
    """Instruction encoding/decoding error."""
    pass


class IllegalInstruction(IsaError):
    """Word matches no RV32I base encoding."""

    def __init__(self, word: int):
        self.word = word
        super().__init__(f"illegal instruction 0x{word:08x}")


class ImmediateOutOfRange(IsaError):
    """Immediate does not fit the instruction format."""
    pass


class IndexOutOfRange(SimError):
    """Register index outside 0..31."""
    pass


class AlignmentError(SimError):
    """Base class for alignment faults."""
    pass


class MisalignedTarget(AlignmentError):
    """PC target is not word-aligned."""
    pass


class MisalignedFetch(AlignmentError):
    """Instruction fetch from a non-word-aligned address."""
    pass


class MisalignedAccess(AlignmentError):
    """Data access not naturally aligned to its width."""
    pass


class ImageError(SimError):
    """Memory image problem."""
    pass


class ImageOverflow(ImageError):
    """Image does not fit its memory window."""
    pass


class ImageFormatError(ImageError):
    """Malformed image file."""
    pass


class HaltedMachine(SimError):
    """Step requested on a machine that is not running."""
    pass


class AssemblerError(SimError):
    """Assembly error with the source line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class UndefinedLabel(AssemblerError):
    pass


class DuplicateLabel(AssemblerError):
    pass


class AsmSyntaxError(AssemblerError):
    pass


class HarnessError(SimError):
    """Bench harness error."""
    pass


class UnknownScenario(HarnessError):
    pass


class UnknownSignal(HarnessError):
    pass


class UndeclaredSignal(HarnessError):
    pass


class WidthMismatch(HarnessError):
    pass


class ScenarioFormatError(HarnessError):
    pass


class InconsistentLog(SimError):
    """Trial log violates the trial record rules."""
    pass


def handle_error(error: BaseException) -> int:
    """
    Unified error handler for command entry points.

    Args:
        error: Exception raised by a command

    Returns:
        Process exit status
    """
    if isinstance(error, SimError):
        logger.debug(f"{type(error).__name__}: {error}")
        print(f"error: {error}", file=sys.stderr)
        return EXIT_USAGE

    if isinstance(error, OSError):
        logger.error(f"I/O error: {error}")
        print(f"error: {error}", file=sys.stderr)
        return EXIT_USAGE

    logger.exception(f"Unhandled error: {error}")
    print(f"error: {error}", file=sys.stderr)
    return EXIT_USAGE
