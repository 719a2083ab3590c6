"""
Scenario data files (`.bench`).

    # comment
    name pc_basic
    target pc
    description PC reset and increment
    0 reset
    30 clock
    10 clock repeat=1000 step=10
    expect pc_out 30 40000004

Stimulus lines are `<time-ns> <action> [key=value ...]` split with shell
quoting rules. `repeat=<n> step=<ns>` expands one line into n stimuli.
Expected values are hex.
"""

import logging
import shlex
from pathlib import Path

from ..core.errors import HarnessError, ScenarioFormatError
from ..utils.text import parse_hex
from .base import Expectation, Scenario, Stimulus

logger = logging.getLogger(__name__)

BENCH_SUFFIX = ".bench"


def _decimal(text: str, what: str, where: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise ScenarioFormatError(f"{where}: {what} must be a decimal integer, got {text!r}")
    if value < 0:
        raise ScenarioFormatError(f"{where}: {what} must not be negative")
    return value


def _stimuli(fields: list[str], where: str) -> list[Stimulus]:
    if len(fields) < 2:
        raise ScenarioFormatError(f"{where}: stimulus needs a time and an action")
    time = _decimal(fields[0], "time", where)
    action = fields[1]
    args: dict[str, str] = {}
    for item in fields[2:]:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ScenarioFormatError(f"{where}: expected key=value, got {item!r}")
        args[key] = value

    repeat = _decimal(args.pop("repeat", "1"), "repeat", where)
    step_text = args.pop("step", None)
    if repeat > 1 and step_text is None:
        raise ScenarioFormatError(f"{where}: repeat needs step=<ns>")
    step = _decimal(step_text, "step", where) if step_text is not None else 0
    if repeat > 1 and step == 0:
        raise ScenarioFormatError(f"{where}: step must be positive")
    return [Stimulus(time + i * step, action, dict(args)) for i in range(repeat)]


def parse_scenario(text: str, source: Path | None = None) -> Scenario:
    """
    Raises:
        ScenarioFormatError: malformed line, missing name/target, unordered times
    """
    label = str(source) if source is not None else "<bench>"
    name = target = None
    description = ""
    stimulus: list[Stimulus] = []
    expectations: list[Expectation] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        where = f"{label}:{lineno}"
        try:
            fields = shlex.split(raw, comments=True)
        except ValueError as e:
            raise ScenarioFormatError(f"{where}: {e}")
        if not fields:
            continue

        keyword = fields[0]
        if keyword == "name":
            if len(fields) != 2:
                raise ScenarioFormatError(f"{where}: name takes one identifier")
            name = fields[1]
        elif keyword == "target":
            if len(fields) != 2:
                raise ScenarioFormatError(f"{where}: target takes one component")
            target = fields[1]
        elif keyword == "description":
            description = " ".join(fields[1:])
        elif keyword == "expect":
            if len(fields) != 4:
                raise ScenarioFormatError(f"{where}: expect <signal> <time> <hexvalue>")
            try:
                value = parse_hex(fields[3])
            except ValueError:
                raise ScenarioFormatError(f"{where}: expected value {fields[3]!r} is not hex")
            expectations.append(Expectation(fields[1], _decimal(fields[2], "time", where), value))
        else:
            stimulus.extend(_stimuli(fields, where))

    if name is None or target is None:
        raise ScenarioFormatError(f"{label}: name and target are required")
    try:
        return Scenario(name, target, stimulus, expectations, description, source)
    except HarnessError as e:
        raise ScenarioFormatError(f"{label}: {e}")


def load_scenario(path: str | Path) -> Scenario:
    p = Path(path)
    return parse_scenario(p.read_text(encoding="utf-8"), source=p)


def load_directory(directory: str | Path) -> list[Scenario]:
    """All `.bench` files in a directory, sorted by file name."""
    d = Path(directory)
    scenarios = [load_scenario(p) for p in sorted(d.glob(f"*{BENCH_SUFFIX}"))]
    logger.info(f"Loaded {len(scenarios)} scenarios from {d}")
    return scenarios
