"""Base types for bench scenarios and waveform traces."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ..core.errors import HarnessError, ScenarioFormatError, UndeclaredSignal, WidthMismatch


@dataclass(frozen=True)
class TraceEvent:
    """A signal taking a new value at a virtual time (ns)."""
    time: int
    signal: str
    value: int


class Trace:
    """
    Records signal changes in time order.

    Only changes are kept, and at most one value per signal per timestamp
    (a later write at the same time replaces the earlier one).
    """

    def __init__(self) -> None:
        self.signals: dict[str, int] = {}
        self._changes: dict[str, list[tuple[int, int]]] = {}

    def declare(self, name: str, width: int) -> None:
        if width < 1:
            raise WidthMismatch(f"signal {name} must be at least 1 bit wide")
        known = self.signals.get(name)
        if known is not None and known != width:
            raise WidthMismatch(f"signal {name} redeclared with width {width} (was {known})")
        self.signals[name] = width
        self._changes.setdefault(name, [])

    def record(self, time: int, signal: str, value: int) -> None:
        width = self.signals.get(signal)
        if width is None:
            raise UndeclaredSignal(f"signal {signal} is not declared")
        value = int(value)
        if value < 0 or value >> width:
            raise WidthMismatch(f"value 0x{value:x} does not fit {signal}[{width}]")

        changes = self._changes[signal]
        if changes and time < changes[-1][0]:
            raise HarnessError(f"{signal}: time {time} is before the last change at {changes[-1][0]}")
        if changes and changes[-1][0] == time:
            changes.pop()
        if changes and changes[-1][1] == value:
            return
        changes.append((time, value))

    def sample(self, time: int, values: dict[str, int]) -> None:
        for name, value in values.items():
            self.record(time, name, value)

    def value_at(self, signal: str, time: int) -> int | None:
        """Value of the last change at or before `time`; None if none yet."""
        if signal not in self.signals:
            raise UndeclaredSignal(f"signal {signal} is not declared")
        current = None
        for t, value in self._changes[signal]:
            if t > time:
                break
            current = value
        return current

    @property
    def events(self) -> list[TraceEvent]:
        order = {name: i for i, name in enumerate(self.signals)}
        merged = [
            TraceEvent(t, name, value)
            for name, changes in self._changes.items()
            for t, value in changes
        ]
        merged.sort(key=lambda e: (e.time, order[e.signal]))
        return merged


@dataclass(frozen=True)
class Stimulus:
    """One scheduled operation on a bench."""
    time: int
    action: str
    args: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class Expectation:
    signal: str
    time: int
    value: int


@dataclass
class Scenario:
    name: str
    target: str
    stimulus: list[Stimulus]
    expectations: list[Expectation]
    description: str = ""
    source: Path | None = None

    def __post_init__(self) -> None:
        times = [s.time for s in self.stimulus]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ScenarioFormatError(f"scenario {self.name}: stimulus timestamps must be strictly increasing")


@dataclass(frozen=True)
class ExpectationResult:
    expectation: Expectation
    observed: int | None

    @property
    def passed(self) -> bool:
        return self.observed == self.expectation.value

    def describe(self) -> str:
        e = self.expectation
        seen = "none" if self.observed is None else f"0x{self.observed:x}"
        verdict = "ok" if self.passed else "FAIL"
        return f"{verdict} {e.signal}@{e.time}ns expected 0x{e.value:x} observed {seen}"


@dataclass
class ScenarioResult:
    scenario: Scenario
    results: list[ExpectationResult]
    trace: Trace

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[ExpectationResult]:
        return [r for r in self.results if not r.passed]
