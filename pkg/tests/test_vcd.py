"""Tests for VCD trace output."""

import pytest

from rvsim.core.errors import UndeclaredSignal, WidthMismatch
from rvsim.harness.base import Trace, TraceEvent
from rvsim.harness.registry import load_registry
from rvsim.harness.runner import run_scenario
from rvsim.harness.vcd import write_trace, write_vcd
from tests.vcd_reader import read_vcd


def _section(text: str, time: int) -> str:
    """Lines between `#time` and the next timestamp."""
    after = text.split(f"#{time}\n", 1)[1]
    return after.split("#", 1)[0]


class TestWriteVcd:
    def test_scalar_change(self) -> None:
        text = write_vcd([TraceEvent(0, "clk", 0), TraceEvent(30, "clk", 1)], {"clk": 1}).decode()
        parsed = read_vcd(text)
        assert parsed.timescale == "1ns"
        assert parsed.widths == {"clk": 1}
        assert parsed.events == [(0, "clk", 0), (30, "clk", 1)]
        assert _section(text, 30).strip().startswith("1")

    def test_timescale_header(self) -> None:
        text = write_vcd([TraceEvent(0, "clk", 0)], {"clk": 1}).decode()
        assert "$timescale 1ns $end" in text.splitlines()

    def test_empty_trace(self) -> None:
        text = write_vcd([], {"pc": 32}).decode()
        assert "$enddefinitions" in text
        assert "$dumpvars" in text
        parsed = read_vcd(text)
        assert parsed.has_dumpvars
        assert parsed.events == []

    def test_repeated_values_are_not_emitted(self) -> None:
        events = [TraceEvent(0, "s", 1), TraceEvent(10, "s", 1), TraceEvent(20, "s", 2)]
        parsed = read_vcd(write_vcd(events, {"s": 4}).decode())
        assert parsed.events == [(0, "s", 1), (20, "s", 2)]

    def test_deterministic(self) -> None:
        events = [TraceEvent(0, "a", 3), TraceEvent(10, "a", 1)]
        assert write_vcd(events, {"a": 2}) == write_vcd(events, {"a": 2})

    def test_undeclared_signal(self) -> None:
        with pytest.raises(UndeclaredSignal):
            write_vcd([TraceEvent(0, "ghost", 1)], {"pc": 32})

    def test_value_too_wide(self) -> None:
        with pytest.raises(WidthMismatch):
            write_vcd([TraceEvent(0, "rd", 32)], {"rd": 5})


class TestScenarioTraces:
    def test_pc_increment_at_thirty(self) -> None:
        result = run_scenario(load_registry().get("pc_basic"))
        text = write_vcd(result.trace.events, result.trace.signals).decode()
        assert "b1000000000000000000000000000100" in _section(text, 30)

    def test_every_builtin_trace_reparses(self) -> None:
        for scenario in load_registry().list_all():
            trace = run_scenario(scenario).trace
            parsed = read_vcd(write_vcd(trace.events, trace.signals).decode())
            assert parsed.widths == trace.signals, scenario.name
            expected = {(e.time, e.signal, e.value) for e in trace.events}
            assert set(parsed.events) == expected, scenario.name

    def test_write_trace_creates_directories(self, tmp_path) -> None:
        trace = Trace()
        trace.declare("halted", 1)
        trace.record(0, "halted", 0)
        trace.record(10, "halted", 1)
        path = write_trace(trace, tmp_path / "out" / "core.vcd", scope="core")
        assert path.exists()
        text = path.read_text()
        assert "$scope module core $end" in text
        assert read_vcd(text).events == [(0, "halted", 0), (10, "halted", 1)]
