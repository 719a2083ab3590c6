"""Tests for benches, scenario loading, the registry and the runner."""

import asyncio

import pytest

from rvsim.assembler import assemble
from rvsim.core.errors import HarnessError, ScenarioFormatError, UndeclaredSignal, UnknownScenario, UnknownSignal, WidthMismatch
from rvsim.harness.base import Expectation, Scenario, Stimulus, Trace, TraceEvent
from rvsim.harness.benches import BENCHES, ControlBench, DmemBench, ProcessorBench
from rvsim.harness.loader import load_directory, parse_scenario
from rvsim.harness.registry import ScenarioRegistry, load_registry
from rvsim.harness.runner import run_all, run_scenario

BUILTIN = load_registry()


@pytest.mark.parametrize("name", BUILTIN.list_names())
def test_builtin_scenario_passes(name: str) -> None:
    result = run_scenario(BUILTIN.get(name))
    assert result.passed, [r.describe() for r in result.failures]
    assert result.results


def test_every_component_has_a_scenario() -> None:
    assert {s.target for s in BUILTIN.list_all()} == set(BENCHES)


def test_control_instr_expectations_match_assembled_words() -> None:
    for scenario in BUILTIN.list_all():
        if scenario.target != "control":
            continue
        issued = {s.time: s.args["asm"] for s in scenario.stimulus if s.action == "issue" and "asm" in s.args}
        for e in scenario.expectations:
            if e.signal == "instr" and e.time in issued:
                assert assemble(issued[e.time]).words[0] == e.value, (scenario.name, issued[e.time])


def test_control_and_word() -> None:
    bench = ControlBench()
    bench.apply("issue", {"asm": "and x3, x1, x2"})
    assert bench.values()["instr"] == 0x0020F1B3
    assert bench.values()["alu_funct3"] == 0b111


class TestTrace:
    def test_keeps_changes_only(self) -> None:
        trace = Trace()
        trace.declare("s", 4)
        for t, v in [(0, 1), (10, 1), (20, 2), (30, 2)]:
            trace.record(t, "s", v)
        assert [(e.time, e.value) for e in trace.events] == [(0, 1), (20, 2)]

    def test_same_time_replaces(self) -> None:
        trace = Trace()
        trace.declare("s", 4)
        trace.record(10, "s", 3)
        trace.record(10, "s", 5)
        assert trace.events == [TraceEvent(10, "s", 5)]

    def test_value_at(self) -> None:
        trace = Trace()
        trace.declare("s", 8)
        trace.record(10, "s", 7)
        trace.record(30, "s", 9)
        assert trace.value_at("s", 5) is None
        assert trace.value_at("s", 10) == 7
        assert trace.value_at("s", 29) == 7
        assert trace.value_at("s", 1000) == 9

    def test_events_ordered_by_time_then_declaration(self) -> None:
        trace = Trace()
        trace.declare("b", 1)
        trace.declare("a", 1)
        trace.sample(0, {"a": 1, "b": 1})
        trace.sample(10, {"a": 0})
        assert [(e.time, e.signal) for e in trace.events] == [(0, "b"), (0, "a"), (10, "a")]

    def test_errors(self) -> None:
        trace = Trace()
        trace.declare("s", 1)
        with pytest.raises(UndeclaredSignal):
            trace.record(0, "t", 0)
        with pytest.raises(WidthMismatch):
            trace.record(0, "s", 2)
        with pytest.raises(WidthMismatch):
            trace.declare("s", 2)
        trace.record(20, "s", 1)
        with pytest.raises(HarnessError):
            trace.record(10, "s", 0)


class TestLoader:
    def test_parse(self) -> None:
        scenario = parse_scenario(
            """
            name demo   # comment
            target pc
            description "two clocks"
            0 reset
            10 clock repeat=2 step=10
            expect pc_out 20 40000008
            """
        )
        assert (scenario.name, scenario.target, scenario.description) == ("demo", "pc", "two clocks")
        assert [s.time for s in scenario.stimulus] == [0, 10, 20]
        assert scenario.stimulus[1] == Stimulus(10, "clock", {})
        assert scenario.expectations == [Expectation("pc_out", 20, 0x40000008)]

    def test_quoted_argument(self) -> None:
        scenario = parse_scenario('name c\ntarget control\n10 issue asm="lw x8, 0(x9)"')
        assert scenario.stimulus[0].args == {"asm": "lw x8, 0(x9)"}

    @pytest.mark.parametrize(
        "text",
        [
            "target pc\n0 reset",  # нет name
            "name x\n0 reset",  # нет target
            "name x\ntarget pc\nten reset",
            "name x\ntarget pc\n0",
            "name x\ntarget pc\n0 clock next",
            "name x\ntarget pc\n0 clock repeat=3",
            "name x\ntarget pc\n0 clock repeat=3 step=0",
            "name x\ntarget pc\n10 reset\n10 clock",
            "name x\ntarget pc\nexpect pc_out 10",
            "name x\ntarget pc\nexpect pc_out 10 zz",
            "name x\ntarget pc\n0 reset 'unclosed",
        ],
    )
    def test_malformed(self, text: str) -> None:
        with pytest.raises(ScenarioFormatError):
            parse_scenario(text)

    def test_error_names_line(self) -> None:
        with pytest.raises(ScenarioFormatError, match=":3:"):
            parse_scenario("name x\ntarget pc\nbad reset")

    def test_directory(self, tmp_path) -> None:
        (tmp_path / "b.bench").write_text("name second\ntarget pc\n")
        (tmp_path / "a.bench").write_text("name first\ntarget pc\n")
        (tmp_path / "notes.txt").write_text("ignored")
        assert [s.name for s in load_directory(tmp_path)] == ["first", "second"]


class TestRegistry:
    def test_select(self) -> None:
        assert {s.target for s in BUILTIN.select("processor")} == {"processor"}
        assert [s.name for s in BUILTIN.select("pc_basic")] == ["pc_basic"]
        assert len(BUILTIN.select("all")) == len(BUILTIN.list_names())

    def test_unknown_name(self) -> None:
        with pytest.raises(UnknownScenario):
            BUILTIN.select("no_such_scenario")

    def test_unknown_target(self) -> None:
        registry = ScenarioRegistry()
        with pytest.raises(UnknownScenario):
            registry.register(Scenario("x", "fpu", [], []))

    def test_custom_directory(self, tmp_path) -> None:
        (tmp_path / "mine.bench").write_text("name mine\ntarget alu\n")
        assert load_registry(tmp_path).list_names() == ["mine"]


class TestRunner:
    def test_wrong_expectation_fails(self) -> None:
        scenario = parse_scenario("name w\ntarget pc\n0 reset\n10 clock\nexpect pc_out 10 40000008")
        result = run_scenario(scenario)
        assert not result.passed
        [failure] = result.failures
        assert failure.observed == 0x40000004
        assert failure.describe() == "FAIL pc_out@10ns expected 0x40000008 observed 0x40000004"

    def test_unknown_signal(self) -> None:
        scenario = parse_scenario("name w\ntarget pc\nexpect pc_in 0 0")
        with pytest.raises(UnknownSignal):
            run_scenario(scenario)

    def test_unknown_target(self) -> None:
        with pytest.raises(UnknownScenario):
            run_scenario(Scenario("x", "fpu", [], []))

    def test_unknown_action(self) -> None:
        with pytest.raises(ScenarioFormatError):
            run_scenario(parse_scenario("name w\ntarget pc\n10 explode"))

    def test_pc_count_reaches_thousand_increments(self) -> None:
        result = run_scenario(BUILTIN.get("pc_count"))
        assert result.trace.value_at("pc_out", 10000) == 0x40000000 + 4 * 1000

    def test_run_all_keeps_order(self) -> None:
        scenarios = BUILTIN.list_all()[::-1]
        results = asyncio.run(run_all(scenarios))
        assert [r.scenario.name for r in results] == [s.name for s in scenarios]
        assert all(r.passed for r in results)


class TestBenches:
    def test_dmem_signed_read(self) -> None:
        bench = DmemBench()
        bench.apply("write", {"addr": "80000000", "data": "8000", "width": "half"})
        bench.apply("read", {"addr": "80000000", "width": "half", "signed": "1"})
        assert bench.values()["data_out"] == 0xFFFF8000

    def test_dmem_bad_width(self) -> None:
        with pytest.raises(ScenarioFormatError):
            DmemBench().apply("read", {"addr": "80000000", "width": "dword"})

    def test_control_needs_one_instruction(self) -> None:
        with pytest.raises(ScenarioFormatError):
            ControlBench().apply("issue", {"asm": "nop\nnop"})

    def test_control_values(self) -> None:
        bench = ControlBench()
        bench.apply("issue", {"asm": "lhu x2, 2(x1)"})
        values = bench.values()
        assert values["mem_read"] == 1 and values["mem_unsigned"] == 1
        assert set(values) == set(ControlBench.signals)

    def test_processor_missing_program(self, tmp_path) -> None:
        with pytest.raises(HarnessError):
            ProcessorBench(tmp_path).apply("load", {"program": "absent.s"})

    def test_processor_program_relative_to_scenario(self, tmp_path) -> None:
        (tmp_path / "p.s").write_text("addi a0, zero, 42\necall\n")
        bench = ProcessorBench(tmp_path)
        bench.apply("load", {"program": "p.s"})
        bench.apply("step", {})
        bench.apply("readreg", {"reg": "a0"})
        assert bench.values()["reg_data"] == 42

    def test_processor_bad_register(self) -> None:
        with pytest.raises(ScenarioFormatError):
            ProcessorBench().apply("readreg", {"reg": "x32"})

    def test_values_cover_declared_signals(self) -> None:
        for cls in BENCHES.values():
            assert set(cls().values()) == set(cls.signals), cls.target
