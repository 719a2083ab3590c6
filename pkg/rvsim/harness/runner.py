"""Scenario execution: drive a bench, record its trace, check expectations."""

import asyncio
import logging
from typing import Sequence

from ..core.errors import UnknownScenario, UnknownSignal
from .base import ExpectationResult, Scenario, ScenarioResult, Trace
from .benches import BENCHES

logger = logging.getLogger(__name__)


def run_scenario(scenario: Scenario) -> ScenarioResult:
    """
    Apply the stimulus in time order and check every expectation against the trace.

    Raises:
        UnknownScenario: target is not a known component
        UnknownSignal: an expectation names a signal the bench does not have
    """
    bench_cls = BENCHES.get(scenario.target)
    if bench_cls is None:
        raise UnknownScenario(f"scenario {scenario.name} targets unknown component {scenario.target!r}")
    base_dir = scenario.source.parent if scenario.source is not None else None
    bench = bench_cls(base_dir)

    for e in scenario.expectations:
        if e.signal not in bench.signals:
            raise UnknownSignal(f"scenario {scenario.name}: {scenario.target} has no signal {e.signal!r}")

    trace = Trace()
    for name, width in bench.signals.items():
        trace.declare(name, width)
    trace.sample(0, bench.values())
    for stim in scenario.stimulus:
        bench.apply(stim.action, stim.args)
        trace.sample(stim.time, bench.values())

    results = [ExpectationResult(e, trace.value_at(e.signal, e.time)) for e in scenario.expectations]
    result = ScenarioResult(scenario, results, trace)
    if result.passed:
        logger.info(f"Scenario {scenario.name}: pass ({len(results)} expectations)")
    else:
        logger.info(f"Scenario {scenario.name}: FAIL ({len(result.failures)} of {len(results)} expectations)")
    return result


async def run_all(scenarios: Sequence[Scenario]) -> list[ScenarioResult]:
    """Run scenarios concurrently, each on its own bench; results keep input order."""
    return list(await asyncio.gather(*(asyncio.to_thread(run_scenario, s) for s in scenarios)))
