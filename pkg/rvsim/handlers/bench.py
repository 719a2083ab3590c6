"""`bench` command handler."""

import asyncio
import sys
from pathlib import Path

from ..core.context import CliConfig
from ..core.errors import EXIT_FAILURE, EXIT_OK, UnknownScenario
from ..harness.registry import load_registry
from ..harness.runner import run_all
from ..harness.vcd import write_trace


def bench_cmd(config: CliConfig) -> int:
    """Run the selected scenarios in parallel; exit 1 if any expectation fails."""
    registry = load_registry(config.scenarios_dir)
    scenarios = registry.select(config.input)
    if not scenarios:
        raise UnknownScenario(f"no scenarios for {config.input!r}")

    results = asyncio.run(run_all(scenarios))

    out = sys.stdout
    for result in results:
        verdict = "PASS" if result.passed else "FAIL"
        out.write(f"{verdict} {result.scenario.name} ({len(result.results)} expectations)\n")
        for failure in result.failures:
            out.write(f"  {failure.describe()}\n")
        if config.trace_dir:
            write_trace(result.trace, Path(config.trace_dir) / f"{result.scenario.name}.vcd", scope=result.scenario.target)

    passed = sum(r.passed for r in results)
    out.write(f"{passed}/{len(results)} scenarios passed\n")
    return EXIT_OK if passed == len(results) else EXIT_FAILURE
