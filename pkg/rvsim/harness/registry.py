"""Scenario registry: builtin scenarios by name and by target component."""

from pathlib import Path

from ..config import SCENARIOS_DIR
from ..core.errors import UnknownScenario
from .base import Scenario
from .benches import BENCHES
from .loader import load_directory


class ScenarioRegistry:
    """Registry for bench scenarios."""

    def __init__(self) -> None:
        self._scenarios: dict[str, Scenario] = {}

    def register(self, scenario: Scenario) -> None:
        if scenario.target not in BENCHES:
            raise UnknownScenario(f"scenario {scenario.name} targets unknown component {scenario.target!r}")
        self._scenarios[scenario.name] = scenario

    def get(self, name: str) -> Scenario:
        scenario = self._scenarios.get(name)
        if scenario is None:
            raise UnknownScenario(f"no scenario named {name!r}")
        return scenario

    def list_all(self) -> list[Scenario]:
        return list(self._scenarios.values())

    def list_names(self) -> list[str]:
        return list(self._scenarios.keys())

    def select(self, selector: str) -> list[Scenario]:
        """`all`, a component name, or a scenario name."""
        if selector == "all":
            return self.list_all()
        if selector in BENCHES:
            return [s for s in self._scenarios.values() if s.target == selector]
        return [self.get(selector)]


def load_registry(directory: str | Path | None = None) -> ScenarioRegistry:
    registry = ScenarioRegistry()
    for scenario in load_directory(directory or SCENARIOS_DIR):
        registry.register(scenario)
    return registry
