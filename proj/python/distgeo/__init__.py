"""Frame-field verification of distribution geometry."""

import json

from ._core import (
    DistgeoError,
    ScenarioError,
    catalog,
    check_names,
    derivative,
    evaluate,
    family_labels,
    golden,
    preset_names,
    render,
    verify_family,
)
from ._core import run_scenario as _run_scenario

__all__ = [
    "DistgeoError",
    "ScenarioError",
    "catalog",
    "check_names",
    "derivative",
    "evaluate",
    "family_labels",
    "golden",
    "preset_names",
    "render",
    "run",
    "verify_family",
]


def run(scenario, strict_golden=False, seed=0):
    """Run a scenario (dict or JSON text); returns (exit_code, report dict)."""
    text = scenario if isinstance(scenario, str) else json.dumps(scenario)
    code, report = _run_scenario(text, strict_golden, seed)
    return code, json.loads(report)
