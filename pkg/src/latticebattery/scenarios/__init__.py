"""Simulation campaigns, run configuration, output writers and the CLI."""
from .config import SCENARIOS, RunConfig, load_config_file
from .output import emit, to_json
from .runner import (
    PointSummary,
    RealizationResult,
    ScenarioReport,
    charge_from_passive,
    run_chain,
    run_collision,
    run_dephasing,
    run_graphene,
    run_scenario,
    solve_point,
    time_grid,
)

__all__ = [
    "SCENARIOS",
    "PointSummary",
    "RealizationResult",
    "RunConfig",
    "ScenarioReport",
    "charge_from_passive",
    "emit",
    "load_config_file",
    "run_chain",
    "run_collision",
    "run_dephasing",
    "run_graphene",
    "run_scenario",
    "solve_point",
    "time_grid",
    "to_json",
]
