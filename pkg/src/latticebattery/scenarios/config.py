"""Run configuration for the scenario runner and CLI."""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field

import numpy as np

from ..errors import InvalidSpecError

__all__ = ["RunConfig", "SCENARIOS", "load_config_file"]

SCENARIOS = ("chain", "graphene", "dephasing", "collision")


@dataclass
class RunConfig:
    """All knobs of a scenario run.

    Times are in units of ``1 / gamma`` when ``gamma = 1``. ``t_max`` is the
    initial charging horizon; it is doubled (keeping the sample density)
    until the ergotropy reaches 99 % of saturation or ``t_cap`` is hit.
    ``gamma_d`` is the swept parameter of the ``dephasing`` scenario and a
    single background rate otherwise; ``disorder`` is the swept parameter of
    ``chain``/``graphene`` and a single value for ``dephasing``.
    """

    scenario: str = "chain"
    sites: int = 64
    cells_x: int = 4
    cells_y: int = 4
    hopping: float = 1.0
    gamma: float = 1.0
    gamma_d: list = field(default_factory=lambda: [0.0])
    phi: float = 0.0
    disorder: list = field(default_factory=lambda: [0.0])
    realizations: int = 20
    seed: int = 0
    t_max: float = 20.0
    t_cap: float = 2000.0
    n_points: int = 200
    t_min: float = 0.01
    workers: int = 1
    out: str | None = None
    format: str = "json"
    # collision scenario
    omega: float = 1.0
    beta: float = 1.0
    coupling: float = 1.0
    duration: float = float(np.pi / 4)
    collisions: int = 50

    def __post_init__(self):
        self.gamma_d = [float(x) for x in _as_list(self.gamma_d)]
        self.disorder = [float(x) for x in _as_list(self.disorder)]
        self.validate()

    def validate(self):
        if self.scenario not in SCENARIOS:
            raise InvalidSpecError(f"unknown scenario {self.scenario!r}; expected one of {SCENARIOS}")
        if self.realizations < 1:
            raise InvalidSpecError("realizations must be >= 1")
        if not self.t_max > 0 or not self.t_cap >= self.t_max:
            raise InvalidSpecError("need 0 < t_max <= t_cap")
        if not 0 < self.t_min < self.t_max:
            raise InvalidSpecError("need 0 < t_min < t_max")
        if self.n_points < 2:
            raise InvalidSpecError("n_points must be >= 2")
        if not self.gamma > 0:
            raise InvalidSpecError("gamma must be > 0")
        if any(g < 0 for g in self.gamma_d):
            raise InvalidSpecError("gamma_d must be >= 0")
        if any(w < 0 for w in self.disorder):
            raise InvalidSpecError("disorder strengths must be >= 0")
        if self.workers < 1:
            raise InvalidSpecError("workers must be >= 1")
        if self.format not in ("csv", "json"):
            raise InvalidSpecError(f"unknown output format {self.format!r}")
        if self.scenario in ("chain", "graphene") and len(self.gamma_d) != 1:
            raise InvalidSpecError(f"{self.scenario} takes a single gamma_d value")
        if self.scenario == "dephasing" and len(self.disorder) != 1:
            raise InvalidSpecError("dephasing takes a single disorder value")
        return self

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def to_dict(self):
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, d):
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise InvalidSpecError(f"unknown configuration keys: {sorted(unknown)}")
        return cls(**d)


def _as_list(x):
    if isinstance(x, str):
        return [s for s in (p.strip() for p in x.split(",")) if s]
    if np.ndim(x) == 0:
        return [x]
    return list(x)


def load_config_file(path):
    """Read a JSON object of configuration keys (hyphens or underscores)."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidSpecError(f"cannot read config file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidSpecError("config file must contain a JSON object")
    return {k.replace("-", "_"): v for k, v in data.items()}
