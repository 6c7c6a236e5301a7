"""Run configuration: TOML sections, defaults and validation.

Every key is checked; unknown sections or keys and invalid values are
collected and reported together in one :class:`ConfigurationError`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import tomli

from ..diagnostics.bounds import BoundParams
from ..errors import ConfigurationError
from ..evolution.config import SolverConfig
from ..potential import PotentialSpec

FORMAT_VERSION = 1

MODES = ("evolve", "picard", "both")
KINDS = ("gaussian-bump", "power-decay", "file")

#: section -> key -> default
DEFAULTS: dict[str, dict] = {
    "grid": {"r_max": 50.0, "n": 2048},
    "solver": {
        "k": 3.0,
        "cfl": 0.5,
        "u_end": 20.0,
        "output_every": 50,
        "picard_tol": 1e-8,
        "picard_max_iter": 30,
        "mode": "both",
        "frozen_metric": False,
        "interp_order": 2,
        "potential_terms": True,
        "adaptive": True,
    },
    "metric": {"gtilde_floor": 1e-8},
    "potential": {"p": 3.0, "sign": -1, "lambda": 1.0},
    "initial": {
        "kind": "gaussian-bump",
        "amplitude": 1e-3,
        "center": 0.0,
        "width": 0.5,
        "decay": None,
        "path": None,
        "c1_tolerance": 0.25,
    },
    "bounds": {"C": 1.0, "C1": 1.0, "C2": 1.0, "C3": 1.0, "C4": 1.0, "x": None},
    "output": {"dir": "output", "snapshot_every": None},
}

_TYPES = {
    bool: (bool,),
    int: (int,),
    float: (int, float),
    str: (str,),
}


def _expected_type(section: str, key: str):
    default = DEFAULTS[section][key]
    if default is None:
        return str if key in ("path", "dir") else float
    return type(default)


@dataclass(frozen=True)
class InitialDataFamily:
    """Parameters of the initial profile ``h(0, r)``."""

    kind: str = "gaussian-bump"
    amplitude: float = 1e-3
    center: float = 0.0
    width: float = 0.5
    decay: float | None = None
    path: str | None = None
    c1_tolerance: float = 0.25


@dataclass(frozen=True)
class RunConfig:
    r_max: float
    n: int
    solver: SolverConfig
    potential: PotentialSpec
    initial: InitialDataFamily
    bound_constants: tuple
    bound_x: float | None
    mode: str
    output_dir: str
    snapshot_every: int
    source: str | None = None
    raw: dict = field(default_factory=dict, compare=False)

    def bound_params(self, d: float = 0.0) -> BoundParams:
        return BoundParams(k=self.solver.k, p=self.potential.p, K0=self.potential.K0,
                           C=self.bound_constants, d=d)

    def to_dict(self) -> dict:
        return json.loads(json.dumps(self.raw, sort_keys=True))

    def echo(self) -> str:
        lines = []
        for section, values in self.to_dict().items():
            lines.append(f"[{section}]")
            lines.extend(f"{k} = {json.dumps(v)}" for k, v in values.items())
        return "\n".join(lines)

    def replace(self, **sections) -> "RunConfig":
        """New config with some keys overridden, e.g. ``replace(grid={"n": 4096})``."""
        merged = {s: dict(v) for s, v in self.raw.items()}
        for section, values in sections.items():
            merged.setdefault(section, {}).update(values)
        return build_config(merged, source=self.source)


def load_toml(path) -> dict:
    path = Path(path)
    try:
        with path.open("rb") as fh:
            return tomli.load(fh)
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
    except tomli.TOMLDecodeError as exc:
        raise ConfigurationError(f"malformed config {path}: {exc}") from exc


def parse_config(path) -> RunConfig:
    return build_config(load_toml(path), source=str(path))


def build_config(data: dict, source: str | None = None) -> RunConfig:
    """Validate a nested mapping and fill defaults."""
    problems: list[str] = []
    merged: dict[str, dict] = {s: dict(v) for s, v in DEFAULTS.items()}
    for section, values in data.items():
        if section not in DEFAULTS:
            problems.append(f"unknown section [{section}]")
            continue
        if not isinstance(values, dict):
            problems.append(f"[{section}] must be a table")
            continue
        for key, value in values.items():
            if key not in DEFAULTS[section]:
                problems.append(f"unknown key {section}.{key}")
                continue
            want = _expected_type(section, key)
            ok = isinstance(value, _TYPES[want]) and not (want is not bool and isinstance(value, bool))
            if value is not None and not ok:
                problems.append(f"{section}.{key} must be {want.__name__}, got {value!r}")
                continue
            merged[section][key] = float(value) if want is float and value is not None else value

    g, sv, pot, ini, bd, out = (merged[s] for s in
                                ("grid", "solver", "potential", "initial", "bounds", "output"))
    if problems:
        raise ConfigurationError("invalid configuration", problems)

    if not (g["r_max"] > 0):
        problems.append(f"grid.r_max must be positive, got {g['r_max']}")
    if g["n"] < 16:
        problems.append(f"grid.n must be >= 16, got {g['n']}")
    if sv["mode"] not in MODES:
        problems.append(f"solver.mode must be one of {MODES}, got {sv['mode']!r}")
    if sv["k"] < 3:
        problems.append(f"solver.k must lie in k in [3, inf), got {sv['k']}")
    if pot["p"] < sv["k"]:
        problems.append(f"potential.p must satisfy p >= k (p in [k, inf)), got p={pot['p']}, k={sv['k']}")
    if ini["kind"] not in KINDS:
        problems.append(f"initial.kind must be one of {KINDS}, got {ini['kind']!r}")
    if ini["kind"] == "file" and not ini["path"]:
        problems.append("initial.path is required when initial.kind = 'file'")
    if ini["kind"] == "gaussian-bump" and not ini["width"] > 0:
        problems.append(f"initial.width must be positive, got {ini['width']}")
    if not ini["c1_tolerance"] > 0:
        problems.append("initial.c1_tolerance must be positive")
    if bd["x"] is not None and bd["x"] < 0:
        problems.append("bounds.x must be non-negative")
    snap = out["snapshot_every"]
    if snap is not None and (int(snap) != snap or snap < 1):
        problems.append(f"output.snapshot_every must be a positive integer, got {snap}")

    solver = potential = None
    try:
        solver = SolverConfig(
            k=sv["k"], cfl=sv["cfl"], u_end=sv["u_end"], output_every=sv["output_every"],
            picard_tol=sv["picard_tol"], picard_max_iter=sv["picard_max_iter"],
            gtilde_floor=merged["metric"]["gtilde_floor"], frozen_metric=sv["frozen_metric"],
            interp_order=sv["interp_order"], potential_terms=sv["potential_terms"],
            adaptive=sv["adaptive"],
        )
    except ConfigurationError as exc:
        problems.extend(exc.violations or [str(exc)])
    try:
        potential = PotentialSpec(p=pot["p"], sign=pot["sign"], coupling=pot["lambda"])
    except ConfigurationError as exc:
        problems.append(str(exc))
    if problems:
        raise ConfigurationError("invalid configuration", sorted(set(problems)))

    return RunConfig(
        r_max=float(g["r_max"]),
        n=int(g["n"]),
        solver=solver,
        potential=potential,
        initial=InitialDataFamily(**ini),
        bound_constants=(bd["C"], bd["C1"], bd["C2"], bd["C3"], bd["C4"]),
        bound_x=bd["x"],
        mode=sv["mode"],
        output_dir=str(out["dir"]),
        snapshot_every=int(snap) if snap is not None else solver.output_every,
        source=source,
        raw=merged,
    )


def default_config(**sections) -> RunConfig:
    return build_config({s: dict(v) for s, v in sections.items()})

