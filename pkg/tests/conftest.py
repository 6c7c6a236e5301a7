from __future__ import annotations

import functools

import numpy as np
import pytest

from bondi_ekg import PotentialSpec, build_grid, make_slice
from bondi_ekg.cli.initial_data import gaussian_bump
from bondi_ekg.evolution import SolverConfig, evolve


def bump_slice(n=2048, amplitude=1e-3, r_max=50.0, center=0.0, width=0.5):
    grid = build_grid(r_max, n)
    return make_slice(0.0, gaussian_bump(grid.nodes, amplitude, center, width), grid)


@functools.lru_cache(maxsize=None)
def cached_run(n=2048, amplitude=1e-3, u_end=20.0, store_every=1, **solver):
    """Default small-data evolution, shared between test modules."""
    cfg = SolverConfig(u_end=u_end, **solver)
    return evolve(bump_slice(n, amplitude), cfg, PotentialSpec(), store_every=store_every)


@pytest.fixture(scope="session")
def default_run():
    return cached_run(2048)


@pytest.fixture
def grid():
    return build_grid(50.0, 2048)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# -- acceptance summary -----------------------------------------------------------

ACCEPTANCE_LINES: dict[str, str] = {}


@pytest.fixture
def verdict():
    """Record one ``PASS``/``FAIL`` line per criterion; returns the flag for asserting."""

    def record(tag: str, ok: bool, detail: str) -> bool:
        ACCEPTANCE_LINES[tag] = f"{tag:<4} {'PASS' if ok else 'FAIL'}  {detail}"
        print(ACCEPTANCE_LINES[tag])
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for tag in sorted(ACCEPTANCE_LINES, key=lambda t: int(t[1:])):
        terminalreporter.write_line(ACCEPTANCE_LINES[tag])
