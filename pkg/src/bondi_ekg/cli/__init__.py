"""Configuration, initial data, run orchestration and the command line."""

from .config import (
    DEFAULTS,
    FORMAT_VERSION,
    InitialDataFamily,
    RunConfig,
    build_config,
    default_config,
    parse_config,
)
from .initial_data import check_c1, gaussian_bump, initial_profile, initial_slice, power_decay
from .main import main
from .runner import (
    EXIT_CONFIG,
    EXIT_DEGENERATE,
    EXIT_NOT_CONVERGED,
    EXIT_NUMERIC,
    EXIT_OK,
    SNAPSHOT_COLUMNS,
    ConvergenceReport,
    HarnessError,
    convergence_harness,
    read_csv,
    run,
    write_run_csv,
    write_snapshot,
)

__all__ = [
    "DEFAULTS",
    "EXIT_CONFIG",
    "EXIT_DEGENERATE",
    "EXIT_NOT_CONVERGED",
    "EXIT_NUMERIC",
    "EXIT_OK",
    "FORMAT_VERSION",
    "SNAPSHOT_COLUMNS",
    "ConvergenceReport",
    "HarnessError",
    "InitialDataFamily",
    "RunConfig",
    "build_config",
    "check_c1",
    "convergence_harness",
    "default_config",
    "gaussian_bump",
    "initial_profile",
    "initial_slice",
    "main",
    "parse_config",
    "power_decay",
    "read_csv",
    "run",
    "write_run_csv",
    "write_snapshot",
]
