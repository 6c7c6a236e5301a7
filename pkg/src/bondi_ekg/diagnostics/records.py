"""Per-step diagnostics record."""

from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class DiagnosticsRecord:
    """Monitored quantities of one slice.

    ``x_norm_emp`` is the running sup over u of the slicewise X norm;
    ``y_weight_max`` and ``dh_weight_max`` are the two weighted sups of the
    current slice (exponents k-1 and k).
    """

    u: float
    x_norm_emp: float
    y_weight_max: float
    dh_weight_max: float
    min_gtilde: float
    res_rr: float
    res_ij: float
    res_supp00: float
    res_supp01: float
    res_wave: float
    du_h_max_weighted: float

    def as_dict(self) -> dict:
        return asdict(self)


#: columns of the run CSV, in order
RUN_COLUMNS = (
    "u",
    "x_norm_emp",
    "min_gtilde",
    "res_rr",
    "res_ij",
    "res_supp00",
    "res_supp01",
    "res_wave",
    "du_h_max_weighted",
)
