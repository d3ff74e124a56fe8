"""Hypergeometric motive toolkit: Hodge data, Frobenius traces, L-function local data."""

from fractions import Fraction

from ._core import (
    Family,
    HgmError,
    census_total,
    classify,
    conductor,
    dirichlet_coefficients,
    drop_rank,
    export_json,
    frobenius_poly,
    hodge_vector,
    local_data,
    mum_counts,
    run_cli,
    trace,
)

__all__ = [
    "Family",
    "Fraction",
    "HgmError",
    "census_total",
    "classify",
    "conductor",
    "dirichlet_coefficients",
    "drop_rank",
    "export_json",
    "frobenius_poly",
    "hodge_vector",
    "local_data",
    "mum_counts",
    "run_cli",
    "trace",
]
