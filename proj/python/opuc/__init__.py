"""Orthogonal polynomials on the unit circle: recurrences, kernel norms and diagnostics."""

from ._core import (
    InvalidArgument,
    NumericalFailure,
    bernstein_szego_moments,
    derivative,
    derivative_exact,
    diagnostics,
    example_sequence,
    kernel_norm,
    lebesgue_norm,
    lemma5_ratio,
    levinson,
    moments,
    prop2_verify,
    run_cli,
    second_kind,
    szego_recurrence,
)

__all__ = [
    "InvalidArgument",
    "NumericalFailure",
    "bernstein_szego_moments",
    "derivative",
    "derivative_exact",
    "diagnostics",
    "example_sequence",
    "kernel_norm",
    "lebesgue_norm",
    "lemma5_ratio",
    "levinson",
    "moments",
    "prop2_verify",
    "run_cli",
    "second_kind",
    "szego_recurrence",
]
