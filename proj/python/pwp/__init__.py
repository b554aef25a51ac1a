"""Probabilistic wp-calculus interpreter and Grover search analysis."""

from ._pwp import (
    ParseError,
    PwpError,
    StaticError,
    WeightError,
    check_unitary,
    classical_state,
    dirichlet_check,
    eval,
    final_distribution,
    gf_pair,
    grover_program_source,
    grover_step_matrix,
    grover_wp,
    measure_probs,
    optimal_iterations,
    optimal_real,
    pretty,
    pretty_expr,
    recurrence_ab,
    run_cli,
    sample_run,
    series_coeffs,
    state_mean,
    success_prob_closed,
    success_prob_recurrence,
    sweep,
    theta,
    uniform_state,
    wp,
    wp_subst,
)

__all__ = [
    "ParseError",
    "PwpError",
    "StaticError",
    "WeightError",
    "check_unitary",
    "classical_state",
    "dirichlet_check",
    "eval",
    "final_distribution",
    "gf_pair",
    "grover_program_source",
    "grover_step_matrix",
    "grover_wp",
    "measure_probs",
    "optimal_iterations",
    "optimal_real",
    "pretty",
    "pretty_expr",
    "recurrence_ab",
    "run_cli",
    "sample_run",
    "series_coeffs",
    "state_mean",
    "success_prob_closed",
    "success_prob_recurrence",
    "sweep",
    "theta",
    "uniform_state",
    "wp",
    "wp_subst",
]
