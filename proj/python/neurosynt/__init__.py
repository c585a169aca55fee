"""Reactive LTL synthesis toolkit: formulas, AIGER circuits, model checking,
bounded synthesis, portfolio runs and dataset generation."""

from ._core import (
    AigerError,
    ParseError,
    SpecError,
    aag_stats,
    ast_size,
    eval_lasso,
    format_formula,
    generate_dataset,
    model_check,
    normalize_aag,
    run_portfolio,
    synthesize,
)

__all__ = [
    "AigerError",
    "ParseError",
    "SpecError",
    "aag_stats",
    "ast_size",
    "eval_lasso",
    "format_formula",
    "generate_dataset",
    "model_check",
    "normalize_aag",
    "run_portfolio",
    "synthesize",
]
