"""Multi-objective symbolic regression with NSGA-II."""

from ._mosr import (
    ConfigError,
    ParseError,
    Tree,
    complexity,
    evaluate,
    fit_linear_scaling,
    generate,
    list_problems,
    nmse,
    parse,
    pearson_r2,
    run,
    scaled_nmse,
    to_sexpr,
    tree_length,
    variable_count,
    visitation_length,
)

__all__ = [
    "ConfigError",
    "ParseError",
    "Tree",
    "complexity",
    "evaluate",
    "fit_linear_scaling",
    "generate",
    "list_problems",
    "nmse",
    "parse",
    "pearson_r2",
    "run",
    "scaled_nmse",
    "to_sexpr",
    "tree_length",
    "variable_count",
    "visitation_length",
]
