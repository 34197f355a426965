"""Solvability and restart heuristics for physics-puzzle agents."""

from ._core import (
    aggregate,
    direct_force,
    falling_force,
    generate,
    launch_angles,
    propagate,
    restart_score,
    run_cli,
    score_h,
    serialize_level,
    solvable,
    time_ratio,
    validate,
)

__all__ = [
    "aggregate",
    "direct_force",
    "falling_force",
    "generate",
    "launch_angles",
    "propagate",
    "restart_score",
    "run_cli",
    "score_h",
    "serialize_level",
    "solvable",
    "time_ratio",
    "validate",
]
