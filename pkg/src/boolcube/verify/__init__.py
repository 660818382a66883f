"""Named checks for every identity and inequality, plus sweep drivers."""

from .registry import (
    Check,
    CheckReport,
    DEFAULT_EPS_GRID,
    DEFAULT_FRIEDGUT_EPS,
    DEFAULT_RHO_GRID,
    all_check_ids,
    get_check,
    run_check,
)
from .sweep import (
    ExhaustiveGen,
    ExplicitGen,
    FamilyGen,
    RandomGen,
    SweepReport,
    sweep,
)
from .search import ComposeGreedyStrategy, Leaderboard, tightness_search

__all__ = [
    "Check",
    "CheckReport",
    "DEFAULT_EPS_GRID",
    "DEFAULT_FRIEDGUT_EPS",
    "DEFAULT_RHO_GRID",
    "all_check_ids",
    "get_check",
    "run_check",
    "ExhaustiveGen",
    "ExplicitGen",
    "RandomGen",
    "FamilyGen",
    "SweepReport",
    "sweep",
    "ComposeGreedyStrategy",
    "Leaderboard",
    "tightness_search",
]
