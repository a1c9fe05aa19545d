"""Impartial games on N^d: validation, P/N solving, mod-2 patterns,
rational strategies, affine stratifications and game-tree encodings."""

from importlib.resources import files

from .core import MISERE, NORMAL, LatticeGame, RuleSet, load_game, make_game, validate_ruleset
from .encode import GameTree, encode, grundy_oracle, load_tree
from .errors import *  # noqa: F401,F403
from .genfun import (
    AffineStratification,
    RationalStrategy,
    expand,
    load_stratification,
    strategy_from_pattern,
    strategy_from_stratification,
    verify_stratification,
)
from .normal import membership_closed_form, solve_squarefree_normal
from .solver import Outcome, Solution, best_move, congruent_within, solve, solve_naive


def data_path(name):
    """Path of a bundled example file."""
    return files(__name__) / "data" / name
