"""Mod-2 patterns for squarefree games under normal play.

For a squarefree rule set under normal play the P-positions are often
P0 + 2N^d with P0 the P-positions inside {0,1}^d.  ``solve_squarefree_normal``
guesses P0 as the greedy sustained pattern through the origin.

Neither step is guaranteed.  The closed form rests on the moves acting like
a disjunctive sum, which holds for heap-type rules (each move's positive
part is a single unit vector) but can fail when a move removes several
kinds of heap at once.  And a rule set can sustain several patterns that
contain the origin, so the greedy pattern may not be P0 even for heap-type
rules.  ``pattern_from_solver`` reads P0 off an exact solve, and
``closed_form_mismatch`` checks a pattern against the solver over a region.
"""

from dataclasses import dataclass
from itertools import product

from .core import NORMAL
from .errors import NotNormalPlay, NotSquarefree, ZeroInGamma2
from .solver import Outcome, region_positions, solve


@dataclass(frozen=True)
class Pattern:
    """A subset of Z_2^d, stored as 0-1 tuples."""

    d: int
    members: frozenset

    def __contains__(self, v):
        return tuple(v) in self.members

    def sorted(self):
        return sorted(self.members)

    def __str__(self):
        return "{%s}" % ", ".join("(%s)" % ",".join(map(str, v)) for v in self.sorted())


def reduce_mod2(moves):
    return {tuple(x % 2 for x in m) for m in moves}


def _xor(u, v):
    return tuple(a ^ b for a, b in zip(u, v))


def is_sustained(members, gamma2, d):
    """P + gamma2 equals the complement of P in Z_2^d."""
    members = set(members)
    image = {_xor(p, g) for p in members for g in gamma2}
    complement = set(product((0, 1), repeat=d)) - members
    return image == complement


def sustained_pattern(gamma2, seed, order="lex"):
    """Greedy sustained pattern starting from ``seed``.

    Candidates are scanned in lexicographic order (or its reverse with
    ``order="reverse"``); each candidate not yet covered by P + gamma2 is
    added to P.
    """
    seed = tuple(seed)
    d = len(seed)
    gamma2 = {tuple(g) for g in gamma2}
    if (0,) * d in gamma2:
        raise ZeroInGamma2("the zero class is a move modulo 2")
    chosen = [seed]
    covered = {_xor(seed, g) for g in gamma2}
    candidates = sorted(product((0, 1), repeat=d), reverse=(order == "reverse"))
    for c in candidates:
        if c in covered or c in chosen:
            continue
        chosen.append(c)
        covered.update(_xor(c, g) for g in gamma2)
    if not is_sustained(chosen, gamma2, d):  # pragma: no cover - guaranteed when 0 not in gamma2
        raise AssertionError("greedy pattern is not sustained")
    return Pattern(d, frozenset(chosen))


def solve_squarefree_normal(game, order="lex"):
    """Greedy sustained pattern through the origin for a squarefree normal-play game."""
    if game.convention != NORMAL:
        raise NotNormalPlay("closed form needs normal play, game is %s" % game.convention)
    if not game.rules.squarefree:
        raise NotSquarefree("rule set has a move with an entry above 1")
    return sustained_pattern(reduce_mod2(game.rules.moves), (0,) * game.d, order=order)


def pattern_from_solver(game):
    """P intersected with {0,1}^d, read off an exact solve of the unit cube's level."""
    d = game.d
    sol = solve(game, game.rules.level((1,) * d))
    return Pattern(d, frozenset(p for p in sol.p_positions if max(p, default=0) <= 1))


def membership_closed_form(p0, p):
    return Outcome.P if tuple(x % 2 for x in p) in p0.members else Outcome.N


def closed_form_mismatch(game, p0, solution):
    """First region position where the closed form and ``solution`` disagree, or None."""
    for p in region_positions(game.rules.ell, solution.bound):
        if membership_closed_form(p0, p) is not solution.classify(p):
            return p
    return None
