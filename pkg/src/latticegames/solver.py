"""P/N classification of a lattice game on a finite sublevel set of ell.

Every move lowers ell by at least 1, so the region {p in N^d : ell(p) <= L}
is closed under moves and can be solved bottom-up, one ell-level at a time.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
import json
import math
import sys

from .core import add, integer_functional, is_nonnegative, sub
from .errors import BoundTooSmall, DimensionMismatch, NotAnNPosition


class Outcome(Enum):
    P = "P"
    N = "N"
    DEFEATED = "Defeated"
    OUT_OF_REGION = "OutOfRegion"

    def __str__(self):
        return self.value


def region_positions(ell, bound):
    """All p in N^d with ell(p) <= bound, ordered by (ell(p), p)."""
    ints, scale = integer_functional(ell)
    top = math.floor(Fraction(bound) * scale)
    d = len(ints)
    out = []
    if top < 0:
        return out

    def rec(i, prefix, rem):
        if i == d:
            out.append((top - rem, tuple(prefix)))
            return
        for k in range(rem // ints[i] + 1):
            prefix.append(k)
            rec(i + 1, prefix, rem - k * ints[i])
            prefix.pop()

    rec(0, [], top)
    out.sort()
    return [p for _, p in out]


@dataclass(frozen=True)
class Region:
    game: object
    bound: Fraction

    def __post_init__(self):
        if Fraction(self.bound) < 0:
            raise ValueError("region bound must be nonnegative")
        object.__setattr__(self, "bound", Fraction(self.bound))

    def contains(self, p):
        return (
            len(p) == self.game.d
            and is_nonnegative(p)
            and self.game.rules.level(p) <= self.bound
        )

    def positions(self):
        return region_positions(self.game.rules.ell, self.bound)


class Solution:
    """Classification of every board position of a region.

    ``witness[p]`` is the first move (in rule-set order) taking the
    N-position ``p`` to a P-position.
    """

    def __init__(self, region, p_positions, witness):
        self.region = region
        self.game = region.game
        self.p_positions = frozenset(p_positions)
        self.witness = dict(witness)

    @property
    def bound(self):
        return self.region.bound

    def __eq__(self, other):
        if not isinstance(other, Solution):
            return NotImplemented
        return (
            self.game == other.game
            and self.bound == other.bound
            and self.p_positions == other.p_positions
            and self.witness == other.witness
        )

    def __len__(self):
        return len(self.p_positions) + len(self.witness)

    def classify(self, p):
        p = tuple(p)
        if not self.region.contains(p):
            return Outcome.OUT_OF_REGION
        if p in self.game.defeated:
            return Outcome.DEFEATED
        return Outcome.P if p in self.p_positions else Outcome.N

    def n_positions(self):
        return self.witness.keys()

    def to_jsonl(self):
        lines = []
        for p in sorted(self.p_positions | self.witness.keys()):
            move = self.witness.get(p)
            rec = {
                "p": list(p),
                "class": "N" if move is not None else "P",
                "move": list(move) if move is not None else None,
            }
            lines.append(json.dumps(rec, separators=(",", ":")))
        return "\n".join(lines) + ("\n" if lines else "")


def solve(game, bound):
    """Level-order construction: p is P iff no move reaches a P-position."""
    region = Region(game, bound)
    moves = game.rules.moves
    defeated = game.defeated
    P = set()
    witness = {}
    for p in region.positions():
        if p in defeated:
            continue
        for g in moves:
            # positions in P are on the board and strictly lower, so already final
            if sub(p, g) in P:
                witness[p] = g
                break
        else:
            P.add(p)
    return Solution(region, P, witness)


def solve_naive(game, bound):
    """Memoised top-down recursion over options; an independent check on ``solve``."""
    region = Region(game, bound)
    moves = game.rules.moves

    def options(p):
        for g in moves:
            q = sub(p, g)
            if game.on_board(q):
                yield g, q

    @lru_cache(maxsize=None)
    def is_p(p):
        return not any(is_p(q) for _, q in options(p))

    P = set()
    witness = {}
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10000))
    try:
        for p in region.positions():
            if not game.on_board(p):
                continue
            if is_p(p):
                P.add(p)
            else:
                witness[p] = next(g for g, q in options(p) if is_p(q))
    finally:
        sys.setrecursionlimit(old)
    return Solution(region, P, witness)


def classify(solution, p):
    return solution.classify(p)


def best_move(solution, p):
    """A move from the N-position ``p`` to a P-position."""
    p = tuple(p)
    outcome = solution.classify(p)
    if outcome is not Outcome.N:
        raise NotAnNPosition("%s is %s, not an N-position" % (p, outcome))
    return solution.witness[p]


def victorious_positions(game, bound):
    """Board positions in the region with no legal move."""
    out = set()
    for p in region_positions(game.rules.ell, bound):
        if game.on_board(p) and not any(game.on_board(sub(p, g)) for g in game.rules.moves):
            out.add(p)
    return out


def congruent_within(solution, p, q, bound):
    """Whether p + r and q + r agree on P-membership for all r with ell(r) <= bound.

    Only a bounded check: True is evidence of congruence, not proof.
    """
    p, q = tuple(p), tuple(q)
    game = solution.game
    if len(p) != game.d or len(q) != game.d:
        raise DimensionMismatch("positions must have dimension %d" % game.d)
    rules = game.rules
    need = max(rules.level(p), rules.level(q)) + Fraction(bound)
    if need > solution.bound:
        raise BoundTooSmall(
            "need a solution to bound %s, have %s" % (need, solution.bound)
        )
    P = solution.p_positions
    for r in region_positions(rules.ell, bound):
        if (add(p, r) in P) != (add(q, r) in P):
            return False
    return True


def check_solution(solution):
    """Return the list of violated invariants (empty when the solution is sound).

    Checks that P and N partition the board inside the region, that the
    board positions with a move to a P-position are exactly the
    N-positions, that no two P-positions differ by a move, and that every
    stored witness lands on a P-position.
    """
    game = solution.game
    region = solution.region
    moves = game.rules.moves
    P = solution.p_positions
    N = set(solution.witness)
    problems = []
    if P & N:
        problems.append("P and N overlap at %s" % (min(P & N),))
    board = {p for p in region.positions() if game.on_board(p)}
    if P | N != board:
        problems.append("P and N do not cover the board: %s" % (sorted(board ^ (P | N))[:5],))
    reached = set()
    for p in P:
        for g in moves:
            q = add(p, g)
            if q in board:
                reached.add(q)
    if reached != N:
        problems.append("(P + moves) on the board differs from N: %s" % (sorted(reached ^ N)[:5],))
    for p in P:
        for g in moves:
            if sub(p, g) in P:
                problems.append("P-positions %s and %s differ by a move" % (p, sub(p, g)))
                break
    for p, g in solution.witness.items():
        if sub(p, g) not in P:
            problems.append("witness move %s from %s does not reach P" % (g, p))
    return problems


def default_bound(game):
    """10 times the largest ell-value of a move."""
    rules = game.rules
    if not rules.moves:
        return Fraction(0)
    return 10 * max(rules.level(g) for g in rules.moves)
