"""Positions, rule sets, game boards, and the axioms they must satisfy.

Positions and move vectors are plain tuples of Python ints, so coordinates
are arbitrary precision.  The only board supported is the orthant N^d with
a finite set of defeated positions removed.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
import json

from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors

from . import lp
from .errors import (
    DimensionMismatch,
    DuplicateMove,
    GameFormatError,
    InvalidRuleSet,
    NotAnOrderIdeal,
    PositivityInfeasible,
    TangentConeViolation,
    ZeroMove,
)

NORMAL = "normal"
MISERE = "misere"
CUSTOM = "custom"


def positive_part(v):
    return tuple(max(x, 0) for x in v)


def negative_part(v):
    return tuple(max(-x, 0) for x in v)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def is_nonnegative(v):
    return all(x >= 0 for x in v)


def integer_functional(ell):
    """Scale a rational functional to integers: returns ``(ints, scale)``."""
    scale = lcm(1, *(Fraction(x).denominator for x in ell))
    return tuple(int(Fraction(x) * scale) for x in ell), scale


def _check_moves(moves, d):
    moves = [tuple(m) for m in moves]
    for m in moves:
        if len(m) != d:
            raise DimensionMismatch("move %s does not have dimension %d" % (m, d))
        if not any(m):
            raise ZeroMove("the zero vector is not a move")
    return moves


def find_positivity_functional(moves, d):
    """Return l with l_i >= 1 and l.g >= 1 for every move g, solved exactly.

    Among feasible points the one minimising sum(l) is returned, so the
    result is deterministic.  Raises ``PositivityInfeasible`` carrying a
    nonnegative combination of moves that is componentwise <= 0.
    """
    moves = _check_moves(moves, d)
    if d == 0:
        return ()
    A = [[-int(i == j) for j in range(d)] for i in range(d)]
    A += [[-x for x in m] for m in moves]
    b = [-1] * len(A)
    try:
        _, x = lp.minimize([1] * d, A, b)
    except lp.Infeasible:
        raise PositivityInfeasible(_positivity_witness(moves, d)) from None
    ell = tuple(x)
    assert all(v >= 1 for v in ell) and all(dot(ell, m) >= 1 for m in moves)
    return ell


def _positivity_witness(moves, d):
    # Alternative system: lambda >= 0, sum lambda = 1, sum lambda_g g <= 0.
    k = len(moves)
    A = [[m[j] for m in moves] for j in range(d)]
    try:
        _, lam = lp.minimize([0] * k, A, [0] * d, A_eq=[[1] * k], b_eq=[1])
    except lp.Infeasible:  # pragma: no cover - excluded by LP duality
        raise AssertionError("positivity system and its alternative both infeasible")
    weights = {m: v for m, v in zip(moves, lam) if v != 0}
    total = [sum(w * m[j] for m, w in weights.items()) for j in range(d)]
    assert all(t <= 0 for t in total)
    return weights


def check_tangent_cone(moves, d):
    """Return None if every axis has a move pointing back into the orthant.

    Otherwise return the least violating coordinate, 1-based.
    """
    for i in range(d):
        if not any(all(m[j] <= 0 for j in range(d) if j != i) for m in moves):
            return i + 1
    return None


def is_squarefree(moves):
    return all(max(m) == 1 for m in moves)


def squarefree_counterexample(moves):
    """For the first move with maximum entry M > 1, return ``(move, p)``.

    ``p = ceil(M/2) * (1,...,1)`` has ``2p - move`` in N^d but ``p - move``
    outside it.  Returns None when the moves are squarefree.
    """
    for m in moves:
        M = max(m)
        if M > 1:
            c = (M + 1) // 2
            return m, (c,) * len(m)
    return None


def is_saturated(moves, d):
    """True iff the moves generate Z^d as a group."""
    if d == 0:
        return True
    if not moves:
        return False
    M = Matrix([list(m) for m in moves]).T
    if M.rank() != d:
        return False
    return all(f == 1 for f in invariant_factors(M))


@dataclass(frozen=True)
class RuleSet:
    """A validated rule set with its positivity certificate ``ell``."""

    d: int
    moves: tuple
    ell: tuple
    squarefree: bool
    saturated: bool

    def level(self, p):
        return dot(self.ell, p)


def _normalize_functional(ell, moves, d):
    ell = tuple(Fraction(x) for x in ell)
    if len(ell) != d:
        raise DimensionMismatch("functional has dimension %d, expected %d" % (len(ell), d))
    values = list(ell) + [dot(ell, m) for m in moves]
    if values and min(values) <= 0:
        raise InvalidRuleSet("supplied functional %s is not positive" % (ell,))
    if values:
        ell = tuple(x / min(values) for x in ell)
    return ell


def validate_ruleset(moves, d, ell=None):
    """Check both rule set axioms and return a ``RuleSet``.

    A supplied ``ell`` is checked and rescaled so that every coordinate and
    every move value is at least 1; otherwise one is found by linear
    programming.
    """
    moves = _check_moves(moves, d)
    if len(set(moves)) != len(moves):
        dup = next(m for m in moves if moves.count(m) > 1)
        raise DuplicateMove("duplicate move %s" % (dup,))
    if ell is None:
        ell = find_positivity_functional(moves, d)
    else:
        ell = _normalize_functional(ell, moves, d)
    bad = check_tangent_cone(moves, d)
    if bad is not None:
        raise TangentConeViolation(bad)
    return RuleSet(
        d=d,
        moves=tuple(moves),
        ell=ell,
        squarefree=is_squarefree(moves),
        saturated=is_saturated(moves, d),
    )


def check_cone_containment(rules):
    """Return None if each basis vector is a nonnegative combination of moves.

    Otherwise the first failing coordinate, 1-based.
    """
    k = len(rules.moves)
    for i in range(rules.d):
        if k == 0:
            return i + 1
        A_eq = [[m[j] for m in rules.moves] for j in range(rules.d)]
        b_eq = [int(j == i) for j in range(rules.d)]
        try:
            lp.minimize([0] * k, A_eq=A_eq, b_eq=b_eq)
        except lp.Infeasible:
            return i + 1
    return None


def semigroup_elements(moves, ell, bound):
    """Elements r of the monoid generated by ``moves`` with ell(r) <= bound.

    Breadth-first from the origin; the origin itself is included.
    """
    d = len(ell)
    origin = (0,) * d
    seen = {origin}
    order = [origin]
    queue = deque([origin])
    while queue:
        r = queue.popleft()
        for m in moves:
            s = add(r, m)
            if s not in seen and dot(ell, s) <= bound:
                seen.add(s)
                order.append(s)
                queue.append(s)
    return order


@dataclass(frozen=True)
class LatticeGame:
    """A rule set together with a finite defeated set; the board is N^d minus it."""

    rules: RuleSet
    defeated: frozenset = frozenset()

    @property
    def d(self):
        return self.rules.d

    @property
    def convention(self):
        if not self.defeated:
            return NORMAL
        if self.defeated == {(0,) * self.d}:
            return MISERE
        return CUSTOM

    def on_board(self, p):
        return len(p) == self.d and is_nonnegative(p) and p not in self.defeated


def check_order_ideal(game):
    """Return None if the defeated set is closed downward, else a witness.

    The witness is a position q - r in N^d outside the defeated set with q
    defeated and r a nonzero element of the move monoid.
    """
    rules = game.rules
    for q in sorted(game.defeated):
        for r in semigroup_elements(rules.moves, rules.ell, rules.level(q)):
            s = sub(q, r)
            if is_nonnegative(s) and s not in game.defeated:
                return s
    return None


def make_game(d, moves, defeated=None, convention=None, ell=None):
    """Validate and build a ``LatticeGame``.

    Give either ``defeated`` positions or ``convention`` ("normal" or
    "misere"); with neither, normal play is assumed.
    """
    if defeated is not None and convention is not None:
        raise GameFormatError("give either a defeated set or a convention, not both")
    if convention == MISERE:
        defeated = [(0,) * d]
    elif convention not in (None, NORMAL):
        raise GameFormatError("unknown convention %r" % (convention,))
    rules = validate_ruleset(moves, d, ell=ell)
    dset = set()
    for p in defeated or ():
        p = tuple(p)
        if len(p) != d:
            raise DimensionMismatch("defeated position %s does not have dimension %d" % (p, d))
        if not is_nonnegative(p):
            raise GameFormatError("defeated position %s is not in N^d" % (p,))
        dset.add(p)
    game = LatticeGame(rules, frozenset(dset))
    witness = check_order_ideal(game)
    if witness is not None:
        raise NotAnOrderIdeal(witness)
    return game


def _int_list(value, what, d=None):
    if not isinstance(value, list) or not all(type(x) is int for x in value):
        raise GameFormatError("%s must be a list of integers, got %r" % (what, value))
    if d is not None and len(value) != d:
        raise DimensionMismatch("%s has length %d, expected %d" % (what, len(value), d))
    return tuple(value)


def _parse_rational(x):
    if type(x) is int:
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            pass
    raise GameFormatError("functional entries must be integers or 'p/q' strings, got %r" % (x,))


def loads_json(text, what="input"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise GameFormatError(
            "%s: invalid JSON at line %d column %d: %s" % (what, e.lineno, e.colno, e.msg)
        ) from None


def parse_game_fields(obj):
    """Decode a game definition into ``(d, moves, defeated, convention, ell)``.

    Only the file format is checked here; the axioms are left to
    ``make_game``.
    """
    if not isinstance(obj, dict):
        raise GameFormatError("game definition must be a JSON object")
    d = obj.get("dimension")
    if type(d) is not int or d < 0:
        raise GameFormatError("'dimension' must be a nonnegative integer")
    rules = obj.get("rules")
    if not isinstance(rules, list):
        raise GameFormatError("'rules' must be a list of move vectors")
    moves = [_int_list(m, "move", d) for m in rules]
    if "defeated" in obj and "convention" in obj:
        raise GameFormatError("give either 'defeated' or 'convention', not both")
    defeated = None
    convention = None
    if "defeated" in obj:
        if not isinstance(obj["defeated"], list):
            raise GameFormatError("'defeated' must be a list of positions")
        defeated = [_int_list(p, "defeated position", d) for p in obj["defeated"]]
    elif "convention" in obj:
        convention = obj["convention"]
        if convention not in (NORMAL, MISERE):
            raise GameFormatError("'convention' must be 'normal' or 'misere'")
    ell = None
    if "ell" in obj:
        if not isinstance(obj["ell"], list):
            raise GameFormatError("'ell' must be a list")
        ell = [_parse_rational(x) for x in obj["ell"]]
    return d, moves, defeated, convention, ell


def parse_game(obj):
    """Build a validated game from a decoded JSON game definition."""
    d, moves, defeated, convention, ell = parse_game_fields(obj)
    return make_game(d, moves, defeated=defeated, convention=convention, ell=ell)


def load_game(path):
    with open(path) as fh:
        return parse_game(loads_json(fh.read(), str(path)))


def _fraction_json(x):
    return x.numerator if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def game_to_json(game, with_ell=True):
    obj = {"dimension": game.d, "rules": [list(m) for m in game.rules.moves]}
    if game.convention == CUSTOM:
        obj["defeated"] = [list(p) for p in sorted(game.defeated)]
    else:
        obj["convention"] = game.convention
    if with_ell:
        obj["ell"] = [_fraction_json(x) for x in game.rules.ell]
    return obj
