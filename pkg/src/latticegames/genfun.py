"""Rational strategies and affine stratifications.

A rational strategy is kept as a sum of terms ``num / prod(1 - t^a)`` with
nonnegative denominator exponents, so its power series lives on N^d and
can be expanded exactly over any sublevel set of a positive functional.

An affine stratification is a list of parts ``F + N A``.  Verifying one
against a solution counts, for every region position, how many parts
contain it; P-positions must be hit exactly once and all others never.
"""

from collections import defaultdict, namedtuple
from dataclasses import dataclass
from fractions import Fraction
from math import floor, lcm
import json

import numpy as np
from sympy import Matrix

from .core import add, dot, integer_functional, loads_json, sub
from .errors import (
    DependentGenerators,
    DimensionMismatch,
    GameFormatError,
    OverlappingTranslates,
    ZeroDenominatorVector,
)


def _lex_desc(vectors):
    return tuple(sorted(vectors, reverse=True))


@dataclass(frozen=True)
class Term:
    """``sum(coef * t^exp) / prod(1 - t^a for a in den)``."""

    num: tuple  # ((exp, coef), ...), exps distinct, coefs nonzero
    den: tuple

    @classmethod
    def make(cls, num, den=()):
        acc = defaultdict(int)
        for exp, coef in num:
            acc[tuple(exp)] += coef
        for a in den:
            if not any(a):
                raise ZeroDenominatorVector("denominator factor (1 - t^0) is zero")
            if min(a) < 0:
                raise ZeroDenominatorVector("denominator exponent %s has a negative entry" % (a,))
        num = tuple((e, acc[e]) for e in _lex_desc(acc) if acc[e])
        return cls(num, _lex_desc(tuple(a) for a in den))

    def key(self):
        return (self.den, tuple(e for e, _ in self.num), tuple(c for _, c in self.num))


def _monomial(exp, coef):
    var = "*".join(
        "t%d" % (i + 1) if e == 1 else "t%d^%d" % (i + 1, e) for i, e in enumerate(exp) if e
    )
    if not var:
        return str(coef)
    if coef == 1:
        return var
    if coef == -1:
        return "-" + var
    return "%d*%s" % (coef, var)


def _term_text(term):
    parts = [_monomial(e, c) for e, c in term.num]
    num = parts[0]
    for p in parts[1:]:
        num += " - " + p[1:] if p.startswith("-") else " + " + p
    if not term.den:
        return num
    if len(parts) > 1:
        num = "(%s)" % num
    factors = "".join("(1 - %s)" % _monomial(a, 1) for a in term.den)
    if len(term.den) > 1:
        factors = "(%s)" % factors
    return "%s / %s" % (num, factors)


class RationalStrategy:
    """A finite sum of ``Term``s in ``d`` variables, kept in canonical order."""

    def __init__(self, d, terms=()):
        self.d = d
        terms = [t for t in terms if t.num]
        for t in terms:
            for e, _ in t.num:
                if len(e) != d or min(e, default=0) < 0:
                    raise DimensionMismatch("numerator exponent %s not in N^%d" % (e, d))
            for a in t.den:
                if len(a) != d:
                    raise DimensionMismatch("denominator exponent %s not in N^%d" % (a, d))
        self.terms = tuple(sorted(terms, key=Term.key))

    def __eq__(self, other):
        return (
            isinstance(other, RationalStrategy)
            and self.d == other.d
            and self.terms == other.terms
        )

    def __repr__(self):
        return "RationalStrategy(%d, %r)" % (self.d, str(self))

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(_term_text(t) for t in self.terms)

    def to_json(self):
        return {
            "dimension": self.d,
            "terms": [
                {
                    "num": [{"exp": list(e), "coef": c} for e, c in t.num],
                    "den": [list(a) for a in t.den],
                }
                for t in self.terms
            ],
        }

    @classmethod
    def from_json(cls, obj):
        try:
            terms = [
                Term.make(
                    [(tuple(m["exp"]), m["coef"]) for m in t["num"]],
                    [tuple(a) for a in t["den"]],
                )
                for t in obj["terms"]
            ]
            d = obj.get("dimension")
            if d is None:
                d = len(terms[0].num[0][0]) if terms and terms[0].num else 0
        except (KeyError, TypeError, IndexError) as e:
            raise GameFormatError("malformed strategy JSON: %s" % e) from None
        return cls(d, terms)


def expand(strategy, ell, bound):
    """Exact series coefficients on {p : ell(p) <= bound}; zero coefficients omitted."""
    ints, scale = integer_functional(ell)
    top = floor(Fraction(bound) * scale)
    total = defaultdict(int)
    for term in strategy.terms:
        series = {e: c for e, c in term.num if dot(ints, e) <= top}
        for a in term.den:
            step = dot(ints, a)
            if step <= 0:
                raise ZeroDenominatorVector("denominator exponent %s is not positive" % (a,))
            out = defaultdict(int)
            for e, c in series.items():
                y, level = e, dot(ints, e)
                while level <= top:
                    out[y] += c
                    y = add(y, a)
                    level += step
            series = out
        for e, c in series.items():
            total[e] += c
    return {e: c for e, c in total.items() if c}


def strategy_from_pattern(p0):
    """sum(t^p for p in P0) / prod(1 - t_i^2)."""
    d = p0.d
    if not p0.members:
        return RationalStrategy(d)
    den = [tuple(2 * (j == i) for j in range(d)) for i in range(d)]
    return RationalStrategy(d, [Term.make([(p, 1) for p in p0.members], den)])


@dataclass(frozen=True)
class Part:
    """The module ``F + N A``: finitely many translates of an affine semigroup."""

    F: tuple
    A: tuple


class AffineStratification:
    def __init__(self, d, parts):
        self.d = d
        checked = []
        for i, (F, A) in enumerate(parts, 1):
            F = tuple(tuple(f) for f in F)
            A = tuple(tuple(a) for a in A)
            if not F:
                raise GameFormatError("part %d has no translates" % i)
            for v in F + A:
                if len(v) != d:
                    raise DimensionMismatch("part %d: vector %s not of dimension %d" % (i, v, d))
            for a in A:
                if not any(a) or min(a) < 0:
                    raise GameFormatError("part %d: generator %s must be nonzero in N^d" % (i, a))
            checked.append(Part(F, A))
        self.parts = tuple(checked)

    def to_json(self):
        return {
            "dimension": self.d,
            "parts": [{"F": [list(f) for f in p.F], "A": [list(a) for a in p.A]} for p in self.parts],
        }


def parse_stratification(obj):
    if not isinstance(obj, dict) or type(obj.get("dimension")) is not int:
        raise GameFormatError("stratification needs an integer 'dimension'")
    parts = obj.get("parts")
    if not isinstance(parts, list):
        raise GameFormatError("stratification needs a list of 'parts'")
    out = []
    for part in parts:
        try:
            F, A = part["F"], part["A"]
        except (KeyError, TypeError):
            raise GameFormatError("each part needs 'F' and 'A'") from None
        for v in list(F) + list(A):
            if not isinstance(v, list) or not all(type(x) is int for x in v):
                raise GameFormatError("vectors must be lists of integers, got %r" % (v,))
        out.append((F, A))
    return AffineStratification(obj["dimension"], out)


def load_stratification(path):
    with open(path) as fh:
        return parse_stratification(loads_json(fh.read(), str(path)))


def in_semigroup(r, gens, ell):
    """Whether ``r`` is a nonnegative integer combination of ``gens`` (all in N^d).

    Depth-first over generators; each coefficient k of generator a obeys
    k * ell(a) <= ell(r), and the remainder must stay in N^d.
    """
    r = tuple(r)
    if min(r, default=0) < 0:
        return False
    gens = [tuple(a) for a in gens]

    def rec(i, rem):
        if not any(rem):
            return True
        if i == len(gens):
            return False
        a = gens[i]
        budget = dot(ell, rem) // dot(ell, a)
        k = 0
        while k <= budget and min(rem, default=0) >= 0:
            if rec(i + 1, rem):
                return True
            rem = sub(rem, a)
            k += 1
        return False

    return rec(0, r)


def module_contains(p, part, ell):
    return any(in_semigroup(sub(p, f), part.A, ell) for f in part.F)


def module_points(part, ell, bound):
    """Naive enumeration: for each translate f, the set f + N A within the region."""
    ints, scale = integer_functional(ell)
    top = floor(Fraction(bound) * scale)
    out = []
    for f in part.F:
        seen = set()
        if min(f, default=0) >= 0 and dot(ints, f) <= top:
            seen.add(f)
        stack = list(seen)
        while stack:
            x = stack.pop()
            for a in part.A:
                y = add(x, a)
                if y not in seen and dot(ints, y) <= top:
                    seen.add(y)
                    stack.append(y)
        out.append(seen)
    return out


def generators_independent(gens, d):
    if not gens:
        return True
    return Matrix([list(a) for a in gens]).rank() == len(gens)


def _left_inverse(gens, d):
    # rows I with G[I] invertible, and integer adj, den with G[I]^-1 = adj / den
    G = Matrix([list(a) for a in gens]).T  # d x r
    _, pivots = G.T.rref()
    rows = list(pivots)
    inv = G.extract(rows, list(range(G.cols))).inv()
    den = lcm(1, *(int(x.q) for x in inv))
    adj = [[int(x * den) for x in inv.row(i)] for i in range(inv.rows)]
    return rows, adj, den


def _part_counts(part, X, ell, d):
    """Number of translates of ``part`` containing each row of X (shape N x d)."""
    counts = np.zeros(len(X), dtype=np.int64)
    if not generators_independent(part.A, d):
        for idx, p in enumerate(map(tuple, X.tolist())):
            counts[idx] = sum(in_semigroup(sub(p, f), part.A, ell) for f in part.F)
        return counts
    if not part.A:
        index = {tuple(p): i for i, p in enumerate(X.tolist())}
        for f in part.F:
            if f in index:
                counts[index[f]] += 1
        return counts
    rows, adj, den = _left_inverse(part.A, d)
    r = len(part.A)
    G = [list(a) for a in part.A]
    span = max(abs(int(v)) for v in X.flat) if X.size else 0
    span += max(abs(x) for f in part.F for x in f)
    worst = span * r * max(abs(x) for row in adj for x in row) + den
    worst *= r * max(max(a) for a in G) + 1
    dtype = np.int64 if worst < 2**62 else object
    Xd = X.astype(dtype)
    Adj = np.array(adj, dtype=dtype)  # r x r
    Gm = np.array(G, dtype=dtype).T  # d x r
    base = Xd[:, rows] @ Adj.T
    for f in part.F:
        fv = np.array(f, dtype=dtype)
        C = base - (fv[rows] @ Adj.T)
        ok = np.all(C % den == 0, axis=1)
        c = C // den
        ok &= np.all(c >= 0, axis=1)
        ok &= np.all(c @ Gm.T == Xd - fv, axis=1)
        counts += ok.astype(np.int64)
    return counts


def membership_counts(strat, positions, ell):
    """For each position, the number of (part, translate) pairs containing it."""
    d = strat.d
    if not positions:
        return []
    X = np.array(positions, dtype=object).reshape(len(positions), d)
    total = np.zeros(len(positions), dtype=np.int64)
    for part in strat.parts:
        total += _part_counts(part, X, ell, d)
    return total.tolist()


Mismatch = namedtuple("Mismatch", "position count expected")


def stratification_mismatches(strat, solution):
    """Every region position whose membership count is wrong, in region order."""
    game = solution.game
    if strat.d != game.d:
        raise DimensionMismatch(
            "stratification has dimension %d, game has %d" % (strat.d, game.d)
        )
    positions = solution.region.positions()
    counts = membership_counts(strat, positions, game.rules.ell)
    P = solution.p_positions
    out = []
    for p, n in zip(positions, counts):
        want = 1 if p in P else 0
        if n != want:
            out.append(Mismatch(p, n, want))
    return out


def verify_stratification(strat, solution):
    """None if the parts partition the P-positions of the region, else the first ``Mismatch``."""
    bad = stratification_mismatches(strat, solution)
    return bad[0] if bad else None


def strategy_from_stratification(strat, ell, bound):
    """sum over parts and translates of t^f / prod(1 - t^a).

    Needs linearly independent generators in each part and pairwise
    disjoint translates, the latter checked on {ell <= bound}.
    """
    terms = []
    for i, part in enumerate(strat.parts, 1):
        if not generators_independent(part.A, strat.d):
            raise DependentGenerators(i)
        owner = {}
        for f, points in zip(part.F, module_points(part, ell, bound)):
            hits = sorted(x for x in points if x in owner)
            if hits:
                witness = min(hits, key=lambda x: (dot(ell, x), x))
                raise OverlappingTranslates(i, owner[witness], f, witness)
            for x in points:
                owner[x] = f
        for f in part.F:
            terms.append(Term.make([(f, 1)], part.A))
    return RationalStrategy(strat.d, terms)


def dumps_strategy(strategy):
    return json.dumps(strategy.to_json(), sort_keys=True)
