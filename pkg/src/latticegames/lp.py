"""Exact linear programming over the rationals.

Dense two-phase simplex with Bland's rule on ``Fraction`` tableaux.  The
problems solved here are tiny (a handful of variables per move or
coordinate), so clarity wins over speed.
"""

from fractions import Fraction


class Infeasible(Exception):
    pass


class Unbounded(Exception):
    pass


def _pivot(rows, obj, basis, r, c):
    pr = rows[r]
    k = pr[c]
    rows[r] = pr = [x / k for x in pr]
    for i, row in enumerate(rows):
        if i != r and row[c]:
            f = row[c]
            rows[i] = [a - f * b for a, b in zip(row, pr)]
    if obj[c]:
        f = obj[c]
        obj[:] = [a - f * b for a, b in zip(obj, pr)]
    basis[r] = c


def _run(rows, obj, basis, allowed):
    # obj holds reduced costs followed by minus the objective value
    while True:
        enter = next((j for j in allowed if obj[j] < 0), None)
        if enter is None:
            return
        best = None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                key = (row[-1] / row[enter], basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise Unbounded()
        _pivot(rows, obj, basis, best[1], enter)


def minimize(c, A=(), b=(), A_eq=(), b_eq=()):
    """Minimize ``c.x`` subject to ``A x <= b``, ``A_eq x = b_eq``, ``x >= 0``.

    Returns ``(value, x)`` with exact ``Fraction`` entries.  Raises
    ``Infeasible`` or ``Unbounded``.
    """
    n = len(c)
    ub = [(list(map(Fraction, a)), Fraction(v), True) for a, v in zip(A, b)]
    eq = [(list(map(Fraction, a)), Fraction(v), False) for a, v in zip(A_eq, b_eq)]
    cons = ub + eq
    m = len(cons)
    n_slack = len(ub)
    width = n + n_slack + m  # originals, slacks, artificials
    rows, basis = [], []
    for i, (a, v, has_slack) in enumerate(cons):
        row = a + [Fraction(0)] * (n_slack + m) + [v]
        if has_slack:
            row[n + i] = Fraction(1)
        if v < 0:
            row = [-x for x in row]
        row[n + n_slack + i] = Fraction(1)
        rows.append(row)
        basis.append(n + n_slack + i)
    artificial = set(range(n + n_slack, width))

    obj = [Fraction(0)] * (width + 1)
    for row in rows:
        obj = [o - x for o, x in zip(obj, row)]
    for j in artificial:
        obj[j] = Fraction(0)
    _run(rows, obj, basis, range(width))
    if obj[-1] != 0:
        raise Infeasible()

    # drive zero-level artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(rows):
        if basis[i] in artificial:
            col = next((j for j in range(n + n_slack) if rows[i][j] != 0), None)
            if col is None:
                del rows[i], basis[i]
                continue
            _pivot(rows, obj, basis, i, col)
        i += 1

    cost = [Fraction(x) for x in c] + [Fraction(0)] * (width - n + 1)
    obj = cost[:]
    for row, j in zip(rows, basis):
        if cost[j]:
            obj = [o - cost[j] * x for o, x in zip(obj, row)]
    _run(rows, obj, basis, range(n + n_slack))

    x = [Fraction(0)] * n
    for row, j in zip(rows, basis):
        if j < n:
            x[j] = row[-1]
    return -obj[-1], x
