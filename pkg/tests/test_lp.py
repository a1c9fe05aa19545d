from fractions import Fraction

from hypothesis import given, settings, strategies as st
import pytest
from scipy.optimize import linprog as highs

from latticegames import lp


def feasible(x, A, b, A_eq, b_eq):
    ok = all(v >= 0 for v in x)
    ok &= all(sum(a * v for a, v in zip(row, x)) <= r for row, r in zip(A, b))
    ok &= all(sum(a * v for a, v in zip(row, x)) == r for row, r in zip(A_eq, b_eq))
    return ok


def test_degenerate_system_sympy_gets_wrong():
    # x2 <= 0, x1 - x3 <= 0, x1 + x2 + x3 = 1
    value, x = lp.minimize([0, 0, 0], [[0, 1, 0], [1, 0, -1]], [0, 0], [[1, 1, 1]], [1])
    assert feasible(x, [[0, 1, 0], [1, 0, -1]], [0, 0], [[1, 1, 1]], [1])


def test_infeasible_and_unbounded():
    with pytest.raises(lp.Infeasible):
        lp.minimize([0], [[1]], [-1])
    with pytest.raises(lp.Unbounded):
        lp.minimize([-1], [[-1]], [0])


def test_redundant_equalities():
    value, x = lp.minimize([1, 1], A_eq=[[1, 1], [2, 2]], b_eq=[3, 6])
    assert value == 3 and sum(x) == 3


def test_exact_rational_optimum():
    value, x = lp.minimize([1, 1], [[-3, -1], [-1, -3]], [-1, -1])
    assert value == Fraction(1, 2) and x == [Fraction(1, 4), Fraction(1, 4)]


small = st.integers(-3, 3)


@settings(max_examples=300, deadline=None)
@given(
    st.integers(1, 4).flatmap(
        lambda n: st.tuples(
            st.lists(small, min_size=n, max_size=n),
            st.lists(st.lists(small, min_size=n, max_size=n), max_size=4),
            st.lists(small, min_size=4, max_size=4),
            st.lists(st.lists(small, min_size=n, max_size=n), max_size=2),
            st.lists(small, min_size=2, max_size=2),
        )
    )
)
def test_agrees_with_highs(problem):
    c, A, b, A_eq, b_eq = problem
    b, b_eq = b[: len(A)], b_eq[: len(A_eq)]
    # box the variables so every problem is bounded
    A = A + [[int(i == j) for j in range(len(c))] for i in range(len(c))]
    b = b + [5] * len(c)
    ref = highs(c, A_ub=A, b_ub=b, A_eq=A_eq or None, b_eq=b_eq or None, method="highs")
    try:
        value, x = lp.minimize(c, A, b, A_eq, b_eq)
    except lp.Infeasible:
        assert ref.status == 2
        return
    assert ref.status == 0
    assert feasible(x, A, b, A_eq, b_eq)
    assert float(value) == pytest.approx(ref.fun, abs=1e-7)
