import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from x3ent.exact import Surd
from x3ent.lp import LinSystem, lp_solve

small_ints = st.integers(-4, 4)


def solve_linear(rows, rhs):
    """Gaussian elimination over the rationals; None if singular."""
    n = len(rows)
    m = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col] / m[col][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [m[i][n] / m[i][i] for i in range(n)]


def brute_force_max(obj, A, b):
    """Best vertex of {A x <= b, x >= 0} by trying every basis."""
    n = len(obj)
    rows = [list(r) for r in A] + [[-int(i == j) for j in range(n)] for i in range(n)]
    rhs = list(b) + [0] * n
    best = None
    for idx in itertools.combinations(range(len(rows)), n):
        x = solve_linear([rows[i] for i in idx], [rhs[i] for i in idx])
        if x is None or any(sum(a * v for a, v in zip(r, x)) > h for r, h in zip(rows, rhs)):
            continue
        val = sum(c * v for c, v in zip(obj, x))
        best = val if best is None or val > best else best
    return best


@given(
    st.lists(small_ints, min_size=3, max_size=3),
    st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=1, max_size=4),
    st.lists(st.integers(-3, 6), min_size=4, max_size=4),
)
def test_matches_vertex_enumeration(obj, A, b):
    # a box keeps every instance bounded
    A = A + [[1, 1, 1]]
    b = b[: len(A) - 1] + [6]
    while len(b) < len(A):
        b.insert(0, 1)
    names = ["x", "y", "z"]
    sys = LinSystem(names, objective=dict(zip(names, obj)), maximize=True)
    for row, h in zip(A, b):
        sys.add(dict(zip(names, row)), "<=", h)
    res = lp_solve(sys)
    expected = brute_force_max(obj, A, b)
    if expected is None:
        assert res.status == "infeasible"
        return
    assert res.optimal
    assert res.value == expected
    x = [res.solution[n] for n in names]
    assert all(v >= 0 for v in x)
    assert all(sum(a * v for a, v in zip(row, x)) <= h for row, h in zip(A, b))
    # dual prices certify the optimum: y >= 0, A^T y >= obj, b.y = value
    y = res.duals
    assert all(v >= 0 for v in y)
    for j in range(3):
        assert sum(y[i] * A[i][j] for i in range(len(A))) >= obj[j]
    assert sum(yi * h for yi, h in zip(y, b)) == expected


def test_small_maximization():
    sys = LinSystem(["u1", "u2"], objective={"u1": 1}, maximize=True)
    sys.add({"u1": 1, "u2": 1}, "<=", 4)
    sys.add({"u1": 1, "u2": -1}, ">=", 0)
    res = lp_solve(sys)
    assert res.optimal and res.value == 4
    assert res.solution == {"u1": 4, "u2": 0}


def test_equalities_and_minimization():
    sys = LinSystem(["a", "b"], objective={"a": 2, "b": 3})
    sys.add({"a": 1, "b": 1}, "==", Fraction(5, 2))
    sys.add({"b": 1}, ">=", 1)
    res = lp_solve(sys)
    assert res.value == 6
    assert res.solution == {"a": Fraction(3, 2), "b": 1}


def test_infeasible_and_unbounded():
    sys = LinSystem(["x"])
    sys.add({"x": 1}, "<=", -1)
    assert lp_solve(sys).status == "infeasible"
    sys = LinSystem(["x", "y"], objective={"x": 1}, maximize=True)
    sys.add({"x": 1, "y": -1}, "<=", 1)
    assert lp_solve(sys).status == "unbounded"


def test_irrational_right_hand_side():
    sys = LinSystem(["x", "y"], objective={"x": 1, "y": 1}, maximize=True)
    sys.add({"x": 1}, "<=", Surd.sqrt(2) + 2)
    sys.add({"y": 1}, "<=", 1)
    res = lp_solve(sys)
    assert res.value == Surd.sqrt(2) + 3


def test_rejects_float_coefficients():
    sys = LinSystem(["x"])
    sys.add({"x": 0.5}, "<=", 1)
    with pytest.raises(TypeError):
        lp_solve(sys)
    with pytest.raises(KeyError):
        sys.add({"w": 1}, "<=", 1)
    with pytest.raises(ValueError):
        sys.add({"x": 1}, "<", 1)


def test_deterministic():
    def build():
        sys = LinSystem(["a", "b", "c"], objective={"a": 1, "b": 1, "c": 1}, maximize=True)
        sys.add({"a": 1, "b": 1}, "<=", 1)
        sys.add({"b": 1, "c": 1}, "<=", 1)
        sys.add({"a": 1, "c": 1}, "<=", 1)
        return sys
    r1, r2 = lp_solve(build()), lp_solve(build())
    assert r1.solution == r2.solution and r1.value == Fraction(3, 2)
