from fractions import Fraction as F

import numpy as np
import pytest
from scipy.optimize import linprog

from probinf.simplex import find_feasible, solve_lp


def test_small_lp():
    # min -x - y  s.t. x + s1 = 2, y + s2 = 3, x + y + s3 = 4
    A = [[1, 0, 1, 0, 0], [0, 1, 0, 1, 0], [1, 1, 0, 0, 1]]
    res = solve_lp([-1, -1, 0, 0, 0], A, [2, 3, 4])
    assert res.status == "optimal"
    assert res.objective == -4


def test_beale_cycling_example_terminates():
    # classic instance on which the textbook largest-coefficient rule cycles
    c = [0, 0, 0, F(-3, 4), 20, F(-1, 2), 6]
    A = [
        [1, 0, 0, F(1, 4), -8, -1, 9],
        [0, 1, 0, F(1, 2), -12, F(-1, 2), 3],
        [0, 0, 1, 0, 0, 1, 0],
    ]
    res = solve_lp(c, A, [0, 0, 1])
    assert res.status == "optimal"
    assert res.objective == F(-5, 4)


def test_infeasible_and_unbounded():
    assert find_feasible([[1, 1]], [-1]) is None
    assert solve_lp([1, 1], [[1, 1], [1, 1]], [1, 2]).status == "infeasible"
    assert solve_lp([-1, 0], [[1, -1]], [1]).status == "unbounded"


def test_redundant_rows():
    x = find_feasible([[1, 1, 0], [2, 2, 0], [0, 0, 1]], [1, 2, F(1, 3)])
    assert x is not None
    assert x[0] + x[1] == 1 and x[2] == F(1, 3)


def test_negative_rhs_is_normalised():
    x = find_feasible([[-1, -1]], [-3])
    assert x is not None and sum(x) == 3 and min(x) >= 0


def test_feasibility_agrees_with_float_lp(rng):
    for _ in range(150):
        m, n = rng.randint(1, 4), rng.randint(1, 6)
        A = [[rng.randint(-2, 3) for _ in range(n)] for _ in range(m)]
        b = [rng.randint(-3, 4) for _ in range(m)]
        x = find_feasible(A, b)
        oracle = linprog(np.zeros(n), A_eq=np.array(A, float), b_eq=np.array(b, float), bounds=(0, None))
        assert (x is not None) == (oracle.status == 0), (A, b)
        if x is not None:
            assert all(v >= 0 for v in x)
            assert all(sum(F(a) * v for a, v in zip(row, x)) == bi for row, bi in zip(A, b))


def test_optimum_agrees_with_float_lp(rng):
    for _ in range(100):
        m, n = rng.randint(1, 3), rng.randint(2, 6)
        # bounded feasible region: sum(x) + slack = budget
        A = [[rng.randint(0, 3) for _ in range(n)] + [1 if i == 0 else 0] for i in range(m)]
        A[0] = [1] * n + [1]
        b = [rng.randint(1, 5)] + [rng.randint(0, 4) for _ in range(m - 1)]
        c = [rng.randint(-3, 3) for _ in range(n + 1)]
        res = solve_lp(c, A, b)
        oracle = linprog(np.array(c, float), A_eq=np.array(A, float), b_eq=np.array(b, float), bounds=(0, None))
        if oracle.status == 2:
            assert res.status == "infeasible"
            continue
        assert res.status == "optimal"
        assert float(res.objective) == pytest.approx(oracle.fun, abs=1e-7)
