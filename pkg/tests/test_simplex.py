from fractions import Fraction as F

from uncertain_objectives.simplex import solve_lp


def test_simple_minimization():
    # min x + 2y  s.t.  x + y >= 1 (as -x - y <= -1), x,y >= 0 -> x=1, y=0
    res = solve_lp(c=[F(1), F(2)], a_ub=[[F(-1), F(-1)]], b_ub=[F(-1)])
    assert res.status == "optimal"
    assert res.objective == 1
    assert res.x == [F(1), F(0)]


def test_equality_constraints():
    # min 3x + y  s.t.  x + y = 2, x - y = 0 -> x = y = 1
    res = solve_lp(
        c=[F(3), F(1)],
        a_eq=[[F(1), F(1)], [F(1), F(-1)]],
        b_eq=[F(2), F(0)],
    )
    assert res.status == "optimal"
    assert res.x == [F(1), F(1)]
    assert res.objective == 4


def test_exact_rational_optimum():
    # min -x  s.t.  3x <= 1  -> x = 1/3 exactly
    res = solve_lp(c=[F(-1)], a_ub=[[F(3)]], b_ub=[F(1)])
    assert res.x == [F(1, 3)]
    assert res.objective == F(-1, 3)


def test_unbounded():
    res = solve_lp(c=[F(-1)], a_ub=[[F(-1)]], b_ub=[F(0)])
    assert res.status == "unbounded"


def test_infeasible_with_farkas_certificate():
    # x >= 2 and x <= 1 cannot hold together.
    a_ub = [[F(-1)], [F(1)]]
    b_ub = [F(-2), F(1)]
    res = solve_lp(c=[F(0)], a_ub=a_ub, b_ub=b_ub)
    assert res.status == "infeasible"
    y = res.certificate
    # y_ub <= 0, y.A <= 0 componentwise, y.b > 0
    assert all(yi <= 0 for yi in y)
    combo = sum(yi * row[0] for yi, row in zip(y, a_ub))
    assert combo <= 0
    assert sum(yi * bi for yi, bi in zip(y, b_ub)) > 0


def test_infeasible_equalities_certificate():
    # x + y = 1 and x + y = 2.
    a_eq = [[F(1), F(1)], [F(1), F(1)]]
    b_eq = [F(1), F(2)]
    res = solve_lp(c=[F(0), F(0)], a_eq=a_eq, b_eq=b_eq)
    assert res.status == "infeasible"
    y = res.certificate
    for j in range(2):
        assert sum(y[i] * a_eq[i][j] for i in range(2)) <= 0
    assert sum(y[i] * b_eq[i] for i in range(2)) > 0


def test_redundant_equalities():
    # Duplicate rows must not break phase 2.
    res = solve_lp(
        c=[F(1), F(1)],
        a_eq=[[F(1), F(1)], [F(2), F(2)]],
        b_eq=[F(1), F(2)],
    )
    assert res.status == "optimal"
    assert res.objective == 1


def test_degenerate_problem_terminates():
    # Highly degenerate: many duplicate constraints through the origin.
    n = 6
    a_ub = [[F(1)] * n for _ in range(8)]
    b_ub = [F(1)] * 8
    res = solve_lp(c=[F(-1)] * n, a_ub=a_ub, b_ub=b_ub)
    assert res.status == "optimal"
    assert res.objective == -1
