from fractions import Fraction

import pytest

from liegeom.scalars import EPS, ONE, ZERO, MultiPoly, Poly, parse_scalar, scalar_str
from liegeom.solvers import (
    InterpolationDegreeExceeded,
    NotLinearError,
    charpoly,
    eigen_analyze,
    kernel_basis,
    linear_system_from_equations,
    poly_sqrt,
    rank_one_conditions,
    ratfunc_sqrt,
    rref_solve,
    solve_parametric,
)


def F(x):
    return Fraction(x)


# ---------------------------------------------------------------------------
# elimination over plain rationals


def test_rref_unique():
    res = rref_solve([[F(2), F(1)], [F(1), F(-1)]], [F(3), F(0)])
    assert res.status == "unique"
    assert res.particular == [F(1), F(1)]
    assert res.kernel == []


def test_rref_underdetermined():
    res = rref_solve([[F(1), F(1)], [F(2), F(2)]], [F(2), F(4)])
    assert res.status == "underdetermined"
    assert res.rank == 1
    assert res.kernel_dim == 1
    x0, k = res.particular, res.kernel[0]
    # back substitution of the particular solution and of the kernel vector
    assert x0[0] + x0[1] == F(2)
    assert k[0] + k[1] == F(0) and k != [F(0), F(0)]


def test_rref_inconsistent():
    res = rref_solve([[F(1), F(1)], [F(1), F(1)]], [F(1), F(2)])
    assert res.status == "inconsistent"
    assert res.particular is None


# ---------------------------------------------------------------------------
# parametric elimination


def test_parametric_pivot_branch():
    sol = solve_parametric([[EPS]], [ONE], ("x",))
    assert sol.generic.status == "unique"
    assert scalar_str(sol.generic.particular[0]) == "1/eps"
    assert Fraction(0) in sol.candidates
    branch = sol.branch_at(Fraction(0))
    assert branch is not None and branch.status == "inconsistent"


def test_parametric_rank_drop_branch():
    row = [EPS - 1]
    sol = solve_parametric([row], [ZERO], ("x",))
    assert sol.generic.status == "unique"
    assert sol.generic.particular == [ZERO]
    branch = sol.branch_at(Fraction(1))
    assert branch is not None
    assert branch.result.status == "underdetermined"
    assert branch.result.kernel_dim == 1


def test_parametric_no_spurious_branches():
    # rank one for every eps: the candidate 0 is probed and discarded
    sol = solve_parametric([[EPS, ONE], [EPS, ONE]], [ZERO, ZERO], ("x", "y"))
    assert sol.generic.status == "underdetermined"
    assert sol.branches == []


def test_parametric_pole_branch_is_singular():
    sol = solve_parametric([[ONE / EPS]], [ONE], ("x",))
    branch = sol.branch_at(Fraction(0))
    assert branch is not None and branch.status == "singular"
    assert branch.result is None


# ---------------------------------------------------------------------------
# equation intake


def test_linear_system_from_equations():
    names = ("x", "y")
    x = MultiPoly.var(names, "x")
    y = MultiPoly.var(names, "y")
    rows, rhs = linear_system_from_equations([x + y - 2, x * EPS - y], names)
    assert rows == [[ONE, ONE], [EPS, -ONE]]
    assert rhs == [2 * ONE, ZERO]


def test_linear_system_rejects_quadratics():
    names = ("x", "y")
    x = MultiPoly.var(names, "x")
    y = MultiPoly.var(names, "y")
    with pytest.raises(NotLinearError):
        linear_system_from_equations([x * y], names)


def test_kernel_basis():
    ker = kernel_basis([[ONE, ONE, ZERO]])
    assert len(ker) == 2
    for v in ker:
        assert v[0] + v[1] == ZERO


def test_rank_one_conditions():
    u = [MultiPoly.var(("a", "b"), "a"), MultiPoly.var(("a", "b"), "b")]
    v = [MultiPoly.const(("a", "b"), 1), MultiPoly.const(("a", "b"), 2)]
    minors = rank_one_conditions([u, v])
    assert len(minors) == 1
    assert str(minors[0]) == "2*a-b"
    assert rank_one_conditions([v, [2 * x for x in v]]) == []


# ---------------------------------------------------------------------------
# characteristic polynomials and eigen analysis


def test_charpoly_swap_matrix():
    cp = charpoly([[ZERO, ONE], [ONE, ZERO]])
    assert str(cp) == "mu^2-1"
    assert cp.degree == 2


def test_eigen_identity_matrix():
    dec = eigen_analyze([[ONE, ZERO], [ZERO, ONE]])
    assert [(scalar_str(p.value), p.multiplicity) for p in dec.pairs] == [("1", 2)]
    assert dec.residual.degree <= 0


def test_eigen_rational_function_values():
    dec = eigen_analyze([[ZERO, EPS * EPS], [ONE, ZERO]])
    assert [(scalar_str(p.value), p.multiplicity) for p in dec.pairs] == [
        ("-eps", 1), ("eps", 1)]
    assert dec.residual.degree <= 0
    # eigenvectors actually satisfy M v = mu v
    M = [[ZERO, EPS * EPS], [ONE, ZERO]]
    for pair in dec.pairs:
        for v in pair.vectors:
            image = [M[0][0] * v[0] + M[0][1] * v[1], M[1][0] * v[0] + M[1][1] * v[1]]
            assert image == [pair.value * v[0], pair.value * v[1]]


def test_eigen_irrational_values_stay_in_residual():
    # mu^2 = eps has no rational-function roots
    dec = eigen_analyze([[ZERO, EPS], [ONE, ZERO]])
    assert dec.pairs == []
    assert dec.residual.degree == 2


def test_eigen_berger_laplacian_matrix():
    lam2 = parse_scalar("(-4+4*eps-2*eps^2)/eps")
    M = [[-2 * EPS, ZERO, ZERO], [ZERO, lam2, ZERO], [ZERO, ZERO, lam2]]
    dec = eigen_analyze(M)
    assert [(scalar_str(p.value), p.multiplicity) for p in dec.pairs] == [
        ("-2*eps", 1), ("(-4+4*eps-2*eps^2)/eps", 2)]


def test_eigen_degree_bound():
    with pytest.raises(InterpolationDegreeExceeded):
        eigen_analyze([[EPS ** 3]], degree_bound=2)


# ---------------------------------------------------------------------------
# square roots


def test_poly_sqrt():
    x = Poly.x()
    s = poly_sqrt((1 + x) ** 2)
    assert s is not None and s * s == (1 + x) ** 2
    assert poly_sqrt(x ** 2 + 1) is None
    assert poly_sqrt(x) is None


def test_ratfunc_sqrt():
    f = parse_scalar("4*eps^2/(1-2*eps+eps^2)")
    s = ratfunc_sqrt(f)
    assert s is not None and s * s == f
    assert ratfunc_sqrt(EPS) is None
