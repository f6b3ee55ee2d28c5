from fractions import Fraction

import pytest

from liegeom.algebra import MetricLieAlgebra, SingularMetric, mat_inv, vector_str
from liegeom.scalars import EPS, ONE, ZERO, parse_scalar, scalar_str


def smat(rows):
    return [[scalar_str(x) for x in row] for row in rows]


# ---------------------------------------------------------------------------
# construction and validation


def test_from_brackets_fills_antisymmetry(berger_alg):
    C = berger_alg.brackets
    assert C[0][1][2] == 2 and C[1][0][2] == -2
    assert C[1][2][0] == 2 and C[2][1][0] == -2
    assert C[0][2][1] == -2 and C[2][0][1] == 2


def test_catalog_algebras_validate(berger_alg, abelian_alg):
    assert berger_alg.validate() == []
    assert abelian_alg.validate() == []


def test_jacobi_violation_detected():
    # su(2) with [X3,X1] = 2 X2 + X3 breaks the cyclic identity
    alg = MetricLieAlgebra.from_brackets(
        3,
        {(0, 1): {2: 2}, (1, 2): {0: 2}, (0, 2): {1: -2, 2: -1}},
        [[EPS, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, ONE]],
    )
    laws = {v.law for v in alg.validate()}
    assert laws == {"jacobi"}


def test_scaling_one_bracket_keeps_jacobi():
    # each double bracket lands back on the generator it kills
    alg = MetricLieAlgebra.from_brackets(
        3,
        {(0, 1): {2: 2}, (1, 2): {0: 3}, (0, 2): {1: -2}},
        [[ONE, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, ONE]],
    )
    assert alg.validate() == []


def test_metric_violations_detected():
    asym = MetricLieAlgebra.from_brackets(
        2, {}, [[ONE, ONE], [ZERO, ONE]])
    assert {v.law for v in asym.validate()} == {"metric-symmetry"}
    degenerate = MetricLieAlgebra.from_brackets(
        2, {}, [[ONE, ZERO], [ZERO, ZERO]])
    assert {v.law for v in degenerate.validate()} == {"metric-nondegenerate"}


def test_dimension_range_enforced():
    with pytest.raises(ValueError):
        MetricLieAlgebra.from_brackets(
            5, {}, [[ONE if i == j else ZERO for j in range(5)] for i in range(5)])


def test_singular_parameters(berger_alg, abelian_alg):
    assert berger_alg.singular_parameters() == [Fraction(0)]
    assert abelian_alg.singular_parameters() == []


# ---------------------------------------------------------------------------
# connection


def test_covariant_derivative_table(berger_alg):
    K = berger_alg.nabla_basis
    expect = {
        (0, 1): "(2-eps)*X3",
        (0, 2): "(-2+eps)*X2",
        (1, 0): "-eps*X3",
        (1, 2): "X1",
        (2, 0): "eps*X2",
        (2, 1): "-X1",
    }
    for i in range(3):
        for j in range(3):
            got = vector_str(K[i][j])
            assert got == expect.get((i, j), "0"), (i, j, got)


def test_connection_operators(berger_alg):
    ops = berger_alg.connection_operators
    assert smat(ops[0]) == [["0", "0", "0"], ["0", "0", "-2+eps"], ["0", "2-eps", "0"]]
    assert smat(ops[1]) == [["0", "0", "1"], ["0", "0", "0"], ["-eps", "0", "0"]]
    assert smat(ops[2]) == [["0", "-1", "0"], ["eps", "0", "0"], ["0", "0", "0"]]


def test_connection_is_torsion_free_and_metric(berger_alg):
    alg = berger_alg
    K = alg.nabla_basis
    for i in range(3):
        for j in range(3):
            for k in range(3):
                assert K[i][j][k] - K[j][i][k] == alg.brackets[i][j][k]
    for i in range(3):
        for j in range(3):
            for k in range(3):
                ej = [ONE if m == j else ZERO for m in range(3)]
                ek = [ONE if m == k else ZERO for m in range(3)]
                assert alg.inner(K[i][j], ek) + alg.inner(ej, K[i][k]) == ZERO


# ---------------------------------------------------------------------------
# curvature and Ricci


def test_curvature_operators(berger_alg):
    alg = berger_alg
    assert smat(alg.curvature_operator(0, 1)) == [
        ["0", "-eps", "0"], ["eps^2", "0", "0"], ["0", "0", "0"]]
    assert smat(alg.curvature_operator(0, 2)) == [
        ["0", "0", "-eps"], ["0", "0", "0"], ["eps^2", "0", "0"]]
    assert smat(alg.curvature_operator(1, 2)) == [
        ["0", "0", "0"], ["0", "0", "-4+3*eps"], ["0", "4-3*eps", "0"]]


def test_curvature_components(berger_alg):
    R4 = berger_alg.curvature_tensor
    assert scalar_str(R4[0][1][0][1]) == "eps^2"
    assert scalar_str(R4[0][2][0][2]) == "eps^2"
    assert scalar_str(R4[1][2][1][2]) == "4-3*eps"
    # antisymmetry in both index pairs
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for l in range(3):
                    assert R4[i][j][k][l] == -R4[j][i][k][l]
                    assert R4[i][j][k][l] == -R4[i][j][l][k]
                    assert R4[i][j][k][l] == R4[k][l][i][j]


def test_ricci_and_scalar_curvature(berger_alg):
    assert smat(berger_alg.ricci) == [
        ["2*eps^2", "0", "0"],
        ["0", "4-2*eps", "0"],
        ["0", "0", "4-2*eps"],
    ]
    assert scalar_str(berger_alg.scalar_curvature) == "8-2*eps"


def test_round_metric_is_einstein(berger_alg):
    round_sphere = berger_alg.at_eps(Fraction(1))
    for i in range(3):
        for j in range(3):
            assert round_sphere.ricci[i][j] == 2 * round_sphere.metric[i][j]
    assert round_sphere.scalar_curvature == parse_scalar("6")


def test_at_eps_lorentzian_slice(berger_alg):
    alg = berger_alg.at_eps(Fraction(-1))
    assert alg.metric_det == parse_scalar("-1")
    assert smat(alg.ricci) == [["2", "0", "0"], ["0", "6", "0"], ["0", "0", "6"]]


def test_abelian_is_flat(abelian_alg):
    R4 = abelian_alg.curvature_tensor
    assert all(
        R4[i][j][k][l] == ZERO
        for i in range(3) for j in range(3) for k in range(3) for l in range(3))
    assert abelian_alg.scalar_curvature == ZERO


# ---------------------------------------------------------------------------
# basis changes


P = [[1, 0, 0], [0, 1, 1], [0, 1, -1]]


def test_transform_basis_preserves_invariants(berger_alg):
    moved = berger_alg.transform_basis(P)
    assert moved.validate() == []
    assert moved.scalar_curvature == berger_alg.scalar_curvature
    assert moved.metric[1][1] == parse_scalar("2")


def test_transform_basis_round_trip(berger_alg):
    Pr = [[Fraction(x) for x in row] for row in P]
    back = berger_alg.transform_basis(Pr).transform_basis(mat_inv(Pr))
    assert back.brackets == berger_alg.brackets
    assert back.metric == berger_alg.metric


def test_transform_basis_moves_ricci_covariantly(berger_alg):
    moved = berger_alg.transform_basis(P)
    rho = berger_alg.ricci
    n = 3
    expect = [
        [
            sum((rho[r][s] * P[r][i] * P[s][j] for r in range(n) for s in range(n)),
                start=ZERO)
            for j in range(n)
        ]
        for i in range(n)
    ]
    assert moved.ricci == expect


# ---------------------------------------------------------------------------
# small helpers


def test_vector_str():
    assert vector_str([ONE, ZERO, ZERO]) == "X1"
    assert vector_str([-ONE, ZERO, 2 * ONE]) == "-X1+2*X3"
    assert vector_str([parse_scalar("2-eps"), ZERO, ZERO]) == "(2-eps)*X1"
    assert vector_str([ZERO, ZERO, ZERO]) == "0"


def test_singular_metric_raised():
    alg = MetricLieAlgebra.from_brackets(
        2, {}, [[EPS, ZERO], [ZERO, EPS]])
    assert alg.singular_parameters() == [Fraction(0)]
    with pytest.raises(SingularMetric):
        mat_inv([[ZERO, ZERO], [ZERO, ZERO]])
