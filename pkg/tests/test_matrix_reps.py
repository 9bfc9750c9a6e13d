from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from metahahn import linalg as la
from metahahn.errors import DiagonalizationMismatch, RelationViolated, SingularParameter, SpectrumMismatch
from metahahn.exact import poly_from_roots
from metahahn.matrix_reps import (
    RepParams,
    RepSet,
    build_rep,
    build_sl2,
    casimir_matrix,
    general_sl2_params,
    gevp_vectors,
    hahn_algebra_matrix_residuals,
    heun_matrices,
    heun_matrices_as_printed,
    pencil_charpoly,
    pencil_spectrum,
    shape_matrices,
    sigma,
    singular_betas,
    sl2_coefficients,
    sl2_residuals,
    V_spectrum_ok,
    verify_general_sl2_embedding,
    verify_hahn_diagonalization,
    verify_relations,
    verify_representation,
    verify_shape_claims,
    verify_sl2_embedding,
)
from metahahn.ncalgebra import AlgebraParams

from conftest import POINTS, non_integers, rationals, rep_params

P0 = RepParams(F(1, 3), F(1, 2), 4)


def test_entry_examples():
    rep = build_rep(P0)
    a, b, N = P0.alpha, P0.beta, P0.N
    assert rep.X[1][0] == 0
    assert rep.Z[1][0] == -(b + 1) / (N - b - 1)
    assert rep.V[2][2] == -2 * (2 - N + b)
    assert la.is_tridiagonal(rep.X) and la.is_tridiagonal(rep.Z)
    assert all(rep.V[i][j] == 0 for i in range(N + 1) for j in range(N + 1) if i != j)


def test_singular_beta_rejected():
    with pytest.raises(SingularParameter, match="N-beta-2n"):
        build_rep(RepParams(F(1, 3), F(2), 4))
    assert F(7) not in singular_betas(4)
    build_rep(RepParams(F(1, 3), F(7), 4))


@given(st.integers(0, 6))
def test_singular_set_is_exactly_guarded(N):
    for b in singular_betas(N):
        with pytest.raises(SingularParameter):
            build_rep(RepParams(F(1, 3), b, N))


def test_relations_at_reference_point():
    assert verify_relations(build_rep(P0)).passed


@given(rep_params(max_N=7))
def test_relations_hold(p):
    assert verify_relations(build_rep(p)).passed


def test_casimir_at_zero_parameters():
    p = RepParams(0, 0, 0)
    assert p.casimir_value() == -1
    rep = build_rep(RepParams(0, F(1, 2), 3))
    q = casimir_matrix(rep.V, rep.X, rep.Z, rep.params.algebra)
    assert q == la.scale(la.identity(4), rep.params.casimir_value())


def test_perturbed_rep_fails():
    rep = build_rep(P0)
    X = la.copy(rep.X)
    X[0][0] += 1
    with pytest.raises(RelationViolated):
        verify_relations(RepSet(rep.V, X, rep.Z, rep.params))


@given(rep_params(max_N=7))
def test_V_spectrum(p):
    assert V_spectrum_ok(build_rep(p).V, p)


def test_pencil_spectrum_examples():
    rep = build_rep(RepParams(F(1, 3), F(1, 2), 2, 0))
    assert pencil_spectrum(rep) == [F(-1, 3), F(2, 3), F(5, 3)]
    with pytest.raises(SpectrumMismatch):
        pencil_spectrum(rep, sign=-1)
    a, mu = F(2, 5), F(1, 7)
    assert pencil_spectrum(build_rep(RepParams(a, F(1, 2), 0, mu))) == [-a - mu]
    cp = pencil_charpoly(build_rep(RepParams(a, F(1, 2), 1, mu)))
    assert cp == poly_from_roots([-a - mu, 1 - a - mu])
    assert cp != poly_from_roots([-a - mu, -1 - a - mu])


@given(rep_params(max_N=6))
def test_pencil_spectrum_property(p):
    assert pencil_spectrum(build_rep(p)) == sorted(n - p.alpha - p.mu for n in range(p.N + 1))


def test_hahn_diagonalization_example():
    rep = build_rep(RepParams(F(1, 3), F(1, 2), 3, 0))
    assert verify_hahn_diagonalization(rep).passed
    printed = verify_hahn_diagonalization(rep, raise_on_fail=False, shift=0)
    bad = {c.name.split(":")[1].strip().split(" ")[0] for c in printed.failures()}
    # only the off-diagonal relations depend on the normalisation
    assert printed.failures() and all("W_(n,n)" not in c.name for c in printed.failures())
    assert bad <= {"W_(n+1,n)", "W_(n-1,n)"}
    with pytest.raises(DiagonalizationMismatch):
        verify_hahn_diagonalization(rep, shift=0)


@given(rep_params(max_N=6))
def test_hahn_diagonalization_property(p):
    assert verify_hahn_diagonalization(build_rep(p)).passed


def test_sigma_boundary():
    p = RepParams(F(1, 3), F(1, 2), 3, F(1, 5))
    assert sigma(0, p) == 1
    assert sigma(p.N + 1, p) == 0


@given(rep_params(max_N=6))
def test_heun_identity(p):
    rep = build_rep(p)
    lhs, rhs = heun_matrices(rep)
    assert lhs == rhs
    assert la.is_tridiagonal(rhs)


def test_heun_printed_sign_fails():
    rep = build_rep(POINTS[0])
    lhs, rhs = heun_matrices_as_printed(rep)
    assert lhs != rhs


@given(rep_params(max_N=6))
def test_hahn_algebra_on_matrices(p):
    assert all(la.is_zero(r) for r in hahn_algebra_matrix_residuals(build_rep(p)).values())


def test_hahn_algebra_with_d1_minus_Q_fails_on_matrices():
    res = hahn_algebra_matrix_residuals(build_rep(POINTS[0]), literal_d1=True)
    assert not la.is_zero(res["[K1,[K2,K1]]"])


def test_sl2_examples():
    s = build_sl2(2)
    assert all(la.is_zero(r) for r in sl2_residuals(s).values())
    assert s.casimir() == la.scale(la.identity(3), 2)
    s0 = build_sl2(0)
    assert s0.J0 == s0.Jp == s0.Jm == [[0]]
    assert sl2_coefficients(RepParams(F(1, 3), F(1, 2), 2)).xi1 == 0


@given(rep_params(max_N=6))
def test_sl2_embedding(p):
    assert verify_sl2_embedding(p).passed


@given(non_integers(), non_integers(), non_integers(), rationals(nonzero=True), rationals(), st.integers(1, 5))
def test_general_sl2_embedding(e1, e2, e3, e4, xi1, N):
    alg = general_sl2_params(e1, e2, e3, e4, xi1, N)
    assert verify_general_sl2_embedding(alg, xi1, N).passed


def test_general_sl2_printed_xi0_fails():
    alg = general_sl2_params(F(1, 2), F(1, 3), F(2, 5), F(3), F(1, 7), 3)
    assert not verify_general_sl2_embedding(alg, F(1, 7), 3, literal_xi0=True).passed


def test_shape_examples():
    S = shape_matrices(P0)
    assert S["VX_d"][3][0] == 0
    assert S["V_d"][0][2] == 0
    assert S["V_d"][2][1] == F(-1, 18)
    assert verify_shape_claims(P0).passed


@given(rep_params(max_N=6))
def test_shape_claims(p):
    assert verify_shape_claims(p).passed


def test_gevp_vectors_solve_pencil():
    rep = build_rep(POINTS[1])
    D = gevp_vectors(rep)
    for n in range(rep.dim):
        col = [row[n] for row in D]
        lhs = la.matvec(rep.X, col)
        rhs = [(rep.params.alpha - n) * c for c in la.matvec(rep.Z, col)]
        assert lhs == rhs


@pytest.mark.parametrize("p", POINTS)
def test_verify_representation(p):
    assert verify_representation(p).passed
