from fractions import Fraction as F

import pytest
from hypothesis import assume, given, strategies as st

from metahahn import linalg as la
from metahahn import special as sp
from metahahn.errors import PoleHit, SingularParameter
from metahahn.exact import pochhammer
from metahahn.matrix_reps import RepParams

from conftest import POINTS, non_integers, rationals, rep_params

AH, BH = F(1, 4), F(1, 3)


def test_hahn_value_at_grid_point():
    assert sp.hahn_Q(2, 3, AH, BH, 5) == F(-929, 1350)


@given(non_integers(), non_integers(), st.integers(1, 7), rationals())
def test_hahn_low_degrees(ah, bh, N, x):
    assert sp.hahn_Q(0, x, ah, bh, N) == 1
    assert sp.hahn_Q(3 % (N + 1), 0, ah, bh, N) == 1
    assert sp.hahn_Q(1, x, ah, bh, N) == 1 - (ah + bh + 2) * x / ((ah + 1) * N)


def test_hahn_poly_object():
    q = sp.HahnPoly(2, AH, BH, 5)
    assert q(3) == F(-929, 1350)


def test_hahn_recurrence_sweep():
    assert sp.hahn_recurrence_check(AH, BH, 5).passed


@given(non_integers(), non_integers(), st.integers(1, 6))
def test_hahn_recurrence_property(ah, bh, N):
    assume(sp.hahn_degenerate(ah, bh, N) is None)
    assert sp.hahn_recurrence_check(ah, bh, N).passed


def test_hahn_recurrence_skips_degenerate_point():
    rep = sp.hahn_recurrence_check(-1, F(1, 2), 3)
    assert rep.passed and "skipped" in rep.checks[0].info


@given(non_integers(), non_integers(), st.integers(1, 6), st.integers(0, 6))
def test_reflection(ah, bh, N, m):
    assume(m <= N and sp.hahn_degenerate(ah, bh, N) is None and sp.hahn_degenerate(bh, ah, N) is None)
    assert sp.hahn_reflection_check(m, ah, bh, N)


def test_reflection_needs_constant_factor():
    # at ahat=1/2, bhat=-1/2 the bare sign is off by (bhat+1)/(ahat+1) = 1/3
    assert not sp.hahn_reflection_check(1, F(1, 2), F(-1, 2), 1, literal=True)
    assert sp.hahn_reflection_factor(1, F(1, 2), F(-1, 2)) == F(-1, 3)
    assert sp.hahn_reflection_check(2, F(1, 4), F(1, 4), 5, literal=True)


def test_rational_hahn_basics():
    a, b, N = F(1, 3), F(1, 2), 4
    for n in range(N + 1):
        assert sp.rational_hahn(n, 0, a, b, N) == (-1) ** n * pochhammer(-N, n) / pochhammer(b + 1, n)
    assert sp.rational_hahn(0, F(5, 7), a, b, N) == 1
    assert sp.rational_hahn_partner(2, 1, a, b, N) == sp.rational_hahn(2, 3, b + 2 - a, b, N)
    assert sp.RationalHahn(2, a, b, N)(1) == sp.rational_hahn(2, 1, a, b, N)


def test_rational_hahn_pole():
    a = F(1, 3)
    with pytest.raises(PoleHit) as exc:
        sp.rational_hahn(2, a + 1, a, F(1, 2), 4)
    assert exc.value.x == a + 1
    # the pole is outside the sum when the lower parameter stays below -n
    sp.rational_hahn(1, a + 1, a, F(1, 2), 4)


@given(non_integers(), non_integers(), st.integers(1, 5), st.integers(1, 5))
def test_rational_hahn_clears_to_polynomial(a, b, N, n):
    assume(n <= N)
    # (alpha - x)_n U_n(x) is a polynomial of degree <= 2n in x: its (2n+1)-th difference vanishes
    xs = [F(k, 2) + F(1, 7) for k in range(2 * n + 2)]
    assume(all(not (a - x).denominator == 1 for x in xs))
    vals = [pochhammer(a - x, n) * sp.rational_hahn(n, x, a, b, N) for x in xs]
    for _ in range(2 * n + 1):
        vals = [v1 - v0 for v0, v1 in zip(vals, vals[1:])]
    assert vals == [0]


@pytest.mark.parametrize("p", POINTS + [RepParams(F(1, 3), F(1, 2), 4)])
def test_difference_realization(p):
    assert sp.verify_difference_realization(p).passed


def test_difference_operator_entries():
    p = RepParams(F(1, 3), F(1, 2), 4)
    g = sp.build_difference_operators(p)
    N = p.N
    assert sp.y_coefficients(N, p)[0] == 0
    assert g["Y"] == la.matmul(g["X"], g["V"])
    assert g["X"] == la.matmul(la.diag([p.alpha - n for n in range(N + 1)]), g["Z"])


def test_difference_operators_reject_alpha_on_grid():
    with pytest.raises(SingularParameter):
        sp.build_difference_operators(RepParams(F(2), F(1, 2), 4))


@pytest.mark.parametrize("p", POINTS + [RepParams(F(1, 3), F(1, 2), 4)])
def test_bispectrality(p):
    assert sp.verify_bispectrality_U(p).passed


def test_bispectrality_extra_factor_fails():
    p = RepParams(F(1, 3), F(1, 2), 4)
    rep = sp.verify_bispectrality_U(p, raise_on_fail=False, literal_rhs=True)
    assert not rep.passed
    assert all("difference" in c.name for c in rep.failures())


@given(rep_params(max_N=5))
def test_bispectrality_property(p):
    assert sp.verify_bispectrality_U(p, raise_on_fail=False).passed


@pytest.mark.parametrize("p", POINTS + [RepParams(F(1, 3), F(1, 2), 4)])
def test_contiguity(p):
    assert sp.verify_contiguity(p).passed


def test_contiguity_degree_index_fails():
    p = RepParams(F(1, 3), F(1, 2), 4)
    rep = sp.verify_contiguity(p, raise_on_fail=False, literal_index=True)
    assert not rep.passed
    assert all("Y U" in c.name for c in rep.failures())


def test_weights_normalised():
    a, b, N = F(1, 3), F(1, 2), 4
    assert sum(sp.rational_weight(n, a, b, N) for n in range(N + 1)) == 1


@pytest.mark.parametrize("p", POINTS + [RepParams(F(1, 3), F(1, 2), 4), RepParams(F(1, 3), F(1, 2), 5, F(1, 4))])
def test_weights(p):
    rep = sp.verify_weights(p)
    assert rep.passed
    diag = [c for c in rep.checks if "!=" in c.name]
    assert diag and all(c.info for c in diag)


def test_hahn_orthogonality_at_quarter_third():
    N = 5
    W = [sp.hahn_weight(n, AH, BH, N) for n in range(N + 1)]
    for m in range(N + 1):
        for k in range(N + 1):
            s = sum(W[n] * sp.hahn_Q(m, n, AH, BH, N) * sp.hahn_Q(k, n, AH, BH, N) for n in range(N + 1))
            assert (s == 0) == (m != k)


@given(rep_params(max_N=5))
def test_weights_property(p):
    assert sp.verify_weights(p, raise_on_fail=False).passed


def test_weights_skip_degenerate_points():
    # mu = 0 makes ahat = -1
    rep = sp.verify_weights(RepParams(F(1, 3), F(1, 2), 3))
    assert rep.passed
    assert any(c.info and c.info.startswith("skipped") for c in rep.checks)
    assert sp.rational_weight_degenerate(F(1, 2), F(1, 2), 4) is not None


def test_favard_signs_are_informational():
    rep = sp.favard_signs(POINTS[0])
    assert rep.passed
    assert all(c.info is not None for c in rep.checks)
