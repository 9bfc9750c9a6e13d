"""Acceptance criteria 1-10, all at exact (zero) tolerance.

Each criterion is computed once, cached, and reported as a single PASS/FAIL
line in the terminal summary.  Criteria 3, 4 and 6 contain statements that do
not hold as written; for those the literal statement is asserted under a strict
xfail and the corrected statement is asserted by a normal test.  Their summary
line reads FAIL with the corrected result alongside.
"""

import random
import time
from fractions import Fraction as F
from functools import lru_cache

import pytest

from metahahn import analytic, matrix_reps as mr, ncalgebra as nc, pade, special
from metahahn.cli import main
from metahahn.errors import SingularLowerParameter, SpectrumMismatch
from metahahn.report import Report

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = {}

SEED = 20240601
LIMITS = {1: 1, 2: 5, 3: 10, 4: 30, 5: 30, 6: 60, 7: 30, 8: 10, 9: 30, 10: 60}
TITLES = {
    1: "Jacobi gate",
    2: "potential and Casimir",
    3: "Hahn and rational Hahn embeddings",
    4: "representation identities, N <= 12",
    5: "shape theorems, N <= 8",
    6: "bispectrality and overlap closed forms",
    7: "(bi)orthogonality and weights",
    8: "sl2 embedding",
    9: "restricted transformations, Saalschutz, Pade",
    10: "determinism of verify all",
}
# three admissible (alpha, beta) with a generic pencil shift each
AB_POINTS = [(F(1, 3), F(1, 2), F(2, 7)), (F(-5, 7), F(3, 11), F(-4, 9)), (F(9, 4), F(-7, 3), F(1, 5))]


class Result:
    def __init__(self, k, literal, corrected=None, elapsed=0.0, note=""):
        self.k, self.literal, self.corrected, self.elapsed, self.note = k, literal, corrected, elapsed, note

    @property
    def in_time(self):
        return self.elapsed < LIMITS[self.k]

    def line(self):
        status = "PASS" if self.literal and self.in_time else "FAIL"
        extra = ""
        if self.corrected is not None:
            extra = f"; corrected form {'PASS' if self.corrected else 'FAIL'}"
        if not self.in_time:
            extra += f"; over the {LIMITS[self.k]} s limit"
        note = f" ({self.note})" if self.note else ""
        return f"criterion {self.k:2d} {TITLES[self.k]}: {status}{extra}{note} [{self.elapsed:.2f} s]"


def timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def record(res: Result) -> Result:
    ACCEPTANCE_LINES[res.k] = res.line()
    return res


# -- 1 ------------------------------------------------------------------------


@lru_cache(None)
def criterion_1() -> Result:
    def run():
        rng = random.Random(SEED)
        ok = all(nc.jacobi_defect(nc.random_standard_params(rng)).is_zero() for _ in range(5))
        ok &= nc.jacobi_defect(nc.AlgebraParams.standard(0, 0, 0)).is_zero()
        # any eta2, eta4 are allowed once eta6 = eta7 = 1 and eta5 = eta1
        ok &= nc.jacobi_defect(nc.AlgebraParams(F(3, 5), F(-2, 7), F(11, 3), F(1, 4), F(5, 2), F(-2, 7))).is_zero()
        ok &= all(not nc.jacobi_defect(nc.violating_params(rng)).is_zero() for _ in range(5))
        return ok
    ok, dt = timed(run)
    return record(Result(1, ok, elapsed=dt))


# -- 2 ------------------------------------------------------------------------


@lru_cache(None)
def criterion_2() -> Result:
    def run():
        rng = random.Random(SEED + 2)
        ok = True
        for _ in range(5):
            p = nc.random_standard_params(rng)
            # dPhi/dV, dPhi/dZ, dPhi/dX against the ZX, XV, VZ relations
            ok &= all((d - r).is_zero() for d, r in zip(nc.potential_relations(p), nc.relation_polynomials(p)))
            rw = nc.Rewriter(p)
            q = nc.casimir(p)
            ok &= all(rw.reduce(nc.comm(q, g)).is_zero() for g in (nc.V, nc.X, nc.Z))
        return ok
    ok, dt = timed(run)
    return record(Result(2, ok, elapsed=dt))


# -- 3 ------------------------------------------------------------------------


@lru_cache(None)
def criterion_3() -> Result:
    def run():
        rng = random.Random(SEED + 3)
        literal = corrected = True
        for _ in range(5):
            p = nc.random_standard_params(rng)
            mu = nc.random_rational(rng)
            rat = nc.verify_rational_hahn_embedding(p, raise_on_fail=False).passed
            lit = nc.verify_hahn_embedding(p, mu, coeffs=nc.hahn_coefficients(p, mu, literal_d1=True),
                                           raise_on_fail=False).passed
            cor = nc.verify_hahn_embedding(p, mu, raise_on_fail=False).passed
            literal &= lit and rat
            corrected &= cor and rat
        return literal, corrected
    (lit, cor), dt = timed(run)
    return record(Result(3, lit, cor, dt, "d1 = -Q leaves residual -(eta0 - mu eta3); d1 = -Q - tau0 closes"))


# -- 4 ------------------------------------------------------------------------


def _pencil_ok(rep, sign):
    try:
        mr.pencil_spectrum(rep, sign=sign)
        return True
    except SpectrumMismatch:
        return False


@lru_cache(None)
def criterion_4() -> Result:
    def run():
        literal = corrected = True
        for a, b, mu in AB_POINTS:
            for N in range(1, 13):
                p = mr.RepParams(a, b, N, mu)
                mr.check_rep_params(p)
                rep = mr.build_rep(p)
                common = mr.verify_relations(rep, raise_on_fail=False).passed
                common &= mr.V_spectrum_ok(rep.V, p)
                literal &= common and _pencil_ok(rep, -1)
                literal &= mr.verify_hahn_diagonalization(rep, raise_on_fail=False, shift=0).passed
                corrected &= common and _pencil_ok(rep, 1)
                corrected &= mr.verify_hahn_diagonalization(rep, raise_on_fail=False).passed
        return literal, corrected
    (lit, cor), dt = timed(run)
    return record(Result(4, lit, cor, dt, "pencil spectrum is {n - alpha - mu}; similarity uses (beta+1)_n"))


# -- 5 ------------------------------------------------------------------------


@lru_cache(None)
def criterion_5() -> Result:
    def run():
        ok = True
        for a, b, mu in AB_POINTS:
            for N in range(1, 9):
                ok &= mr.verify_shape_claims(mr.RepParams(a, b, N, mu), raise_on_fail=False).passed
        return ok
    ok, dt = timed(run)
    return record(Result(5, ok, elapsed=dt))


# -- 6 ------------------------------------------------------------------------


def _printed_utilde_matches(p):
    nz = analytic._norms(p)
    return all(
        analytic._residue_value("Utilde", m, n, p, nz) == analytic.Utilde_closed_as_printed(m, n, p)
        for m in range(p.N + 1) for n in range(p.N + 1)
    )


@lru_cache(None)
def criterion_6() -> Result:
    def run():
        literal = corrected = True
        for a, b, mu in AB_POINTS:
            for N in range(1, 9):
                p = mr.RepParams(a, b, N, mu)
                rec = special.verify_bispectrality_U(p, raise_on_fail=False).passed
                lit_diff = special.verify_bispectrality_U(p, raise_on_fail=False, literal_rhs=True).passed
                ov = analytic.verify_overlaps(p, raise_on_fail=False).passed
                corrected &= rec and ov
                literal &= lit_diff and ov and _printed_utilde_matches(p)
        return literal, corrected
    (lit, cor), dt = timed(run)
    return record(Result(6, lit, cor, dt, "difference equation has one factor (alpha - n); Utilde closed form corrected"))


# -- 7 ------------------------------------------------------------------------


@lru_cache(None)
def criterion_7() -> Result:
    def run():
        ok = True
        for a, b, mu in AB_POINTS:
            for N in range(1, 9):
                p = mr.RepParams(a, b, N, mu)
                ok &= sum((special.rational_weight(n, a, b, N) for n in range(N + 1)), F(0)) == 1
                ok &= special.verify_weights(p, raise_on_fail=False).passed
                ok &= analytic.verify_appendix_A(p, raise_on_fail=False).passed
                ok &= analytic.verify_biorthogonality(p, raise_on_fail=False).passed
        return ok
    ok, dt = timed(run)
    return record(Result(7, ok, elapsed=dt))


# -- 8 ------------------------------------------------------------------------


@lru_cache(None)
def criterion_8() -> Result:
    def run():
        ok = True
        for a, b, mu in AB_POINTS:
            for N in range(1, 9):
                p = mr.RepParams(a, b, N, mu)
                ok &= mr.verify_sl2_embedding(p, raise_on_fail=False).passed
                xi = mr.sl2_coefficients(p)
                h = F(N, 2)
                ok &= xi == mr.SL2Coefficients(h - a, 1 - h, F(-1), -b, F(-1), h * (h - b))
        return ok
    ok, dt = timed(run)
    return record(Result(8, ok, elapsed=dt))


# -- 9 ------------------------------------------------------------------------


@lru_cache(None)
def criterion_9() -> Result:
    def run():
        ok = True
        for b in (F(1, 2), F(-7, 3), F(5, 4)):
            for N in range(2, 11):
                for n in range(1, N):
                    ok &= pade.restricted_euler_check(n, N, b, raise_on_fail=False).passed
                    ok &= pade.restricted_pfaff_check(n, N, b, raise_on_fail=False).passed
        rng = random.Random(SEED + 9)
        done = 0
        while done < 10:
            a, b, c = (nc.random_rational(rng) for _ in range(3))
            for k in range(7):
                try:
                    ok &= pade.saalschutz_check(k, a, b, c, raise_on_fail=False).passed
                except SingularLowerParameter:  # draw again
                    break
            else:
                done += 1
        for beta in (F(1, 2), F(-7, 3), F(5, 4)):
            rep = Report()
            pade.pade_table(beta, 8, 8, report=rep, raise_on_fail=False)
            ok &= rep.passed
        return ok
    ok, dt = timed(run)
    return record(Result(9, ok, elapsed=dt))


# -- 10 -----------------------------------------------------------------------


@lru_cache(None)
def criterion_10(tmpdir: str) -> Result:
    def run():
        args = ["verify", "all", "--alpha", "1/3", "--beta", "1/2", "--N", "4", "--mu", "2/7", "--seed", "5",
                "--format", "json"]
        paths = [f"{tmpdir}/run{i}.json" for i in range(2)]
        codes = [main(args + ["--out", path]) for path in paths]
        data = [open(path, "rb").read() for path in paths]
        return codes == [0, 0] and data[0] == data[1] and len(data[0]) > 0
    ok, dt = timed(run)
    return record(Result(10, ok, elapsed=dt))


# -- tests --------------------------------------------------------------------


def _check(res: Result):
    assert res.literal, res.line()
    assert res.in_time, res.line()


def test_criterion_1_jacobi_gate():
    _check(criterion_1())


def test_criterion_2_potential_and_casimir():
    _check(criterion_2())


@pytest.mark.xfail(strict=True, reason="d1 = -Q misses the constant -tau0")
def test_criterion_3_literal():
    assert criterion_3().literal


def test_criterion_3_corrected():
    r = criterion_3()
    assert r.corrected and r.in_time, r.line()


@pytest.mark.xfail(strict=True, reason="pencil spectrum sign and similarity shift")
def test_criterion_4_literal():
    assert criterion_4().literal


def test_criterion_4_corrected():
    r = criterion_4()
    assert r.corrected and r.in_time, r.line()


def test_criterion_5_shapes():
    _check(criterion_5())


@pytest.mark.xfail(strict=True, reason="extra (alpha - n) in the difference equation and the Utilde closed form")
def test_criterion_6_literal():
    assert criterion_6().literal


def test_criterion_6_corrected():
    r = criterion_6()
    assert r.corrected and r.in_time, r.line()


def test_criterion_7_orthogonality():
    _check(criterion_7())


def test_criterion_8_sl2():
    _check(criterion_8())


def test_criterion_9_appendix_B():
    _check(criterion_9())


def test_criterion_10_determinism(tmp_path):
    _check(criterion_10(str(tmp_path)))


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as d:
        results = [criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(), criterion_6(),
                   criterion_7(), criterion_8(), criterion_9(), criterion_10(d)]
    for r in results:
        print(r.line())
