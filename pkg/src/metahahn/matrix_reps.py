"""The (N+1)-dimensional tridiagonal representation and the sl2 embedding."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import linalg as la
from .errors import (
    DiagonalizationMismatch,
    EmbeddingViolated,
    RelationViolated,
    ShapeViolated,
    SingularParameter,
    SpectrumMismatch,
)
from .exact import Q, ScalarLike, fmt, pochhammer, poly_from_roots, poly_str, poly_sub
from .linalg import Matrix
from .ncalgebra import AlgebraParams, hahn_coefficients, pencil_tau
from .report import Report


@dataclass(frozen=True)
class RepParams:
    alpha: Fraction
    beta: Fraction
    N: int
    mu: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "alpha", Q(self.alpha))
        object.__setattr__(self, "beta", Q(self.beta))
        object.__setattr__(self, "mu", Q(self.mu))
        if not isinstance(self.N, int) or self.N < 0:
            raise SingularParameter(f"N must be a non-negative integer, got {self.N!r}")

    @property
    def algebra(self) -> AlgebraParams:
        return AlgebraParams.from_representation(self.alpha, self.beta, self.N)

    @property
    def alpha_hat(self) -> Fraction:
        return -1 - self.mu

    @property
    def beta_hat(self) -> Fraction:
        return self.beta + self.mu - self.N

    def casimir_value(self) -> Fraction:
        a, b = self.alpha, self.beta
        return -2 * a * (a - b) + 2 * a - b - 1

    def nu(self, n: int) -> Fraction:
        return -n * (n - self.N + self.beta)

    def as_dict(self) -> dict:
        return {"alpha": fmt(self.alpha), "beta": fmt(self.beta), "N": self.N, "mu": fmt(self.mu)}


def singular_betas(N: int) -> set:
    return {Fraction(N - 2 * n + s) for n in range(N + 1) for s in (-1, 0, 1)}


def check_rep_params(p: RepParams) -> None:
    """Raise SingularParameter if a denominator of the matrix entries vanishes."""
    N, b = p.N, p.beta
    for n in range(N + 1):
        for name, d in (("N-beta-2n", N - b - 2 * n), ("N-beta-2n-1", N - b - 2 * n - 1), ("N-beta-2n+1", N - b - 2 * n + 1)):
            if d == 0:
                raise SingularParameter(f"denominator {name} vanishes at n={n} for beta={fmt(b)}, N={N}")


@dataclass(frozen=True)
class RepSet:
    V: Matrix
    X: Matrix
    Z: Matrix
    params: RepParams

    @property
    def W(self) -> Matrix:
        return la.add(self.X, la.scale(self.Z, self.params.mu))

    @property
    def dim(self) -> int:
        return self.params.N + 1


def x_entries(a: Fraction, b: Fraction, N: int, n: int):
    """(X_{n+1,n}, X_{n,n}, X_{n-1,n}, Z_{n+1,n}, Z_{n,n}, Z_{n-1,n}); out-of-range entries are 0."""
    up = (N - b - 2 * n) * (N - b - 2 * n - 1) if n < N else None
    lo = (N - b - 2 * n) * (N - b - 2 * n + 1) if n > 0 else None
    xp = n * (b + n + 1) * (N - b - n) / up if up is not None else Fraction(0)
    zp = -(b + n + 1) * (N - b - n) / up if up is not None else Fraction(0)
    xm = n * (N - b - n) * (N - n + 1) / lo if lo is not None else Fraction(0)
    zm = -n * (N - n + 1) / lo if lo is not None else Fraction(0)
    # the first fraction has a factor n and the second sits on N-beta-2n-1
    t1 = (b * n * (n - 1) + n * n * (n - 1)) / (N - b - 2 * n + 1) if n > 0 else Fraction(0)
    t2 = (b * n * (n + 1) + n * (n + 1) ** 2) / (N - b - 2 * n - 1) if n > 0 else Fraction(0)
    xd = -a - n + t1 - t2
    s1 = ((n + 1) * b + (n + 1) ** 2) / (N - b - 2 * n - 1)
    s2 = (b * n + n * n) / (N - b - 2 * n + 1) if n > 0 else Fraction(0)
    zd = s1 - s2
    return xp, xd, xm, zp, zd, zm


def build_rep(params: RepParams) -> RepSet:
    check_rep_params(params)
    a, b, N = params.alpha, params.beta, params.N
    n1 = N + 1
    Vm, Xm, Zm = la.zeros(n1), la.zeros(n1), la.zeros(n1)
    for n in range(n1):
        Vm[n][n] = -n * (n - N + b)
        xp, xd, xm, zp, zd, zm = x_entries(a, b, N, n)
        Xm[n][n], Zm[n][n] = xd, zd
        if n < N:
            Xm[n + 1][n], Zm[n + 1][n] = xp, zp
        if n > 0:
            Xm[n - 1][n], Zm[n - 1][n] = xm, zm
    return RepSet(Vm, Xm, Zm, params)


# -- relation checks on arbitrary triples ---------------------------------


def relation_residuals(Vm: Matrix, Xm: Matrix, Zm: Matrix, alg: AlgebraParams) -> dict:
    n = len(Vm)
    I = la.identity(n)
    e = alg
    return {
        "[Z,X] - Z^2 - Z": la.sub(la.commutator(Zm, Xm), la.add(la.matmul(Zm, Zm), Zm)),
        "[X,V] - eta6{V,Z} - eta1 X - eta7 V - eta2 Z - eta0": la.sub(
            la.commutator(Xm, Vm),
            la.lincomb((e.eta6, la.anticommutator(Vm, Zm)), (e.eta1, Xm), (e.eta7, Vm), (e.eta2, Zm), (e.eta0, I)),
        ),
        "[V,Z] - eta4 X - eta5 Z - eta3": la.sub(
            la.commutator(Vm, Zm), la.lincomb((e.eta4, Xm), (e.eta5, Zm), (e.eta3, I))
        ),
    }


def casimir_matrix(Vm: Matrix, Xm: Matrix, Zm: Matrix, alg: AlgebraParams, general: bool = False) -> Matrix:
    Z2 = la.matmul(Zm, Zm)
    if general:
        return la.lincomb(
            (1, la.anticommutator(Vm, la.add(Z2, Zm))),
            (alg.eta4, la.matmul(Xm, Xm)),
            (alg.eta1, la.anticommutator(Xm, Zm)),
            (alg.eta2 + alg.eta4, Z2),
            (2 * alg.eta3, Xm),
            (2 * alg.eta0 + alg.eta4, Zm),
        )
    return la.lincomb(
        (1, la.anticommutator(Vm, la.add(Z2, Zm))),
        (2, la.matmul(Xm, Xm)),
        (2 - alg.eta1, Z2),
        (alg.eta1, la.anticommutator(Xm, Zm)),
        (2 * alg.eta3, Xm),
        (2 * (alg.eta0 + 1), Zm),
    )


def _residual_str(m: Matrix) -> Optional[str]:
    val, i, j = la.max_abs_entry(m)
    if val == 0:
        return None
    return f"{fmt(m[i][j])} at ({i},{j})"


def verify_relations(rep: RepSet, raise_on_fail: bool = True) -> Report:
    alg = rep.params.algebra
    info = rep.params.as_dict()
    out = Report()
    for name, res in relation_residuals(rep.V, rep.X, rep.Z, alg).items():
        out.add("matrix_reps", "verify_relations", name, la.is_zero(res), info, _residual_str(res))
    qm = casimir_matrix(rep.V, rep.X, rep.Z, alg)
    target = la.scale(la.identity(rep.dim), rep.params.casimir_value())
    res = la.sub(qm, target)
    out.add(
        "matrix_reps", "verify_relations", "Casimir = -2a(a-b) + 2a - b - 1", la.is_zero(res), info,
        _residual_str(res), info=f"Q = {fmt(rep.params.casimir_value())}",
    )
    if raise_on_fail:
        out.raise_if_failed(RelationViolated)
    return out


# -- spectra ----------------------------------------------------------------


def pencil_charpoly(rep: RepSet) -> list:
    return la.charpoly(rep.W)


def pencil_spectrum(rep: RepSet, sign: int = 1) -> List[Fraction]:
    """Eigenvalues of W = X + mu Z, checked against the exact characteristic polynomial.

    The representation has spectrum {n - alpha - mu}; ``sign=-1`` tests the
    reflected set {-n - alpha - mu} instead and raises when it does not match.
    """
    p = rep.params
    expected = [sign * n - p.alpha - p.mu for n in range(p.N + 1)]
    cp = pencil_charpoly(rep)
    if cp != poly_from_roots(expected):
        label = "n" if sign > 0 else "-n"
        raise SpectrumMismatch(
            f"det(t - W) = {poly_str(cp, 't')} does not vanish on {{{label} - alpha - mu}}",
            residual=poly_str(poly_sub(cp, poly_from_roots(expected)), "t"),
        )
    return sorted(expected)


def V_spectrum_ok(Vm: Matrix, p: RepParams) -> bool:
    return la.charpoly(Vm) == poly_from_roots([p.nu(n) for n in range(p.N + 1)])


def hahn_AC(n: int, ah: Fraction, bh: Fraction, N: int):
    A = (n + ah + bh + 1) * (n + ah + 1) * (N - n) / ((2 * n + ah + bh + 1) * (2 * n + ah + bh + 2))
    if n == 0:
        C = Fraction(0)
    else:
        C = n * (n + ah + bh + N + 1) * (n + bh) / ((2 * n + ah + bh) * (2 * n + ah + bh + 1))
    return A, C


def sigma(n: int, p: RepParams, shift: int = 1) -> Fraction:
    """Normalisation linking the Jacobi matrix of W to the Hahn recurrence.

    The similarity needs (ahat + bhat + N + 2)_n = (beta + 1)_n in the
    denominator; ``shift=0`` gives the variant with (ahat + bhat + N + 1)_n.
    """
    s = p.alpha_hat + p.beta_hat + p.N + 1 + shift
    return (-1) ** n * pochhammer(-p.N, n) / pochhammer(s, n)


def verify_hahn_diagonalization(rep: RepSet, raise_on_fail: bool = True, shift: int = 1) -> Report:
    p = rep.params
    W = rep.W
    ah, bh, N = p.alpha_hat, p.beta_hat, p.N
    info = p.as_dict()
    out = Report()
    op = "verify_hahn_diagonalization"
    sg = lambda k: sigma(k, p, shift)
    for n in range(N + 1):
        A, C = hahn_AC(n, ah, bh, N)
        s_n = sg(n)
        sub_lhs = W[n + 1][n] * sg(n + 1) / s_n if n < N else Fraction(0)
        out.add("matrix_reps", op, f"n={n}: W_(n+1,n) s_(n+1)/s_n = -A_n", sub_lhs == -A, info,
                None if sub_lhs == -A else fmt(sub_lhs + A))
        diag_res = W[n][n] - (-p.alpha - p.mu + A + C)
        out.add("matrix_reps", op, f"n={n}: W_(n,n) = -alpha - mu + A_n + C_n", diag_res == 0, info,
                None if diag_res == 0 else fmt(diag_res))
        sup_lhs = W[n - 1][n] * sg(n - 1) / s_n if n > 0 else Fraction(0)
        out.add("matrix_reps", op, f"n={n}: W_(n-1,n) s_(n-1)/s_n = -C_n", sup_lhs == -C, info,
                None if sup_lhs == -C else fmt(sup_lhs + C))
    if raise_on_fail:
        out.raise_if_failed(DiagonalizationMismatch)
    return out


def heun_matrices(rep: RepSet):
    """(lhs, rhs) of (2V + tau2 - tau1) Z = [W,V] + (2 - tau1) W - V + (tau3 - tau0)."""
    p = rep.params
    t0, t1, t2, t3 = pencil_tau(p.algebra, p.mu)
    n = rep.dim
    I = la.identity(n)
    W = rep.W
    rhs = la.lincomb((1, la.commutator(W, rep.V)), (2 - t1, W), (-1, rep.V), (t3 - t0, I))
    factor = la.lincomb((2, rep.V), (t2 - t1, I))
    return la.matmul(factor, rep.Z), rhs


def heun_matrices_as_printed(rep: RepSet):
    """Same identity with the printed factor (2V - tau2 - tau1)."""
    p = rep.params
    t0, t1, t2, t3 = pencil_tau(p.algebra, p.mu)
    lhs, rhs = heun_matrices(rep)
    factor = la.lincomb((2, rep.V), (-t2 - t1, la.identity(rep.dim)))
    return la.matmul(factor, rep.Z), rhs


def hahn_algebra_matrix_residuals(rep: RepSet, literal_d1: bool = False) -> dict:
    """Matrix-side residuals of the two Hahn-algebra relations for K1 = W, K2 = V,
    with the scalar Casimir value standing in for Q."""
    p = rep.params
    c = hahn_coefficients(p.algebra, p.mu, literal_d1)
    W, Vm = rep.W, rep.V
    I = la.identity(rep.dim)
    q = p.casimir_value()
    r1 = la.sub(
        la.commutator(W, la.commutator(Vm, W)),
        la.lincomb((c.a, la.matmul(W, W)), (c.b, W), (c.c1, Vm), (c.d1_const - q, I)),
    )
    r2 = la.sub(
        la.commutator(Vm, la.commutator(W, Vm)),
        la.lincomb((c.a, la.anticommutator(W, Vm)), (c.b, Vm), (c.c2, W), (c.d2, I)),
    )
    return {"[K1,[K2,K1]]": r1, "[K2,[K1,K2]]": r2}


# -- sl2 ---------------------------------------------------------------------


@dataclass(frozen=True)
class SL2Set:
    J0: Matrix
    Jp: Matrix
    Jm: Matrix
    tau: Fraction

    @property
    def N(self) -> int:
        return len(self.J0) - 1

    def casimir(self) -> Matrix:
        return la.add(la.sub(la.matmul(self.J0, self.J0), self.J0), la.matmul(self.Jp, self.Jm))


def build_sl2(N: int) -> SL2Set:
    if N < 0:
        raise SingularParameter("N must be non-negative")
    n1 = N + 1
    J0 = la.diag([Fraction(k) - Fraction(N, 2) for k in range(n1)])
    Jp, Jm = la.zeros(n1), la.zeros(n1)
    for k in range(N):
        Jp[k + 1][k] = Fraction(k + 1)
    for k in range(1, n1):
        Jm[k - 1][k] = Fraction(N - k + 1)
    return SL2Set(J0, Jp, Jm, Fraction(-N, 2))


def sl2_residuals(s: SL2Set) -> dict:
    n = s.N
    c = Fraction(n, 2) * (Fraction(n, 2) + 1)
    return {
        "[J0,J+] - J+": la.sub(la.commutator(s.J0, s.Jp), s.Jp),
        "[J0,J-] + J-": la.add(la.commutator(s.J0, s.Jm), s.Jm),
        "[J+,J-] - 2J0": la.sub(la.commutator(s.Jp, s.Jm), la.scale(s.J0, 2)),
        "C - (N/2)(N/2+1)": la.sub(s.casimir(), la.scale(la.identity(n + 1), c)),
    }


@dataclass(frozen=True)
class SL2Coefficients:
    xi0: Fraction
    xi1: Fraction
    xi2: Fraction
    xi3: Fraction
    xi4: Fraction
    xi5: Fraction


def sl2_coefficients(params: RepParams) -> SL2Coefficients:
    N, a, b = params.N, params.alpha, params.beta
    h = Fraction(N, 2)
    return SL2Coefficients(h - a, 1 - h, Fraction(-1), -b, Fraction(-1), h * (h - b))


def sl2_general_coefficients(alg: AlgebraParams, xi1: ScalarLike) -> SL2Coefficients:
    """Coefficients of the sl2 embedding for the unstandardised relations, given a
    root xi1 of the quadratic constraint.  xi0 uses (eta1 - eta3)/eta4."""
    e, xi1 = alg, Q(xi1)
    return SL2Coefficients(
        xi0=(e.eta1 - e.eta3) / e.eta4,
        xi1=xi1,
        xi2=-e.eta4 / 2,
        xi3=e.eta1 + e.eta4 * (xi1 - Fraction(1, 2)),
        xi4=-e.eta4 / 2,
        xi5=(e.eta4 * (xi1 - xi1 * xi1) + e.eta1 * (1 - 2 * xi1) - e.eta2) / 2,
    )


def sl2_xi0_as_printed(alg: AlgebraParams) -> Fraction:
    return (alg.eta1 - alg.eta4) / alg.eta3


def sl2_quadratic(alg: AlgebraParams, xi1: ScalarLike, C: ScalarLike) -> Fraction:
    e, x, C = alg, Q(xi1), Q(C)
    return (
        -e.eta4**2 * x * x
        + e.eta4 * (-2 * e.eta1 + e.eta4) * x
        - 2 * e.eta1**2
        + 2 * e.eta1 * e.eta3
        - 2 * e.eta0 * e.eta4
        + e.eta4 * e.eta1
        + e.eta2 * e.eta4
        + e.eta4**2 * C
    )


def sl2_casimir_value(alg: AlgebraParams, C: ScalarLike) -> Fraction:
    e = alg
    return e.eta4 * Q(C) - 2 * e.eta0 + e.eta2 - (e.eta3 - e.eta1) ** 2 / e.eta4


def solve_eta0_for_xi1(eta1, eta2, eta3, eta4, xi1, C) -> Fraction:
    """The quadratic constraint is linear in eta0; pick it so that xi1 is a root."""
    trial = AlgebraParams(eta0=0, eta1=eta1, eta2=eta2, eta3=eta3, eta4=eta4, eta5=eta1)
    return sl2_quadratic(trial, xi1, C) / (2 * trial.eta4)


def general_sl2_params(eta1, eta2, eta3, eta4, xi1, N: int) -> AlgebraParams:
    C = Fraction(N, 2) * (Fraction(N, 2) + 1)
    eta0 = solve_eta0_for_xi1(eta1, eta2, eta3, eta4, xi1, C)
    return AlgebraParams(eta0=eta0, eta1=eta1, eta2=eta2, eta3=eta3, eta4=eta4, eta5=eta1)


def verify_general_sl2_embedding(alg: AlgebraParams, xi1: ScalarLike, N: int, literal_xi0: bool = False) -> Report:
    """Relations and Casimir of the sl2 image for unstandardised eta."""
    s = build_sl2(N)
    xi = sl2_general_coefficients(alg, xi1)
    if literal_xi0:
        xi = SL2Coefficients(sl2_xi0_as_printed(alg), xi.xi1, xi.xi2, xi.xi3, xi.xi4, xi.xi5)
    C = Fraction(N, 2) * (Fraction(N, 2) + 1)
    info = {**alg.as_dict(), "xi1": fmt(Q(xi1)), "N": N}
    out = Report()
    op = "embed_meta_in_sl2"
    quad = sl2_quadratic(alg, xi1, C)
    out.add("matrix_reps", op, "xi1 solves the quadratic constraint", quad == 0, info, None if quad == 0 else fmt(quad))
    Vm, Xm, Zm = embed_meta_in_sl2(s, xi)
    for name, res in relation_residuals(Vm, Xm, Zm, alg).items():
        out.add("matrix_reps", op, name, la.is_zero(res), info, _residual_str(res))
    q = sl2_casimir_value(alg, C)
    res = la.sub(casimir_matrix(Vm, Xm, Zm, alg, general=True), la.scale(la.identity(N + 1), q))
    out.add("matrix_reps", op, "Casimir = eta4 C - 2eta0 + eta2 - (eta3-eta1)^2/eta4", la.is_zero(res), info,
            _residual_str(res))
    return out


def embed_meta_in_sl2(s: SL2Set, xi: SL2Coefficients):
    """(V, X, Z) matrices of the triple built from J0, J+, J-."""
    I = la.identity(s.N + 1)
    Zm = la.sub(s.Jp, I)
    Xm = la.lincomb((-1, la.matmul(s.J0, s.Jp)), (1, s.J0), (xi.xi1, s.Jp), (xi.xi0, I))
    Vm = la.lincomb((xi.xi2, la.matmul(s.J0, s.J0)), (xi.xi3, s.J0), (xi.xi4, s.Jm), (xi.xi5, I))
    return Vm, Xm, Zm


def verify_sl2_embedding(params: RepParams, raise_on_fail: bool = True) -> Report:
    s = build_sl2(params.N)
    info = params.as_dict()
    out = Report()
    op = "embed_meta_in_sl2"
    for name, res in sl2_residuals(s).items():
        out.add("matrix_reps", "build_sl2", name, la.is_zero(res), {"N": params.N}, _residual_str(res))
    xi = sl2_coefficients(params)
    alg = params.algebra
    Vm, Xm, Zm = embed_meta_in_sl2(s, xi)
    for name, res in relation_residuals(Vm, Xm, Zm, alg).items():
        out.add("matrix_reps", op, name, la.is_zero(res), info, _residual_str(res))
    q = params.casimir_value()
    res = la.sub(casimir_matrix(Vm, Xm, Zm, alg), la.scale(la.identity(params.N + 1), q))
    out.add("matrix_reps", op, "Casimir = -1 + 2a - b + 2ab - 2a^2", la.is_zero(res), info, _residual_str(res))
    C = Fraction(params.N, 2) * (Fraction(params.N, 2) + 1)
    quad = sl2_quadratic(alg, xi.xi1, C)
    out.add("matrix_reps", op, "xi1 solves the quadratic constraint", quad == 0, info, None if quad == 0 else fmt(quad))
    gen = sl2_general_coefficients(alg, xi.xi1)
    same = gen == xi
    out.add("matrix_reps", op, "general xi formulas specialise to the simple values", same, info)
    qs = sl2_casimir_value(alg, C)
    out.add("matrix_reps", op, "eta4 C - 2eta0 + eta2 - (eta3-eta1)^2/eta4 = Q", qs == q, info,
            None if qs == q else fmt(qs - q))
    out.add("matrix_reps", op, "embedded V has spectrum -n(n-N+beta)", V_spectrum_ok(Vm, params), info)
    rep = build_rep(params)
    W_s = la.add(Xm, la.scale(Zm, params.mu))
    for label, a, b in (("V", Vm, rep.V), ("X+muZ", W_s, rep.W), ("Z", Zm, rep.Z)):
        ok = la.charpoly(a) == la.charpoly(b)
        out.add("matrix_reps", op, f"charpoly({label}) agrees with the tridiagonal representation", ok, info)
    if raise_on_fail:
        out.raise_if_failed(EmbeddingViolated)
    return out


# -- bases inside the representation and shape claims ------------------------


def gevp_vectors(rep: RepSet) -> Matrix:
    """Columns d_0..d_N with X d_n = (alpha - n) Z d_n and d_(n+1) = (Z + 1) d_n."""
    p = rep.params
    M = la.sub(rep.X, la.scale(rep.Z, p.alpha))
    ker = la.nullspace(M)
    if len(ker) != 1:
        raise SingularParameter("GEVP eigenspace at alpha is not one-dimensional")
    cols = [ker[0]]
    Z1 = la.add(rep.Z, la.identity(rep.dim))
    for _ in range(p.N):
        cols.append(la.matvec(Z1, cols[-1]))
    return la.transpose(cols)


def transport(A: Matrix, basis: Matrix) -> Matrix:
    """Matrix of A in the basis given by the columns of ``basis``."""
    return la.matmul(la.inverse(basis), la.matmul(A, basis))


def transport_adjoint(A: Matrix, basis: Matrix) -> Matrix:
    """A^(d*) for an adjoint basis: the transpose of the matrix of A^T in that basis."""
    return la.transpose(transport(la.transpose(A), basis))


def _shape_check(out: Report, name: str, M: Matrix, pred, info: dict):
    ok = pred(M)
    bad = None
    if not ok:
        n = len(M)
        for i in range(n):
            for j in range(n):
                test = la.zeros(n)
                test[i][j] = M[i][j]
                if M[i][j] != 0 and not pred(test):
                    bad = f"({i},{j}) = {fmt(M[i][j])}"
                    break
            if bad:
                break
    out.add("matrix_reps", "verify_shape_claims", name, ok, info, bad)


def _proportional_columns(A: Matrix, B: Matrix) -> bool:
    n = len(A)
    for j in range(n):
        a = [A[i][j] for i in range(n)]
        b = [B[i][j] for i in range(n)]
        k = next((i for i in range(n) if b[i] != 0), None)
        if k is None or a[k] == 0:
            return False
        r = a[k] / b[k]
        if any(a[i] != r * b[i] for i in range(n)):
            return False
    return True


def _off_diagonal_zero(M: Matrix) -> bool:
    return all(x == 0 for i, row in enumerate(M) for j, x in enumerate(row) if i != j)


def shape_matrices(params: RepParams) -> Dict[str, Matrix]:
    """Rep operators transported into the d, d* and e bases.

    Adjoint-basis matrices follow the transpose convention: A^(d*) is the
    transpose of the matrix of A^T acting on d*-coordinates.
    """
    from .analytic import basis_change_matrix

    rep = build_rep(params)
    D = basis_change_matrix("d", "e", params)
    Ds = basis_change_matrix("d_star", "e", params)
    T = la.transpose
    out = {"D": D, "Dstar": Ds}
    for name, M in (("V", rep.V), ("X", rep.X), ("Z", rep.Z)):
        out[name + "_d"] = transport(M, D)
        out[name + "T_dstar"] = transport(T(M), Ds)
        out[name + "_dstar"] = T(out[name + "T_dstar"])
        out[name + "_e"] = M
    out["VX_d"] = la.matmul(out["V_d"], out["X_d"])
    out["XV_dstar"] = la.matmul(out["X_dstar"], out["V_dstar"])
    return out


def verify_shape_claims(params: RepParams, raise_on_fail: bool = True) -> Report:
    rep = build_rep(params)
    info = params.as_dict()
    out = Report()
    op = "verify_shape_claims"
    S = shape_matrices(params)
    D, Ds = S["D"], S["Dstar"]
    XT, ZT = la.transpose(rep.X), la.transpose(rep.Z)
    gevp = all(
        not any(la.matvec(la.sub(rep.X, la.scale(rep.Z, params.alpha - n)), [row[n] for row in D]))
        for n in range(rep.dim)
    )
    out.add("matrix_reps", op, "model d_n solve X d_n = (alpha - n) Z d_n", gevp, info)
    gevp_t = all(
        not any(la.matvec(la.sub(XT, la.scale(ZT, params.alpha - n)), [row[n] for row in Ds]))
        for n in range(rep.dim)
    )
    out.add("matrix_reps", op, "model d*_n solve X^T d*_n = (alpha - n) Z^T d*_n", gevp_t, info)
    out.add("matrix_reps", op, "model d_n agree with GEVP vectors up to scale",
            _proportional_columns(D, gevp_vectors(rep)), info)
    pair = la.matmul(la.transpose(Ds), la.matmul(rep.Z, D))
    out.add("matrix_reps", op, "(d*_m, Z d_n) is diagonal", _off_diagonal_zero(pair), info)

    _shape_check(out, "Z lower bidiagonal in {d_n}", S["Z_d"], la.is_lower_bidiagonal, info)
    _shape_check(out, "X lower bidiagonal in {d_n}", S["X_d"], la.is_lower_bidiagonal, info)
    _shape_check(out, "V lower Hessenberg in {d_n}", S["V_d"], la.is_lower_hessenberg, info)
    _shape_check(out, "VX tridiagonal in {d_n}", S["VX_d"], la.is_tridiagonal, info)
    _shape_check(out, "V^T upper Hessenberg on {d*_n}", S["VT_dstar"], la.is_upper_hessenberg, info)
    _shape_check(out, "V lower Hessenberg in {d*_n}", S["V_dstar"], la.is_lower_hessenberg, info)
    _shape_check(out, "XV tridiagonal in {d*_n}", S["XV_dstar"], la.is_tridiagonal, info)

    out.add("matrix_reps", op, "V diagonal in {e_n}", _off_diagonal_zero(S["V_e"]), info)
    _shape_check(out, "X tridiagonal in {e_n}", S["X_e"], la.is_tridiagonal, info)
    _shape_check(out, "Z tridiagonal in {e_n}", S["Z_e"], la.is_tridiagonal, info)
    if params.N >= 2:
        w = S["V_d"][2][1]
        out.add("matrix_reps", op, "V (2,1) entry in {d_n}", True, info, info=f"value {fmt(w)}")
    if raise_on_fail:
        out.raise_if_failed(ShapeViolated)
    return out


def verify_representation(params: RepParams, raise_on_fail: bool = True) -> Report:
    """Relations, Casimir, spectra, Hahn diagonalisation, Heun identity and shapes."""
    rep = build_rep(params)
    info = params.as_dict()
    out = verify_relations(rep, raise_on_fail=False)
    op = "spectra"
    out.add("matrix_reps", op, "det(t - V) has roots nu_n = -n(n-N+b)", V_spectrum_ok(rep.V, params), info)
    try:
        spec = pencil_spectrum(rep)
        out.add("matrix_reps", op, "spectrum of X + mu Z is {n - alpha - mu}", True, info,
                info=", ".join(fmt(x) for x in spec))
    except SpectrumMismatch as e:
        out.add("matrix_reps", op, "spectrum of X + mu Z is {n - alpha - mu}", False, info, e.residual)
    out.extend(verify_hahn_diagonalization(rep, raise_on_fail=False))
    lhs, rhs = heun_matrices(rep)
    res = la.sub(lhs, rhs)
    out.add("matrix_reps", "heun", "(2V + tau2 - tau1) Z = [W,V] + (2 - tau1) W - V + (tau3 - tau0)",
            la.is_zero(res), info, _residual_str(res))
    out.add("matrix_reps", "heun", "Heun operator tridiagonal in the eigenbasis of V", la.is_tridiagonal(rhs), info)
    for name, r in hahn_algebra_matrix_residuals(rep).items():
        out.add("matrix_reps", "hahn_algebra", f"{name} relation on W, V", la.is_zero(r), info, _residual_str(r))
    out.extend(verify_shape_claims(params, raise_on_fail=False))
    if raise_on_fail:
        out.raise_if_failed(RelationViolated)
    return out


def dump_rep(rep: RepSet) -> dict:
    p = rep.params
    ser = lambda m: [[fmt(x) for x in row] for row in m]
    return {
        "alpha": fmt(p.alpha),
        "beta": fmt(p.beta),
        "N": p.N,
        "mu": fmt(p.mu),
        "V": ser(rep.V),
        "X": ser(rep.X),
        "Z": ser(rep.Z),
    }
