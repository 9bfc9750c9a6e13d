"""Hahn polynomials, rational functions of Hahn type and their grid realisation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

from . import linalg as la
from .errors import (
    BispectralityViolated,
    ContiguityViolated,
    PoleHit,
    RecurrenceViolated,
    SingularParameter,
    WeightViolated,
)
from .exact import Q, ScalarLike, factorial, fmt, hyp, is_nonpositive_integer, pochhammer
from .linalg import Matrix
from .matrix_reps import RepParams, build_rep, hahn_AC
from .report import Report


# -- closed forms --------------------------------------------------------------


def hahn_Q(n: int, x: ScalarLike, ah: ScalarLike, bh: ScalarLike, N: int) -> Fraction:
    """Q_n(x; ahat, bhat, N) = 3F2(-n, n + ahat + bhat + 1, -x; ahat + 1, -N; 1)."""
    ah, bh, x = Q(ah), Q(bh), Q(x)
    return hyp([-n, n + ah + bh + 1, -x], [ah + 1, -N], bound=n)


@dataclass(frozen=True)
class HahnPoly:
    n: int
    alpha_hat: Fraction
    beta_hat: Fraction
    N: int

    def __call__(self, x: ScalarLike) -> Fraction:
        return hahn_Q(self.n, x, self.alpha_hat, self.beta_hat, self.N)


def rational_hahn_prefactor(n: int, beta: ScalarLike, N: int) -> Fraction:
    return (-1) ** n * pochhammer(-N, n) / pochhammer(Q(beta) + 1, n)


def rational_hahn(n: int, x: ScalarLike, alpha: ScalarLike, beta: ScalarLike, N: int) -> Fraction:
    """U_n(x; alpha, beta, N) = (-1)^n (-N)_n / (beta+1)_n * 3F2(-x, -n, beta+n-N; -N, alpha-x; 1)."""
    x, a, b = Q(x), Q(alpha), Q(beta)
    low = a - x
    if is_nonpositive_integer(low) and -low < n:
        raise PoleHit(f"alpha - x = {fmt(low)} puts a pole inside the sum (x = {fmt(x)})", x=x)
    return rational_hahn_prefactor(n, b, N) * hyp([-x, -n, b + n - N], [-N, low], bound=n)


def rational_hahn_partner(m: int, n: int, alpha: ScalarLike, beta: ScalarLike, N: int) -> Fraction:
    """V_m(n) = U_m(N - n; beta + 2 - alpha, beta, N)."""
    a, b = Q(alpha), Q(beta)
    return rational_hahn(m, N - n, b + 2 - a, b, N)


@dataclass(frozen=True)
class RationalHahn:
    n: int
    alpha: Fraction
    beta: Fraction
    N: int

    def __call__(self, x: ScalarLike) -> Fraction:
        return rational_hahn(self.n, x, self.alpha, self.beta, self.N)


def rational_weight(n: int, alpha: ScalarLike, beta: ScalarLike, N: int) -> Fraction:
    a, b = Q(alpha), Q(beta)
    norm = pochhammer(b - a - N + 2, N) / pochhammer(b - N + 1, N)
    return norm * pochhammer(-N, n) * pochhammer(1 - a, n) / (factorial(n) * pochhammer(b - a - N + 2, n))


def hahn_weight(n: int, ah: ScalarLike, bh: ScalarLike, N: int) -> Fraction:
    ah, bh = Q(ah), Q(bh)
    return pochhammer(ah + 1, n) / factorial(n) * pochhammer(bh + 1, N - n) / factorial(N - n)


def hahn_degenerate(ah: ScalarLike, bh: ScalarLike, N: int) -> Optional[str]:
    """Reason Q_0..Q_N or their recurrence are undefined at (ahat, bhat), if any."""
    ah, bh = Q(ah), Q(bh)
    if is_nonpositive_integer(ah + 1) and -(ah + 1) < N:
        return f"ahat + 1 = {fmt(ah + 1)} is a non-positive integer"
    if is_nonpositive_integer(bh + 1) and -(bh + 1) < N:
        return f"bhat + 1 = {fmt(bh + 1)} is a non-positive integer"
    for k in range(1, 2 * N + 1):
        if ah + bh + k == 0:
            return f"ahat + bhat + {k} vanishes"
    return None


def check_hahn_params(ah: ScalarLike, bh: ScalarLike, N: int) -> None:
    reason = hahn_degenerate(ah, bh, N)
    if reason:
        raise SingularParameter(reason)


def hahn_recurrence_check(ah: ScalarLike, bh: ScalarLike, N: int, raise_on_fail: bool = True) -> Report:
    ah, bh = Q(ah), Q(bh)
    info = {"alpha_hat": fmt(ah), "beta_hat": fmt(bh), "N": N}
    out = Report()
    skip = hahn_degenerate(ah, bh, N)
    if skip:
        out.add("special_fns", "hahn_recurrence_check", "three-term recurrence", True, info, info=f"skipped: {skip}")
        return out
    for n in range(N):
        A, C = hahn_AC(n, ah, bh, N)
        bad = []
        for x in range(N + 1):
            lhs = -x * hahn_Q(n, x, ah, bh, N)
            rhs = A * hahn_Q(n + 1, x, ah, bh, N) - (A + C) * hahn_Q(n, x, ah, bh, N)
            if n > 0:
                rhs += C * hahn_Q(n - 1, x, ah, bh, N)
            if lhs != rhs:
                bad.append(f"x={x}: {fmt(lhs - rhs)}")
        out.add("special_fns", "hahn_recurrence_check", f"n={n}: -x Q_n = A Q_(n+1) - (A+C) Q_n + C Q_(n-1)",
                not bad, info, "; ".join(bad) or None)
    if raise_on_fail:
        out.raise_if_failed(RecurrenceViolated)
    return out


# -- grid realisation --------------------------------------------------------


def check_grid_params(params: RepParams) -> None:
    a = params.alpha
    for n in range(params.N + 1):
        if a - n == 0:
            raise SingularParameter(f"alpha - n vanishes at n={n}")


def build_difference_operators(params: RepParams) -> Dict[str, Matrix]:
    """Matrices G with (G g)(n) = sum_k G[n][k] g(k) on functions of n = 0..N."""
    check_grid_params(params)
    a, b, N = params.alpha, params.beta, params.N
    n1 = N + 1
    Zg, Xg, Vg, Yg = la.zeros(n1), la.zeros(n1), la.zeros(n1), la.zeros(n1)
    tail = (a - b - 1) * (a - 1)
    for n in range(n1):
        Zg[n][n] = Fraction(-1)
        Xg[n][n] = n - a
        if n > 0:
            Zg[n][n - 1] = n / (n - a)
            Xg[n][n - 1] = Fraction(-n)
        if n < N:
            Vg[n][n + 1] = -(N - n) * (n - a + 1)
        Vg[n][n] = (N - n) * (n - 2 * a + b + 2) + N * (a - b - 1)
        for k in range(1, n + 1):
            Vg[n][n - k] = tail * pochhammer(-n, k) / pochhammer(a - n, k)
        A1, A2, A0 = y_coefficients(n, params)
        if n < N:
            Yg[n][n + 1] = A1
        if n > 0:
            Yg[n][n - 1] = A2
        Yg[n][n] = A0
    return {"Z": Zg, "X": Xg, "V": Vg, "Y": Yg}


def y_coefficients(n: int, params: RepParams):
    a, b, N = params.alpha, params.beta, params.N
    A1 = (n - a) * (n - N) * (n + 1 - a)
    A2 = n * (n - a) * (n - a + b - N)
    A0 = (n - a) * (-2 * n * n + (2 * a - 1 + 2 * N - b) * n - N * (a - 1))
    return A1, A2, A0


def a_star(n: int, alpha: Fraction) -> Fraction:
    """gamma*_n / gamma*_(n-1) for gamma*_n = n!/(1-alpha)_n."""
    return n / (n - alpha)


def verify_difference_realization(params: RepParams, raise_on_fail: bool = True) -> Report:
    from .matrix_reps import relation_residuals, _residual_str

    g = build_difference_operators(params)
    info = params.as_dict()
    out = Report()
    op = "build_difference_operators"
    N, a = params.N, params.alpha
    lam = la.diag([a - n for n in range(N + 1)])
    res = la.sub(g["X"], la.matmul(lam, g["Z"]))
    out.add("special_fns", op, "X = (alpha - n) Z", la.is_zero(res), info, _residual_str(res))
    res = la.sub(g["Y"], la.matmul(g["X"], g["V"]))
    out.add("special_fns", op, "Y = X V as grid matrices", la.is_zero(res), info, _residual_str(res))
    for name, r in relation_residuals(g["V"], g["X"], g["Z"], params.algebra).items():
        out.add("special_fns", op, f"grid {name}", la.is_zero(r), info, _residual_str(r))
    for m in range(N + 1):
        u = [rational_hahn(m, n, a, params.beta, N) for n in range(N + 1)]
        gx = la.matvec(g["X"], u)
        gz = la.matvec(lam, la.matvec(g["Z"], u))
        gv = la.matvec(g["V"], u)
        ok_gevp = gx == gz
        ok_v = gv == [params.nu(m) * c for c in u]
        out.add("special_fns", op, f"m={m}: X U_m = (alpha - n) Z U_m", ok_gevp, info)
        out.add("special_fns", op, f"m={m}: V U_m = nu_m U_m", ok_v, info)
    if raise_on_fail:
        out.raise_if_failed(BispectralityViolated)
    return out


# -- bispectrality -------------------------------------------------------------


def U_table(params: RepParams) -> List[List[Fraction]]:
    """Rows m, columns n of the rational Hahn functions."""
    a, b, N = params.alpha, params.beta, params.N
    return [[rational_hahn(m, n, a, b, N) for n in range(N + 1)] for m in range(N + 1)]


def verify_bispectrality_U(params: RepParams, raise_on_fail: bool = True, literal_rhs: bool = False) -> Report:
    """Recurrence in m from the tridiagonal X, Z and the difference equation in n from Y.

    The difference equation reads Y U_m = nu_m (alpha - n) (-U_m(n) + a*_n U_m(n-1));
    ``literal_rhs`` multiplies the right side by one more (alpha - n).
    """
    rep = build_rep(params)
    g = build_difference_operators(params)
    U = U_table(params)
    a, N = params.alpha, params.N
    info = params.as_dict()
    out = Report()
    op = "verify_bispectrality_U"
    for m in range(N + 1):
        bad = []
        for n in range(N + 1):
            ks = [k for k in (m - 1, m, m + 1) if 0 <= k <= N]
            lhs = sum((rep.X[k][m] * U[k][n] for k in ks), Fraction(0))
            rhs = (a - n) * sum((rep.Z[k][m] * U[k][n] for k in ks), Fraction(0))
            if lhs != rhs:
                bad.append(f"n={n}: {fmt(lhs - rhs)}")
        out.add("special_fns", op, f"recurrence m={m}", not bad, info, "; ".join(bad) or None)
    for m in range(N + 1):
        u = U[m]
        yu = la.matvec(g["Y"], u)
        bad = []
        for n in range(N + 1):
            prev = u[n - 1] if n > 0 else Fraction(0)
            rhs = params.nu(m) * (a - n) * (-u[n] + a_star(n, a) * prev)
            if literal_rhs:
                rhs *= a - n
            if yu[n] != rhs:
                bad.append(f"n={n}: {fmt(yu[n] - rhs)}")
        out.add("special_fns", op, f"difference equation m={m}", not bad, info, "; ".join(bad) or None)
    if raise_on_fail:
        out.raise_if_failed(BispectralityViolated)
    return out


def verify_contiguity(params: RepParams, raise_on_fail: bool = True, literal_index: bool = False) -> Report:
    """(n-a) U_m(n;a) - n U_m(n-1;a) = -a U_m(n;a+1) and Y U_m(n;a) = a m(m-N+b) U_m(n;a+1).

    ``literal_index`` uses a n(n-N+b) in the second relation instead.
    """
    a, b, N = params.alpha, params.beta, params.N
    p1 = RepParams(a + 1, b, N, params.mu)
    check_grid_params(p1)
    g = build_difference_operators(params)
    info = params.as_dict()
    out = Report()
    op = "verify_contiguity"
    for m in range(N + 1):
        u = [rational_hahn(m, n, a, b, N) for n in range(N + 1)]
        u1 = [rational_hahn(m, n, a + 1, b, N) for n in range(N + 1)]
        bad = []
        for n in range(N + 1):
            lhs = (n - a) * u[n] - (n * u[n - 1] if n > 0 else 0)
            if lhs != -a * u1[n]:
                bad.append(f"n={n}: {fmt(lhs + a * u1[n])}")
        out.add("special_fns", op, f"m={m}: (n-a)U(n;a) - nU(n-1;a) = -aU(n;a+1)", not bad, info,
                "; ".join(bad) or None)
        yu = la.matvec(g["Y"], u)
        bad = []
        for n in range(N + 1):
            k = n if literal_index else m
            rhs = a * k * (k - N + b) * u1[n]
            if yu[n] != rhs:
                bad.append(f"n={n}: {fmt(yu[n] - rhs)}")
        label = "a n(n-N+b)" if literal_index else "a m(m-N+b)"
        out.add("special_fns", op, f"m={m}: Y U(n;a) = {label} U(n;a+1)", not bad, info, "; ".join(bad) or None)
    if raise_on_fail:
        out.raise_if_failed(ContiguityViolated)
    return out


def verify_weights(params: RepParams, raise_on_fail: bool = True) -> Report:
    a, b, N = params.alpha, params.beta, params.N
    ah, bh = params.alpha_hat, params.beta_hat
    info = params.as_dict()
    out = Report()
    op = "verify_weights"
    skip = rational_weight_degenerate(a, b, N)
    if skip:
        out.add("special_fns", op, "rational biorthogonality", True, info, info=f"skipped: {skip}")
    else:
        _rational_weight_checks(out, params)
    skip = hahn_degenerate(ah, bh, N)
    if skip:
        out.add("special_fns", op, "Hahn orthogonality", True, info, info=f"skipped: {skip}")
    else:
        _hahn_weight_checks(out, params)
    if raise_on_fail:
        out.raise_if_failed(WeightViolated)
    return out


def rational_weight_degenerate(alpha: ScalarLike, beta: ScalarLike, N: int) -> Optional[str]:
    a, b = Q(alpha), Q(beta)
    c = b - a - N + 2
    if is_nonpositive_integer(c) and -c < N:
        return f"beta - alpha - N + 2 = {fmt(c)} is a non-positive integer"
    if pochhammer(b - N + 1, N) == 0:
        return "(beta - N + 1)_N vanishes"
    for n in range(N + 1):
        if is_nonpositive_integer(b + 2 - a - N + n):
            return f"partner pole: beta + 2 - alpha - N + {n} = {fmt(b + 2 - a - N + n)}"
    return None


def _rational_weight_checks(out: Report, params: RepParams) -> None:
    a, b, N = params.alpha, params.beta, params.N
    info = params.as_dict()
    op = "verify_weights"
    w = [rational_weight(n, a, b, N) for n in range(N + 1)]
    total = sum(w, Fraction(0))
    out.add("special_fns", op, "sum of rational weights = 1", total == 1, info, None if total == 1 else fmt(total - 1))
    U = [[rational_hahn(m, n, a, b, N) for n in range(N + 1)] for m in range(N + 1)]
    Vp = [[rational_hahn_partner(k, n, a, b, N) for n in range(N + 1)] for k in range(N + 1)]
    for k in range(N + 1):
        for m in range(N + 1):
            s = sum((Vp[k][n] * U[m][n] * w[n] for n in range(N + 1)), Fraction(0))
            if k != m:
                out.add("special_fns", op, f"sum_n V_{k} U_{m} w = 0", s == 0, info, None if s == 0 else fmt(s))
            else:
                out.add("special_fns", op, f"sum_n V_{k} U_{k} w != 0", s != 0, info, info=fmt(s))


def _hahn_weight_checks(out: Report, params: RepParams) -> None:
    ah, bh, N = params.alpha_hat, params.beta_hat, params.N
    info = params.as_dict()
    op = "verify_weights"
    W = [hahn_weight(n, ah, bh, N) for n in range(N + 1)]
    Qv = [[hahn_Q(m, n, ah, bh, N) for n in range(N + 1)] for m in range(N + 1)]
    for m in range(N + 1):
        for k in range(m, N + 1):
            s = sum((W[n] * Qv[m][n] * Qv[k][n] for n in range(N + 1)), Fraction(0))
            if k != m:
                out.add("special_fns", op, f"sum_n W Q_{m} Q_{k} = 0", s == 0, info, None if s == 0 else fmt(s))
            else:
                out.add("special_fns", op, f"sum_n W Q_{m}^2 != 0", s != 0, info, info=fmt(s))


def hahn_reflection_factor(m: int, ah: ScalarLike, bh: ScalarLike) -> Fraction:
    """Q_m(n; ahat, bhat) / Q_m(N-n; bhat, ahat), constant in n."""
    ah, bh = Q(ah), Q(bh)
    return (-1) ** m * pochhammer(bh + 1, m) / pochhammer(ah + 1, m)


def hahn_reflection_check(m: int, ah: ScalarLike, bh: ScalarLike, N: int, literal: bool = False) -> bool:
    """Q_m(n; ahat, bhat) = c_m Q_m(N-n; bhat, ahat) on the grid; ``literal`` takes c_m = (-1)^m."""
    c = Fraction((-1) ** m) if literal else hahn_reflection_factor(m, ah, bh)
    return all(hahn_Q(m, n, ah, bh, N) == c * hahn_Q(m, N - n, bh, ah, N) for n in range(N + 1))


def favard_signs(params: RepParams) -> Report:
    """Sign of W_(m+1,m) W_(m-1,m) per m; informational, never a failure."""
    rep = build_rep(params)
    W = rep.W
    out = Report()
    for m in range(1, params.N):
        prod = W[m + 1][m] * W[m - 1][m]
        sign = "positive" if prod > 0 else ("zero" if prod == 0 else "negative")
        out.add("special_fns", "favard_signs", f"m={m}: W_(m+1,m) W_(m-1,m) {sign}", True, params.as_dict(), info=fmt(prod))
    return out
