"""Truncated power series, restricted Euler/Pfaff transformations with lower
parameter -N, the Saalschutz sum, and the Pade table of (1-x)^beta."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import (
    ConfigError,
    OrderConditionViolated,
    SingularLowerParameter,
    TransformViolated,
)
from .exact import (
    Q,
    ScalarLike,
    binomial_series_coeff,
    factorial,
    fmt,
    hyp,
    hyp_poly,
    is_integer,
    is_nonpositive_integer,
    pochhammer,
)
from .report import Report


@dataclass(frozen=True)
class TruncatedSeries:
    """c_0 + c_1 x + ... + c_D x^D + O(x^(D+1))."""

    coeffs: Tuple[Fraction, ...]
    D: int
    notes: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        c = [Q(x) for x in self.coeffs][: self.D + 1]
        c += [Fraction(0)] * (self.D + 1 - len(c))
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_poly(cls, p: Sequence, D: int) -> "TruncatedSeries":
        return cls(tuple(p), D)

    @classmethod
    def binomial(cls, q: ScalarLike, D: int) -> "TruncatedSeries":
        """(1-x)^q through degree D."""
        q = Q(q)
        return cls(tuple(binomial_series_coeff(q, s) for s in range(D + 1)), D)

    def _common(self, other: "TruncatedSeries"):
        D = min(self.D, other.D)
        notes = self.notes + other.notes
        if self.D != other.D:
            notes += (f"truncated {max(self.D, other.D)} -> {D}",)
        return D, notes

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        D, notes = self._common(other)
        return TruncatedSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(D + 1)), D, notes)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.D, self.notes)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            c = Q(other)
            return TruncatedSeries(tuple(c * a for a in self.coeffs), self.D, self.notes)
        D, notes = self._common(other)
        out = [Fraction(0)] * (D + 1)
        for i in range(D + 1):
            a = self.coeffs[i]
            if a:
                for j in range(D + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncatedSeries(tuple(out), D, notes)

    __rmul__ = __mul__

    def compose_x_over_x_minus_1(self) -> "TruncatedSeries":
        """f(x/(x-1)) using (x/(x-1))^s = (-1)^s x^s (1-x)^(-s)."""
        D = self.D
        out = TruncatedSeries((), D)
        for s, c in enumerate(self.coeffs):
            if c:
                tail = TruncatedSeries.binomial(-s, D - s)
                shifted = TruncatedSeries((Fraction(0),) * s + tail.coeffs, D)
                out = out + shifted * ((-1) ** s * c)
        return out

    def first_nonzero(self) -> Optional[int]:
        return next((i for i, c in enumerate(self.coeffs) if c != 0), None)


def _check_restricted(n: int, N: int, b: Fraction) -> None:
    if not (0 < n < N):
        raise ConfigError(f"need 0 < n < N, got n={n}, N={N}")
    if is_integer(b):
        raise ConfigError(f"b = {fmt(b)} must not be an integer")


def _compare(out: Report, op: str, lhs: TruncatedSeries, rhs: TruncatedSeries, upto: int, info: dict):
    bad = next((k for k in range(upto + 1) if lhs.coeffs[k] != rhs.coeffs[k]), None)
    out.add(
        "pade_appx", op, f"coefficients agree through x^{upto}", bad is None, info,
        None if bad is None else f"degree {bad}: {fmt(lhs.coeffs[bad] - rhs.coeffs[bad])}",
    )
    k = upto + 1
    if k <= min(lhs.D, rhs.D):
        d = lhs.coeffs[k] - rhs.coeffs[k]
        out.add("pade_appx", op, f"sharpness witness at x^{k}", True, info,
                info=f"differ by {fmt(d)}" if d else "agree")


def euler_sides(n: int, N: int, b: ScalarLike, D: int) -> Tuple[TruncatedSeries, TruncatedSeries]:
    b = Q(b)
    lhs = TruncatedSeries.from_poly(hyp_poly([-n, b], [-N]), D)
    rhs = TruncatedSeries.binomial(-N + n - b, D) * TruncatedSeries.from_poly(hyp_poly([n - N, -N - b], [-N]), D)
    return lhs, rhs


def euler_A(k: int, n: int, N: int, b: ScalarLike) -> Fraction:
    """Coefficient of x^k of the right-hand side as a balanced 3F2 at argument 1."""
    b = Q(b)
    return pochhammer(N - n + b, k) / factorial(k) * hyp([-k, n - N, -N - b], [-N, 1 - k - N + n - b])


def restricted_euler_check(n: int, N: int, b: ScalarLike, raise_on_fail: bool = True) -> Report:
    b = Q(b)
    _check_restricted(n, N, b)
    info = {"n": n, "N": N, "b": fmt(b)}
    out = Report()
    op = "restricted_euler_check"
    lhs, rhs = euler_sides(n, N, b, N + 1)
    _compare(out, op, lhs, rhs, N, info)
    bad = [k for k in range(N + 1) if euler_A(k, n, N, b) != rhs.coeffs[k]]
    out.add("pade_appx", op, "A_k as 3F2(1) equals the product coefficient", not bad, info,
            None if not bad else f"k = {bad[0]}")
    bad = [
        k for k in range(N + 1)
        if saalschutz_rhs(k, n - N, -N - b, Fraction(-N)) * pochhammer(N - n + b, k) / factorial(k) != lhs.coeffs[k]
    ]
    out.add("pade_appx", op, "Saalschutz value of A_k equals the left coefficient", not bad, info,
            None if not bad else f"k = {bad[0]}")
    if raise_on_fail:
        out.raise_if_failed(TransformViolated)
    return out


def pfaff_sides(n: int, N: int, b: ScalarLike, D: int) -> Tuple[TruncatedSeries, TruncatedSeries]:
    b = Q(b)
    lhs = TruncatedSeries.binomial(b, D) * TruncatedSeries.from_poly(hyp_poly([-n, b], [-N]), D)
    rhs = TruncatedSeries.from_poly(hyp_poly([n - N, b], [-N]), D).compose_x_over_x_minus_1()
    return lhs, rhs


def restricted_pfaff_check(n: int, N: int, b: ScalarLike, raise_on_fail: bool = True) -> Report:
    b = Q(b)
    _check_restricted(n, N, b)
    info = {"n": n, "N": N, "b": fmt(b)}
    out = Report()
    lhs, rhs = pfaff_sides(n, N, b, N + 1)
    _compare(out, "restricted_pfaff_check", lhs, rhs, N, info)
    if raise_on_fail:
        out.raise_if_failed(TransformViolated)
    return out


def saalschutz_rhs(k: int, a: ScalarLike, b: ScalarLike, c: ScalarLike) -> Fraction:
    a, b, c = Q(a), Q(b), Q(c)
    den = pochhammer(c, k) * pochhammer(c - a - b, k)
    if den == 0:
        raise SingularLowerParameter(f"(c)_k (c-a-b)_k vanishes at k={k}, c={fmt(c)}, c-a-b={fmt(c - a - b)}")
    return pochhammer(c - a, k) * pochhammer(c - b, k) / den


def saalschutz_lhs(k: int, a: ScalarLike, b: ScalarLike, c: ScalarLike) -> Fraction:
    a, b, c = Q(a), Q(b), Q(c)
    return hyp([-k, a, b], [c, 1 + a + b - c - k])


def saalschutz_check(k: int, a: ScalarLike, b: ScalarLike, c: ScalarLike, raise_on_fail: bool = True) -> Report:
    a, b, c = Q(a), Q(b), Q(c)
    info = {"k": k, "alpha": fmt(a), "beta": fmt(b), "gamma": fmt(c)}
    out = Report()
    op = "saalschutz_check"
    lhs = saalschutz_lhs(k, a, b, c)
    rhs = saalschutz_rhs(k, a, b, c)
    out.add("pade_appx", op, "balanced 3F2(-k,a,b; c,1+a+b-c-k; 1) = product", lhs == rhs, info,
            None if lhs == rhs else fmt(lhs - rhs))
    if raise_on_fail:
        out.raise_if_failed(TransformViolated)
    return out


def balanced_check_variant(k: int, a: ScalarLike, b: ScalarLike, c: ScalarLike) -> Optional[bool]:
    """Whether the product formula also holds with lower parameter 1+a+b+c-k; None if undefined."""
    a, b, c = Q(a), Q(b), Q(c)
    try:
        return hyp([-k, a, b], [c, 1 + a + b + c - k]) == saalschutz_rhs(k, a, b, c)
    except SingularLowerParameter:
        return None


# -- Pade table ---------------------------------------------------------------


@dataclass(frozen=True)
class PadeEntry:
    m: int
    n: int
    beta: Fraction
    numerator: Tuple[Fraction, ...]
    denominator: Tuple[Fraction, ...]

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "num": [fmt(c) for c in self.numerator],
            "den": [fmt(c) for c in self.denominator],
        }

    def defect(self, D: Optional[int] = None) -> TruncatedSeries:
        """(1-x)^beta * den - num through degree D (default m+n+1)."""
        D = self.m + self.n + 1 if D is None else D
        return (
            TruncatedSeries.binomial(self.beta, D) * TruncatedSeries.from_poly(self.denominator, D)
            - TruncatedSeries.from_poly(self.numerator, D)
        )


def pade_entry(beta: ScalarLike, m: int, n: int) -> PadeEntry:
    beta = Q(beta)
    if is_integer(beta):
        raise ConfigError(f"beta = {fmt(beta)} must not be an integer")
    num = hyp_poly([-m, -n - beta], [-n - m]) or [Fraction(1)]
    den = hyp_poly([-n, -m + beta], [-n - m]) or [Fraction(1)]
    return PadeEntry(m, n, beta, tuple(num), tuple(den))


def pade_table(beta: ScalarLike, m_max: int, n_max: int, report: Optional[Report] = None,
               raise_on_fail: bool = True) -> List[PadeEntry]:
    beta = Q(beta)
    out = report if report is not None else Report()
    entries = []
    for m in range(m_max + 1):
        for n in range(n_max + 1):
            e = pade_entry(beta, m, n)
            entries.append(e)
            info = {"beta": fmt(beta), "m": m, "n": n}
            d = e.defect()
            k = d.first_nonzero()
            ok = (k is None or k > m + n) and e.denominator[0] == 1
            out.add("pade_appx", "pade_table", f"order condition through x^{m + n}", ok, info,
                    None if ok else f"degree {k}: {fmt(d.coeffs[k])}",
                    info=f"first defect at x^{k}" if k is not None else "no defect through x^" + str(m + n + 1))
    if raise_on_fail:
        out.raise_if_failed(OrderConditionViolated)
    return entries


def pade_table_json(beta: ScalarLike, m_max: int, n_max: int) -> dict:
    return {"beta": fmt(Q(beta)), "entries": [e.to_dict() for e in pade_table(beta, m_max, n_max)]}


def replacement_check(m: int, N: int, beta: ScalarLike) -> Report:
    """(1-x)^beta 2F1(-m, m-N+beta; -N; x) and 2F1(m-N, -m-beta; -N; x) agree through x^N."""
    beta = Q(beta)
    info = {"m": m, "N": N, "beta": fmt(beta)}
    lhs = TruncatedSeries.binomial(beta, N + 1) * TruncatedSeries.from_poly(hyp_poly([-m, m - N + beta], [-N]), N + 1)
    rhs = TruncatedSeries.from_poly(hyp_poly([m - N, -m - beta], [-N]), N + 1)
    out = Report()
    _compare(out, "replacement_check", lhs, rhs, N, info)
    return out


def verify_appendix_B(beta: ScalarLike, N: int, b: Optional[ScalarLike] = None, pade_max: int = 4,
                      raise_on_fail: bool = True) -> Report:
    """Euler and Pfaff for every 0 < n < N, the overlap replacement for m = 0..N,
    Saalschutz for k <= N, and the Pade table up to ``pade_max``."""
    beta = Q(beta)
    b = beta if b is None else Q(b)
    out = Report()
    for n in range(1, N):
        out.extend(restricted_euler_check(n, N, b, raise_on_fail=False))
        out.extend(restricted_pfaff_check(n, N, b, raise_on_fail=False))
    if not is_integer(beta):
        for m in range(N + 1):
            out.extend(replacement_check(m, N, beta))
    sa, sb, sc = b, b + Fraction(1, 3), b + Fraction(5, 2)
    for k in range(N + 1):
        try:
            out.extend(saalschutz_check(k, sa, sb, sc, raise_on_fail=False))
        except SingularLowerParameter as e:
            out.add("pade_appx", "saalschutz_check", f"k={k}: balanced 3F2 = product", True,
                    {"k": k, "alpha": fmt(sa), "beta": fmt(sb), "gamma": fmt(sc)}, info=f"skipped: {e}")
    if not is_integer(beta):
        pade_table(beta, pade_max, pade_max, report=out, raise_on_fail=False)
    if raise_on_fail:
        out.raise_if_failed(TransformViolated)
    return out
