"""Exact scalars, Pochhammer symbols and terminating hypergeometric sums.

Every scalar in the package is a :class:`fractions.Fraction`.  Dense
univariate polynomials are plain lists of coefficients, lowest degree first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import ConfigError, NonTerminating, SingularLowerParameter

Scalar = Fraction
ScalarLike = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def Q(value: ScalarLike) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot make an exact scalar from {value!r}")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ConfigError(f"not an exact rational: {text!r} (expected p or p/q)")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ConfigError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def fmt(x: Fraction) -> str:
    """Serialise as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def is_nonpositive_integer(x: Fraction) -> bool:
    return x.denominator == 1 and x <= 0


def is_integer(x: Fraction) -> bool:
    return Fraction(x).denominator == 1


def pochhammer(a: ScalarLike, k: int) -> Fraction:
    """Rising factorial a(a+1)...(a+k-1); 1 when k == 0."""
    if k < 0:
        raise ValueError("pochhammer index must be non-negative")
    a = Q(a)
    out = Fraction(1)
    for j in range(k):
        out *= a + j
        if out == 0:
            break
    return out


def factorial(n: int) -> Fraction:
    return pochhammer(1, n)


def binomial_series_coeff(q: ScalarLike, s: int) -> Fraction:
    """Coefficient of x^s in (1-x)^q, i.e. (-q)_s / s!."""
    if s < 0:
        return Fraction(0)
    return pochhammer(-Q(q), s) / factorial(s)


@dataclass(frozen=True)
class HypSpec:
    """A generalised hypergeometric series pFq(upper; lower; argument).

    ``bound`` optionally fixes the last summation index; otherwise the series
    must be truncated by a non-positive integer upper parameter.
    """

    upper: tuple
    lower: tuple
    argument: Fraction = Fraction(1)
    bound: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(Q(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(Q(b) for b in self.lower))
        object.__setattr__(self, "argument", Q(self.argument))

    def termination_index(self) -> int:
        truncating = [-a for a in self.upper if is_nonpositive_integer(a)]
        if truncating:
            k = int(min(truncating))
            return k if self.bound is None else min(k, self.bound)
        if self.bound is None:
            raise NonTerminating(f"no upper parameter of {self.upper} truncates the series")
        return self.bound

    def check_lower(self, kmax: int) -> None:
        # term k carries (b)_k in its denominator, which vanishes once k > -b
        for b in self.lower:
            if is_nonpositive_integer(b) and -b < kmax:
                raise SingularLowerParameter(
                    f"lower parameter {fmt(b)} vanishes inside the summation range 0..{kmax}"
                )


def hyp_terms(spec: HypSpec) -> list:
    """The individual terms of the series, k = 0..k_max."""
    kmax = spec.termination_index()
    spec.check_lower(kmax)
    z = spec.argument
    terms = []
    t = Fraction(1)
    for k in range(kmax + 1):
        terms.append(t)
        if k == kmax:
            break
        num = Fraction(1)
        for a in spec.upper:
            num *= a + k
        den = Fraction(k + 1)
        for b in spec.lower:
            den *= b + k
        t = t * num * z / den
    return terms


def eval_terminating_hyp(spec: HypSpec) -> Fraction:
    return sum(hyp_terms(spec), Fraction(0))


def hyp(upper: Sequence, lower: Sequence, z: ScalarLike = 1, bound: Optional[int] = None) -> Fraction:
    return eval_terminating_hyp(HypSpec(tuple(upper), tuple(lower), Q(z), bound))


def hyp_poly(upper: Sequence, lower: Sequence, bound: Optional[int] = None) -> list:
    """Coefficients of pFq(upper; lower; x) as a polynomial in x."""
    return trim(hyp_terms(HypSpec(tuple(upper), tuple(lower), Fraction(1), bound)))


# -- dense univariate polynomials ------------------------------------------


def trim(p: Iterable) -> list:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_add(p: Sequence, q: Sequence) -> list:
    n = max(len(p), len(q))
    return trim(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def poly_scale(p: Sequence, c: ScalarLike) -> list:
    c = Q(c)
    return trim(c * a for a in p)


def poly_sub(p: Sequence, q: Sequence) -> list:
    return poly_add(p, poly_scale(q, -1))


def poly_mul(p: Sequence, q: Sequence) -> list:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def poly_eval(p: Sequence, x: ScalarLike) -> Fraction:
    x = Q(x)
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_deriv(p: Sequence) -> list:
    return trim(i * p[i] for i in range(1, len(p)))


def poly_divmod(num: Sequence, den: Sequence) -> tuple:
    num = trim(num)
    den = trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    rem = list(num)
    lead = den[-1]
    for shift in range(len(num) - len(den), -1, -1):
        c = rem[shift + len(den) - 1] / lead
        quot[shift] = c
        if c:
            for i, d in enumerate(den):
                rem[shift + i] -= c * d
    return trim(quot), trim(rem)


def poly_exact_div(num: Sequence, den: Sequence) -> list:
    q, r = poly_divmod(num, den)
    if r:
        raise ArithmeticError("polynomial division is not exact")
    return q


def poly_from_roots(roots: Iterable) -> list:
    """Monic polynomial prod (x - r)."""
    out = [Fraction(1)]
    for r in roots:
        out = poly_mul(out, [-Q(r), Fraction(1)])
    return out


def poly_str(p: Sequence, var: str = "x") -> str:
    if not trim(p):
        return "0"
    parts = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        parts.append(f"{fmt(c)}*{mono}" if mono else fmt(c))
    return " + ".join(parts)
