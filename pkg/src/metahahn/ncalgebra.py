"""Free algebra on {V, X, Z}, the meta-Hahn rewrite system and its checks.

Words are plain strings over ``"VXZ"`` (the empty string is the identity).
Normal forms are taken with respect to the degree-lexicographic order with
Z < X < V, so the three rules are

    XZ -> ZX - ZZ - Z
    VX -> XV - eta6 (VZ + ZV) - eta1 X - eta7 V - eta2 Z - eta0
    VZ -> ZV + eta4 X + eta5 Z + eta3

each of which strictly lowers the leading word; normal words read Z^a X^b V^c.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from .errors import EmbeddingViolated, ReductionBudgetExceeded, RelationViolated
from .exact import Q, ScalarLike, fmt
from .report import Report

ALPHABET = "VXZ"
DEFAULT_MAX_WORD = 24
DEFAULT_BUDGET = 10**6
BUDGET_ENV = "METAHAHN_REDUCTION_BUDGET"


class NCPolynomial:
    """Finite linear combination of words with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Union[Mapping[str, ScalarLike], None] = None):
        clean: Dict[str, Fraction] = {}
        for w, c in (terms or {}).items():
            if any(ch not in ALPHABET for ch in w):
                raise ValueError(f"word {w!r} leaves the alphabet {ALPHABET}")
            c = Q(c)
            if c:
                clean[w] = clean.get(w, Fraction(0)) + c
                if not clean[w]:
                    del clean[w]
        self.terms = clean

    @classmethod
    def word(cls, w: str, c: ScalarLike = 1) -> "NCPolynomial":
        return cls({w: c})

    @classmethod
    def scalar(cls, c: ScalarLike) -> "NCPolynomial":
        return cls({"": c})

    @classmethod
    def parse(cls, text: str) -> "NCPolynomial":
        """Inverse of ``str``: ``"1*XZ + 1*ZZ + 1*Z"``; ``1`` denotes I."""
        text = text.strip()
        if text in ("", "0"):
            return cls()
        terms: Dict[str, Fraction] = {}
        for chunk in text.split(" + "):
            coeff, _, w = chunk.strip().rpartition("*")
            w = "" if w == "1" else w
            terms[w] = terms.get(w, Fraction(0)) + Q(coeff)
        return cls(terms)

    def _coerce(self, other) -> "NCPolynomial":
        if isinstance(other, NCPolynomial):
            return other
        return NCPolynomial.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return NCPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return NCPolynomial({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, NCPolynomial):
            c = Q(other)
            return NCPolynomial({w: c * a for w, a in self.terms.items()})
        out: Dict[str, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, Fraction(0)) + c1 * c2
        return NCPolynomial(out)

    def __rmul__(self, other):
        c = Q(other)
        return NCPolynomial({w: c * a for w, a in self.terms.items()})

    def __pow__(self, k: int):
        out = NCPolynomial.scalar(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, NCPolynomial):
            try:
                other = NCPolynomial.scalar(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, w: str) -> Fraction:
        return self.terms.get(w, Fraction(0))

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{fmt(c)}*{w or '1'}" for w, c in self.sorted_terms())

    __repr__ = __str__


I = NCPolynomial.scalar(1)
V = NCPolynomial.word("V")
X = NCPolynomial.word("X")
Z = NCPolynomial.word("Z")


def comm(a: NCPolynomial, b: NCPolynomial) -> NCPolynomial:
    return a * b - b * a


def acomm(a: NCPolynomial, b: NCPolynomial) -> NCPolynomial:
    return a * b + b * a


@dataclass(frozen=True)
class AlgebraParams:
    """Structure constants of the relations

        [Z,X] = Z^2 + Z
        [X,V] = eta6 {V,Z} + eta1 X + eta7 V + eta2 Z + eta0
        [V,Z] = eta4 X + eta5 Z + eta3
    """

    eta0: Fraction = Fraction(0)
    eta1: Fraction = Fraction(0)
    eta2: Fraction = Fraction(0)
    eta3: Fraction = Fraction(0)
    eta4: Fraction = Fraction(2)
    eta5: Fraction = Fraction(0)
    eta6: Fraction = Fraction(1)
    eta7: Fraction = Fraction(1)

    def __post_init__(self):
        for name in self.__dataclass_fields__:
            object.__setattr__(self, name, Q(getattr(self, name)))

    @classmethod
    def standard(cls, eta0=0, eta1=0, eta3=0) -> "AlgebraParams":
        eta1 = Q(eta1)
        return cls(eta0=eta0, eta1=eta1, eta2=-eta1, eta3=eta3, eta4=2, eta5=eta1, eta6=1, eta7=1)

    @classmethod
    def from_representation(cls, alpha, beta, N: int) -> "AlgebraParams":
        """Central charges of the (N+1)-dimensional representation."""
        alpha, beta = Q(alpha), Q(beta)
        return cls.standard(
            eta0=(N - 1 - beta) * alpha + beta + 1,
            eta1=N - 1 - beta,
            eta3=2 * alpha - beta - 1,
        )

    def satisfies_jacobi_constraints(self) -> bool:
        return self.eta6 == 1 and self.eta7 == 1 and self.eta5 == self.eta1

    def is_standardized(self) -> bool:
        return (
            self.satisfies_jacobi_constraints()
            and self.eta4 == 2
            and self.eta2 == -self.eta1
        )

    def as_dict(self) -> dict:
        return {name: fmt(getattr(self, name)) for name in self.__dataclass_fields__}


def random_rational(rng: random.Random, lo: int = 1, hi: int = 97, signed: bool = True) -> Fraction:
    num = rng.randint(lo, hi)
    den = rng.randint(lo, hi)
    sign = rng.choice((-1, 1)) if signed else 1
    return Fraction(sign * num, den)


def random_standard_params(rng: random.Random) -> AlgebraParams:
    return AlgebraParams.standard(random_rational(rng), random_rational(rng), random_rational(rng))


# -- relations and rewriting ------------------------------------------------


def relation_polynomials(p: AlgebraParams) -> Tuple[NCPolynomial, NCPolynomial, NCPolynomial]:
    """Each defining relation moved to one side (lhs - rhs), in the order ZX, XV, VZ."""
    rzx = comm(Z, X) - Z * Z - Z
    rxv = comm(X, V) - (p.eta6 * acomm(V, Z) + p.eta1 * X + p.eta7 * V + p.eta2 * Z + p.eta0 * I)
    rvz = comm(V, Z) - (p.eta4 * X + p.eta5 * Z + p.eta3 * I)
    return rzx, rxv, rvz


def _rules(p: AlgebraParams) -> Dict[str, Dict[str, Fraction]]:
    # XV and ZV are normal, so the VX rule may keep ZV:
    # VX = XV - [X,V] = XV - eta6 (VZ + ZV) - ...
    return {
        "XZ": {"ZX": Fraction(1), "ZZ": Fraction(-1), "Z": Fraction(-1)},
        "VX": {
            "XV": Fraction(1),
            "VZ": -p.eta6,
            "ZV": -p.eta6,
            "X": -p.eta1,
            "V": -p.eta7,
            "Z": -p.eta2,
            "": -p.eta0,
        },
        "VZ": {"ZV": Fraction(1), "X": p.eta4, "Z": p.eta5, "": p.eta3},
    }


def _budget_default() -> int:
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


class Rewriter:
    """Leftmost-redex normal forms, memoised per word.

    ``steps`` counts rule applications (memo hits are free).
    """

    def __init__(self, params: AlgebraParams, budget: Optional[int] = None, max_word: int = DEFAULT_MAX_WORD):
        self.params = params
        self.rules = _rules(params)
        self.budget = _budget_default() if budget is None else budget
        self.max_word = max_word
        self.steps = 0
        self._memo: Dict[str, Dict[str, Fraction]] = {}

    def redexes(self, w: str) -> list:
        return [i for i in range(len(w) - 1) if w[i : i + 2] in self.rules]

    def rewrite_at(self, w: str, i: int) -> Dict[str, Fraction]:
        """One rule application at position i (no further reduction)."""
        rhs = self.rules[w[i : i + 2]]
        return {w[:i] + r + w[i + 2 :]: c for r, c in rhs.items() if c}

    def normal_word(self, w: str) -> Dict[str, Fraction]:
        hit = self._memo.get(w)
        if hit is not None:
            return hit
        if len(w) > self.max_word:
            raise ReductionBudgetExceeded(f"word length {len(w)} exceeds cap {self.max_word}")
        red = self.redexes(w)
        if not red:
            out = {w: Fraction(1)}
        else:
            self.steps += 1
            if self.steps > self.budget:
                raise ReductionBudgetExceeded(f"more than {self.budget} rewrite steps")
            out: Dict[str, Fraction] = {}
            for w2, c in self.rewrite_at(w, red[0]).items():
                for w3, c3 in self.normal_word(w2).items():
                    out[w3] = out.get(w3, Fraction(0)) + c * c3
            out = {k: v for k, v in out.items() if v}
        self._memo[w] = out
        return out

    def reduce(self, poly: NCPolynomial) -> NCPolynomial:
        out: Dict[str, Fraction] = {}
        for w, c in poly.terms.items():
            for w2, c2 in self.normal_word(w).items():
                out[w2] = out.get(w2, Fraction(0)) + c * c2
        return NCPolynomial(out)

    def is_normal(self, poly: NCPolynomial) -> bool:
        return all(not self.redexes(w) for w in poly.terms)


def reduce(poly: NCPolynomial, params: AlgebraParams, budget: Optional[int] = None) -> NCPolynomial:
    return Rewriter(params, budget).reduce(poly)


def local_confluence_failures(params: AlgebraParams, max_len: int = 5) -> list:
    """Words of length <= max_len where two different first rewrites disagree."""
    from itertools import product

    rw = Rewriter(params)
    bad = []
    for n in range(2, max_len + 1):
        for letters in product(ALPHABET, repeat=n):
            w = "".join(letters)
            red = rw.redexes(w)
            if len(red) < 2:
                continue
            forms = set()
            for i in red:
                forms.add(rw.reduce(NCPolynomial(rw.rewrite_at(w, i))))
            if len(forms) > 1:
                bad.append(w)
    return bad


# -- Jacobi identity --------------------------------------------------------


def jacobi_defect(params: AlgebraParams, budget: Optional[int] = None) -> NCPolynomial:
    """[V,[Z,X]] + [Z,[X,V]] + [X,[V,Z]] with the inner brackets replaced by
    the relation right-hand sides, then reduced.  Zero iff the relations are
    compatible with the Jacobi identity."""
    p = params
    zx = Z * Z + Z
    xv = p.eta6 * acomm(V, Z) + p.eta1 * X + p.eta7 * V + p.eta2 * Z + p.eta0 * I
    vz = p.eta4 * X + p.eta5 * Z + p.eta3 * I
    raw = comm(V, zx) + comm(Z, xv) + comm(X, vz)
    return Rewriter(p, budget).reduce(raw)


# -- cyclic words and the potential -----------------------------------------


def canonical_rotation(w: str) -> str:
    if not w:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


class CyclicPolynomial:
    """Linear combination of cyclic words, keyed by the minimal rotation."""

    def __init__(self, terms: Optional[Mapping[str, ScalarLike]] = None):
        clean: Dict[str, Fraction] = {}
        for w, c in (terms or {}).items():
            k = canonical_rotation(w)
            clean[k] = clean.get(k, Fraction(0)) + Q(c)
        self.terms = {k: v for k, v in clean.items() if v}

    def __add__(self, other: "CyclicPolynomial") -> "CyclicPolynomial":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return CyclicPolynomial(out)

    def __mul__(self, c):
        return CyclicPolynomial({w: Q(c) * v for w, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, CyclicPolynomial) and self.terms == other.terms

    def __str__(self):
        return " + ".join(f"{fmt(c)}*[{w}]" for w, c in sorted(self.terms.items())) or "0"


def cyclic_derivative(phi: CyclicPolynomial, g: str) -> NCPolynomial:
    """Sum over occurrences of g of the word read cyclically after it."""
    out: Dict[str, Fraction] = {}
    for w, c in phi.terms.items():
        for s, ch in enumerate(w):
            if ch == g:
                tail = w[s + 1 :] + w[:s]
                out[tail] = out.get(tail, Fraction(0)) + c
    return NCPolynomial(out)


def potential(params: AlgebraParams) -> CyclicPolynomial:
    p = params
    return CyclicPolynomial(
        {
            "XVZ": 1,
            "XZV": -1,
            "VZZ": -1,
            "VZ": -1,
            "XX": -1,
            "ZZ": p.eta1 / 2,
            "XZ": -p.eta1,
            "X": -p.eta3,
            "Z": -p.eta0,
        }
    )


def potential_relations(params: AlgebraParams):
    """(dPhi/dV, dPhi/dZ, dPhi/dX)."""
    phi = potential(params)
    return tuple(cyclic_derivative(phi, g) for g in "VZX")


# -- Casimir ----------------------------------------------------------------


def casimir(params: AlgebraParams, general: bool = False) -> NCPolynomial:
    p = params
    z2z = Z * Z + Z
    if general:
        return (
            acomm(V, z2z)
            + p.eta4 * X * X
            + p.eta1 * acomm(X, Z)
            + (p.eta2 + p.eta4) * Z * Z
            + 2 * p.eta3 * X
            + (2 * p.eta0 + p.eta4) * Z
        )
    return (
        acomm(V, z2z)
        + 2 * X * X
        + (2 - p.eta1) * Z * Z
        + p.eta1 * acomm(X, Z)
        + 2 * p.eta3 * X
        + 2 * (p.eta0 + 1) * Z
    )


# -- embeddings -------------------------------------------------------------


@dataclass(frozen=True)
class HahnCoefficients:
    a: Fraction
    b: Fraction
    c1: Fraction
    c2: Fraction
    d2: Fraction
    d1_const: Fraction = Fraction(0)  # d1 = -Q + d1_const


def hahn_coefficients(params: AlgebraParams, mu: ScalarLike, literal_d1: bool = False) -> HahnCoefficients:
    """Structure constants of the Hahn algebra generated by K1 = X + mu Z and K2 = V.

    With the Casimir normalised as in ``casimir`` the first relation closes
    with d1 = -Q - tau0 (tau0 = eta0 - mu eta3); ``literal_d1`` drops the
    tau0 shift and gives d1 = -Q, which leaves the residual -tau0.
    """
    p, mu = params, Q(mu)
    return HahnCoefficients(
        a=Fraction(2),
        b=2 * mu - p.eta1 + 2 * p.eta3,
        c1=Fraction(-1),
        c2=-p.eta1 * (p.eta1 + 2),
        d2=p.eta0 * (2 * mu - p.eta1) - p.eta1 * p.eta3 * (1 + mu),
        d1_const=Fraction(0) if literal_d1 else mu * p.eta3 - p.eta0,
    )


def pencil_tau(params: AlgebraParams, mu: ScalarLike) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    """(tau0, tau1, tau2, tau3) of the relations among V, W = X + mu Z and Z."""
    p, mu = params, Q(mu)
    return (
        p.eta0 - mu * p.eta3,
        p.eta1 - 2 * mu,
        2 * mu * mu - 2 * p.eta1 * mu - p.eta1,
        p.eta3,
    )


def _residual_check(report: Report, rw: Rewriter, name: str, poly: NCPolynomial, op: str, params: dict):
    res = rw.reduce(poly)
    report.add("ncalgebra", op, name, res.is_zero(), params, residual=None if res.is_zero() else str(res))
    return res


def verify_hahn_embedding(
    params: AlgebraParams,
    mu: ScalarLike,
    coeffs: Optional[HahnCoefficients] = None,
    raise_on_fail: bool = True,
) -> Report:
    mu = Q(mu)
    coeffs = coeffs or hahn_coefficients(params, mu)
    rw = Rewriter(params)
    q = casimir(params)
    k1 = X + mu * Z
    k2 = V
    info = {**params.as_dict(), "mu": fmt(mu)}
    rep = Report()
    op = "verify_hahn_embedding"
    _residual_check(
        rep, rw, f"[K1,[K2,K1]] = a K1^2 + b K1 + c1 K2 + d1 (d1 = -Q + {fmt(coeffs.d1_const)})",
        comm(k1, comm(k2, k1)) - (coeffs.a * k1 * k1 + coeffs.b * k1 + coeffs.c1 * k2 - q + coeffs.d1_const * I),
        op, info,
    )
    _residual_check(
        rep, rw, "[K2,[K1,K2]] = a {K1,K2} + b K2 + c2 K1 + d2",
        comm(k2, comm(k1, k2)) - (coeffs.a * acomm(k1, k2) + coeffs.b * k2 + coeffs.c2 * k1 + coeffs.d2 * I),
        op, info,
    )
    t0, t1, t2, t3 = pencil_tau(params, mu)
    _residual_check(rep, rw, "[Z,W] = Z^2 + Z", comm(Z, k1) - Z * Z - Z, op, info)
    _residual_check(
        rep, rw, "[W,V] = {V,Z} + tau1 W + V + tau2 Z + tau0",
        comm(k1, V) - (acomm(V, Z) + t1 * k1 + V + t2 * Z + t0 * I),
        op, info,
    )
    _residual_check(rep, rw, "[V,Z] = 2W + tau1 Z + tau3", comm(V, Z) - (2 * k1 + t1 * Z + t3 * I), op, info)
    if raise_on_fail:
        rep.raise_if_failed(EmbeddingViolated)
    return rep


@dataclass(frozen=True)
class RationalHahnCoefficients:
    """xi_1..xi_4 are scalars; xi_0 involves the Casimir and is a polynomial."""

    xi0: NCPolynomial
    xi1: Fraction
    xi2: Fraction
    xi3: Fraction
    xi4: Fraction


def rational_hahn_coefficients(params: AlgebraParams) -> RationalHahnCoefficients:
    p = params
    return RationalHahnCoefficients(
        xi0=Fraction(1, 2) * (p.eta3 * I - casimir(p)),
        xi1=p.eta1 + 1,
        xi2=p.eta0 + p.eta3 + 1,
        xi3=p.eta0 + p.eta1 + p.eta3 + 1,
        xi4=2 * p.eta3 + 1,
    )


def verify_rational_hahn_embedding(
    params: AlgebraParams,
    coeffs: Optional[RationalHahnCoefficients] = None,
    raise_on_fail: bool = True,
) -> Report:
    c = coeffs or rational_hahn_coefficients(params)
    rw = Rewriter(params)
    y = X * V
    info = params.as_dict()
    rep = Report()
    op = "verify_rational_hahn_embedding"
    _residual_check(rep, rw, "[Z,X] = Z^2 + Z", comm(Z, X) - Z * Z - Z, op, info)
    _residual_check(
        rep, rw, "[X,Y] = xi1 (X^2+Z^2) + {X,Z} + {Y,Z} + xi2 X + xi3 Z + Y + xi0",
        comm(X, y)
        - (c.xi1 * (X * X + Z * Z) + acomm(X, Z) + acomm(y, Z) + c.xi2 * X + c.xi3 * Z + y + c.xi0),
        op, info,
    )
    _residual_check(
        rep, rw, "[Y,Z] = 3X^2 + Z^2 + xi1 {X,Z} + xi4 X + xi2 Z + xi0",
        comm(y, Z) - (3 * X * X + Z * Z + c.xi1 * acomm(X, Z) + c.xi4 * X + c.xi2 * Z + c.xi0),
        op, info,
    )
    if raise_on_fail:
        rep.raise_if_failed(EmbeddingViolated)
    return rep


def tilde_tau(params: AlgebraParams, literal: bool = False) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    """(tau0, tau1, tau2, tau3) for Xt = X + Z + 1, Zt = Z, Vt = V.

    Xt is the pencil W at mu = 1 shifted by the identity, so tau1 = eta1 - 2;
    ``literal`` returns the variant with tau1 = 2 eta1 - 2.
    """
    p = params
    t1 = 2 * p.eta1 - 2 if literal else p.eta1 - 2
    return (2 + p.eta0 - p.eta1 - p.eta3, t1, 2 - 3 * p.eta1, p.eta3 - 2)


def verify_tilde_relations(params: AlgebraParams, literal: bool = False, raise_on_fail: bool = True) -> Report:
    rw = Rewriter(params)
    xt = X + Z + I
    t0, t1, t2, t3 = tilde_tau(params, literal)
    info = {**params.as_dict(), "tau1": fmt(t1)}
    rep = Report()
    op = "verify_tilde_relations"
    _residual_check(rep, rw, "[Zt,Xt] = Zt^2 + Zt", comm(Z, xt) - Z * Z - Z, op, info)
    _residual_check(
        rep, rw, "[Xt,V] = {V,Zt} + tau1 Xt + V + tau2 Zt + tau0",
        comm(xt, V) - (acomm(V, Z) + t1 * xt + V + t2 * Z + t0 * I),
        op, info,
    )
    _residual_check(rep, rw, "[V,Zt] = 2Xt + tau1 Zt + tau3", comm(V, Z) - (2 * xt + t1 * Z + t3 * I), op, info)
    if raise_on_fail:
        rep.raise_if_failed(EmbeddingViolated)
    return rep


def violating_params(rng: random.Random) -> AlgebraParams:
    """Random structure constants breaking one of eta6 = 1, eta7 = 1, eta5 = eta1."""
    base = random_standard_params(rng)
    which = rng.randrange(3)
    bump = random_rational(rng)
    if which == 0:
        return AlgebraParams(**{**_fields(base), "eta6": base.eta6 + bump})
    if which == 1:
        return AlgebraParams(**{**_fields(base), "eta7": base.eta7 + bump})
    return AlgebraParams(**{**_fields(base), "eta5": base.eta5 + bump})


def _fields(p: AlgebraParams) -> dict:
    return {name: getattr(p, name) for name in p.__dataclass_fields__}


def verify_algebra(params: AlgebraParams, mu: ScalarLike = 0, seed: int = 0, n_violating: int = 5,
                   confluence_len: int = 5, raise_on_fail: bool = True) -> Report:
    """Jacobi compatibility, confluence, potential, Casimir centrality and both embeddings."""
    info = params.as_dict()
    rep = Report()
    op = "verify_algebra"
    d = jacobi_defect(params)
    rep.add("ncalgebra", "jacobi_defect", "Jacobi defect vanishes", d.is_zero(), info, None if d.is_zero() else str(d))
    rng = random.Random(seed)
    for _ in range(n_violating):
        bad = violating_params(rng)
        dd = jacobi_defect(bad)
        rep.add("ncalgebra", "jacobi_defect", "Jacobi defect nonzero off the constraint set", not dd.is_zero(),
                bad.as_dict())
    fails = local_confluence_failures(params, confluence_len)
    rep.add("ncalgebra", op, f"overlaps up to length {confluence_len} resolve", not fails, info,
            ", ".join(fails[:5]) or None)
    rw = Rewriter(params)
    for g, dphi, rel in zip("VZX", potential_relations(params), relation_polynomials(params)):
        diff = rw.reduce(dphi - rel)
        rep.add("ncalgebra", "potential_relations", f"dPhi/d{g} equals its defining relation", (dphi - rel).is_zero(),
                info, None if diff.is_zero() else str(diff))
    q = casimir(params)
    for name, g in (("V", V), ("X", X), ("Z", Z)):
        _residual_check(rep, rw, f"[Q,{name}] = 0", comm(q, g), "casimir", info)
    rep.extend(verify_hahn_embedding(params, mu, raise_on_fail=False))
    rep.extend(verify_rational_hahn_embedding(params, raise_on_fail=False))
    rep.extend(verify_tilde_relations(params, raise_on_fail=False))
    if raise_on_fail:
        rep.raise_if_failed(RelationViolated)
    return rep
