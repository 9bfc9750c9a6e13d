"""Verification groups at one parameter point, shared by the CLI and the tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Optional

from . import analytic, matrix_reps, ncalgebra, pade, special
from .errors import MetaHahnError
from .exact import HypSpec, fmt, hyp, hyp_terms, is_integer, pochhammer
from .matrix_reps import RepParams, check_rep_params
from .report import Report


@dataclass(frozen=True)
class PointConfig:
    alpha: Fraction = Fraction(1, 3)
    beta: Fraction = Fraction(1, 2)
    N: int = 4
    mu: Fraction = Fraction(0)
    eta0: Optional[Fraction] = None
    eta1: Optional[Fraction] = None
    eta3: Optional[Fraction] = None
    seed: int = 0

    @property
    def rep(self) -> RepParams:
        return RepParams(self.alpha, self.beta, self.N, self.mu)

    @property
    def algebra(self) -> ncalgebra.AlgebraParams:
        """Explicit eta values win; otherwise the representation's central values."""
        if any(v is not None for v in (self.eta0, self.eta1, self.eta3)):
            return ncalgebra.AlgebraParams.standard(self.eta0 or 0, self.eta1 or 0, self.eta3 or 0)
        return self.rep.algebra


def exact_group(cfg: PointConfig) -> Report:
    """Pochhammer and terminating-series identities at the point."""
    a, b, N = cfg.alpha, cfg.beta, cfg.N
    info = {"alpha": fmt(a), "beta": fmt(b), "N": N}
    out = Report()
    op = "pochhammer"
    ok = pochhammer(a, 0) == 1 and all(pochhammer(a, k + 1) == pochhammer(a, k) * (a + k) for k in range(N + 1))
    out.add("exact_core", op, "(a)_0 = 1 and (a)_(k+1) = (a)_k (a+k)", ok, info)
    ok = all(pochhammer(-N, k) == 0 for k in range(N + 1, N + 3))
    out.add("exact_core", op, "(-N)_k = 0 for k > N", ok, info)
    op = "eval_terminating_hyp"
    c = b + N + 1  # keeps the lower parameter clear of non-positive integers
    ok = all(hyp([-n, a], [c]) == pochhammer(c - a, n) / pochhammer(c, n) for n in range(N + 1))
    out.add("exact_core", op, "Chu-Vandermonde 2F1(-n, a; c; 1) = (c-a)_n/(c)_n", ok, info)
    spec = HypSpec((-N, a), (c,), Fraction(1, 2))
    ok = sum(hyp_terms(spec), Fraction(0)) == hyp([-N, a], [c], Fraction(1, 2)) and len(hyp_terms(spec)) == N + 1
    out.add("exact_core", op, "series stops after N+1 terms", ok, info)
    return out


def algebra_group(cfg: PointConfig) -> Report:
    return ncalgebra.verify_algebra(cfg.algebra, mu=cfg.mu, seed=cfg.seed, raise_on_fail=False)


def representation_group(cfg: PointConfig) -> Report:
    return matrix_reps.verify_representation(cfg.rep, raise_on_fail=False)


def sl2_group(cfg: PointConfig) -> Report:
    return matrix_reps.verify_sl2_embedding(cfg.rep, raise_on_fail=False)


def bispectral_group(cfg: PointConfig) -> Report:
    p = cfg.rep
    out = Report()
    out.extend(special.verify_difference_realization(p, raise_on_fail=False))
    out.extend(special.verify_bispectrality_U(p, raise_on_fail=False))
    if any(p.alpha + 1 == n for n in range(p.N + 1)):
        out.add("special_fns", "verify_contiguity", "contiguity in alpha", True, p.as_dict(),
                info="skipped: alpha + 1 hits the grid")
    else:
        out.extend(special.verify_contiguity(p, raise_on_fail=False))
    out.extend(special.hahn_recurrence_check(p.alpha_hat, p.beta_hat, p.N, raise_on_fail=False))
    out.extend(analytic.verify_overlaps(p, raise_on_fail=False))
    out.extend(analytic.verify_vt_d_star(p))
    return out


def weights_group(cfg: PointConfig) -> Report:
    p = cfg.rep
    out = Report()
    out.extend(special.verify_weights(p, raise_on_fail=False))
    out.extend(analytic.verify_biorthogonality(p, raise_on_fail=False))
    out.extend(special.favard_signs(p))
    ah, bh = p.alpha_hat, p.beta_hat
    if special.hahn_degenerate(ah, bh, p.N) or special.hahn_degenerate(bh, ah, p.N):
        out.add("special_fns", "hahn_reflection_check", "n -> N-n reflection", True, p.as_dict(),
                info="skipped: Hahn parameters degenerate")
    else:
        for m in range(p.N + 1):
            out.add("special_fns", "hahn_reflection_check", f"m={m}: Q_m(n) = c_m Q_m(N-n) with hats swapped",
                    special.hahn_reflection_check(m, ah, bh, p.N), p.as_dict())
    return out


def appendix_a_group(cfg: PointConfig) -> Report:
    return analytic.verify_appendix_A(cfg.rep, raise_on_fail=False)


def appendix_b_group(cfg: PointConfig) -> Report:
    b = cfg.beta
    if is_integer(b):
        out = Report()
        out.add("pade_appx", "verify_appendix_B", "restricted transformations", True, {"beta": fmt(b)},
                info="skipped: beta is an integer")
        return out
    return pade.verify_appendix_B(b, max(cfg.N, 2), raise_on_fail=False)


GROUPS: Dict[str, Callable[[PointConfig], Report]] = {
    "algebra": algebra_group,
    "representation": representation_group,
    "bispectral": bispectral_group,
    "weights": weights_group,
    "sl2": sl2_group,
    "appendix-a": appendix_a_group,
    "appendix-b": appendix_b_group,
}

# groups that need an admissible representation point
NEEDS_REP = {"representation", "bispectral", "weights", "sl2", "appendix-a"}


def run_group(name: str, cfg: PointConfig) -> Report:
    if name == "all":
        out = exact_group(cfg)
        for g in GROUPS:
            out.extend(run_group(g, cfg))
        return out
    if name in NEEDS_REP:
        check_rep_params(cfg.rep)
        analytic.check_model_params(cfg.rep)
        if name in ("bispectral", "weights"):
            special.check_grid_params(cfg.rep)
    return GROUPS[name](cfg)


def random_point(seed: int, N: int) -> PointConfig:
    """Admissible (alpha, beta, mu) with small heights, by rejection."""
    rng = random.Random(seed)
    while True:
        a = ncalgebra.random_rational(rng, 1, 12)
        b = ncalgebra.random_rational(rng, 1, 12)
        mu = ncalgebra.random_rational(rng, 1, 12)
        cfg = PointConfig(a, b, N, mu, seed=seed)
        try:
            check_rep_params(cfg.rep)
            analytic.check_model_params(cfg.rep)
            special.check_grid_params(cfg.rep)
        except MetaHahnError:
            continue
        if is_integer(a) or is_integer(b) or is_integer(mu):
            continue
        return cfg
