"""Command-line front end.

    metahahn verify {algebra|representation|bispectral|weights|sl2|appendix-a|appendix-b|all}
    metahahn eval {hahn|rational}
    metahahn table {hahn|rational|overlaps|pade}
    metahahn dump {rep|overlaps}

Exit status: 0 when every check passed, 1 on a failed check, 2 on bad input
or a singular parameter.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from . import analytic, pade, special
from .errors import ConfigError, MetaHahnError, VerificationFailure
from .exact import fmt, parse_rational
from .matrix_reps import build_rep, check_rep_params, dump_rep
from .report import Report
from .sweeps import GROUPS, PointConfig, run_group

VERIFY_TARGETS = tuple(GROUPS) + ("all",)
FORMATS = ("json", "csv", "text")


@dataclass
class RunConfig:
    command: str
    target: str
    point: PointConfig
    format: str = "text"
    out: Optional[str] = None
    max_n: Optional[int] = None
    max: int = 8
    n: Optional[int] = None
    x: Optional[Fraction] = None
    alpha_hat: Optional[Fraction] = None
    beta_hat: Optional[Fraction] = None
    argv: List[str] = field(default_factory=list)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ConfigError as e:
        raise argparse.ArgumentTypeError(str(e))


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {v}")
    return v


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("parameters")
    g.add_argument("--alpha", type=_rational, default=Fraction(1, 3))
    g.add_argument("--beta", type=_rational, default=Fraction(1, 2))
    g.add_argument("--N", type=_nonneg_int, default=4)
    g.add_argument("--mu", type=_rational, default=Fraction(0))
    g.add_argument("--eta0", type=_rational)
    g.add_argument("--eta1", type=_rational)
    g.add_argument("--eta3", type=_rational)
    g.add_argument("--alpha-hat", dest="alpha_hat", type=_rational)
    g.add_argument("--beta-hat", dest="beta_hat", type=_rational)
    g.add_argument("--n", type=_nonneg_int)
    g.add_argument("--x", type=_rational)
    o = p.add_argument_group("output")
    o.add_argument("--format", choices=FORMATS, default=None)
    o.add_argument("--out", metavar="PATH")
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--max-n", dest="max_n", type=_nonneg_int,
                   help="verify: sweep N = 1..MAX_N instead of the single --N")
    o.add_argument("--max", type=_nonneg_int, default=8, help="largest m, n of the Pade table")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="metahahn", description="Exact verification of the meta-Hahn algebra and its special functions.")
    p.add_argument("--dump-rep", action="store_true", help="same as 'dump rep'")
    p.add_argument("--dump-overlaps", action="store_true", help="same as 'dump overlaps'")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    for name, targets in (
        ("verify", VERIFY_TARGETS),
        ("eval", ("hahn", "rational")),
        ("table", ("hahn", "rational", "overlaps", "pade")),
        ("dump", ("rep", "overlaps")),
    ):
        sp = sub.add_parser(name)
        sp.add_argument("target", choices=targets)
        _common(sp)
    return p


def parse_config(argv: Sequence[str]) -> RunConfig:
    argv = list(argv)
    parser = build_parser()
    # the --dump-* aliases take the parameter flags without a subcommand
    for flag, target in (("--dump-rep", "rep"), ("--dump-overlaps", "overlaps")):
        if flag in argv:
            rest = [a for a in argv if a != flag]
            argv = ["dump", target] + rest
            break
    ns = parser.parse_args(argv)
    if ns.command is None:
        raise ConfigError("missing command; try --help")
    point = PointConfig(ns.alpha, ns.beta, ns.N, ns.mu, ns.eta0, ns.eta1, ns.eta3, ns.seed)
    default_fmt = "text" if ns.command == "verify" else "json"
    return RunConfig(
        command=ns.command, target=ns.target, point=point, format=ns.format or default_fmt, out=ns.out,
        max_n=ns.max_n, max=ns.max, n=ns.n, x=ns.x, alpha_hat=ns.alpha_hat, beta_hat=ns.beta_hat, argv=argv,
    )


# -- serialisation ------------------------------------------------------------


def _point_meta(cfg: RunConfig) -> dict:
    p = cfg.point
    meta = {"alpha": fmt(p.alpha), "beta": fmt(p.beta), "N": p.N, "mu": fmt(p.mu), "seed": p.seed}
    for k in ("eta0", "eta1", "eta3"):
        v = getattr(p, k)
        if v is not None:
            meta[k] = fmt(v)
    return meta


def _render_report(rep: Report, cfg: RunConfig) -> str:
    if cfg.format == "json":
        return rep.to_json(command=f"{cfg.command} {cfg.target}", point=_point_meta(cfg)) + "\n"
    if cfg.format == "csv":
        return rep.to_csv()
    return rep.to_text()


def _matrix_csv(name: str, M) -> List[list]:
    return [[name, i] + [fmt(x) for x in row] for i, row in enumerate(M)]


def _render_tables(tables: dict, cfg: RunConfig, meta: Optional[dict] = None) -> str:
    """``tables`` maps a name to a list of rows of Fractions."""
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for name, M in tables.items():
            for row in _matrix_csv(name, M):
                w.writerow(row)
        return buf.getvalue()
    body = {**(meta or {}), **{k: [[fmt(x) for x in row] for row in M] for k, M in tables.items()}}
    if cfg.format == "text":
        lines = [f"{k}: {v}" for k, v in (meta or {}).items()]
        for name, M in tables.items():
            lines.append(f"{name}:")
            lines.extend("  " + " ".join(fmt(x) for x in row) for row in M)
        return "\n".join(lines) + "\n"
    return json.dumps(body, indent=2) + "\n"


# -- commands -----------------------------------------------------------------


def _verify(cfg: RunConfig) -> Report:
    if cfg.max_n is None:
        return run_group(cfg.target, cfg.point)
    out = Report()
    for N in range(1, cfg.max_n + 1):
        p = cfg.point
        out.extend(run_group(cfg.target, PointConfig(p.alpha, p.beta, N, p.mu, p.eta0, p.eta1, p.eta3, p.seed)))
    return out


def _hahn_params(cfg: RunConfig):
    ah = cfg.alpha_hat if cfg.alpha_hat is not None else cfg.point.rep.alpha_hat
    bh = cfg.beta_hat if cfg.beta_hat is not None else cfg.point.rep.beta_hat
    return ah, bh, cfg.point.N


def _eval(cfg: RunConfig) -> str:
    if cfg.n is None or cfg.x is None:
        raise ConfigError("eval needs --n and --x")
    N = cfg.point.N
    if cfg.n > N:
        raise ConfigError(f"degree n = {cfg.n} exceeds N = {N}")
    if cfg.target == "hahn":
        ah, bh, N = _hahn_params(cfg)
        val = special.hahn_Q(cfg.n, cfg.x, ah, bh, N)
    else:
        p = cfg.point
        val = special.rational_hahn(cfg.n, cfg.x, p.alpha, p.beta, N)
    if cfg.format == "json":
        return json.dumps({"target": cfg.target, "n": cfg.n, "x": fmt(cfg.x), "value": fmt(val)}) + "\n"
    return fmt(val) + "\n"


def _table(cfg: RunConfig) -> str:
    p = cfg.point
    N = p.N
    last = N if cfg.max_n is None else min(cfg.max_n, N)
    if cfg.target == "hahn":
        ah, bh, N = _hahn_params(cfg)
        special.check_hahn_params(ah, bh, N)
        rows = [[special.hahn_Q(n, x, ah, bh, N) for x in range(N + 1)] for n in range(last + 1)]
        meta = {"alpha_hat": fmt(ah), "beta_hat": fmt(bh), "N": N}
        return _render_tables({"Q": rows}, cfg, meta)
    if cfg.target == "rational":
        check_rep_params(p.rep)
        special.check_grid_params(p.rep)
        rows = [[special.rational_hahn(n, x, p.alpha, p.beta, N) for x in range(N + 1)] for n in range(last + 1)]
        return _render_tables({"U": rows}, cfg, {"alpha": fmt(p.alpha), "beta": fmt(p.beta), "N": N})
    if cfg.target == "overlaps":
        return _overlaps(cfg)
    beta = p.beta
    entries = pade.pade_table(beta, cfg.max, cfg.max)
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "n", "num", "den"])
        for e in entries:
            d = e.to_dict()
            w.writerow([d["m"], d["n"], " ".join(d["num"]), " ".join(d["den"])])
        return buf.getvalue()
    body = {"beta": fmt(beta), "entries": [e.to_dict() for e in entries]}
    if cfg.format == "text":
        return "".join(f"R_{e.m}{e.n}: num {' '.join(fmt(c) for c in e.numerator)} | den "
                       f"{' '.join(fmt(c) for c in e.denominator)}\n" for e in entries)
    return json.dumps(body, indent=2) + "\n"


def _overlaps(cfg: RunConfig) -> str:
    p = cfg.point.rep
    check_rep_params(p)
    analytic.check_model_params(p)
    tables = {k: analytic.overlap_table(k, p) for k in analytic.OVERLAP_KINDS}
    return _render_tables(tables, cfg)


def _dump(cfg: RunConfig) -> str:
    if cfg.target == "overlaps":
        return _overlaps(cfg)
    rep = build_rep(cfg.point.rep)
    d = dump_rep(rep)
    if cfg.format == "json":
        return json.dumps(d, indent=2) + "\n"
    tables = {"V": rep.V, "X": rep.X, "Z": rep.Z}
    return _render_tables(tables, cfg)


def _write(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(cfg: RunConfig) -> int:
    if cfg.command == "verify":
        try:
            rep = _verify(cfg)
        except VerificationFailure as e:
            rep = e.report or Report()
            if not rep.failures():
                rep.add("cli", "run", str(e), False)
        _write(_render_report(rep, cfg), cfg)
        return 0 if rep.passed else 1
    if cfg.command == "eval":
        text = _eval(cfg)
    elif cfg.command == "table":
        text = _table(cfg)
    else:
        text = _dump(cfg)
    _write(text, cfg)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
        return run(cfg)
    except VerificationFailure as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return 1
    except ConfigError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except MetaHahnError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
