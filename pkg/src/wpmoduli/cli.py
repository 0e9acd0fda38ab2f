"""Command-line front end.

    wpmoduli volume --g 1 --n 1 --x 2
    wpmoduli expect --split n11 --g 2 --L 1 --mode exact
    wpmoduli verify E[N] --g-sweep 100:1e6 --omega sqrtloglog
    wpmoduli thresholds --g 1e6 --eps 0.1

Exit codes: 0 success, 2 domain error, 3 budget error, 4 a verifier found a
hard failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import mpmath

from . import expectations as ex
from . import geometry as geo
from . import verify as ver
from .errors import DomainError, InvariantError, WPError
from .exactring import DEFAULT_PRECISION, qpi_eval
from .reports import fmt, write_csv, write_json
from .volumes import DEFAULT_BUDGET, VolumeCache, set_default_cache, volume_polynomial

FORMATS = ("csv", "json")


@dataclass(frozen=True)
class RunConfig:
    precision: int = DEFAULT_PRECISION
    budget: int = DEFAULT_BUDGET
    omega: str = ex.DEFAULT_OMEGA
    format: str = "csv"
    out: str | None = None
    mode: str = ex.EXACT

    def __post_init__(self):
        if self.precision < 10:
            raise DomainError("precision must be at least 10 digits")
        if self.budget < 3:
            raise DomainError("budget must be at least 3")
        if self.omega not in ex.OMEGA_CHOICES:
            raise DomainError(f"omega must be one of {ex.OMEGA_CHOICES}")
        if self.format not in FORMATS:
            raise DomainError(f"format must be one of {FORMATS}")
        if self.mode not in ex.MODES:
            raise DomainError(f"mode must be one of {ex.MODES}")


def _number(text: str):
    """Integers stay exact (also '1e6'); anything else becomes an mpf."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        # parsed well above any working precision so '0.1' stays 0.1 later
        with mpmath.workdps(200):
            v = +mpmath.mpf(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if v == int(v) and "e" in text.lower():
        return int(v)
    return v


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="decimal digits")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="largest 3g-3+n computed exactly")
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wpmoduli", description="Weil-Petersson volumes and random-surface length statistics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("volume", help="exact volume polynomial V_{g,n}")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=_number, nargs="*", default=None, help="boundary lengths to evaluate at")
    _common(p)

    p = sub.add_parser("expect", help="expected counts of separating multicurves")
    p.add_argument("--split", default="n11", help="n11, n03, pair, or g0,k for a two-piece split")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--L", type=_number, required=True)
    p.add_argument("--mode", choices=ex.MODES, default=ex.EXACT)
    _common(p)

    p = sub.add_parser("verify", help="run a lemma verifier and write its report")
    p.add_argument("lemma", help=", ".join(ver.LEMMAS))
    p.add_argument("--g-sweep", default=None, help="e.g. 100:1e6 (powers of ten) or 100,1000")
    p.add_argument("--omega", choices=ex.OMEGA_CHOICES, default=ex.DEFAULT_OMEGA)
    p.add_argument("--r", default=None, help="r range a:b for sum-vol and wr-prop")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--parts", default=None, help="boundary counts n_1,...,n_q")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--points", type=int, default=1000)
    _common(p)

    p = sub.add_parser("thresholds", help="table of the large-genus windows at one genus")
    p.add_argument("--g", type=_number, required=True)
    p.add_argument("--eps", type=_number, required=True)
    p.add_argument("--omega", choices=ex.OMEGA_CHOICES, default=ex.DEFAULT_OMEGA)
    _common(p)
    return parser


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table(rows, columns, cfg: RunConfig) -> str:
    if cfg.format == "json":
        return write_json(rows, columns)
    return write_csv(rows, columns)


def _value_text(poly) -> str:
    """V(0,...,0) as 'c' or 'c*pi^k' terms; the exact serializer is kept for the cache."""
    parts = []
    for k, q in sorted(poly.value().terms.items(), reverse=True):
        coef = str(q) if q.denominator == 1 else f"({q})"
        parts.append(f"{coef}*pi^{k}" if k else coef)
    return " + ".join(parts) or "0"


def cmd_volume(args, cfg: RunConfig) -> int:
    poly = volume_polynomial(args.g, args.n)
    row = {"g": args.g, "n": args.n, "polynomial": poly.to_text(), "value": _value_text(poly)}
    columns = ["g", "n", "polynomial", "value"]
    if args.x:
        row["x"] = " ".join(fmt(mpmath.mpf(t)) for t in args.x)
        row["evaluation"] = poly.evaluate(list(args.x), cfg.precision)
        columns += ["x", "evaluation"]
    else:
        row["numeric"] = qpi_eval(poly.value(), cfg.precision)
        columns.append("numeric")
    _emit(_table([row], columns, cfg), cfg)
    return 0


def _parse_split(text: str, g: int):
    if text == "n11":
        return ex.TopologySplit.one_handle(g)
    if text == "n03":
        return ex.TopologySplit.pants(g)
    try:
        g0, k = (int(t) for t in text.split(","))
    except ValueError:
        raise DomainError(f"split must be n11, n03, pair or g0,k; got {text!r}") from None
    return ex.TopologySplit.two_piece(g, g0, k)


def cmd_expect(args, cfg: RunConfig) -> int:
    if args.split == "pair":
        res = ex.expected_pair_disjoint(args.g, args.L, cfg.mode, cfg.precision)
    else:
        res = ex.expected_count(_parse_split(args.split, args.g), args.L, cfg.mode, cfg.precision)
    row = {"split": args.split, "g": args.g, "L": args.L, "mode": res.mode, "value": res.value, "leading": res.leading_term, "ratio": res.ratio, "note": res.note}
    _emit(_table([row], list(row), cfg), cfg)
    return 0


def _range(text: str | None):
    if not text:
        return None
    a, b = (int(t) for t in text.split(":"))
    return range(a, b + 1)


def cmd_verify(args, cfg: RunConfig) -> int:
    params = {
        "genera": ver.parse_sweep(args.g_sweep) if args.g_sweep else None,
        "omega": args.omega,
        "precision": cfg.precision,
        "r_range": _range(args.r),
        "q": args.q,
        "parts": [int(t) for t in args.parts.split(",")] if args.parts else None,
        "samples": args.samples,
        "points": args.points,
    }
    report = ver.run(args.lemma, **params)
    _emit(report.to_json() if cfg.format == "json" else report.to_csv(), cfg)
    sys.stderr.write(report.summary() + "\n")
    if report.hard_failure:
        raise InvariantError(f"{args.lemma}: {len(report.failures)} failing rows")
    return 0


def cmd_thresholds(args, cfg: RunConfig) -> int:
    rows = []
    with mpmath.workdps(cfg.precision):
        for name, win in geo.threshold_windows(args.g, args.eps, args.omega):
            rows.append({"window": name, "g": args.g, "eps": args.eps, "lower": win.lower, "upper": win.upper, "description": win.description})
    _emit(_table(rows, ["window", "g", "eps", "lower", "upper", "description"], cfg), cfg)
    return 0


COMMANDS = {"volume": cmd_volume, "expect": cmd_expect, "verify": cmd_verify, "thresholds": cmd_thresholds}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(args.precision, args.budget, getattr(args, "omega", ex.DEFAULT_OMEGA), args.format, args.out, getattr(args, "mode", ex.EXACT))
        if cfg.budget != DEFAULT_BUDGET:
            set_default_cache(VolumeCache(cfg.budget))
        with mpmath.workdps(cfg.precision):
            return COMMANDS[args.command](args, cfg)
    except WPError as err:
        sys.stderr.write(f"error: {err}\n")
        return err.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
