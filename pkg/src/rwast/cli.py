"""rwast command line: sample RWAs, tabulate transforms, run checks.

Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from fractions import Fraction
from typing import Sequence

from . import rwa, transforms
from .distributions import (
    CompositionSpec,
    IntervalBeta,
    PowerSemicircleParams,
    arcsine,
    ps_to_beta,
    uniform,
    wigner,
)
from .errors import ConvergenceError, DomainError
from .rng import DEFAULT_SEED, SEED_ENV_VAR, make_rng
from .verification import DEFAULT_SUITE, UnknownCheck, VerifyConfig, run_checks

DIST_HELP = "beta:p,q[:a,b] | ps:theta,sigma | uniform:a,b | arcsine:a,b | wigner:sigma"


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _nums(text: str) -> list[float]:
    return [float(Fraction(t)) for t in text.split(",") if t.strip()]


def parse_dist(text: str) -> IntervalBeta:
    """Parse the distribution flag grammar into an interval beta law."""
    kind, _, rest = text.partition(":")
    fields = rest.split(":") if rest else []
    try:
        if kind == "beta":
            p, q = _nums(fields[0])
            a, b = _nums(fields[1]) if len(fields) > 1 else (0.0, 1.0)
            if len(fields) > 2:
                raise ValueError("too many fields")
            return IntervalBeta(p, q, a, b)
        (args,) = fields
        vals = _nums(args)
        if kind == "ps":
            theta, sigma = vals
            return ps_to_beta(PowerSemicircleParams(theta, sigma))
        if kind == "uniform":
            return uniform(*vals)
        if kind == "arcsine":
            return arcsine(*vals)
        if kind == "wigner":
            (sigma,) = vals
            return wigner(sigma)
    except (ValueError, TypeError, ZeroDivisionError, IndexError) as exc:
        raise DomainError(f"bad distribution {text!r}: {exc}") from exc
    raise DomainError(f"unknown distribution family in {text!r}; expected {DIST_HELP}")


def parse_spec(text: str) -> CompositionSpec:
    """``n`` selects every cut (the plain S_n); ``n:c1,c2,...`` selects cuts."""
    n_text, sep, cuts_text = text.partition(":")
    try:
        n = int(n_text)
        if not sep:
            return CompositionSpec.all_cuts(n)
        return CompositionSpec(n, tuple(int(c) for c in cuts_text.split(",") if c))
    except ValueError as exc:
        raise DomainError(f"bad composition spec {text!r}: {exc}") from exc


def _default_seed() -> int:
    env = os.environ.get(SEED_ENV_VAR)
    return int(env) if env else DEFAULT_SEED


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _csv(rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def cmd_sample(args) -> int:
    inputs = [parse_dist(t) for t in args.input]
    if args.dirichlet:
        problem = rwa.RwaProblem.from_blocks(_nums(args.dirichlet), inputs)
        path = "dirichlet"
    else:
        spec = parse_spec(args.spec or "1")
        problem = rwa.RwaProblem.from_spec(spec, inputs)
        path = args.path
    rng = make_rng(args.seed, "sample")
    values = rwa.sample_rwa(problem, path, rng, args.n)
    _write(args.output, _csv([["value"], *([_fmt(v)] for v in values)]))
    return 0


def cmd_ast(args) -> int:
    dist = parse_dist(args.dist)
    d = args.order
    zs = [float(Fraction(z)) for z in args.z] if args.z else transforms.z_grid(
        dist.bound, args.points).tolist()
    closed = transforms.closed_form_for(dist, d)
    rows = [["z", "closed_form", "quadrature", "moment_series", "max_pairwise_diff"]]
    for z in zs:
        q = transforms.AstQuery(dist, d, z)
        vals = [
            closed(z) if closed is not None else None,
            transforms.ast_quadrature(q).value,
            transforms.ast_moment_series(q).value,
        ]
        present = [v for v in vals if v is not None]
        spread = max(present) - min(present)
        rows.append([_fmt(z), *("" if v is None else _fmt(v) for v in vals), _fmt(spread)])
    _write(args.output, _csv(rows))
    return 0


def cmd_verify(args) -> int:
    names = list(DEFAULT_SUITE) if args.all else list(args.check)
    if not names:
        raise UnknownCheck("name a check with --check or pass --all")
    config = VerifyConfig(sample_count=args.samples, alpha=args.alpha)
    reports = run_checks(names, config, args.seed, workers=args.workers)
    lines = [line for r in reports for line in r.lines()]
    _write(args.output, "".join(line + "\n" for line in lines))
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rwast",
        description="Randomly weighted averages of beta laws and their additive "
        "Stieltjes transforms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=_seed, default=_default_seed(),
                       help=f"master seed (default ${SEED_ENV_VAR} or {DEFAULT_SEED})")
        p.add_argument("-o", "--output", default="-", help="output file ('-' for stdout)")

    p = sub.add_parser("sample", help="draw S = sum_j V_j X_j to a one-column CSV")
    p.add_argument("--spec", help="composition 'n' (all cuts) or 'n:c1,c2,...'")
    p.add_argument("--dirichlet", metavar="R1,R2,...",
                   help="Dirichlet block sizes instead of --spec (any positive reals)")
    p.add_argument("--input", action="append", required=True, metavar="DIST",
                   help=f"one input law per block: {DIST_HELP}")
    p.add_argument("--n", type=int, default=1000, help="number of draws")
    p.add_argument("--path", choices=("order_statistics", "dirichlet"),
                   default="order_statistics", help="weight construction for --spec")
    common(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("ast", help="tabulate the transform by every available route")
    p.add_argument("--dist", required=True, help=DIST_HELP)
    p.add_argument("--order", type=float, default=1.0, help="transform order d > 0")
    p.add_argument("--z", action="append", help="evaluation point (repeatable)")
    p.add_argument("--points", type=int, default=21,
                   help="size of the default symmetric z-grid")
    common(p)
    p.set_defaults(func=cmd_ast)

    p = sub.add_parser("verify", help="run theorem and example checks")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--check", action="append", default=[],
                   help="check name, e.g. thm3.1:r=1,2 or example4.2:m=2 (repeatable)")
    g.add_argument("--all", action="store_true", help="run the default suite")
    p.add_argument("--samples", type=int, default=100_000, help="Monte Carlo draws per check")
    p.add_argument("--alpha", type=float, default=1e-3, help="KS significance level")
    p.add_argument("--workers", type=int, default=4, help="checks run concurrently")
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", 1) < 1 or getattr(args, "samples", 1) < 1:
        parser.error("sample counts must be positive")
    if not 0 < getattr(args, "alpha", 0.5) < 1:
        parser.error("--alpha must lie in (0, 1)")
    if getattr(args, "workers", 1) < 1:
        parser.error("--workers must be at least 1")
    try:
        return args.func(args)
    except (DomainError, ConvergenceError) as exc:
        print(f"rwast {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
