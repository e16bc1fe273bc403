"""Batch command-line front end.

Every subcommand writes plain text by default.  With ``--format structured``
each result is one line of tab-separated ``key=value`` fields whose first
field is ``record=<kind>``; values never contain tabs or newlines.

Exit status: 0 on success, 1 on a domain error or a failed ``verify``,
2 on a usage error.
"""

from __future__ import annotations

import argparse
import inspect
import sys
from typing import Sequence

from .errors import OrderSeriesError
from .hstar import chain_to_hstar, ehrhart_expansion
from .identities import IDENTITIES
from .inverse import solve
from .oracle import ideal_lattice
from .poset import compact, eval_nonstrict, eval_strict, hasse, invariants, n_points, parse_expr
from .probability import NHGParams, format_fraction, nhg_expectation, nhg_normalization, nhg_pmf
from .series import ChainSeries, NonStrictSeries, expand, reciprocity


class _UsageError(Exception):
    pass


def _record(kind: str, **fields) -> str:
    return "\t".join([f"record={kind}"] + [f"{k}={v}" for k, v in fields.items()])


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(" ", "").strip("()").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _series_of(target: str, nonstrict: bool, size: int | None):
    """An expression or a series literal, returned as a (strict or non-strict) series."""
    if "[" in target or target.strip() == "0":
        if "w" in target:
            f = NonStrictSeries.parse(target, size=size)
            return f if nonstrict else None
        f = ChainSeries.parse(target)
        if nonstrict:
            return reciprocity(f, size if size is not None else (f.max_index or 0))
        return f
    e = parse_expr(target)
    return eval_nonstrict(e) if nonstrict else eval_strict(e)


def _cmd_eval(args, out):
    e = parse_expr(args.expr)
    f = eval_strict(e)
    if args.format == "structured":
        print(_record("eval", expr=compact(e), size=n_points(e), strict=f, nonstrict=eval_nonstrict(e)), file=out)
    elif args.nonstrict:
        print(eval_nonstrict(e), file=out)
    else:
        print(f, file=out)
    return 0


def _cmd_expand(args, out):
    f = _series_of(args.target, args.nonstrict, args.size)
    if f is None:
        raise _UsageError("a w[...] series can only be expanded with --nonstrict")
    coeffs = expand(f, args.to)
    if args.format == "structured":
        print(_record("expand", series=f, to=args.to, coefficients=",".join(map(str, coeffs))), file=out)
    else:
        print(",".join(map(str, coeffs)), file=out)
    return 0


def _cmd_hstar(args, out):
    if "[" in args.target:
        f = ChainSeries.parse(args.target)
        size = args.size if args.size is not None else (f.max_index or 0)
    else:
        e = parse_expr(args.target)
        f, size = eval_strict(e), n_points(e)
    h = chain_to_hstar(f, size)
    if args.format == "structured":
        fields = dict(series=f, size=size, hstar=h)
        if args.to is not None:
            fields["ehrhart"] = ",".join(map(str, ehrhart_expansion(h, args.to)))
        print(_record("hstar", **fields), file=out)
    else:
        print(h, file=out)
        if args.to is not None:
            print(",".join(map(str, ehrhart_expansion(h, args.to))), file=out)
    return 0


def _cmd_invariants(args, out):
    inv = invariants(parse_expr(args.expr))
    fields = dict(
        points=inv.n_points,
        max_chain=inv.max_chain,
        betti=inv.betti,
        components=inv.components,
        mu=inv.mu_count,
        dee=inv.dee_count,
        leaves=inv.leaf_count,
    )
    if args.format == "structured":
        print(_record("invariants", **fields), file=out)
    else:
        print(" ".join(f"{k}={v}" for k, v in fields.items()), file=out)
    return 0


def _cmd_solve(args, out):
    classes = solve(ChainSeries.parse(args.series), jobs=args.jobs, sp=args.sp, max_points=args.max_points)
    if args.format == "structured":
        for n, c in enumerate(classes):
            print(_record("class", index=n, series=c.series, size=len(c.expressions), members=" ".join(map(str, c.expressions))), file=out)
        if not classes:
            print(_record("none", series=ChainSeries.parse(args.series)), file=out)
    else:
        for c in classes:
            print(c, file=out)
        if not classes:
            print("no poset found", file=out)
    return 0


_RANGE_FLAGS = ("p_max", "q_max", "k_max", "n_max", "m_max", "v_max", "m_extra", "v_extra")


def _cmd_verify(args, out):
    names = list(IDENTITIES) if args.identity == "all" else [args.identity]
    given = {k: getattr(args, k) for k in _RANGE_FLAGS if getattr(args, k) is not None}
    ok = True
    for name in names:
        checker = IDENTITIES[name]
        accepted = inspect.signature(checker).parameters
        kwargs = {k: v for k, v in given.items() if k in accepted}
        if args.identity != "all" and len(kwargs) != len(given):
            bad = sorted(set(given) - set(kwargs))
            raise _UsageError(f"{name} does not take {', '.join('--' + b.replace('_', '-') for b in bad)}")
        report = checker(perturb=args.perturb, **kwargs)
        ok &= report.passed
        if args.format == "structured":
            fields = dict(identity=report.name, passed=str(report.passed).lower(), checked=report.checked, failures=report.failures)
            fields.update(report.ranges)
            if report.counterexample is not None:
                cx = report.counterexample
                fields.update(params=",".join(f"{k}:{v}" for k, v in cx.params).replace(" ", ""), lhs=cx.lhs, rhs=cx.rhs)
            print(_record("verify", **fields), file=out)
        else:
            print(report.line(), file=out)
    return 0 if ok else 1


def _cmd_nhg(args, out):
    p = NHGParams(args.sizes, args.draws)
    structured = args.format == "structured"
    if args.outcome is not None:
        q = format_fraction(nhg_pmf(p, args.outcome))
        print(_record("pmf", outcome=",".join(map(str, args.outcome)), p=q) if structured else q, file=out)
        return 0
    norm = format_fraction(nhg_normalization(p))
    print(_record("normalization", value=norm) if structured else f"normalization {norm}", file=out)
    for j in range(1, p.groups + 1):
        q = format_fraction(nhg_expectation(p, j))
        print(_record("expectation", group=j, value=q) if structured else f"E[v_{j}] {q}", file=out)
    return 0


def _cmd_oracle(args, out):
    e = parse_expr(args.expr)
    lattice = ideal_lattice(hasse(e))
    counts = lattice.nonstrict_counts(args.to) if args.nonstrict else lattice.strict_counts(args.to)
    if args.format == "structured":
        kind = "nonstrict" if args.nonstrict else "strict"
        print(_record("oracle", expr=compact(e), kind=kind, ideals=len(lattice.ideals), counts=",".join(map(str, counts))), file=out)
    else:
        print(",".join(map(str, counts)), file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "structured"), default="text")

    parser = argparse.ArgumentParser(prog="orderseries", description="Exact order series of series-parallel posets.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("eval", parents=[fmt], help="order series of a poset expression")
    p.add_argument("expr")
    p.add_argument("--nonstrict", action="store_true", help="print the non-strict series instead")
    p.set_defaults(run=_cmd_eval)

    p = sub.add_parser("expand", parents=[fmt], help="power-series coefficients x^0..x^N")
    p.add_argument("target", help="poset expression or series literal")
    p.add_argument("--to", type=int, required=True, metavar="N")
    p.add_argument("--nonstrict", action="store_true")
    p.add_argument("--size", type=int, help="|X| for a series literal (default: its top index)")
    p.set_defaults(run=_cmd_expand)

    p = sub.add_parser("hstar", parents=[fmt], help="h*-vector of a poset or strict series")
    p.add_argument("target")
    p.add_argument("--size", type=int)
    p.add_argument("--to", type=int, metavar="N", help="also print the Ehrhart expansion up to x^N")
    p.set_defaults(run=_cmd_hstar)

    p = sub.add_parser("invariants", parents=[fmt], help="structural invariants of a poset expression")
    p.add_argument("expr")
    p.set_defaults(run=_cmd_invariants)

    p = sub.add_parser("solve", parents=[fmt], help="all posets with a given strict series")
    p.add_argument("series")
    p.add_argument("--sp", action="store_true", help="search all series-parallel posets instead")
    p.add_argument("--max-points", type=int, default=9, metavar="K")
    p.add_argument("--jobs", type=int, default=1, metavar="J")
    p.set_defaults(run=_cmd_solve)

    p = sub.add_parser("verify", parents=[fmt], help="sweep a binomial identity")
    p.add_argument("identity", choices=["all"] + list(IDENTITIES))
    for flag in _RANGE_FLAGS:
        p.add_argument("--" + flag.replace("_", "-"), type=int, dest=flag)
    p.add_argument("--perturb", type=int, default=0, help="add this to every right-hand side")
    p.set_defaults(run=_cmd_verify)

    p = sub.add_parser("nhg", parents=[fmt], help="negative hypergeometric law")
    p.add_argument("sizes", type=_int_list, help="group sizes, e.g. 2,3,1")
    p.add_argument("--draws", type=int, required=True, metavar="W")
    p.add_argument("--outcome", type=_int_list, help="print the probability of these counts")
    p.set_defaults(run=_cmd_nhg)

    p = sub.add_parser("oracle", parents=[fmt], help="count maps by the ideal lattice")
    p.add_argument("expr")
    p.add_argument("--to", type=int, required=True, metavar="N")
    p.add_argument("--nonstrict", action="store_true")
    p.set_defaults(run=_cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name in ("to", "max_points", "jobs", "draws"):
        value = getattr(args, name, None)
        if value is not None and value < (1 if name == "jobs" else 0):
            print(f"orderseries {args.command}: error: --{name.replace('_', '-')} is out of range: {value}", file=sys.stderr)
            return 2
    try:
        return args.run(args, out)
    except _UsageError as exc:
        print(f"orderseries {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (OrderSeriesError, ValueError) as exc:
        print(f"orderseries {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
