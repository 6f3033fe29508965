"""The ``qg`` command line tool.

Exit codes: 0 on success, 1 when a verification suite fails, 2 for usage or
parse errors and 3 when a request exceeds the computational capacity.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .algebra import (
    AlgebraError,
    CapacityError,
    Presentation,
    element_to_json,
    multiply,
    parse,
)
from .canonical import cb_element, dcb_index_text, dcb_indices, expand_in_dcb
from .cartan import CartanError, GammaDegree, box, build_cartan, parse_type
from .coeff import CoeffError, format_laurent
from .operators import (
    INVOLUTIONS,
    bar,
    braid,
    expand_pbw,
    format_pbw,
    hopf_pair,
    skew_derivation,
)
from .parsing import ParseError
from . import rankone, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# helpers


def _datum(args):
    text = args.type
    if text is None:
        return build_cartan("A", args.rank or 1)
    if any(ch.isdigit() for ch in text):
        datum = parse_type(text.upper())
        if args.rank is not None and args.rank != datum.rank:
            raise UsageError(f"--rank {args.rank} contradicts --type {text}")
        return datum
    if args.rank is None:
        raise UsageError("give the rank either in --type (A2) or with --rank")
    return build_cartan(text.upper(), args.rank)


def _pres(args, default="Uhat"):
    return Presentation(_datum(args), args.variant or default)


def _emit(args, text_lines, payload, rows=None, header=None):
    """Write text, JSON (--json [PATH]) or CSV (--csv) output."""
    if getattr(args, "json", None) is not None:
        data = json.dumps(payload, indent=2, sort_keys=True)
        if args.json == "-":
            print(data)
        else:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(data + "\n")
    elif getattr(args, "csv", False) and rows is not None:
        w = csv.writer(sys.stdout)
        if header:
            w.writerow(header)
        w.writerows(rows)
    else:
        for line in text_lines:
            print(line)


def _element_payload(x):
    return {"text": str(x), "element": element_to_json(x)}


def _vec(values, n, what):
    if values is None:
        return None
    if len(values) == 1:
        return (values[0],) * n
    if len(values) != n:
        raise UsageError(f"{what} needs 1 or {n} integers")
    return tuple(values)


# --------------------------------------------------------------------------
# commands


def cmd_normal_form(args):
    pres = _pres(args)
    x = parse(args.expr, pres)
    _emit(args, [str(x)], _element_payload(x))
    return EXIT_OK


def cmd_multiply(args):
    pres = _pres(args)
    x = pres.one()
    for text in args.exprs:
        x = multiply(x, parse(text, pres))
    _emit(args, [str(x)], _element_payload(x))
    return EXIT_OK


_APPLY = tuple(INVOLUTIONS) + ("braid", "braid-inverse", "derive")


def cmd_apply(args):
    op = args.op
    if op in ("braid", "braid-inverse"):
        pres = _pres(args, "Utilde")
        if pres.variant != "Utilde":
            raise UsageError("braid operators act on the Utilde variant")
        x = parse(args.expr, pres)
        for i in args.index or [1]:
            x = braid(x, i - 1, inverse=(op == "braid-inverse"))
    elif op == "derive":
        pres = _pres(args)
        x = parse(args.expr, pres)
        if not args.index or len(args.index) != 1:
            raise UsageError("derive needs exactly one --index")
        x = skew_derivation(args.index[0] - 1, x)
    else:
        pres = _pres(args)
        x = INVOLUTIONS[op](parse(args.expr, pres))
    _emit(args, [str(x)], _element_payload(x))
    return EXIT_OK


def cmd_pair(args):
    pres = _pres(args)
    value = hopf_pair(parse(args.y, pres), parse(args.x, pres))
    _emit(args, [str(value)], {"value": value.to_json(), "text": str(value)})
    return EXIT_OK


def _dcb_rows(datum, plus_bound, minus_bound):
    rows = []
    for plus in box(plus_bound):
        for minus in box(minus_bound):
            deg = GammaDegree(tuple(plus), tuple(minus))
            for idx in dcb_indices(datum, deg):
                rows.append((idx, cb_element(datum, idx)))
    rows.sort(key=lambda r: (sum(r[0].c) + sum(r[0].a) + 2 * sum(r[0].alpha + r[0].beta),
                             r[0].c, r[0].a, r[0].alpha, r[0].beta))
    return rows


def cmd_dcb(args):
    datum = _datum(args)
    n = datum.rank
    plus = _vec(args.wplus, n, "--wplus")
    minus = _vec(args.wminus, n, "--wminus")
    if args.bound is not None:
        if len(args.bound) != 2:
            raise UsageError("--bound takes two integers: the E-degree and F-degree bounds")
        plus = plus or (args.bound[0],) * n
        minus = minus or (args.bound[1],) * n
    plus = plus or (1,) * n
    minus = minus or (1,) * n
    if min(plus + minus) < 0:
        raise UsageError("degree bounds must be nonnegative")
    lines, payload, table = [], [], []
    for idx, x in _dcb_rows(datum, plus, minus):
        fixed = bar(x) == x
        label = dcb_index_text(idx)
        extra = {}
        if n == 1:
            p = rankone.from_index(idx)
            extra = {"v": list(p.v), "w": list(p.w)}
            label += f" = L{p.text()}"
        pbw = format_pbw(x)
        lines.append(f"{label}: {x}    [PBW: {pbw}; bar-fixed: {fixed}]")
        payload.append({"index": {"alpha": list(idx.alpha), "beta": list(idx.beta),
                                  "a": list(idx.a), "c": list(idx.c)},
                        "text": str(x), "pbw": pbw, "bar_fixed": fixed,
                        "element": element_to_json(x), **extra})
        table.append((label, str(x), pbw, fixed))
    _emit(args, lines, payload, table, ("index", "element", "pbw", "bar_fixed"))
    return EXIT_OK


def cmd_expand(args):
    pres = _pres(args)
    x = parse(args.expr, pres)
    if args.in_pbw:
        items = expand_pbw(x)
        lines = [format_pbw(x)]
        payload = [{"pbw": {"a": list(m.a), "c": list(m.c), "mu": list(m.mu), "nu": list(m.nu)},
                    "coeff": c.to_json()} for m, c in items]
        rows = [(list(m.a), list(m.c), list(m.mu), list(m.nu), str(c)) for m, c in items]
        _emit(args, lines, payload, rows, ("a", "c", "mu", "nu", "coefficient"))
        return EXIT_OK
    coords = expand_in_dcb(x)
    items = sorted(coords.items(), key=lambda kv: (kv[0].c, kv[0].a, kv[0].alpha, kv[0].beta))
    lines = [f"{dcb_index_text(idx)}: {c}" for idx, c in items] or ["0"]
    payload = [{"index": {"alpha": list(i.alpha), "beta": list(i.beta), "a": list(i.a), "c": list(i.c)},
                "coeff": c.to_json()} for i, c in items]
    rows = [(dcb_index_text(i), str(c)) for i, c in items]
    _emit(args, lines, payload, rows, ("index", "coefficient"))
    return EXIT_OK


def _pair_from(args):
    if args.v is None or args.w is None:
        raise UsageError("give --v V1 V2 and --w W1 W2")
    return rankone.Pair(args.v[0], args.v[1], args.w[0], args.w[1])


def _expansion_out(args, expansion):
    rows = [(p.v1, p.v2, p.w1, p.w2, format_laurent(c)) for p, c in sorted(expansion.items())]
    lines = [f"L{p.text()}: {format_laurent(c)}" for p, c in sorted(expansion.items())]
    payload = [{"v": [r[0], r[1]], "w": [r[2], r[3]], "coeff": c.to_json()}
               for r, c in zip(rows, (expansion[p] for p in sorted(expansion)))]
    _emit(args, lines, payload, rows, ("v1", "v2", "w1", "w2", "coefficient"))


def cmd_sl2(args):
    what = args.what
    if what == "L":
        x = rankone.L_closed_form(_pair_from(args))
        _emit(args, [str(x)], _element_payload(x))
    elif what == "pi":
        _expansion_out(args, rankone.pi_decompose(_pair_from(args)))
    elif what == "ef-expand":
        if len(args.nums) != 2:
            raise UsageError("ef-expand takes two integers a b")
        _expansion_out(args, rankone.ef_expand(*args.nums))
    elif what == "casimir":
        if len(args.nums) != 1:
            raise UsageError("casimir takes one integer m")
        x = rankone.casimir(args.nums[0])
        _emit(args, [str(x)], _element_payload(x))
    elif what == "dims":
        p = _pair_from(args)
        total, strata = rankone.dims(p)
        lines = [f"dim M = {total}"] + [
            f"stratum v'={s.v}: dim {s.stratum_dim}, defect {s.defect}, fiber dim {s.fiber_dim}"
            for s in strata]
        payload = {"variety_dim": total, "strata": [
            {"v": list(s.v), "stratum_dim": s.stratum_dim, "defect": s.defect,
             "fiber_dim": s.fiber_dim} for s in strata]}
        rows = [(s.v[0], s.v[1], s.stratum_dim, s.defect, s.fiber_dim) for s in strata]
        _emit(args, lines, payload, rows, ("v1", "v2", "stratum_dim", "defect", "fiber_dim"))
    return EXIT_OK


def cmd_verify(args):
    datum = _datum(args)
    bound = args.bound[0] if args.bound else None
    report = verify.run_suite(args.suite, datum, bound, args.seed)
    lines = [report.summary()] + [f"  {f}" for f in report.failures[:20]]
    _emit(args, lines, report.to_json())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_roots(args):
    datum = _datum(args)
    roots = datum.convex_roots()
    word = list(datum.longest_word)
    lines = [f"longest word: {' '.join(str(i + 1) for i in word)}"]
    lines += [f"beta_{k + 1} = {b}" for k, b in enumerate(roots)]
    _emit(args, lines, {"type": datum.label, "longest_word": [i + 1 for i in word],
                        "positive_roots": [list(b) for b in roots]})
    return EXIT_OK


# --------------------------------------------------------------------------
# argument parsing


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", help="Cartan type such as A2 or D4 (or a letter with --rank)")
    common.add_argument("--rank", type=int, help="rank, when --type is just a letter")
    common.add_argument("--variant", choices=("Uhat", "Utilde", "Hplus", "Hminus"),
                        help="presentation of the algebra (default Uhat)")
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", nargs="?", const="-", metavar="PATH",
                     help="JSON output, to stdout or to PATH")
    out.add_argument("--csv", action="store_true", help="CSV output where a table is produced")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised suites")

    parser = argparse.ArgumentParser(prog="qg", description="Computations in the Drinfeld double "
                                     "of a quantum group and its dual canonical basis.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normal-form", parents=[common], help="normalise an expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("multiply", parents=[common], help="multiply expressions left to right")
    p.add_argument("exprs", nargs="+")
    p.set_defaults(func=cmd_multiply)

    p = sub.add_parser("apply", parents=[common], help="apply an involution, braid operator or derivation")
    p.add_argument("op", choices=_APPLY)
    p.add_argument("expr")
    p.add_argument("--index", type=int, nargs="+", help="generator index (a word for braid operators)")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("pair", parents=[common], help="Hopf pairing (y, x) of y in U^- and x in U^+")
    p.add_argument("y")
    p.add_argument("x")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("dcb", parents=[common], help="list dual canonical basis elements")
    p.add_argument("--bound", type=int, nargs="+", help="E-degree and F-degree bounds")
    p.add_argument("--wplus", type=int, nargs="+", help="E-degree bound (per vertex or one value)")
    p.add_argument("--wminus", type=int, nargs="+", help="F-degree bound (per vertex or one value)")
    p.set_defaults(func=cmd_dcb)

    p = sub.add_parser("expand", parents=[common], help="expand in the dual canonical or PBW basis")
    p.add_argument("expr")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--in-dcb", action="store_true", help="dual canonical basis (default)")
    g.add_argument("--in-pbw", action="store_true", help="PBW basis")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("sl2", parents=[common], help="closed rank-one formulas")
    p.add_argument("what", choices=("L", "pi", "ef-expand", "casimir", "dims"))
    p.add_argument("nums", type=int, nargs="*")
    p.add_argument("--v", type=int, nargs=2)
    p.add_argument("--w", type=int, nargs=2)
    p.set_defaults(func=cmd_sl2)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", required=True, choices=verify.SUITES)
    p.add_argument("--bound", type=int, nargs=1, help="suite-specific size bound")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("roots", parents=[common], help="positive roots in convex order")
    p.set_defaults(func=cmd_roots)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ParseError, UsageError, CartanError, AlgebraError, CoeffError,
            rankone.RankOneError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
