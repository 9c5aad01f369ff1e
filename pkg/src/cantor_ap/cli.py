"""``cantor-ap`` command line.

Exit codes: 0 success, 1 verification failed / not good / check failed,
2 invalid input, 3 base case or refinement failed, 4 budget exceeded.
Documents are UTF-8 JSON carrying ``"format": "cantor-ap/1"``; sweep
tables are tab-separated with a header row.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
import warnings
from fractions import Fraction

from . import ap_finder, bounds, cantor, goodness
from .errors import (
    BaseCaseFailed,
    BudgetExceeded,
    InvalidInput,
    NoSuchGapLength,
    RefinementFailed,
)
from .exact_core import (
    ONE,
    ZERO,
    Interval,
    format_rational,
    parse_rational,
    translate_mod1,
)

FORMAT = ap_finder.FORMAT

# argparse itself exits with 2 on malformed flags, matching EXIT_INVALID.
EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_REFINE, EXIT_BUDGET = 0, 1, 2, 3, 4


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except InvalidInput as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _interval(text: str) -> Interval:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    try:
        return Interval(parse_rational(lo), parse_rational(hi))
    except InvalidInput as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    """``"3..10"``, ``"3,5,8"`` or a single integer."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return list(range(int(a), int(b) + 1))
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None


def _emit(doc: dict, out: str | None):
    text = json.dumps(doc, indent=2) + "\n"
    _write(text, out)


def _write(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".cantor-ap-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _family(args) -> goodness.TranslateFamily:
    if args.ap_d is not None:
        if args.translate:
            raise InvalidInput("give either --translate or --ap-d/--ap-len, not both")
        if args.ap_len is None:
            raise InvalidInput("--ap-d needs --ap-len")
        return goodness.TranslateFamily.arithmetic(args.ap_d, args.ap_len)
    return goodness.TranslateFamily.of(args.translate or [Fraction(0)])


def cmd_build(args) -> int:
    p = cantor.CantorParams(args.N)
    L = cantor.stage_for_delta(p, args.delta)
    a = args.translate if args.translate is not None else Fraction(0)
    if args.window is not None:
        s = cantor.approximant_in_window(p, args.delta, a, args.window)
    else:
        s = translate_mod1(cantor.global_approximant(p, args.delta, args.budget), a)
    window = args.window or Interval(ZERO, ONE)
    _emit({
        "format": FORMAT,
        "kind": "interval-set",
        "N": p.N,
        "delta": format_rational(args.delta),
        "stage": L,
        "translate": format_rational(a),
        "window": window.to_json(),
        "components": s.to_json(),
    }, args.out)
    if args.emit_gnuplot_intervals:
        lines = "".join(f"{float(c.lo)!r} {float(c.hi)!r}\n" for c in s)
        _write(lines, args.emit_gnuplot_intervals)
    return EXIT_OK


def _goodness_doc(p, fam, g: goodness.GoodnessResult) -> dict:
    doc = {"format": FORMAT, "kind": "goodness", "N": p.N}
    doc.update(fam.to_json())
    doc.update({
        "k": g.k,
        "interval": g.J.to_json(),
        "witness_count": g.witness_count,
        "threshold": g.threshold,
        "good": g.good,
        "witnesses": [w.to_json() for w in g.witness_intervals],
    })
    return doc


def cmd_good(args) -> int:
    p = cantor.CantorParams(args.N)
    fam = _family(args)
    g = goodness.is_k_good(p, fam, args.k, args.J)
    _emit(_goodness_doc(p, fam, g), args.out)
    return EXIT_OK if g.good else EXIT_FAIL


def _strategy(args) -> str:
    return "best" if args.best_block else "first"


def cmd_find(args) -> int:
    p = cantor.CantorParams(args.N)
    cert = ap_finder.find_common_point(p, _family(args), args.depth, _strategy(args))
    _write(cert.dumps(), args.out)
    return EXIT_OK


def cmd_find_ap(args) -> int:
    p = cantor.CantorParams(args.N)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        cert = ap_finder.find_ap(p, args.d, args.len, args.depth, _strategy(args))
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    _write(cert.dumps(), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        with open(args.cert, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidInput(f"cannot read certificate: {exc}") from exc
    cert = ap_finder.Certificate.loads(text)
    verdict = ap_finder.verify_certificate(cert)
    for s in verdict.steps:
        print(f"{'ok  ' if s.ok else 'FAIL'}\t{s.check}\t{s.detail}")
    if verdict.accepted:
        print("verdict: accepted")
        return EXIT_OK
    print(f"verdict: rejected at {verdict.first_failure.check}")
    return EXIT_FAIL


def _table(rows, columns) -> bool:
    print("\t".join(columns))
    ok = True
    for row in rows:
        ok &= row["ok"]
        print("\t".join(str(row[c]).lower() if c == "ok" else str(row[c]) for c in columns))
    return ok


def cmd_lemma_check(args) -> int:
    cols = ["N", "L", "k", "oracle_max", "bound", "ok"]
    for N in args.N:
        cantor.CantorParams(N)
    return EXIT_OK if _table(bounds.lemma_sweep(args.N, args.max_stage), cols) else EXIT_FAIL


def cmd_corollary_check(args) -> int:
    cols = ["N", "k", "L", "delta", "oracle_max", "bound", "ok"]
    for N in args.N:
        cantor.CantorParams(N)
    rows = bounds.corollary_sweep(args.N, args.k, args.min_delta, args.budget)
    return EXIT_OK if _table(rows, cols) else EXIT_FAIL


def cmd_dist(args) -> int:
    p = cantor.CantorParams(args.N)
    lower, upper, exact = cantor.distance_to_X(p, args.x, args.max_level)
    _emit({
        "format": FORMAT,
        "kind": "distance",
        "N": p.N,
        "x": format_rational(args.x),
        "max_level": args.max_level,
        "lower": format_rational(lower),
        "upper": format_rational(upper),
        "exact": exact,
    }, args.out)
    return EXIT_OK


def cmd_search(args) -> int:
    p = cantor.CantorParams(args.N)
    rep = ap_finder.empirical_max_length(p, args.d, args.depth, args.cap, _strategy(args))
    _emit({
        "format": FORMAT,
        "kind": "empirical-search",
        "empirical": True,
        "note": rep.note,
        "N": rep.N,
        "d": format_rational(rep.d),
        "depth": rep.depth,
        "length_cap": rep.length_cap,
        "theorem_floor": rep.theorem_floor,
        "max_verified_length": rep.max_verified,
        "monotone": rep.monotone,
        "outcomes": [
            {"length": o.length, "status": o.status, "detail": o.detail}
            for o in rep.outcomes
        ],
    }, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cantor-ap", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, out=True):
        sp.add_argument("--N", type=int, required=True)
        if out:
            sp.add_argument("--out", help="write the document here instead of stdout")

    def family(sp):
        sp.add_argument("--translate", type=_rational, action="append",
                        help="translate a_i as p/q (repeatable; default 0)")
        sp.add_argument("--ap-d", type=_rational, help="use the AP family 0, -d, -2d, ...")
        sp.add_argument("--ap-len", type=int)

    sp = sub.add_parser("build", help="approximant X_delta (+ a), global or windowed")
    common(sp)
    sp.add_argument("--delta", type=_rational, required=True)
    sp.add_argument("--window", type=_interval)
    sp.add_argument("--translate", type=_rational)
    sp.add_argument("--budget", type=int, default=2**16)
    sp.add_argument("--emit-gnuplot-intervals", metavar="PATH")
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("good", help="test whether J is k-good")
    common(sp)
    family(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--J", type=_interval, required=True)
    sp.set_defaults(func=cmd_good)

    sp = sub.add_parser("find", help="certified point common to the translates")
    common(sp)
    family(sp)
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("--best-block", action="store_true")
    sp.set_defaults(func=cmd_find)

    sp = sub.add_parser("find-ap", help="certified arithmetic progression")
    common(sp)
    sp.add_argument("--d", type=_rational, required=True)
    sp.add_argument("--len", type=int, required=True)
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("--best-block", action="store_true")
    sp.set_defaults(func=cmd_find_ap)

    sp = sub.add_parser("verify", help="independently recheck a certificate")
    sp.add_argument("--cert", required=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("lemma-check", help="sliding-window sweep against 2^(L-k-1)")
    sp.add_argument("--N", type=_int_list, required=True, help="e.g. 3..10 or 3,5,8")
    sp.add_argument("--max-stage", type=int, default=8)
    sp.set_defaults(func=cmd_lemma_check)

    sp = sub.add_parser("corollary-check", help="scaled-gap sweep against the 3*2^e bound")
    sp.add_argument("--N", type=_int_list, required=True)
    sp.add_argument("--k", type=_int_list, default=[0, 1, 2])
    sp.add_argument("--min-delta", type=_rational, default=Fraction(1, 64))
    sp.add_argument("--budget", type=int, default=2**16)
    sp.set_defaults(func=cmd_corollary_check)

    sp = sub.add_parser("dist", help="distance from x to the Cantor set")
    common(sp)
    sp.add_argument("--x", type=_rational, required=True)
    sp.add_argument("--max-level", type=int, default=64)
    sp.set_defaults(func=cmd_dist)

    sp = sub.add_parser("search", help="empirical longest certified AP up to a cap")
    common(sp)
    sp.add_argument("--d", type=_rational, required=True)
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("--cap", type=int, required=True)
    sp.add_argument("--best-block", action="store_true")
    sp.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InvalidInput, NoSuchGapLength) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (BaseCaseFailed, RefinementFailed) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFINE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
