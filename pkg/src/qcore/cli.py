"""
Command-line front end.

    qcore coeff "f5^20/f1^4" --max 4
    qcore verify identity rr-relation --order 300
    qcore verify claim "A(5,4; 25n+21) % 5^5 == 0"
    qcore verify suite paper-proved --order 3000 --json
    qcore mine --t 5 --k 1..4 --periods 5,25 --moduli 5,25,125
    qcore recurrence 12
    qcore oracle-check

Exit status: 0 when everything verified, 1 on a counterexample (or a skip
without --allow-skip), 2 on usage, parse or evaluation errors.
"""

import argparse
import json
import os
import sys

from . import congruences as C
from . import identities as I
from . import partitions as P
from ._kernels import backend_name
from .arith import prime_power
from .eta import ExprSyntaxError, eval_expr
from .report import dump_reports
from .series import EXACT, CoefficientRing, NonUnitError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def default_order():
    env = os.environ.get("QCORE_ORDER")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"QCORE_ORDER must be an integer, got {env!r}") from None
    return C.DEFAULT_ORDER


def parse_int_list(text):
    """'1..4' -> [1, 2, 3, 4]; '5,25' -> [5, 25]; mixed forms allowed."""
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None
    return out


def positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {v}")
    return v


# ---------------------------------------------------------------------------
# commands


def cmd_coeff(args, out):
    ring = EXACT if args.mod is None else CoefficientRing.mod(args.mod)
    order = args.order if args.order is not None else args.max + 1
    if order < args.max + 1:
        raise UsageError(f"--order {order} does not reach --max {args.max}")
    s = eval_expr(args.expr, ring, order)
    rows = [(n, s[n]) for n in range(args.min, args.max + 1)]
    if args.json:
        doc = {"expr": args.expr, "ring": str(ring), "order": order, "coefficients": [[n, str(c)] for n, c in rows]}
        print(json.dumps(doc, indent=2), file=out)
    else:
        for n, c in rows:
            print(f"{n}\t{c}", file=out)
    return EXIT_OK


def _exit_status(reports, allow_skip):
    if any(r.status == "counterexample" for r in reports):
        return EXIT_FAIL
    if not allow_skip and any(r.status == "skipped" for r in reports):
        return EXIT_FAIL
    return EXIT_OK


def _print_reports(reports, args, out, suite=None, extra=None):
    if args.json:
        print(dump_reports(reports, args.order_used, suite=suite, extra=extra), file=out)
        return
    for r in reports:
        print(r.text_line(), file=out)
        if args.verbose:
            if r.kind == "claim" and r.detail:
                shown = ", ".join(f"[{i}]={v}" for i, v in r.detail)
                print(f"    first checked coefficients: {shown}", file=out)
            for sub in r.detail if r.kind == "identity" else ():
                print("    " + sub.text_line(), file=out)
    if extra and extra.get("spot_check"):
        sc = extra["spot_check"]
        print(f"exact spot check of {sc['claim']} at order {sc['order']}: {'agree' if sc['agree'] else 'DISAGREE'}", file=out)
    counts = {s: sum(r.status == s for r in reports) for s in ("verified", "counterexample", "skipped")}
    print(
        f"{len(reports)} checked: {counts['verified']} verified, "
        f"{counts['counterexample']} counterexample, {counts['skipped']} skipped",
        file=out,
    )


def cmd_verify(args, out):
    detail = 5 if args.verbose else 0
    if args.what == "identity":
        args.order_used = args.order
        try:
            rep = I.verify_identity(args.target, args.order)
        except KeyError as e:
            raise UsageError(str(e.args[0])) from None
        if args.order_used is None:
            args.order_used = I.REGISTRY[args.target].default_order if args.target in I.REGISTRY else None
        _print_reports([rep], args, out)
        return _exit_status([rep], args.allow_skip)

    order = args.order if args.order is not None else default_order()
    args.order_used = order
    if args.what == "claim":
        try:
            claim = C.parse_claim(args.target)
        except C.ClaimSyntaxError as e:
            raise UsageError(str(e)) from None
        rep = C.verify_claim(claim, order, detail)
        _print_reports([rep], args, out)
        return _exit_status([rep], args.allow_skip)

    if args.target not in C.SUITES:
        raise UsageError(f"unknown suite {args.target!r}; choose from {', '.join(C.SUITES)}")
    res = C.run_suite(args.target, order, jobs=args.jobs, seed=args.seed, detail_count=detail)
    extra = {"spot_check": res.spot_check} if res.spot_check else None
    _print_reports(res.reports, args, out, suite=args.target, extra=extra)
    status = _exit_status(res.reports, args.allow_skip)
    if res.spot_check and not res.spot_check["agree"]:
        status = EXIT_FAIL
    return status


def cmd_mine(args, out):
    order = args.order if args.order is not None else default_order()
    for m in args.moduli:
        try:
            prime_power(m)
        except ValueError as e:
            raise UsageError(str(e)) from None
    t = None if args.partition else args.t
    found = C.mine(t, args.k, args.periods, args.moduli, order, args.min_hits)
    if args.json:
        doc = {
            "order": order,
            "min_hits": args.min_hits,
            "claims": [
                {"id": m.claim.id, "t": m.claim.t, "k": m.claim.k, "period": m.claim.period,
                 "residue": m.claim.residues[0], "modulus": m.claim.modulus, "hits": m.hits,
                 "proof_status": "mined"}
                for m in found
            ],
        }
        print(json.dumps(doc, indent=2), file=out)
    else:
        for m in found:
            print(f"{m.claim.id}\thits={m.hits}", file=out)
        print(f"{len(found)} mined", file=out)
    return EXIT_OK


def cmd_recurrence(args, out):
    if not 0 <= args.alpha_max <= I.MAX_ALPHA:
        raise UsageError(f"alpha_max must be in [0, {I.MAX_ALPHA}]")
    rows = I.recurrence_table(args.alpha_max)
    if args.json:
        print(json.dumps([r.to_dict() for r in rows], indent=2), file=out)
        return EXIT_OK
    for r in rows:
        s = r.state
        nu = ",".join(str(v) for v in r.valuations)
        print(
            f"alpha={s.alpha}\tA={s.A}\tB={s.B}\tC={s.C}\tD={s.D}\tnu5=({nu})"
            f"\ttheorem_bound_ok={r.theorem_bound_ok}\tpaper_display_ok={r.paper_display_ok}",
            file=out,
        )
    return EXIT_OK


def cmd_oracle_check(args, out):
    results = []
    for t in args.t:
        for k in args.k:
            oracle = P.tuple_counts_oracle(t, k, args.max_n, cap=args.cap)
            gf = P.tuple_counts_gf(t, k, args.max_n)
            results.append({"t": t, "k": k, "max_n": args.max_n, "agree": oracle.counts == gf.counts})
    if args.json:
        print(json.dumps({"results": results}, indent=2), file=out)
    else:
        for r in results:
            print(f"t={r['t']} k={r['k']} n<={r['max_n']}: {'agree' if r['agree'] else 'DISAGREE'}", file=out)
    return EXIT_OK if all(r["agree"] for r in results) else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="qcore", description="q-series congruence verifier")
    ap.add_argument("--backend", action="store_true", help="print the kernel backend and exit")
    sub = ap.add_subparsers(dest="command")

    c = sub.add_parser("coeff", help="print coefficients of an eta-quotient expression")
    c.add_argument("expr")
    c.add_argument("--max", type=int, default=10)
    c.add_argument("--min", type=int, default=0)
    c.add_argument("--order", type=positive_int)
    c.add_argument("--mod", type=int)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_coeff)

    v = sub.add_parser("verify", help="verify an identity, a claim or a suite")
    v.add_argument("what", choices=("identity", "claim", "suite"))
    v.add_argument("target")
    v.add_argument("--order", type=positive_int)
    v.add_argument("--json", action="store_true")
    v.add_argument("--jobs", type=positive_int, default=1)
    v.add_argument("--allow-skip", action="store_true")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--verbose", "-v", action="store_true")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("mine", help="search for vanishing residue classes")
    m.add_argument("--t", type=int, default=5)
    m.add_argument("--partition", action="store_true", help="mine 1/f1 (the partition function) instead")
    m.add_argument("--k", type=parse_int_list, default=[1, 2, 3, 4])
    m.add_argument("--periods", type=parse_int_list, default=[5, 25])
    m.add_argument("--moduli", type=parse_int_list, default=[5, 25, 125])
    m.add_argument("--order", type=positive_int)
    m.add_argument("--min-hits", type=positive_int, default=C.DEFAULT_MIN_HITS)
    m.add_argument("--json", action="store_true")
    m.set_defaults(func=cmd_mine)

    r = sub.add_parser("recurrence", help="A/B/C/D recurrence table with 5-adic valuations")
    r.add_argument("alpha_max", type=int, nargs="?", default=12)
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_recurrence)

    o = sub.add_parser("oracle-check", help="compare brute-force t-core counts with the generating function")
    o.add_argument("--t", type=parse_int_list, default=[2, 3, 5, 7])
    o.add_argument("--k", type=parse_int_list, default=[1, 2, 3, 4])
    o.add_argument("--max-n", type=int, default=15)
    o.add_argument("--cap", type=int, default=P.DEFAULT_CAP)
    o.add_argument("--json", action="store_true")
    o.set_defaults(func=cmd_oracle_check)
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    if args.backend:
        print(backend_name(), file=out)
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, ExprSyntaxError, NonUnitError, P.EnumerationCapError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main_entry():
    sys.exit(main())
