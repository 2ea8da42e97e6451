"""Command-line surface.

Subcommands: represent, witness, check, oracle, scan, selftest.  All
output is deterministic for fixed arguments: JSON objects use a pinned
field order, scan CSV uses a pinned header, and line endings are LF.

Exit codes: 0 success/representable, 1 obstructed or not representable,
2 outside the covered cases, 3 internal error, 4 usage error, 5 resource
cap hit.
"""

import argparse
import json
import sys

from .descent import represent_binary
from .errors import InternalError, NotRepresentableError, ResourceCapError
from .forms import Eligibility, FORM_BY_NAME, TernaryForm, eligibility, evaluate
from .oracle import brute_force_binary, brute_force_ternary, scan_compare
from .pipeline import (
    DEFAULT_CANDIDATE_CAP,
    Witness,
    build_witness,
    verify_witness,
)

__all__ = ["main", "dispatch"]

EXIT_OK = 0
EXIT_OBSTRUCTED = 1
EXIT_OUTSIDE = 2
EXIT_INTERNAL = 3
EXIT_USAGE = 4
EXIT_RESOURCE_CAP = 5

_VERDICT_EXIT = {
    Eligibility.OBSTRUCTED: EXIT_OBSTRUCTED,
    Eligibility.OUTSIDE_COVERED_CASES: EXIT_OUTSIDE,
}

_FALLBACK_FORMS = (TernaryForm.D113, TernaryForm.D117)

# Marker used in the "case" slot when a representation came from the
# brute-force fallback rather than the constructive pipeline.
ORACLE_CASE = "ORACLE"


class _Parser(argparse.ArgumentParser):
    """argparse maps its own errors to exit code 2; the contract says 4."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def _equation(form: TernaryForm, m: int, rep) -> str:
    parts = []
    for coeff, value in zip(form.coefficients, rep):
        if coeff == 1:
            parts.append("%d^2" % value)
        else:
            parts.append("%d*%d^2" % (coeff, value))
    return "%d = %s" % (m, " + ".join(parts))


def _json_fields(form, m, *, eligible, verdict, case=None, k=None, s=None,
                 core=None, q=None, t=None, b=None, h=None, point=None,
                 r=None, binary_value=None, binary_rep=None,
                 representation=None, verified=False) -> dict:
    return {
        "form": form.cli_name,
        "m": m,
        "eligible": eligible,
        "verdict": verdict,
        "case": case,
        "k": k,
        "s": s,
        "core": core,
        "q": q,
        "t": t,
        "b": b,
        "h": h,
        "point": None if point is None else list(point),
        "R": r,
        "binary_value": binary_value,
        "binary_rep": None if binary_rep is None else list(binary_rep),
        "representation": None if representation is None else list(representation),
        "verified": verified,
    }


def _witness_fields(w: Witness) -> dict:
    return _json_fields(
        w.form, w.m,
        eligible=True,
        verdict=Eligibility.ELIGIBLE.value,
        case=w.case_id,
        k=w.k, s=w.s, core=w.core,
        q=w.q, t=w.t, b=w.b, h=w.h,
        point=w.point, r=w.r1,
        binary_value=w.n, binary_rep=w.binary,
        representation=w.representation,
        verified=verify_witness(w),
    )


def _emit_json(out, fields: dict) -> None:
    out.write(json.dumps(fields, indent=2) + "\n")


def _emit_trail(out, fields: dict) -> None:
    for key, value in fields.items():
        if isinstance(value, list):
            value = "(%s)" % ", ".join(str(v) for v in value)
        elif isinstance(value, bool):
            value = "true" if value else "false"
        elif value is None:
            value = "-"
        out.write("%s: %s\n" % (key, value))


def _cmd_represent(args, out, err, trail: bool) -> int:
    form = FORM_BY_NAME[args.form]
    if args.fallback_oracle and form not in _FALLBACK_FORMS:
        err.write("--fallback-oracle applies only to x2+y2+3z2 and x2+y2+7z2\n")
        return EXIT_USAGE

    result = build_witness(form, args.m, args.max_prime_candidates)
    if isinstance(result, Witness):
        fields = _witness_fields(result)
        if not fields["verified"]:
            err.write("witness failed verification\n")
            return EXIT_INTERNAL
        if args.json:
            _emit_json(out, fields)
        elif trail:
            _emit_trail(out, fields)
        else:
            out.write(_equation(form, args.m, result.representation) + "\n")
        return EXIT_OK

    verdict = result
    rep = None
    if args.fallback_oracle and verdict.kind is Eligibility.OUTSIDE_COVERED_CASES:
        rep = brute_force_ternary(form, args.m)
    fields = _json_fields(
        form, args.m,
        eligible=False,
        verdict=verdict.kind.value,
        case=ORACLE_CASE if rep is not None else None,
        representation=rep,
        verified=rep is not None and evaluate(form, rep) == args.m,
    )
    if args.json:
        _emit_json(out, fields)
    elif trail:
        _emit_trail(out, fields)
    elif rep is not None:
        out.write(_equation(form, args.m, rep) + "\n")
    else:
        out.write("%s: %d %s\n" % (verdict.kind.value, args.m, verdict.detail))
    if rep is not None:
        return EXIT_OK
    if args.fallback_oracle and verdict.kind is Eligibility.OUTSIDE_COVERED_CASES:
        return EXIT_OBSTRUCTED
    return _VERDICT_EXIT[verdict.kind]


def _cmd_check(args, out, err) -> int:
    form = FORM_BY_NAME[args.form]
    verdict = eligibility(form, args.m)
    if args.json:
        _emit_json(out, {
            "form": form.cli_name,
            "m": args.m,
            "eligible": verdict.eligible,
            "verdict": verdict.kind.value,
            "detail": verdict.detail,
        })
    else:
        out.write("%s: %d %s\n" % (verdict.kind.value, args.m, verdict.detail))
    if verdict.eligible:
        return EXIT_OK
    return _VERDICT_EXIT[verdict.kind]


def _cmd_oracle(args, out, err) -> int:
    form = FORM_BY_NAME[args.form]
    rep = brute_force_ternary(form, args.m)
    if args.json:
        _emit_json(out, {
            "form": form.cli_name,
            "m": args.m,
            "found": rep is not None,
            "representation": None if rep is None else list(rep),
        })
    elif rep is None:
        out.write("no representation: %d\n" % args.m)
    else:
        out.write(_equation(form, args.m, rep) + "\n")
    return EXIT_OK if rep is not None else EXIT_OBSTRUCTED


def _cmd_scan(args, out, err) -> int:
    if not 1 <= args.lo <= args.hi:
        err.write("scan requires 1 <= LO <= HI\n")
        return EXIT_USAGE
    form = FORM_BY_NAME[args.form]
    report = scan_compare(form, args.lo, args.hi,
                          jobs=args.jobs,
                          max_candidates=args.max_prime_candidates)
    if args.json:
        lines = []
        for row in report.rows:
            x, y, z = row.representation if row.representation else (None, None, None)
            lines.append(json.dumps({
                "m": row.m,
                "verdict": row.verdict,
                "pipeline_found": row.pipeline_found,
                "oracle_found": row.oracle_found,
                "agree": row.agree,
                "x": x, "y": y, "z": z,
                "q": row.q,
                "elapsed_micros": row.elapsed_micros,
            }))
        text = "[\n" + ",\n".join(lines) + "\n]\n" if lines else "[]\n"
    else:
        text = report.to_csv()
    if args.out is None:
        out.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    if not report.all_agree:
        err.write("scan found disagreement rows\n")
        return EXIT_INTERNAL
    if report.any_capped:
        err.write("scan hit the prime-candidate cap on some rows\n")
        return EXIT_RESOURCE_CAP
    return EXIT_OK


def _selftest_suites():
    def golden():
        w = build_witness(TernaryForm.D122, 3)
        return (isinstance(w, Witness) and w.q == 73 and w.t == 1
                and w.b == 17 and w.h == 2 and w.point == (1, -4, -2)
                and w.r1 == -1 and w.n == 1 and w.binary == (1, 0)
                and w.representation == (1, 0, 1) and verify_witness(w))

    def scans():
        for form in TernaryForm:
            if not scan_compare(form, 1, 120).all_agree:
                return False
        return True

    def descent():
        for c in (2, 3, 7):
            for n in range(500):
                try:
                    a, beta = represent_binary(n, c)
                    found = (a * a + c * beta * beta == n)
                except NotRepresentableError:
                    found = False
                if found != (brute_force_binary(c, n) is not None):
                    return False
        return True

    def audits():
        for form in TernaryForm:
            for m in range(1, 120):
                w = build_witness(form, m)
                if isinstance(w, Witness) and not verify_witness(w):
                    return False
        return True

    return [("golden fixture", golden), ("oracle scans", scans),
            ("binary descent", descent), ("witness audits", audits)]


def _cmd_selftest(args, out, err) -> int:
    failed = False
    for name, suite in _selftest_suites():
        ok = suite()
        out.write("%s: %s\n" % (name, "ok" if ok else "FAIL"))
        failed = failed or not ok
    return EXIT_INTERNAL if failed else EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ternrep",
                     description="Constructive representation by the ternary "
                                 "forms x^2+2y^2+2z^2, x^2+y^2+2z^2, "
                                 "x^2+y^2+3z^2 and x^2+y^2+7z^2.")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)
    forms = sorted(FORM_BY_NAME)

    def add_form_m(p):
        p.add_argument("--form", required=True, choices=forms)
        p.add_argument("--m", required=True, type=int)

    p_rep = sub.add_parser("represent", help="construct one representation")
    add_form_m(p_rep)
    p_rep.add_argument("--json", action="store_true")
    p_rep.add_argument("--fallback-oracle", action="store_true")
    p_rep.add_argument("--max-prime-candidates", type=int,
                       default=DEFAULT_CANDIDATE_CAP, metavar="N")

    p_wit = sub.add_parser("witness", help="represent with the full audit trail")
    add_form_m(p_wit)
    p_wit.add_argument("--json", action="store_true")
    p_wit.add_argument("--fallback-oracle", action="store_true")
    p_wit.add_argument("--max-prime-candidates", type=int,
                       default=DEFAULT_CANDIDATE_CAP, metavar="N")

    p_chk = sub.add_parser("check", help="eligibility only")
    add_form_m(p_chk)
    p_chk.add_argument("--json", action="store_true")

    p_orc = sub.add_parser("oracle", help="brute force only")
    add_form_m(p_orc)
    p_orc.add_argument("--json", action="store_true")

    p_scan = sub.add_parser("scan", help="compare pipeline and oracle over a range")
    p_scan.add_argument("--form", required=True, choices=forms)
    p_scan.add_argument("--lo", required=True, type=int)
    p_scan.add_argument("--hi", required=True, type=int)
    p_scan.add_argument("--json", action="store_true")
    p_scan.add_argument("--out", metavar="FILE")
    p_scan.add_argument("--jobs", type=int, default=1, metavar="N")
    p_scan.add_argument("--max-prime-candidates", type=int,
                        default=DEFAULT_CANDIDATE_CAP, metavar="N")

    sub.add_parser("selftest", help="run the invariant suites")
    return parser


def dispatch(argv, out=None, err=None) -> int:
    """Parse argv (no program name) and run one command.

    Returns the exit code instead of raising SystemExit so the function
    is directly testable.
    """
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        if args.command in ("represent", "witness"):
            if args.m < 1:
                err.write("--m must be at least 1\n")
                return EXIT_USAGE
            if args.max_prime_candidates < 1:
                err.write("--max-prime-candidates must be at least 1\n")
                return EXIT_USAGE
            return _cmd_represent(args, out, err, trail=args.command == "witness")
        if args.command == "check":
            if args.m < 1:
                err.write("--m must be at least 1\n")
                return EXIT_USAGE
            return _cmd_check(args, out, err)
        if args.command == "oracle":
            if args.m < 0:
                err.write("--m must be nonnegative\n")
                return EXIT_USAGE
            return _cmd_oracle(args, out, err)
        if args.command == "scan":
            if args.jobs < 1:
                err.write("--jobs must be at least 1\n")
                return EXIT_USAGE
            return _cmd_scan(args, out, err)
        if args.command == "selftest":
            return _cmd_selftest(args, out, err)
        err.write("unknown command %r\n" % args.command)
        return EXIT_USAGE
    except ResourceCapError as exc:
        err.write("resource cap: %s\n" % exc)
        return EXIT_RESOURCE_CAP
    except InternalError as exc:
        err.write("internal error: %s\n" % exc)
        return EXIT_INTERNAL
    except Exception as exc:  # no stack traces on the CLI surface
        err.write("internal error: %s: %s\n" % (type(exc).__name__, exc))
        return EXIT_INTERNAL


def main(argv=None) -> int:
    return dispatch(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
