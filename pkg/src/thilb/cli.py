"""Command-line entry point: ``thilb coeffs``, ``thilb closure`` and ``thilb verify-paper``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .groebner import BudgetExceeded
from .report import WHICH, analyze, build_problem, closure_of_power, render_text, to_json
from .ringspec import SpecError, load_spec

EXIT_OK, EXIT_VALIDATION, EXIT_BUDGET, EXIT_GOLDEN = 0, 2, 3, 4


def _resolve(path: str):
    p = Path(path)
    if p.exists():
        return p
    from .verify import bundled_path

    try:
        return bundled_path(path)
    except KeyError:
        raise SpecError(f"no such ring file: {path}") from None


def _problem(path: str):
    return build_problem(load_spec(_resolve(path)))


def cmd_coeffs(args) -> int:
    prob = _problem(args.spec)
    closures = None
    if args.closure:
        closures = [c.strip() for c in args.closure.split(",") if c.strip()]
    report = analyze(prob, closures=closures, n_max=args.n_max, e_bound=args.e_bound)
    sys.stdout.write(to_json(report) + "\n" if args.json else render_text(report))
    return EXIT_OK


def cmd_closure(args) -> int:
    prob = _problem(args.spec)
    tag = WHICH[args.which]
    if tag == "limit" and args.n != 1:
        raise SpecError("the limit closure is defined for the parameter ideal itself; use --n 1")
    res = closure_of_power(prob, tag, args.n, args.e_bound)
    out = {k: v for k, v in res.items() if not k.startswith("_")}
    if args.json:
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
        return EXIT_OK
    print(f"{tag} closure of Q^{args.n} in {prob.spec.name}")
    print("generators:")
    for g in out["generators"]:
        print(f"  {g}")
    print(f"length l(R/closure) = {out['length']}")
    for key in ("stable_at", "chain_lengths", "kernel_dims", "cumulative_dims", "stabilized", "contains_limit"):
        if key in out:
            print(f"{key}: {out[key]}")
    if out.get("semidecision"):
        print("note: the tight-closure candidate is a semidecision; more exponents can only enlarge it")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import diff, run_bundled, assertions, snapshot, load_golden

    reports = run_bundled()
    asserts = assertions(reports)
    snap = json.loads(json.dumps(snapshot(reports, asserts)))
    if args.write_golden:
        Path(args.write_golden).write_text(json.dumps(snap, indent=2) + "\n")
        print(f"wrote {args.write_golden}")
        return EXIT_OK
    mismatches = diff(load_golden(args.golden), snap)
    if args.json:
        doc = {"reports": reports, "assertions": asserts, "golden": {"match": not mismatches, "diff": mismatches}}
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        for name, rep in reports.items():
            s = rep["summary"]
            print(f"{name:<18} {s['PASS']:>2} pass  {s['FAIL']:>2} fail  {s['SKIPPED']:>2} skipped")
        print()
        for a in asserts:
            print(f"{'ok' if a['ok'] else 'FAILED':<7}{a['id']:<32}{a['detail']}")
        print()
        if mismatches:
            print("golden mismatch:")
            for line in mismatches:
                print(f"  {line}")
        else:
            print("all verdicts match the golden file")
    return EXIT_GOLDEN if mismatches else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="thilb", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coeffs", help="length sequences, Hilbert coefficients and identity checks")
    c.add_argument("spec", help="ring file, or the name of a bundled example")
    c.add_argument("--n-max", type=int, default=None)
    c.add_argument("--closure", default=None, help="comma list of none, limit, tight-candidate, "
                   "frobenius-candidate, contracted")
    c.add_argument("--e-bound", type=int, default=None)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_coeffs)

    k = sub.add_parser("closure", help="generators and colength of one closure")
    k.add_argument("spec")
    k.add_argument("--which", required=True, choices=sorted(WHICH))
    k.add_argument("--n", type=int, default=1, help="close Q^n (default 1)")
    k.add_argument("--e-bound", type=int, default=None)
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_closure)

    v = sub.add_parser("verify-paper", help="run the bundled examples against the golden file")
    v.add_argument("--json", action="store_true")
    v.add_argument("--golden", default=None, help="golden file (default: the bundled one)")
    v.add_argument("--write-golden", default=None, metavar="PATH", help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
