"""Command line: ``sl12 gen | verify | sweep``.

Exit codes: 0 all conclusions ``generates`` (or an excluded q without
``--strict``), 1 a check or verification failed, 2 usage or factoring-budget
errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .arith import FactorizationBudgetError, prime_power_split
from .cert import Certificate, CertificateFormatError, format_table, generate, sweep, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _outcome(conclusion: str, strict: bool) -> int:
    if conclusion == "generates":
        return EXIT_OK
    if conclusion == "excluded_diagnostic" and not strict:
        return EXIT_OK
    return EXIT_FAIL


def _q_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _cmd_gen(args) -> int:
    if args.q is not None:
        if args.p is not None or args.m is not None:
            raise SystemExit("gen: use either --q or --p/--m")
        try:
            p, m = prime_power_split(args.q)
        except ValueError as exc:
            print(f"gen: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        if args.p is None:
            print("gen: --p (or --q) is required", file=sys.stderr)
            return EXIT_USAGE
        p, m = args.p, args.m if args.m is not None else 1
    mode = "deterministic" if args.omega_seed is None else ("seeded", args.omega_seed)
    try:
        cert = generate(p, m, mode)
    except ValueError as exc:
        print(f"gen: {exc}", file=sys.stderr)
        return EXIT_USAGE
    raw = cert.to_json()
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(raw + b"\n")
    else:
        sys.stdout.write(raw.decode("ascii") + "\n")
    verdict = cert.reports["verdict"]
    print(f"q={cert.q} Q={cert.Q} conclusion={verdict['conclusion']}", file=sys.stderr)
    if verdict["failed"]:
        print("failed checks: " + ", ".join(verdict["failed"]), file=sys.stderr)
    return _outcome(verdict["conclusion"], args.strict)


def _cmd_verify(args) -> int:
    try:
        with open(args.file, "rb") as fh:
            cert = Certificate.from_json(fh.read())
        result = verify(cert)
    except OSError as exc:
        print(f"verify: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CertificateFormatError as exc:
        print(f"verify: malformed certificate: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if not result.ok:
        print("FAIL: " + ", ".join(result.failures))
        return EXIT_FAIL
    print(f"PASS q={cert.q} conclusion={cert.conclusion}")
    return _outcome(cert.conclusion, args.strict)


def _cmd_sweep(args) -> int:
    rows = sweep(args.q, jobs=args.jobs)
    if args.json:
        print(json.dumps([r.as_dict() for r in rows], indent=2))
    else:
        print(format_table(rows))
    code = EXIT_OK
    for r in rows:
        if r.error or not r.verified:
            code = EXIT_FAIL
        elif _outcome(r.conclusion, args.strict) != EXIT_OK:
            code = EXIT_FAIL
    return code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strict", action="store_true", help="treat q in {2, 4} as a failure")

    parser = argparse.ArgumentParser(prog="sl12", description="(2,3)-generators of SL_12(q) with certificates")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", parents=[common], help="generate a certificate")
    gen.add_argument("--p", type=int)
    gen.add_argument("--m", type=int)
    gen.add_argument("--q", type=int, help="prime power; split into p and m")
    gen.add_argument("--omega-seed", type=int, help="pick omega pseudorandomly from this seed")
    gen.add_argument("--out", help="write the certificate here instead of stdout")
    gen.set_defaults(func=_cmd_gen)

    ver = sub.add_parser("verify", parents=[common], help="re-verify a certificate file")
    ver.add_argument("file")
    ver.set_defaults(func=_cmd_verify)

    sw = sub.add_parser("sweep", parents=[common], help="generate and verify for several q")
    sw.add_argument("--q", type=_q_list, required=True, help="comma-separated prime powers")
    fmt = sw.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--table", action="store_true", help="human-readable table (default)")
    sw.add_argument("--jobs", type=int, default=1, help="worker processes")
    sw.set_defaults(func=_cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FactorizationBudgetError as exc:
        print(f"{args.command}: q too large for the factoring budget: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
