"""``cga`` command line: dims, kac, singular, scan, verify.

Exit codes: 0 success, 2 usage or validation error, 3 a mathematical check failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .algebra import CGA, HalfInt
from .cache import default_dir
from .exact import MU, parse_rational, poly_matrix_det
from .partitions import CountMismatch, dims_table
from .shapovalov import FactorizationMismatch, KacReport, factor_check, kac_matrix
from .singular import VerificationFailed, ZeroMu, classify, delta_for_singular, null_space, verify_singular
from .suite import SuiteConfig, run_suite

EXIT_OK, EXIT_USAGE, EXIT_MATH = 0, 2, 3

_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
_VALUE_FLAGS = ("--delta", "--mu")


class UsageError(Exception):
    pass


def _ell(text) -> HalfInt:
    try:
        return HalfInt.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _rational(text, what):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{what}: cannot parse {text!r} as a rational") from exc


def word_name(alg: CGA, label) -> str:
    """``C·P1²`` style name of a basis monomial (``1`` for the vacuum)."""
    parts, word, i = [], label.word(alg), 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        n = j - i
        parts.append(str(word[i]) + (str(n).translate(_SUP) if n > 1 else ""))
        i = j
    return "·".join(parts) or "1"


def cmd_dims(args) -> int:
    ell = _ell(args.ell)
    if args.max_level < 0:
        raise UsageError("--max-level must be >= 0")
    rows = dims_table(ell, args.max_level)
    if args.format == "json":
        print(json.dumps([{"m": r["m"], "d": r["d"], "e": r["e"]} for r in rows]))
    else:
        print("m\td\te")
        for r in rows:
            print(f"{r['m']}\t{r['d']}\t{r['e']}")
    return EXIT_OK


def cmd_kac(args) -> int:
    ell = _ell(args.ell)
    if args.level < 0:
        raise UsageError("--level must be >= 0")
    mat = kac_matrix(ell, args.level)
    det = poly_matrix_det(mat.entries)
    print(det)
    fac = None
    if args.factor:
        try:
            fac = factor_check(ell, args.level, det)
        except FactorizationMismatch as exc:
            print(f"factorization FAILED: {exc}; remainder {exc.remainder}", file=sys.stderr)
            return EXIT_MATH
        print(fac)
        print(f"C = {fac.constant}")
    if args.out:
        Path(args.out).write_text(json.dumps(KacReport(mat, det, fac).to_json(), indent=1, ensure_ascii=False) + "\n",
                                  encoding="utf-8")
    return EXIT_OK


def cmd_singular(args) -> int:
    ell = _ell(args.ell)
    if args.q < 1:
        raise UsageError("--q must be >= 1")
    mu = MU if args.mu == "sym" else _rational(args.mu, "--mu")
    delta = None if args.delta is None else _rational(args.delta, "--delta")
    alg = CGA(ell)
    try:
        rep = verify_singular(ell, args.q, mu=mu, delta=delta, raise_on_failure=False)
    except ZeroMu as exc:
        raise UsageError(str(exc)) from exc
    print(f"l={ell} q={args.q} level {rep.level}")
    print(f"δ={delta_for_singular(ell, args.q) if delta is None else delta}")
    terms = sorted(rep.vector.items(), key=lambda t: t[0].sort_key, reverse=True)
    coeffs = ", ".join(f"{word_name(alg, lab)}: {c}" for lab, c in terms)
    print(f"coefficients {{{coeffs}}}")
    for name, res in rep.checks:
        print(f"  {name}: {'0' if not res else res}")
    if not rep.verified:
        print("FAILED")
        return EXIT_MATH
    print("VERIFIED")
    return EXIT_OK


def cmd_scan(args) -> int:
    ell = _ell(args.ell)
    delta = _rational(args.delta, "--delta")
    mu = _rational(args.mu, "--mu")
    if args.level < 1:
        raise UsageError("--level must be >= 1")
    try:
        k = null_space(ell, delta, mu, args.level)
    except ZeroMu as exc:
        raise UsageError(str(exc)) from exc
    print(f"dim {k.dimension}")
    for v in k.basis:
        print(f"  {v!r}")
    print(classify(ell, delta, mu))
    return EXIT_OK


def cmd_verify(args) -> int:
    ells = tuple(str(_ell(x.strip())) for x in args.ell.split(",") if x.strip())
    if not ells:
        raise UsageError("--ell needs at least one value")
    cache = args.cache or default_dir()
    cfg = SuiteConfig(ells, args.max_level, str(cache) if cache else None, args.jobs)
    report = run_suite(cfg)
    print(report.text())
    if not report.ok:
        first = report.failures()[0]
        print(f"first failing check: l={first.ell} {first.name}", file=sys.stderr)
        return EXIT_MATH
    return EXIT_OK


def _glue_negative_values(argv: list) -> list:
    """``--delta -1/2`` -> ``--delta=-1/2``; argparse would read ``-1/2`` as a flag."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1][:1] == "-" and argv[i + 1][1:2].isdigit():
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cga", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dims", help="level dimensions d and total mu-weights e")
    s.add_argument("--ell", required=True)
    s.add_argument("--max-level", type=int, default=10)
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_dims)

    s = sub.add_parser("kac", help="Kac determinant at one level")
    s.add_argument("--ell", required=True)
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--factor", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_kac)

    s = sub.add_parser("singular", help="build and verify the level-2q singular vector")
    s.add_argument("--ell", required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--mu", default="sym", help="a non-zero rational, or 'sym'")
    s.add_argument("--delta", help="override the existence value (to watch it fail)")
    s.set_defaults(func=cmd_singular)

    s = sub.add_parser("scan", help="dimension of the singular subspace at one level")
    s.add_argument("--ell", required=True)
    s.add_argument("--delta", required=True)
    s.add_argument("--mu", required=True)
    s.add_argument("--level", type=int, required=True)
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("verify", help="run the full verification suite")
    s.add_argument("--ell", default="1/2", help="comma separated list")
    s.add_argument("--max-level", type=int, default=8)
    s.add_argument("--cache", help="cache directory (default: $CGA_CACHE_DIR)")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (VerificationFailed, FactorizationMismatch, CountMismatch) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
