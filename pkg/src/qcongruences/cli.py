"""Command line: ``expand`` a q-expression, ``verify`` the registered claims."""

from __future__ import annotations

import argparse
import logging
import sys

from .congruences import DEFAULT_MAX_ORDER, RegistryError, load_registry
from .qexpr import QExprSyntaxError, eval_qexpr, parse_qexpr
from .report import emit_report
from .series import EXACT, Ring
from .suites import SUITES, RunConfig, run_config

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
_MOD_BITS = {2: 1, 4: 2, 8: 3, 16: 4}

log = logging.getLogger("qcongruences")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _primes_arg(text: str):
    return "auto" if text == "auto" else _int_list(text)


def _suites_arg(text: str) -> tuple[str, ...]:
    names = tuple(s.strip() for s in text.split(",") if s.strip())
    bad = [s for s in names if s != "all" and s not in SUITES]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"unknown suite {','.join(bad) or text!r}; choose from all, {', '.join(SUITES)}")
    return names


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qcongruences",
                                 description="Exact q-series expansion and verification of registered identities and congruences.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("expand", help="print coefficients of a q-expression")
    ex.add_argument("expr", help='e.g. "l4^5/(l1^2*l2*l8^2)" or "phi(q^1)"')
    ex.add_argument("-N", type=int, default=20, help="truncation order (default 20)")
    ex.add_argument("--mod", type=int, choices=sorted(_MOD_BITS), help="reduce coefficients modulo 2, 4, 8 or 16")

    vf = sub.add_parser("verify", help="run verification suites")
    vf.add_argument("--suite", type=_suites_arg, default=("all",),
                    help=f"comma-separated: all, {', '.join(SUITES)} (default all)")
    vf.add_argument("-N", type=int, default=300, help="truncation order for identities and lemmas (default 300)")
    vf.add_argument("--terms", type=int, default=500, help="n range for alpha = 0 congruences (default 500)")
    vf.add_argument("--family-terms", type=int, default=20, help="n range for families and alpha > 0 (default 20)")
    vf.add_argument("--alpha", type=_int_list, default=(0,), help="comma-separated alphas (default 0)")
    vf.add_argument("--primes", type=_primes_arg, default="auto",
                    help="'auto' (smallest admitted prime) or a comma-separated list")
    vf.add_argument("--prime-bound", type=int, default=100, help="search bound for admitted primes (default 100)")
    vf.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
    vf.add_argument("--jobs", type=int, default=1, help="worker threads (default 1)")
    vf.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER,
                    help="series order budget; larger checks are skipped")
    vf.add_argument("--registry", help="JSONL registry file (default: built-in)")
    vf.add_argument("--no-timing", action="store_true", help="omit elapsed times (byte-stable output)")
    vf.add_argument("-o", "--output", help="write the report here instead of stdout")
    return ap


def cmd_expand(args) -> int:
    if args.N < 0:
        print("error: -N must be >= 0", file=sys.stderr)
        return EXIT_CONFIG
    try:
        e = parse_qexpr(args.expr)
    except QExprSyntaxError as err:
        print(f"error: {err}", file=sys.stderr)
        print(f"  {args.expr}\n  {' ' * err.position}^", file=sys.stderr)
        return EXIT_CONFIG
    ring = Ring.mod(_MOD_BITS[args.mod]) if args.mod else EXACT
    try:
        s = eval_qexpr(e, args.N, ring)
    except (ArithmeticError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    sys.stdout.write("".join(f"{n},{c}\n" for n, c in enumerate(s.tolist())))
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        cfg = RunConfig(N=args.N, terms=args.terms, family_terms=args.family_terms, prime_bound=args.prime_bound,
                        alphas=args.alpha, primes=args.primes, suites=args.suite, fmt=args.fmt, jobs=args.jobs,
                        max_order=args.max_order, registry=args.registry)
        checks = load_registry(cfg.registry)
    except (ValueError, OSError) as err:
        kind = "registry" if isinstance(err, (RegistryError, OSError)) else "config"
        print(f"{kind} error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    log.info("running %s", ", ".join(cfg.selected()))
    try:
        result = run_config(cfg, checks)
    except RegistryError as err:
        print(f"registry error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    out = emit_report(result, cfg.fmt, timing=not args.no_timing)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(out)
    else:
        sys.stdout.buffer.write(out)
        sys.stdout.flush()
    return EXIT_OK if result.ok else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors already
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if args.command == "expand":
        return cmd_expand(args)
    return cmd_verify(args)


if __name__ == "__main__":
    sys.exit(main())
