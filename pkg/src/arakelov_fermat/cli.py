"""Command-line front end.

Exit codes: 0 on success, 1 when a verification fails, 2 for bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .bounds import make_bound, render
from .errors import ArakelovError, NotPrime, VerificationError
from .fermat import build, is_prime, require_fermat_prime
from .verification import FAULTS, verify_prime

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    a, sep, b = text.partition("..")
    if not sep:
        raise UsageError(f"expected a range like 5..50, got {text!r}")
    try:
        lo, hi = int(a), int(b)
    except ValueError:
        raise UsageError(f"range bounds must be integers, got {text!r}") from None
    if lo > hi:
        raise UsageError(f"range {text} is not ordered")
    primes = [p for p in range(max(lo, 5), hi + 1) if is_prime(p)]
    if not primes:
        raise UsageError(f"no primes greater than 3 in {text}")
    return primes


def _primes(args) -> list[int]:
    if args.p is not None and getattr(args, "p_range", None):
        raise UsageError("give either --p or --p-range, not both")
    if args.p is not None:
        require_fermat_prime(args.p)
        return [args.p]
    if getattr(args, "p_range", None):
        return parse_range(args.p_range)
    raise UsageError("one of --p or --p-range is required")


def sweep_workers() -> int:
    raw = os.environ.get("ARAKELOV_SWEEP_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"ARAKELOV_SWEEP_THREADS must be an integer, got {raw!r}") from None
    if n < 1:
        raise UsageError("ARAKELOV_SWEEP_THREADS must be at least 1")
    return n


def ordered_map(fn, items: list, workers: int) -> list:
    """``map`` over ``items``, in parallel when it pays off; results keep input order."""
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))


def cmd_model(args) -> tuple[str, int]:
    if args.p is None:
        raise UsageError("model needs --p")
    require_fermat_prime(args.p)
    model = build(args.p)
    if args.format == "json":
        return model.to_json(), EXIT_OK
    if args.format == "dot":
        return model.cfg.to_dot(f"fermat_{args.p}"), EXIT_OK
    lines = [f"p = {model.p}, genus {model.genus}, split r = {model.r}, s = {model.s}"]
    lines.append(f"{len(model.cfg)} components")
    for c in model.cfg.components:
        lines.append(f"  {c.label} ({c.multiplicity},{c.self_intersection})")
    return "\n".join(lines), EXIT_OK


def _verify_one(job: tuple[int, str | None]) -> dict:
    p, fault = job
    return verify_prime(p, fault).to_dict()


def cmd_verify(args) -> tuple[str, int]:
    primes = _primes(args)
    rows = ordered_map(_verify_one, [(p, args.inject_fault) for p in primes], sweep_workers())
    code = EXIT_OK if all(r["ok"] for r in rows) else EXIT_VERIFY
    if args.format == "json":
        return json.dumps(rows, indent=2), code
    if args.format == "dot":
        raise UsageError("verify has no dot output")
    lines = [f"{'p':>4}  {'r':>3}  {'s':>3}  {'a_p':<14}status"]
    for r in rows:
        status = "pass" if r["ok"] else "FAIL"
        lines.append(
            f"{r['p']:>4}  {r['split']['r']:>3}  {r['split']['s']:>3}  {r['a_p'] or '-':<14}{status}"
        )
        for name, detail in r["details"].items():
            lines.append(f"      {name}: {detail}")
    passed = sum(r["ok"] for r in rows)
    lines.append(f"{passed}/{len(rows)} primes pass")
    return "\n".join(lines), code


def _bound_one(job: tuple[int, str, bool]):
    return make_bound(*job)


def cmd_bound(args) -> tuple[str, int]:
    if args.p is None:
        raise UsageError("bound needs --p")
    if args.format == "dot":
        raise UsageError("bound has no dot output")
    expr = make_bound(args.p, args.kind, args.folded)
    return render(expr, args.format), EXIT_OK


def cmd_sweep(args) -> tuple[str, int]:
    if args.format == "dot":
        raise UsageError("sweep has no dot output")
    primes = _primes(args)
    exprs = ordered_map(_bound_one, [(p, args.kind, args.folded) for p in primes], sweep_workers())
    if args.format == "json":
        return json.dumps([e.to_dict() for e in exprs], indent=2), EXIT_OK
    return "\n".join(f"p={e.p}: {render(e)}" for e in exprs), EXIT_OK


COMMANDS = {"model": cmd_model, "verify": cmd_verify, "bound": cmd_bound, "sweep": cmd_sweep}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arakelov-fermat",
        description="Exact intersection data and omega^2 bounds for Fermat curves.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("model", "print the special fibre of the regular model"),
        ("verify", "run every invariant check over a range of primes"),
        ("bound", "print the bound for one prime"),
        ("sweep", "print bounds for a range of primes"),
    ):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--p", type=int)
        if name in ("verify", "sweep"):
            sp.add_argument("--p-range", metavar="A..B")
        if name in ("bound", "sweep"):
            sp.add_argument("--kind", choices=("regular", "minimal"), default="regular")
            sp.add_argument("--folded", action="store_true")
        sp.add_argument("--format", choices=("text", "json", "dot"), default="text")
        sp.add_argument("--out", metavar="PATH")
        if name == "verify":
            sp.add_argument("--inject-fault", choices=FAULTS, help=argparse.SUPPRESS)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, code = COMMANDS[args.command](args)
    except (UsageError, NotPrime, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (VerificationError, ArakelovError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    text += "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
