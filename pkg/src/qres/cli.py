"""Command-line front end: decide, density, census, bounds.

Exit codes: 0 for success (and membership), 1 for a non-member verdict
from `decide`, 2 for any error.  All JSON goes out as a single line with
a fixed key order; integers beyond 2**53-1 are quoted decimal strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

from .census import ADDITIVE, CSV_HEADER, BoxSpec, bound_constants, csv_row, run_census
from .criterion import decide
from .density import estimate_density
from .errors import GuardError, QresError
from .fmt import decimal_string, fraction_string, jsonable

EXIT_MEMBER = 0
EXIT_NON_MEMBER = 1
EXIT_ERROR = 2


@dataclass(frozen=True)
class RunConfig:
    """One fully parsed invocation."""

    command: str
    q: int = 0
    elements: tuple[int, ...] = ()
    k: int = 1
    sizes: tuple[int, ...] = ()
    kind: str = ADDITIVE
    prime_limit: int = 100_000
    workers: int = 1
    out: Optional[str] = None


def _parse_int_list(text: str, flag: str) -> tuple[int, ...]:
    toks = [t for t in text.replace(" ", "").split(",") if t]
    if not toks:
        raise ValueError(f"empty {flag}")
    try:
        return tuple(int(t) for t in toks)
    except ValueError:
        raise ValueError(f"{flag} expects comma-separated integers, got {text!r}") from None


def _parse_set(text: str) -> tuple[int, ...]:
    vals = _parse_int_list(text, "--set")
    unique = tuple(dict.fromkeys(vals))
    if len(unique) != len(vals):
        dupes = sorted({v for v in vals if vals.count(v) > 1})
        print(f"warning: duplicate elements removed: {dupes}", file=sys.stderr)
    return unique


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qres",
        description="Decide and measure q-th power residues of integer sets modulo almost every prime.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="membership verdict with a witness, as JSON")
    p.add_argument("--q", type=int, required=True, help="prime exponent")
    p.add_argument("--set", dest="elements", required=True, help="comma-separated integers")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None, help="output file (default: stdout)")

    p = sub.add_parser("density", help="fraction of primes hit by the set, as JSON")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--set", dest="elements", required=True)
    p.add_argument("--prime-limit", type=int, default=100_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None)

    p = sub.add_parser("census", help="subset census rows over boxes, as CSV")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", dest="sizes", required=True, help="comma-separated box sizes")
    p.add_argument("--kind", choices=["additive", "multiplicative"], default="additive")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None)

    p = sub.add_parser("bounds", help="count-bound coefficients and bound values, as JSON")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", dest="sizes", default=None, help="evaluate the bounds at these sizes")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None)

    return parser


def _config_from(ns: argparse.Namespace) -> RunConfig:
    kwargs = {"command": ns.command, "workers": ns.workers, "out": ns.out}
    if ns.command in ("decide", "density"):
        kwargs["q"] = ns.q
        kwargs["elements"] = _parse_set(ns.elements)
    if ns.command == "density":
        kwargs["prime_limit"] = ns.prime_limit
    if ns.command in ("census", "bounds"):
        kwargs["q"] = ns.q
        kwargs["k"] = ns.k
        if ns.sizes is not None:
            kwargs["sizes"] = _parse_int_list(ns.sizes, "--N")
    if ns.command == "census":
        kwargs["kind"] = ns.kind
    return RunConfig(**kwargs)


def _open_out(path: Optional[str]) -> TextIO:
    if path is None:
        return sys.stdout
    return open(path, "w")


def _emit_line(line: str, out: TextIO) -> None:
    out.write(line + "\n")
    out.flush()


def _dump(obj: dict) -> str:
    return json.dumps(jsonable(obj), separators=(",", ":"))


def _cmd_decide(cfg: RunConfig) -> int:
    verdict = decide(cfg.elements, cfg.q)
    out = _open_out(cfg.out)
    try:
        _emit_line(_dump(verdict.to_jsonable()), out)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_MEMBER if verdict.member else EXIT_NON_MEMBER


def _cmd_density(cfg: RunConfig) -> int:
    est = estimate_density(cfg.elements, cfg.q, cfg.prime_limit, workers=cfg.workers)
    obj = {
        "q": est.q,
        "set": list(est.elements),
        "prime_limit": est.prime_limit,
        "primes_tested": est.primes_tested,
        "primes_hit": est.primes_hit,
        "fraction": f"{est.primes_hit}/{est.primes_tested}",
        "decimal": decimal_string(est.primes_hit, max(est.primes_tested, 1), 6),
        "failing_primes_sample": list(est.failing_primes_sample),
    }
    out = _open_out(cfg.out)
    try:
        _emit_line(_dump(obj), out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_census(cfg: RunConfig) -> int:
    if not cfg.sizes:
        raise ValueError("census needs --N")
    out = _open_out(cfg.out)
    try:
        _emit_line(CSV_HEADER, out)
        for N in cfg.sizes:
            try:
                row = run_census(cfg.q, cfg.k, BoxSpec(cfg.kind, N), workers=cfg.workers)
            except (GuardError, QresError) as exc:
                print(f"census: skipping kind={cfg.kind} N={N}: {exc}", file=sys.stderr)
                continue
            _emit_line(csv_row(row), out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_bounds(cfg: RunConfig) -> int:
    bc = bound_constants(cfg.q, cfg.k)
    obj = {
        "q": bc.q,
        "k": bc.k,
        "gamma": fraction_string(bc.gamma),
        "gamma_decimal": decimal_string(bc.gamma.numerator, bc.gamma.denominator, 6),
        "eta": fraction_string(bc.eta),
        "eta_decimal": decimal_string(bc.eta.numerator, bc.eta.denominator, 6),
    }
    if cfg.sizes:
        evals = []
        for N in cfg.sizes:
            if N < 1:
                raise ValueError("--N entries must be positive")
            mult = bc.multiplicative_power_bound(N)
            evals.append(
                {
                    "N": N,
                    "additive_power_subset_bound": bc.additive_power_bound(N),
                    "multiplicative_power_subset_bound": fraction_string(mult),
                    "multiplicative_power_subset_bound_decimal": decimal_string(
                        mult.numerator, mult.denominator, 6
                    ),
                }
            )
        obj["power_subset_bounds"] = evals
    out = _open_out(cfg.out)
    try:
        _emit_line(_dump(obj), out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


_COMMANDS = {
    "decide": _cmd_decide,
    "density": _cmd_density,
    "census": _cmd_census,
    "bounds": _cmd_bounds,
}


def _merge_value_flags(argv: list[str]) -> list[str]:
    """Join --set/--N with their values so negative elements survive argparse."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--set", "--N") and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = _merge_value_flags(list(sys.argv[1:] if argv is None else argv))
    try:
        ns = parser.parse_args(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    try:
        cfg = _config_from(ns)
        return _COMMANDS[cfg.command](cfg)
    except (QresError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
