"""Prime sieving and empirical residue-density measurements."""

from __future__ import annotations

import multiprocessing as mp
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterable

from .arith import require_prime
from .errors import ContractError

_SEGMENT = 1 << 17
_FAIL_SAMPLE = 32


def primes_up_to(limit: int) -> list[int]:
    """Every prime <= limit, ascending (empty when limit < 2)."""
    return list(_primes_cached(limit))


@lru_cache(maxsize=8)
def _primes_cached(limit: int) -> tuple[int, ...]:
    """Segmented sieve; segments keep memory flat for large limits."""
    if limit < 2:
        return ()
    root = isqrt(limit)
    flags = bytearray([1]) * (root + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, isqrt(root) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, root + 1, i)))
    base = [i for i in range(2, root + 1) if flags[i]]
    out = list(base)
    low = root + 1
    while low <= limit:
        high = min(low + _SEGMENT, limit + 1)
        seg = bytearray([1]) * (high - low)
        for p in base:
            start = max(p * p, (low + p - 1) // p * p)
            if start < high:
                seg[start - low :: p] = bytearray(len(range(start, high, p)))
        out.extend(i for i in range(low, high) if seg[i - low])
        low = high
    return tuple(out)


def is_qth_residue(a: int, p: int, q: int) -> bool:
    """Does x**q == a (mod p) have a solution?  p and q must be prime.

    Multiples of p qualify (0 is 0**q); when q does not divide p - 1,
    q-th powering permutes the nonzero residues, so everything qualifies;
    the remaining case is the explicit power test a**((p-1)/q) == 1.
    """
    a %= p
    if a == 0:
        return True
    if (p - 1) % q:
        return True
    return pow(a, (p - 1) // q, p) == 1


@dataclass(frozen=True)
class DensityEstimate:
    """Per-prime hit counts for one set and one exponent q."""

    q: int
    elements: tuple[int, ...]
    prime_limit: int
    primes_tested: int
    primes_hit: int
    fraction: Fraction
    failing_primes_sample: tuple[int, ...]


def estimate_density(
    elements: Iterable[int], q: int, prime_limit: int, workers: int = 1
) -> DensityEstimate:
    """Fraction of primes <= prime_limit where some element is a q-th residue.

    The prime range is split into blocks tallied independently; the merge
    is an order-independent sum, so any worker count gives the same result.
    """
    require_prime(q)
    elems = tuple(dict.fromkeys(elements))
    if not elems:
        raise ContractError("need at least one element")
    ps = _primes_cached(prime_limit)
    blocks = _split_blocks(ps, workers)
    args = [(block, elems, q) for block in blocks]
    if workers <= 1:
        parts = [_tally_block(a) for a in args]
    else:
        ctx = mp.get_context("fork")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            parts = list(pool.map(_tally_block, args))
    hits = sum(h for h, _ in parts)
    fails: list[int] = []
    for _, block_fails in parts:
        if len(fails) < _FAIL_SAMPLE:
            fails.extend(block_fails)
    tested = len(ps)
    return DensityEstimate(
        q,
        elems,
        prime_limit,
        tested,
        hits,
        Fraction(hits, tested) if tested else Fraction(0, 1),
        tuple(fails[:_FAIL_SAMPLE]),
    )


def _split_blocks(ps: tuple[int, ...], workers: int) -> list[tuple[int, ...]]:
    chunks = max(1, workers) * 4
    size = max(1, -(-len(ps) // chunks))
    return [ps[i : i + size] for i in range(0, len(ps), size)] or [()]


def _tally_block(args: tuple[tuple[int, ...], tuple[int, ...], int]) -> tuple[int, list[int]]:
    primes, elems, q = args
    hits = 0
    fails: list[int] = []
    for p in primes:
        if any(is_qth_residue(b, p, q) for b in elems):
            hits += 1
        elif len(fails) < _FAIL_SAMPLE:
            fails.append(p)
    return hits, fails
