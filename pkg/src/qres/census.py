"""Censuses of k-element subsets over two box families, with exact counts.

The additive box at size N is the symmetric integer interval [-N, N]; the
multiplicative box is every signed product of the first N primes with
exponents between 0 and N.  A census cell counts how many k-subsets of a
box contain a q-th power residue modulo almost every prime, and how many
contain an outright perfect q-th power; the normalization columns track
the decay of those counts against the box size.
"""

from __future__ import annotations

import multiprocessing as mp
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb, factorial, isqrt
from typing import Iterable

from .arith import iroot, is_perfect_power, require_prime
from .criterion import decide
from .errors import ContractError, GuardError
from .fmt import decimal_string

ADDITIVE = "additive"
MULTIPLICATIVE = "multiplicative"

_FIRST_PRIMES = (2, 3, 5, 7)
_MULT_N_CAP = 4
_SUBSET_BUDGET = 10**8

CSV_HEADER = "q,k,kind,N,total,members,with_perfect_power,ratio,normalized,elapsed_ms"


@dataclass(frozen=True)
class BoxSpec:
    kind: str
    N: int

    def __post_init__(self) -> None:
        if self.kind not in (ADDITIVE, MULTIPLICATIVE):
            raise ContractError(f"unknown box kind {self.kind!r}")
        if self.N < 1:
            raise ContractError("N must be positive")

    def size(self) -> int:
        if self.kind == ADDITIVE:
            return 2 * self.N + 1
        return 2 * (self.N + 1) ** self.N


def enumerate_box(spec: BoxSpec) -> list[int]:
    """Box contents in ascending order; exact cardinality spec.size()."""
    if spec.kind == ADDITIVE:
        return list(range(-spec.N, spec.N + 1))
    if spec.N > _MULT_N_CAP:
        raise GuardError(
            f"multiplicative box at N={spec.N} holds {spec.size()} elements; cap is N={_MULT_N_CAP}"
        )
    primes = _FIRST_PRIMES[: spec.N]
    mags = []
    for exps in product(range(spec.N + 1), repeat=spec.N):
        m = 1
        for p, e in zip(primes, exps):
            m *= p**e
        mags.append(m)
    out = [-m for m in mags] + mags
    out.sort()
    return out


@dataclass(frozen=True)
class CensusRow:
    """Tally for one (q, k, box) cell."""

    q: int
    k: int
    box: BoxSpec
    total: int
    members: int
    with_perfect_power: int
    elapsed_ms: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.members, self.total)

    @property
    def normalized(self) -> float:
        N = self.box.N
        if self.box.kind == ADDITIVE:
            return self.members / N ** (self.k - 1 + 1 / self.q)
        return self.members * self.q**N / N ** (N * self.k)


def csv_row(row: CensusRow) -> str:
    r = row.ratio
    return ",".join(
        [
            str(row.q),
            str(row.k),
            row.box.kind,
            str(row.box.N),
            str(row.total),
            str(row.members),
            str(row.with_perfect_power),
            decimal_string(r.numerator, r.denominator, 9),
            f"{row.normalized:.9f}",
            str(row.elapsed_ms),
        ]
    )


def run_census(q: int, k: int, spec: BoxSpec, workers: int = 1) -> CensusRow:
    """Decide every k-subset of the box, in lexicographic index order.

    Subsets are streamed in blocks keyed by their first element index;
    block tallies merge by addition, so the outcome does not depend on
    how many workers share the stream.
    """
    require_prime(q)
    if k < 1:
        raise ContractError("k must be at least 1")
    elements = tuple(enumerate_box(spec))
    n = len(elements)
    if k > n:
        raise ContractError(f"k={k} exceeds the box size {n}")
    total = comb(n, k)
    if total > _SUBSET_BUDGET:
        raise GuardError(f"census cell holds {total} subsets; budget is {_SUBSET_BUDGET}")
    start = time.perf_counter()
    blocks = _prefix_blocks(n - k + 1, workers)
    args = [(q, k, elements, lo, hi) for lo, hi in blocks]
    if workers <= 1:
        parts = [_tally_subsets(a) for a in args]
    else:
        ctx = mp.get_context("fork")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            parts = list(pool.map(_tally_subsets, args))
    members = sum(m for m, _ in parts)
    with_pp = sum(w for _, w in parts)
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    return CensusRow(q, k, spec, total, members, with_pp, elapsed_ms)


def _prefix_blocks(firsts: int, workers: int) -> list[tuple[int, int]]:
    chunks = min(firsts, max(1, workers) * 4) or 1
    size = -(-firsts // chunks)
    return [(lo, min(lo + size, firsts)) for lo in range(0, firsts, size)] or [(0, 0)]


def _tally_subsets(args: tuple[int, int, tuple[int, ...], int, int]) -> tuple[int, int]:
    q, k, elements, lo, hi = args
    pp = [is_perfect_power(b, q) for b in elements]
    n = len(elements)
    members = 0
    with_pp = 0
    for i in range(lo, hi):
        first = elements[i]
        first_pp = pp[i]
        for rest in combinations(range(i + 1, n), k - 1):
            if first_pp or any(pp[j] for j in rest):
                with_pp += 1
            subset = (first,) + tuple(elements[j] for j in rest)
            if decide(subset, q).member:
                members += 1
    return members, with_pp


@dataclass(frozen=True)
class PowerSubsetCount:
    """Exact power-containing subset count next to the counting-argument bound."""

    exact: int
    formula_bound: Fraction


def count_with_perfect_power(q: int, k: int, spec: BoxSpec) -> PowerSubsetCount:
    """k-subsets of the box that contain a perfect q-th power.

    The exact value comes from the number s of perfect powers in the box:
    sum over i >= 1 of C(s, i) * C(|box| - s, k - i).  The bound is the
    literal evaluation of the choose-i-powers overcount.
    """
    require_prime(q)
    if k < 1:
        raise ContractError("k must be at least 1")
    elements = enumerate_box(spec)
    n = len(elements)
    s = sum(1 for b in elements if is_perfect_power(b, q))
    exact = sum(comb(s, i) * comb(n - s, k - i) for i in range(1, min(k, s) + 1))
    if spec.kind == ADDITIVE:
        bound = Fraction(_power_bound_additive(q, k, spec.N))
    else:
        bound = _power_bound_multiplicative(q, k, spec.N)
    return PowerSubsetCount(exact, bound)


def _power_bound_additive(q: int, k: int, N: int) -> int:
    s_cap = isqrt(N) + 1 if q == 2 else 2 * iroot(N, q) + 1
    return sum(comb(s_cap, i) * comb(2 * N, k - i) for i in range(1, k + 1))


def _power_bound_multiplicative(q: int, k: int, N: int) -> Fraction:
    box = 2 * (N + 1) ** N
    if q == 2:
        s_cap = (Fraction(N, 2) + 1) ** N
    else:
        s_cap = 2 * (Fraction(N, q) + 1) ** N + 1
    return sum((_choose(s_cap, i) * comb(box, k - i) for i in range(1, k + 1)), Fraction(0))


def _choose(x: Fraction, i: int) -> Fraction:
    out = Fraction(1)
    for t in range(i):
        out *= x - t
    return out / factorial(i)


@dataclass(frozen=True)
class BoundConstants:
    """Dominant-term coefficients of the census count bounds.

    gamma scales N**(k-(1-1/q)) in the additive count, eta scales
    N**(N*k) / q**N in the multiplicative count; both are exact rationals.
    """

    q: int
    k: int
    gamma: Fraction
    eta: Fraction

    def additive_power_bound(self, N: int) -> int:
        return _power_bound_additive(self.q, self.k, N)

    def multiplicative_power_bound(self, N: int) -> Fraction:
        return _power_bound_multiplicative(self.q, self.k, N)


def bound_constants(q: int, k: int) -> BoundConstants:
    """Exact rational evaluation of the dominant-term coefficients.

    For q == 2 the sum runs over odd subset sizes r in [3, k]; for odd q
    it runs over disjoint subset sizes r, s >= 1, r + s <= k with
    r and s distinct mod q.  Empty sums give 0.
    """
    require_prime(q)
    if k < 1:
        raise ContractError("k must be at least 1")
    if q == 2:
        total = sum(
            (Fraction(1, factorial(r - 1) * factorial(k - r)) for r in range(3, k + 1, 2)),
            Fraction(0),
        )
        gamma = 2 ** (k - 1) * total
        eta = gamma
    else:
        gamma = Fraction(0)
        for r in range(1, k + 1):
            for s in range(1, k - r + 1):
                if (r - s) % q:
                    gamma += Fraction(2**k, factorial(r + s - 1) * factorial(k - r - s))
        eta = gamma
    return BoundConstants(q, k, gamma, eta)


@dataclass(frozen=True)
class DecayReport:
    ratios: tuple[Fraction, ...]
    ratio_nonincreasing: bool
    ratio_strictly_decreasing: bool
    max_normalized: float


def decay_table(
    q: int, k: int, sizes: Iterable[int], kind: str, workers: int = 1
) -> tuple[list[CensusRow], DecayReport]:
    """One census row per N plus a monotonicity summary over the list."""
    rows = [run_census(q, k, BoxSpec(kind, N), workers=workers) for N in sizes]
    if not rows:
        raise ContractError("need at least one box size")
    ratios = tuple(r.ratio for r in rows)
    noninc = all(b <= a for a, b in zip(ratios, ratios[1:]))
    strict = all(b < a for a, b in zip(ratios, ratios[1:]))
    return rows, DecayReport(ratios, noninc, strict, max(r.normalized for r in rows))
