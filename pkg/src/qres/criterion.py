"""Membership decisions with independently checkable certificates.

decide() answers whether a finite set of integers contains a q-th power
residue modulo almost every prime, and always attaches a witness that
verify_witness() can recheck from scratch:

* an element that is itself a perfect q-th power (any q, 0 included),
* for q == 2, an odd-cardinality subset whose product is a perfect
  square, or the verified absence of one,
* for odd q, hyperplane normals (one per element, over the joint prime
  basis of the q-free parts) whose union covers the whole exponent
  space, or a point missed by every hyperplane.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import isqrt, prod
from typing import Iterable, Optional, Sequence, Union

from .arith import (
    ExponentVector,
    PrimeBasis,
    exponent_vector,
    factor,
    is_perfect_power,
    q_free_part,
    require_prime,
)
from .errors import ContractError, GuardError

# Refuse point enumerations beyond this budget: exactness over availability.
_POINT_BUDGET = 2**40
_MAX_DIM_Q3 = 24
# Cap on the GF(2) solution-space dimension scanned for a smallest witness.
_NULLSPACE_CAP = 22


@dataclass(frozen=True)
class HyperplaneSet:
    """Hyperplane normals attached to a set of integers, one row per element."""

    q: int
    basis: PrimeBasis
    rows: tuple[ExponentVector, ...]

    def __post_init__(self) -> None:
        require_prime(self.q)
        if self.q == 2:
            raise ContractError("hyperplane certificates apply to odd q only")
        r = len(self.basis)
        for row in self.rows:
            if len(row) != r:
                raise ContractError("row length does not match the basis")
            if not any(row):
                raise ContractError("zero rows are not hyperplanes; strip perfect powers first")
            if any(not 0 <= v < self.q for v in row):
                raise ContractError("row entries must be residues mod q")


@dataclass(frozen=True)
class PerfectPower:
    element: int


@dataclass(frozen=True)
class OddSquareSubset:
    subset: tuple[int, ...]
    g: int
    basis: tuple[int, ...]  # -1 marks the sign slot


@dataclass(frozen=True)
class NoOddSquareSubset:
    basis: tuple[int, ...]


@dataclass(frozen=True)
class Covering:
    hyperplanes: HyperplaneSet


@dataclass(frozen=True)
class UncoveredPoint:
    point: tuple[int, ...]
    hyperplanes: HyperplaneSet


Witness = Union[PerfectPower, OddSquareSubset, NoOddSquareSubset, Covering, UncoveredPoint]

_KINDS = {
    PerfectPower: "perfect_power",
    OddSquareSubset: "odd_square_subset",
    Covering: "covering",
    UncoveredPoint: "uncovered_point",
    NoOddSquareSubset: "no_odd_subset",
}


@dataclass(frozen=True)
class Verdict:
    member: bool
    witness: Witness

    @property
    def kind(self) -> str:
        return _KINDS[type(self.witness)]

    def to_jsonable(self) -> dict:
        """The documented single-object form: member, kind, data, basis."""
        w = self.witness
        if isinstance(w, PerfectPower):
            data: object = w.element
            basis: list[int] = []
        elif isinstance(w, OddSquareSubset):
            data = {"subset": list(w.subset), "g": w.g}
            basis = list(w.basis)
        elif isinstance(w, NoOddSquareSubset):
            data = None
            basis = list(w.basis)
        elif isinstance(w, Covering):
            data = {"rows": [list(r) for r in w.hyperplanes.rows]}
            basis = list(w.hyperplanes.basis.primes)
        else:
            data = {"point": list(w.point), "rows": [list(r) for r in w.hyperplanes.rows]}
            basis = list(w.hyperplanes.basis.primes)
        return {"member": self.member, "kind": self.kind, "data": data, "basis": basis}


def _dedup(elements: Iterable[int]) -> list[int]:
    return list(dict.fromkeys(elements))


def build_hyperplanes(elements: Iterable[int], q: int) -> HyperplaneSet:
    """Joint prime basis plus one exponent row per element, in input order.

    Elements that are perfect q-th powers have no hyperplane (their row
    would be zero) and must be stripped by the caller.
    """
    require_prime(q)
    if q == 2:
        raise ContractError("hyperplane construction applies to odd q only")
    elems = _dedup(elements)
    if not elems:
        raise ContractError("need at least one element")
    reduced = []
    for b in elems:
        if is_perfect_power(b, q):
            raise ContractError(f"{b} is a perfect power; strip it before building hyperplanes")
        reduced.append(q_free_part(factor(b), q))
    primes = sorted({p for f in reduced for p, _ in f.factors})
    basis = PrimeBasis(tuple(primes))
    rows = tuple(exponent_vector(f, q, basis) for f in reduced)
    return HyperplaneSet(q, basis, rows)


def covers(hs: HyperplaneSet) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Does the union of the hyperplanes exhaust the whole space?

    Scans projective representatives (first nonzero coordinate 1) in
    lexicographic order; the zero vector lies on every hyperplane.  When
    the answer is no, the first uncovered representative is returned and
    it is also the lexicographically least uncovered point of the whole
    space: scaling by a nonzero constant preserves uncoveredness, and
    normalizing the leading coordinate to 1 never increases the tuple.
    """
    q, r = hs.q, len(hs.basis)
    if q**r > _POINT_BUDGET or (q == 3 and r > _MAX_DIM_Q3):
        raise GuardError(f"covering check over {q}**{r} points exceeds the enumeration budget")
    rows = hs.rows
    for pos in range(r - 1, -1, -1):
        zeros = (0,) * pos
        for tail in product(range(q), repeat=r - pos - 1):
            hit = False
            for row in rows:
                acc = row[pos]
                for i, t in enumerate(tail):
                    if t:
                        acc += row[pos + 1 + i] * t
                if acc % q == 0:
                    hit = True
                    break
            if not hit:
                return False, zeros + (1,) + tail
    return True, None


def _square_masks(elems: Sequence[int]) -> tuple[tuple[int, ...], list[int], int]:
    """Square-free exponent patterns as bitmasks.

    Bit 0 is the sign, bits 1..r the basis primes, bit r+1 the subset
    cardinality; returns (primes, masks, parity_bit).
    """
    parts = [q_free_part(factor(b), 2) for b in elems]
    primes = tuple(sorted({p for f in parts for p, _ in f.factors}))
    index = {p: i + 1 for i, p in enumerate(primes)}
    parity_bit = 1 << (len(primes) + 1)
    masks = []
    for f in parts:
        m = 1 if f.sign < 0 else 0
        for p, _ in f.factors:
            m |= 1 << index[p]
        masks.append(m | parity_bit)
    return primes, masks, parity_bit


def _solve_parity_system(masks: list[int], target: int) -> tuple[Optional[int], list[int]]:
    """Solve XOR(chosen masks) == target over GF(2).

    Returns (particular solution as an index bitmask or None, null-space
    basis as index bitmasks).  Pivot rows keep track of which original
    vectors they combine, so solutions come out as subsets directly.
    """
    rows: list[tuple[int, int, int]] = []  # (pivot, vector, picks), pivot descending
    nulls: list[int] = []
    for j, w in enumerate(masks):
        v, picks = w, 1 << j
        for pivot, bv, bp in rows:
            if v >> pivot & 1:
                v ^= bv
                picks ^= bp
        if v:
            rows.append((v.bit_length() - 1, v, picks))
            rows.sort(key=lambda t: -t[0])
        else:
            nulls.append(picks)
    t, picks = target, 0
    for pivot, bv, bp in rows:
        if t >> pivot & 1:
            t ^= bv
            picks ^= bp
    if t:
        return None, nulls
    return picks, nulls


def _indices(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def _min_support_solution(particular: int, nulls: list[int]) -> tuple[int, ...]:
    """Smallest-support solution in particular + span(nulls).

    Ties break towards the lexicographically least index tuple.  The whole
    affine space is scanned in Gray-code order, so the result does not
    depend on the order the null vectors were discovered in.
    """
    d = len(nulls)
    if d > _NULLSPACE_CAP:
        raise GuardError(f"witness search over 2**{d} subset combinations exceeds the budget")
    best_idx = _indices(particular)
    best_pc = particular.bit_count()
    cur = particular
    for g in range(1, 1 << d):
        cur ^= nulls[(g & -g).bit_length() - 1]
        pc = cur.bit_count()
        if pc < best_pc:
            best_pc, best_idx = pc, _indices(cur)
        elif pc == best_pc:
            idx = _indices(cur)
            if idx < best_idx:
                best_idx = idx
    return best_idx


def odd_square_subset(elements: Iterable[int]) -> Optional[tuple[tuple[int, ...], int]]:
    """An odd-cardinality subset whose product is a perfect square, or None.

    The decision is Gaussian elimination over GF(2): each element
    contributes its square-free exponent pattern (sign included) plus a
    parity coordinate, and qualifying subsets are exactly the solutions
    with parity 1.  The returned subset has minimal cardinality among all
    solutions, with ties broken towards the earliest input positions.
    """
    elems = _dedup(elements)
    if not elems:
        raise ContractError("need at least one element")
    _, masks, parity_bit = _square_masks(elems)
    particular, nulls = _solve_parity_system(masks, parity_bit)
    if particular is None:
        return None
    idx = _min_support_solution(particular, nulls)
    subset = tuple(elems[i] for i in idx)
    g = isqrt(prod(subset))
    return subset, g


def decide(elements: Iterable[int], q: int) -> Verdict:
    """Decide membership with a re-checkable witness.  Duplicates are dropped."""
    require_prime(q)
    elems = _dedup(elements)
    if not elems:
        raise ContractError("cannot decide the empty set")
    for b in elems:
        if is_perfect_power(b, q):
            return Verdict(True, PerfectPower(b))
    if q == 2:
        primes, masks, parity_bit = _square_masks(elems)
        basis = (-1,) + primes
        particular, nulls = _solve_parity_system(masks, parity_bit)
        if particular is None:
            return Verdict(False, NoOddSquareSubset(basis))
        idx = _min_support_solution(particular, nulls)
        subset = tuple(elems[i] for i in idx)
        return Verdict(True, OddSquareSubset(subset, isqrt(prod(subset)), basis))
    hs = build_hyperplanes(elems, q)
    covered, point = covers(hs)
    if covered:
        return Verdict(True, Covering(hs))
    return Verdict(False, UncoveredPoint(point, hs))


def _covers_all_points(hs: HyperplaneSet) -> bool:
    """Full scan over all q**r points (the slow cross-check for verifiers)."""
    q, r = hs.q, len(hs.basis)
    if q**r > _POINT_BUDGET:
        raise GuardError(f"verification over {q}**{r} points exceeds the enumeration budget")
    for x in product(range(q), repeat=r):
        if all(sum(c * t for c, t in zip(row, x)) % q for row in hs.rows):
            return False
    return True


def _exists_odd_square_subset(elems: Sequence[int]) -> bool:
    """Re-decision used by the verifier; brute force where affordable."""
    n = len(elems)
    if n <= 16:
        for mask in range(1, 1 << n):
            if mask.bit_count() % 2 == 0:
                continue
            pr = 1
            for i in range(n):
                if mask >> i & 1:
                    pr *= elems[i]
            if pr > 0 and isqrt(pr) ** 2 == pr:
                return True
        return False
    _, masks, parity_bit = _square_masks(elems)
    particular, _ = _solve_parity_system(masks, parity_bit)
    return particular is not None


def verify_witness(elements: Iterable[int], q: int, verdict: Verdict) -> bool:
    """Recheck a verdict from scratch; False on any mismatch, never raises."""
    try:
        return _verify(list(elements), q, verdict)
    except Exception:
        return False


def _verify(elements: list[int], q: int, verdict: Verdict) -> bool:
    require_prime(q)
    elems = _dedup(elements)
    w = verdict.witness
    if isinstance(w, PerfectPower):
        if not verdict.member or w.element not in elems:
            return False
        return is_perfect_power(w.element, q)
    if isinstance(w, OddSquareSubset):
        if not verdict.member or q != 2:
            return False
        sub = w.subset
        if len(set(sub)) != len(sub) or not set(sub) <= set(elems):
            return False
        if len(sub) % 2 == 0:
            return False
        return prod(sub) == w.g * w.g
    if isinstance(w, NoOddSquareSubset):
        if verdict.member or q != 2:
            return False
        if any(is_perfect_power(b, 2) for b in elems):
            return False
        return not _exists_odd_square_subset(elems)
    if isinstance(w, Covering):
        if not verdict.member or q == 2 or w.hyperplanes.q != q:
            return False
        if build_hyperplanes(elems, q) != w.hyperplanes:
            return False
        return _covers_all_points(w.hyperplanes)
    if isinstance(w, UncoveredPoint):
        if verdict.member or q == 2 or w.hyperplanes.q != q:
            return False
        rebuilt = build_hyperplanes(elems, q)  # raises if a perfect power slipped in
        if rebuilt != w.hyperplanes:
            return False
        x = w.point
        if len(x) != len(rebuilt.basis) or any(not 0 <= v < q for v in x):
            return False
        if not any(x):
            return False  # the zero point lies on every hyperplane
        return all(sum(c * t for c, t in zip(row, x)) % q for row in rebuilt.rows)
    return False
