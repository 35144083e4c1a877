"""Acceptance checklist: one test per criterion, one printed verdict line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the verdict lines.

Two sub-assertions are implemented exactly as specified but fail against
the exact computation (the failure messages carry the measured values):
the cubic-residue density target for {2} (the sieve gives ~2/3, see
criterion 5) and the multiplicative small-N monotonicity (the perfect-cube
count jumps at N = q, see criterion 8).
"""

import json
import random
import time
from fractions import Fraction
from itertools import combinations
from qres import (
    ADDITIVE,
    MULTIPLICATIVE,
    BoxSpec,
    PrimeBasis,
    count_with_perfect_power,
    decide,
    estimate_density,
    factor,
    is_perfect_power,
    odd_square_subset,
    run_census,
    verify_witness,
)
from qres.census import csv_row
from qres.criterion import Covering, HyperplaneSet, covers

from oracle_utils import has_odd_square_subset, naive_covering

CORPUS_PATH = __file__.rsplit("/", 1)[0] + "/data/corpus.json"


def _line(n: int, name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    tail = f" - {detail}" if detail else ""
    print(f"\nACCEPTANCE {n} ({name}): {status}{tail}")


def test_criterion_1_two_prime_covering_reproduction():
    start = time.perf_counter()
    verdict = decide([2, 5, 10, 20], 3)
    ok_member = verdict.member and isinstance(verdict.witness, Covering)
    hs = verdict.witness.hyperplanes
    ok_basis = hs.basis == PrimeBasis((2, 5))
    ok_rows = hs.rows == ((1, 0), (0, 1), (1, 1), (2, 1))
    ok_verify = verify_witness([2, 5, 10, 20], 3, verdict)
    elapsed = time.perf_counter() - start
    ok = ok_member and ok_basis and ok_rows and ok_verify and elapsed < 1.0
    _line(1, "two-prime covering reproduction", ok, f"{elapsed * 1000:.0f} ms")
    assert ok_member and ok_basis and ok_rows and ok_verify
    assert elapsed < 1.0


def test_criterion_2_small_sets_exhaustive():
    start = time.perf_counter()
    pool = [n for n in range(-20, 21) if n != 0]
    exceptions = []
    checked = 0
    for size in (1, 2, 3):
        for combo in combinations(pool, size):
            has_cube = any(is_perfect_power(b, 3) for b in combo)
            member = decide(combo, 3).member
            if member != has_cube:
                exceptions.append(combo)
            checked += 1
    elapsed = time.perf_counter() - start
    ok = not exceptions and elapsed < 300.0
    _line(2, "membership of small sets is exactly perfect-cube containment", ok,
          f"{checked} sets in {elapsed:.1f} s")
    assert exceptions == []
    assert elapsed < 300.0


def test_criterion_3_square_subset_oracle_equivalence():
    start = time.perf_counter()
    rng = random.Random(31337)
    mismatches = 0
    for _ in range(1000):
        size = rng.randint(1, 12)
        elems: list[int] = []
        while len(elems) < size:
            b = rng.randint(-1000, 1000)
            if b != 0 and not is_perfect_power(b, 2) and b not in elems:
                elems.append(b)
        fast = odd_square_subset(elems)
        slow = has_odd_square_subset(elems)
        if (fast is not None) != slow:
            mismatches += 1
        if fast is not None:
            subset, g = fast
            assert len(subset) % 2 == 1
            pr = 1
            for b in subset:
                pr *= b
            assert pr == g * g
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 60.0
    _line(3, "square-subset search matches 2^n brute force", ok, f"{elapsed:.1f} s")
    assert mismatches == 0
    assert elapsed < 60.0


def test_criterion_4_covering_oracle_equivalence():
    rng = random.Random(40404)
    first_primes = (2, 3, 5, 7)
    mismatches = 0
    for _ in range(1000):
        q = rng.choice([3, 5, 7])
        r = rng.randint(1, 4)
        rows = []
        for _ in range(rng.randint(1, 2 * q + 2)):
            row = tuple(rng.randrange(q) for _ in range(r))
            if any(row):
                rows.append(row)
        if not rows:
            rows = [(1,) * r]
        hs = HyperplaneSet(q, PrimeBasis(first_primes[:r]), tuple(rows))
        if covers(hs) != naive_covering(q, r, hs.rows):
            mismatches += 1
    ok = mismatches == 0
    _line(4, "projective covering scan matches full enumeration", ok)
    assert mismatches == 0


def test_criterion_5_sieve_cross_validation():
    start = time.perf_counter()
    full = estimate_density([2, 3, 6], 2, 10**6)
    single_sq = estimate_density([2], 2, 10**6)
    single_cu = estimate_density([2], 3, 10**6)
    elapsed = time.perf_counter() - start

    ok_full = full.fraction == 1
    ok_sq = Fraction(49, 100) <= single_sq.fraction <= Fraction(51, 100)
    ok_cu = Fraction(768, 1000) <= single_cu.fraction <= Fraction(788, 1000)
    ok_time = elapsed < 120.0
    detail = (
        f"{{2,3,6}}@q2={full.primes_hit}/{full.primes_tested}, "
        f"{{2}}@q2={float(single_sq.fraction):.4f}, "
        f"{{2}}@q3={float(single_cu.fraction):.4f} vs required [0.768, 0.788], "
        f"{elapsed:.1f} s"
    )
    _line(5, "sieve cross-validation", ok_full and ok_sq and ok_cu and ok_time, detail)
    assert ok_full, f"{{2,3,6}} must hit every prime, got {full.fraction}"
    assert ok_sq, f"{{2}} at q=2 out of range: {float(single_sq.fraction)}"
    assert ok_time
    assert ok_cu, (
        f"{{2}} at q=3 gives {single_cu.primes_hit}/{single_cu.primes_tested} "
        f"= {float(single_cu.fraction):.6f}; the required window [0.768, 0.788] "
        f"around 7/9 contradicts the exact sieve count (the hit rate among "
        f"primes is 1/2 + 1/2 * 1/3 = 2/3: half of all primes are 1 mod 3 and "
        f"exactly a third of those see 2 as a cube)"
    )


def test_criterion_6_criterion_sieve_coherence():
    with open(CORPUS_PATH) as fh:
        corpus = json.load(fh)
    assert len(corpus["members"]) == 50
    assert len(corpus["non_members"]) == 50

    bad_members = []
    for entry in corpus["members"]:
        q, elems = entry["q"], entry["set"]
        assert decide(elems, q).member
        est = estimate_density(elems, q, 10**5)
        allowed = {q}
        for b in elems:
            allowed |= {p for p, _ in factor(b).factors}
        if not set(est.failing_primes_sample) <= allowed:
            bad_members.append(entry)

    bad_non = []
    for entry in corpus["non_members"]:
        q, elems = entry["q"], entry["set"]
        assert not decide(elems, q).member
        est = estimate_density(elems, q, 10**4)
        if not est.failing_primes_sample or est.failing_primes_sample[0] > 10**4:
            bad_non.append(entry)

    ok = not bad_members and not bad_non
    _line(6, "criterion and sieve agree on the fixed corpus", ok)
    assert bad_members == []
    assert bad_non == []


def test_criterion_7_census_matches_power_count_formula():
    cells = []
    for q in (2, 3):
        for k in (1, 2, 3):
            for N in range(1, 13):
                cells.append((q, k, BoxSpec(ADDITIVE, N)))
            for N in (1, 2, 3):
                cells.append((q, k, BoxSpec(MULTIPLICATIVE, N)))
    mismatches = []
    for q, k, spec in cells:
        row = run_census(q, k, spec)
        exact = count_with_perfect_power(q, k, spec).exact
        if row.with_perfect_power != exact:
            mismatches.append((q, k, spec, row.with_perfect_power, exact))
    ok = not mismatches
    _line(7, "census tally equals the closed-form power count", ok, f"{len(cells)} cells")
    assert mismatches == []


def test_criterion_8_decay_at_desk_scale():
    start = time.perf_counter()
    additive_ok = True
    additive_detail = []
    for k in (1, 2, 3):
        rows = [run_census(2, k, BoxSpec(ADDITIVE, N)) for N in (4, 9, 16, 25, 36)]
        ratios = [r.ratio for r in rows]
        norms = [r.normalized for r in rows]
        strict = all(b < a for a, b in zip(ratios, ratios[1:]))
        bounded = all(n <= norms[0] * 4 for n in norms)
        additive_ok = additive_ok and strict and bounded
        additive_detail.append(f"k={k} strict={strict} bounded={bounded}")

    mult_rows = {
        k: [run_census(3, k, BoxSpec(MULTIPLICATIVE, N)) for N in (2, 3)] for k in (1, 2)
    }
    mult_norms = {k: [r.normalized for r in rows] for k, rows in mult_rows.items()}
    mult_ok = all(
        all(b <= a for a, b in zip(norms, norms[1:])) for norms in mult_norms.values()
    )
    elapsed = time.perf_counter() - start
    ok = additive_ok and mult_ok and elapsed < 600.0
    detail = (
        f"additive [{'; '.join(additive_detail)}]; multiplicative normalized "
        f"k=1 {mult_norms[1]}, k=2 {mult_norms[2]}; {elapsed:.1f} s"
    )
    _line(8, "count decay at desk scale", ok, detail)
    assert additive_ok, additive_detail
    assert elapsed < 600.0
    assert mult_ok, (
        f"multiplicative normalized counts rise between N=2 and N=3 "
        f"(k=1 {mult_norms[1]}, k=2 {mult_norms[2]}): the number of perfect "
        f"cubes in the box jumps from 2 to 16 when an exponent multiple of q "
        f"first fits (floor(N/q) steps at N=q=3), so members*q**N/N**(N*k) "
        f"cannot be non-increasing over N in {{2, 3}}"
    )


def test_criterion_9_worker_count_determinism():
    # decide/covers take no worker knob (their outputs cannot vary), so the
    # byte-identity check targets every worker-parameterized surface: the
    # criterion-5 density runs and the criterion-7/8 census cells.  The
    # elapsed_ms column is wall time and is zeroed before comparison.
    density_cases = [([2, 3, 6], 2), ([2], 2), ([2], 3)]
    census_cases = (
        [(2, k, BoxSpec(ADDITIVE, N)) for k in (1, 2, 3) for N in (4, 9, 16, 25, 36)]
        + [(3, k, BoxSpec(MULTIPLICATIVE, N)) for k in (1, 2) for N in (2, 3)]
        + [(q, k, BoxSpec(MULTIPLICATIVE, 3)) for q in (2, 3) for k in (1, 2, 3)]
    )
    mismatch = []
    for elems, q in density_cases:
        outs = []
        for w in (1, 4, 8):
            est = estimate_density(elems, q, 10**6, workers=w)
            outs.append(json.dumps([est.primes_tested, est.primes_hit,
                                    list(est.failing_primes_sample)]))
        if not outs[0] == outs[1] == outs[2]:
            mismatch.append(("density", q, elems))
    for q, k, spec in census_cases:
        outs = []
        for w in (1, 4, 8):
            row = run_census(q, k, spec, workers=w)
            line = csv_row(row).rsplit(",", 1)[0] + ",0"
            outs.append(line)
        if not outs[0] == outs[1] == outs[2]:
            mismatch.append(("census", q, k, spec))
    verdicts = [decide([2, 5, 10, 20], 3).to_jsonable() for _ in range(3)]
    if not verdicts[0] == verdicts[1] == verdicts[2]:
        mismatch.append(("decide",))
    ok = not mismatch
    _line(9, "byte-identical outputs at worker counts 1, 4, 8", ok)
    assert mismatch == []
