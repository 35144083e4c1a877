"""Sieve, residue test, and density estimates."""

import random
from fractions import Fraction

import pytest

from qres.density import estimate_density, is_qth_residue, primes_up_to
from qres.errors import ContractError

from oracle_utils import residue_by_enumeration

# Frozen from the enumeration oracle (x**q over all x mod p, p <= 1e4):
# 1229 primes below 1e4; 604 of them see 2 as a square, 818 as a cube.
PI_1E4 = 1229
HITS_2_Q2_1E4 = 604
HITS_2_Q3_1E4 = 818


def test_primes_examples():
    assert primes_up_to(10) == [2, 3, 5, 7]
    assert primes_up_to(2) == [2]
    assert primes_up_to(1) == []
    ps = primes_up_to(100)
    assert len(ps) == 25 and ps[-1] == 97


def test_primes_match_trial_division():
    def is_p(n):
        return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))

    assert primes_up_to(2000) == [n for n in range(2, 2001) if is_p(n)]


def test_primes_crossing_segment_boundaries():
    # counts pinned by classical values of pi(x)
    assert len(primes_up_to(10**5)) == 9592
    assert len(primes_up_to(10**6)) == 78498


def test_is_qth_residue_examples():
    assert is_qth_residue(2, 7, 2)  # squares mod 7: {1, 2, 4}
    assert not is_qth_residue(2, 7, 3)  # cubes mod 7: {0, 1, 6}
    assert is_qth_residue(2, 5, 3)  # 3 does not divide 4: cubing is a bijection
    assert is_qth_residue(14, 7, 3)  # multiples of p count as hits
    assert is_qth_residue(5, 2, 2)  # everything is a square mod 2


def test_is_qth_residue_matches_enumeration():
    for p in primes_up_to(200):
        for q in (2, 3, 5):
            for a in range(-6, 30):
                assert is_qth_residue(a, p, q) == residue_by_enumeration(a, p, q), (a, p, q)


def test_qth_powers_are_residues_randomized():
    rng = random.Random(99)
    ps = primes_up_to(10**4)
    for _ in range(10**4):
        p = rng.choice(ps)
        q = rng.choice([2, 3, 5, 7])
        g = rng.randint(-(10**6), 10**6)
        assert is_qth_residue(pow(g, q) % p, p, q)


def test_square_triple_cannot_all_fail():
    # (2/p)(3/p)(6/p) = 1 for p not dividing 6, so one of them is a hit
    for p in primes_up_to(10**4):
        if p in (2, 3):
            continue
        assert any(is_qth_residue(b, p, 2) for b in (2, 3, 6))


def test_estimate_density_full_hit_triple():
    est = estimate_density([2, 3, 6], 2, 10**5)
    assert est.primes_tested == 9592
    assert est.primes_hit == 9592
    assert est.fraction == 1
    assert est.failing_primes_sample == ()


def test_estimate_density_single_square_frozen():
    est = estimate_density([2], 2, 10**4)
    assert est.primes_tested == PI_1E4
    assert est.primes_hit == HITS_2_Q2_1E4
    assert est.fraction == Fraction(HITS_2_Q2_1E4, PI_1E4)
    assert est.failing_primes_sample[:4] == (3, 5, 11, 13)
    assert len(est.failing_primes_sample) == 32


def test_estimate_density_single_cube_frozen():
    est = estimate_density([2], 3, 10**4)
    assert est.primes_hit == HITS_2_Q3_1E4
    assert est.failing_primes_sample[0] == 7


def test_estimate_density_asymptotics_loose():
    # Legendre-symbol equidistribution: half the primes see 2 as a square;
    # cubic residues among p = 1 mod 3 hit a third, for 2/3 overall.
    est2 = estimate_density([2], 2, 10**5)
    assert abs(est2.fraction - Fraction(1, 2)) < Fraction(1, 100)
    est3 = estimate_density([2], 3, 10**5)
    assert abs(est3.fraction - Fraction(2, 3)) < Fraction(1, 100)


def test_estimate_density_deterministic_across_workers():
    one = estimate_density([2], 3, 10**4, workers=1)
    four = estimate_density([2], 3, 10**4, workers=4)
    assert one == four


def test_estimate_density_rejects_empty():
    with pytest.raises(ContractError):
        estimate_density([], 2, 100)


def test_estimate_density_zero_element_hits_everything():
    est = estimate_density([0], 5, 1000)
    assert est.primes_hit == est.primes_tested
