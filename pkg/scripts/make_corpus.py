#!/usr/bin/env python3
"""Regenerate tests/data/corpus.json: 50 member and 50 non-member sets.

Members come from two-prime covering families (optionally scaled by q-th
powers or grown by an extra element), so their verdicts carry covering or
odd-square-subset witnesses rather than a perfect power.  Non-members are
random small sets with no perfect power, kept only if the sieve already
exhibits a failing prime below 1e4 (guaranteed for these shapes, checked
anyway).  Every label is validated with decide() before it is written.
"""

import json
import random
import sys
from pathlib import Path

from qres import decide, estimate_density, is_perfect_power

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "corpus.json"

PRIME_POOL = [2, 3, 5, 7, 11, 13, 17, 19, 23]


def covering_family(q: int, p1: int, p2: int) -> list[int]:
    """p1 plus p1**j * p2 for j < q: the hyperplanes cover the plane."""
    return [p1] + [p1**j * p2 for j in range(q)]


def make_members(rng: random.Random) -> list[dict]:
    members = []
    seen = set()
    specs = [(2, 22), (3, 18), (5, 10)]
    for q, want in specs:
        got = 0
        while got < want:
            p1, p2 = rng.sample(PRIME_POOL, 2)
            base = covering_family(q, p1, p2)
            style = rng.randrange(3)
            if style == 1:  # scale one element by a q-th power
                i = rng.randrange(len(base))
                g = rng.choice([2, 3, 5])
                base[i] *= g**q if q != 2 else g * g
            elif style == 2:  # grow by an unrelated element
                extra = 0
                while extra == 0 or extra in base:
                    extra = rng.randint(-100, 100)
                base.append(extra)
            key = (q, tuple(sorted(base)))
            if key in seen or len(set(base)) != len(base):
                continue
            verdict = decide(base, q)
            assert verdict.member, (q, base)
            seen.add(key)
            members.append({"q": q, "set": base})
            got += 1
    return members


def make_non_members(rng: random.Random) -> list[dict]:
    non_members = []
    seen = set()
    specs = [(2, 20), (3, 18), (5, 12)]
    for q, want in specs:
        got = 0
        while got < want:
            size = rng.randint(1, q + 1)
            elems: list[int] = []
            while len(elems) < size:
                b = rng.randint(-60, 60)
                if b != 0 and b not in elems and not is_perfect_power(b, q):
                    elems.append(b)
            key = (q, tuple(sorted(elems)))
            if key in seen:
                continue
            if decide(elems, q).member:
                continue
            est = estimate_density(elems, q, 10**4)
            if est.primes_hit == est.primes_tested:
                continue  # no failing prime visible below 1e4; resample
            seen.add(key)
            non_members.append({"q": q, "set": elems})
            got += 1
    return non_members


def main() -> int:
    rng = random.Random(0x5EED)
    corpus = {"members": make_members(rng), "non_members": make_non_members(rng)}
    assert len(corpus["members"]) == 50
    assert len(corpus["non_members"]) == 50
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(corpus, indent=1) + "\n")
    print(f"wrote {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
