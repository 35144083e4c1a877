"""Exact integer arithmetic: factorization, q-free parts, perfect powers.

Every function here is pure and deterministic, and the returned values are
immutable, so they can be shared freely between worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, prod

from .errors import ContractError, MagnitudeError, ZeroInputError

#: Largest supported |n|.  Inputs are desk-scale by design.
MAX_MAGNITUDE = 2**63 - 1

# Trial division finds every prime factor up to this bound; whatever
# survives is split by Brent's cycle method with a fixed parameter
# schedule, so repeated runs factor identically.
_TRIAL_BOUND = 10**6

# Witness set certifying primality for everything below 3.3e24, which
# covers the full supported magnitude range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

#: A row of exponent residues over a prime basis (plus a leading sign
#: slot when q == 2).
ExponentVector = tuple[int, ...]


def is_prime(n: int) -> bool:
    """Miller-Rabin with a fixed base set, deterministic for n < 3.3e24."""
    if n < 2:
        return False
    if n in _MR_BASES:
        return True
    if any(n % p == 0 for p in _MR_BASES):
        return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(q: int) -> None:
    if not is_prime(q):
        raise ContractError(f"q must be prime, got {q}")


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 0:
        raise ValueError("iroot expects n >= 0")
    if k == 1 or n == 0:
        return n
    if k == 2:
        return isqrt(n)
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


@dataclass(frozen=True)
class FactoredInteger:
    """A nonzero integer split as sign * prod(p**e), pairs sorted by prime."""

    sign: int
    factors: tuple[tuple[int, int], ...]
    value: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ContractError(f"sign must be +1 or -1, got {self.sign}")
        last = 1
        for p, e in self.factors:
            if p <= last or not is_prime(p):
                raise ContractError(f"factor keys must be increasing primes, got {p}")
            if e < 1:
                raise ContractError(f"exponent of {p} must be positive, got {e}")
            last = p
        if self.sign * prod(p**e for p, e in self.factors) != self.value:
            raise ContractError("factors do not recompose to value")

    @classmethod
    def from_factors(cls, sign: int, factors: dict[int, int]) -> "FactoredInteger":
        items = tuple(sorted(factors.items()))
        return cls(sign, items, sign * prod(p**e for p, e in items))

    def exponent(self, p: int) -> int:
        for prime, e in self.factors:
            if prime == p:
                return e
        return 0

    def is_unit(self) -> bool:
        return not self.factors


@dataclass(frozen=True)
class PrimeBasis:
    """Strictly increasing primes spanning the exponent coordinates."""

    primes: tuple[int, ...]

    def __post_init__(self) -> None:
        last = 1
        for p in self.primes:
            if p <= last:
                raise ContractError("basis primes must be strictly increasing")
            if not is_prime(p):
                raise ContractError(f"basis entry {p} is not prime")
            last = p

    def __len__(self) -> int:
        return len(self.primes)


@lru_cache(maxsize=1 << 16)
def factor(n: int) -> FactoredInteger:
    """Exact prime factorization of a nonzero integer.

    Raises ZeroInputError for 0 and MagnitudeError beyond MAX_MAGNITUDE.
    """
    if n == 0:
        raise ZeroInputError("0 has no prime factorization")
    if abs(n) > MAX_MAGNITUDE:
        raise MagnitudeError(f"|n| exceeds the supported bound {MAX_MAGNITUDE}")
    sign = 1 if n > 0 else -1
    m = abs(n)
    found: dict[int, int] = {}
    for p in (2, 3):
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    d = 5
    while d * d <= m and d <= _TRIAL_BOUND:
        for p in (d, d + 2):
            while m % p == 0:
                found[p] = found.get(p, 0) + 1
                m //= p
        d += 6
    if m > 1:
        _split_into(m, found)
    return FactoredInteger.from_factors(sign, found)


def _split_into(m: int, found: dict[int, int]) -> None:
    if is_prime(m):
        found[m] = found.get(m, 0) + 1
        return
    d = _brent_factor(m)
    _split_into(d, found)
    _split_into(m // d, found)


def _brent_factor(n: int) -> int:
    """A nontrivial divisor of an odd composite n (fixed schedule, no RNG)."""
    if n % 2 == 0:
        return 2
    for c in range(1, 1000):
        y, r, q = 2, 1, 1
        g, x, ys = 1, 2, 2
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ContractError(f"factor search exhausted for {n}")


def q_free_part(f: FactoredInteger, q: int) -> FactoredInteger:
    """Exponents reduced mod q, zero exponents dropped.

    Odd q ignores the sign (the reduction acts on the magnitude); q == 2
    keeps it, because a negative integer is never a square.
    """
    require_prime(q)
    sign = f.sign if q == 2 else 1
    reduced = {p: e % q for p, e in f.factors if e % q}
    return FactoredInteger.from_factors(sign, reduced)


@lru_cache(maxsize=1 << 16)
def is_perfect_power(n: int, q: int) -> bool:
    """True iff n == g**q for some integer g; 0 counts for every q."""
    require_prime(q)
    if n == 0:
        return True
    if n < 0 and q == 2:
        return False
    m = abs(n)
    r = iroot(m, q)
    return r**q == m


def exponent_vector(f: FactoredInteger, q: int, basis: PrimeBasis) -> ExponentVector:
    """Exponents of f mod q over the basis; q == 2 prepends a sign slot."""
    require_prime(q)
    exps = dict(f.factors)
    in_basis = set(basis.primes)
    for p, e in f.factors:
        if e % q and p not in in_basis:
            raise ContractError(f"prime {p} carries residue {e % q} but is missing from the basis")
    coords = tuple(exps.get(p, 0) % q for p in basis.primes)
    if q == 2:
        return (1 if f.sign < 0 else 0,) + coords
    return coords
