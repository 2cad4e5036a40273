"""Exact big-integer arithmetic: factoring, prime-divisor counts, primitive points.

Everything here is deterministic.  Randomized subroutines (Miller-Rabin wide
bases, Pollard rho parameters) derive their choices from the input and an
explicit ``variant`` integer, so a rerun factors the same number the same way
while ``variant=1`` exercises an independent parameter sequence for
cross-checking.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, Optional, Sequence, Tuple

from .errors import (
    IncompleteFactorization,
    NonCoprimeResidue,
    ZeroInput,
    ZeroVector,
)

TRIAL_LIMIT = 100_000
DEFAULT_FACTOR_BUDGET = 10_000_000
OMEGA_INFINITE = math.inf

# Deterministic Miller-Rabin with these bases is exact below this threshold.
_MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# 64 extra rounds above the threshold: error probability < 4**-64 = 2**-128.
_MR_WIDE_ROUNDS = 64

_small_primes: Optional[list] = None


def small_primes() -> list:
    """Primes below TRIAL_LIMIT, sieved once and cached."""
    global _small_primes
    if _small_primes is None:
        sieve = bytearray([1]) * TRIAL_LIMIT
        sieve[0:2] = b"\x00\x00"
        for p in range(2, math.isqrt(TRIAL_LIMIT) + 1):
            if sieve[p]:
                sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
        _small_primes = [i for i in range(TRIAL_LIMIT) if sieve[i]]
    return _small_primes


def _mr_witness(a: int, d: int, r: int, n: int) -> bool:
    """True if a witnesses compositeness of n = d*2^r + 1."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_probable_prime(n: int) -> bool:
    """Primality test.

    Exact for n below ~3.3e24 (fixed Miller-Rabin bases); above that, 64
    additional rounds with bases derived deterministically from n push the
    error probability below 2**-128.
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        if _mr_witness(a, d, r, n):
            return False
    if n < _MR_DETERMINISTIC_LIMIT:
        return True
    rng = random.Random(n & 0xFFFFFFFFFFFFFFFF)
    for _ in range(_MR_WIDE_ROUNDS):
        a = rng.randrange(2, n - 1)
        if _mr_witness(a, d, r, n):
            return False
    return True


def _pollard_brent(n: int, c: int, budget: int) -> Tuple[Optional[int], int]:
    """Brent-cycle Pollard rho on odd composite n with x -> x^2 + c.

    Returns (factor or None, iterations consumed).  The factor may be
    composite; callers recurse.
    """
    if n % 2 == 0:
        return 2, 0
    x = y = 2
    d = 1
    spent = 0
    q = 1
    m = 128
    r = 1
    while d == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and d == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            spent += min(m, r - k)
            if spent > budget:
                return None, spent
            d = math.gcd(q, n)
            k += m
        r *= 2
    if d == n:
        # backtrack one step at a time
        d = 1
        while d == 1:
            ys = (ys * ys + c) % n
            spent += 1
            if spent > budget:
                return None, spent
            d = math.gcd(abs(x - ys), n)
    if d == n:
        return None, spent
    return d, spent


def _iroot(n: int, k: int) -> int:
    """Floor of the integer k-th root (binary search, exact)."""
    if n < 2:
        return n
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _perfect_power(n: int) -> Optional[Tuple[int, int]]:
    """Return (m, k) with m**k == n and k >= 2, or None."""
    for k in range(2, n.bit_length() + 1):
        m = _iroot(n, k)
        if m >= 2 and m**k == n:
            return m, k
        if m < 2:
            break
    return None


@dataclass
class Factorization:
    """Signed factorization; ``cofactors`` holds composite leftovers when the
    splitter budget ran out (then ``complete`` is False)."""

    sign: int
    factors: Dict[int, int] = field(default_factory=dict)
    cofactors: Dict[int, int] = field(default_factory=dict)
    complete: bool = True

    def value(self) -> int:
        n = self.sign
        for p, e in self.factors.items():
            n *= p**e
        for c, e in self.cofactors.items():
            n *= c**e
        return n

    def omega(self) -> int:
        """Prime divisors counted with multiplicity (sign ignored)."""
        if not self.complete:
            raise IncompleteFactorization("cofactor left unfactored")
        return sum(self.factors.values())

    def nu(self) -> int:
        if not self.complete:
            raise IncompleteFactorization("cofactor left unfactored")
        return len(self.factors)

    def radical(self) -> int:
        if not self.complete:
            raise IncompleteFactorization("cofactor left unfactored")
        r = 1
        for p in self.factors:
            r *= p
        return r

    def mobius(self) -> int:
        if not self.complete:
            raise IncompleteFactorization("cofactor left unfactored")
        if any(e > 1 for e in self.factors.values()):
            return 0
        return -1 if len(self.factors) % 2 else 1

    def valuation(self, p: int) -> int:
        return self.factors.get(p, 0)


def factor(n: int, budget: int = DEFAULT_FACTOR_BUDGET, variant: int = 0) -> Factorization:
    """Factor a nonzero integer exactly.

    Trial division below TRIAL_LIMIT, then Miller-Rabin plus Brent-rho with a
    shared iteration ``budget``.  ``variant`` shifts the rho parameter
    sequence so an independent second pass can confirm a factorization.
    """
    if n == 0:
        raise ZeroInput("0 has no factorization")
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = Factorization(sign=sign)
    if n == 1:
        return out
    for p in small_primes():
        if p * p > n:
            break
        while n % p == 0:
            out.factors[p] = out.factors.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    if n < TRIAL_LIMIT * TRIAL_LIMIT or is_probable_prime(n):
        # below the square of the trial bound any survivor is prime
        out.factors[n] = out.factors.get(n, 0) + 1
        return out

    remaining = [n]
    left = budget
    while remaining:
        m = remaining.pop()
        if is_probable_prime(m):
            out.factors[m] = out.factors.get(m, 0) + 1
            continue
        pp = _perfect_power(m)
        if pp is not None:
            base, k = pp
            remaining.extend([base] * k)
            continue
        got = None
        c = 1 + 13 * variant
        while left > 0:
            d, spent = _pollard_brent(m, c, left)
            left -= spent
            if d is not None and d not in (1, m):
                got = d
                break
            c += 1
        if got is None:
            out.cofactors[m] = out.cofactors.get(m, 0) + 1
            out.complete = False
        else:
            remaining.append(got)
            remaining.append(m // got)
    out.factors = dict(sorted(out.factors.items()))
    return out


@dataclass(frozen=True)
class NumberFacts:
    """Multiplicative bookkeeping for one integer (sign ignored)."""

    n: int
    omega: float  # int, or OMEGA_INFINITE for n = 0
    nu: float
    mobius: int
    radical: int
    valuations: Tuple[Tuple[int, int], ...] = ()

    def valuation(self, p: int) -> int:
        for q, e in self.valuations:
            if q == p:
                return e
        return 0


def arith_functions(
    n: int,
    primes: Sequence[int] = (),
    budget: int = DEFAULT_FACTOR_BUDGET,
) -> NumberFacts:
    """Omega, nu, Mobius, radical and requested p-adic valuations of n.

    n = 0 gets the infinite sentinel for omega/nu, mobius 0 and radical 0.
    Raises IncompleteFactorization if the budget leaves a composite cofactor.
    """
    if n == 0:
        return NumberFacts(0, OMEGA_INFINITE, OMEGA_INFINITE, 0, 0,
                           tuple((p, OMEGA_INFINITE) for p in primes))
    fac = factor(n, budget=budget)
    if not fac.complete:
        raise IncompleteFactorization(f"budget exhausted on {n}")
    vals = tuple((p, fac.valuation(p)) for p in primes)
    return NumberFacts(n, fac.omega(), fac.nu(), fac.mobius(), fac.radical(), vals)


def omega(n: int, budget: int = DEFAULT_FACTOR_BUDGET) -> float:
    """Prime divisors of n with multiplicity; infinite sentinel at 0."""
    if n == 0:
        return OMEGA_INFINITE
    fac = factor(n, budget=budget)
    if not fac.complete:
        raise IncompleteFactorization(f"budget exhausted on {n}")
    return fac.omega()


@dataclass(frozen=True)
class ProjectivePoint:
    """Primitive integer vector: gcd 1, first nonzero coordinate positive."""

    coords: Tuple[int, ...]

    def __post_init__(self):
        if not self.coords or all(c == 0 for c in self.coords):
            raise ZeroVector("projective point needs a nonzero coordinate")
        g = 0
        for c in self.coords:
            g = math.gcd(g, c)
        if g != 1:
            raise ValueError("coordinates not primitive")
        first = next(c for c in self.coords if c != 0)
        if first < 0:
            raise ValueError("leading sign not normalized")

    @property
    def height(self) -> int:
        return max(abs(c) for c in self.coords)

    def __str__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"


def to_primitive(vec: Sequence[int]) -> ProjectivePoint:
    """Scale an integer vector to its canonical primitive representative."""
    vec = tuple(int(v) for v in vec)
    if not vec or all(v == 0 for v in vec):
        raise ZeroVector("zero vector has no primitive representative")
    g = 0
    for v in vec:
        g = math.gcd(g, v)
    vec = tuple(v // g for v in vec)
    first = next(v for v in vec if v != 0)
    if first < 0:
        vec = tuple(-v for v in vec)
    return ProjectivePoint(vec)


def omega_projective(
    point: Sequence[int],
    budget: int = DEFAULT_FACTOR_BUDGET,
    variant: int = 0,
) -> float:
    """Omega of the coordinate product of the primitive representative.

    Scaling invariant by construction.  Any zero coordinate gives the
    infinite sentinel.  Coordinates are factored separately; their omegas
    add up to the omega of the product.
    """
    pt = point if isinstance(point, ProjectivePoint) else to_primitive(point)
    if any(c == 0 for c in pt.coords):
        return OMEGA_INFINITE
    total = 0
    for c in pt.coords:
        fac = factor(c, budget=budget, variant=variant)
        if not fac.complete:
            raise IncompleteFactorization(f"budget exhausted on coordinate {c}")
        total += fac.omega()
    return total


def primes_in_ap(
    q: int,
    a: int,
    count: Optional[int] = None,
    limit: Optional[int] = None,
) -> Iterator[int]:
    """Primes p = a (mod q) in increasing order.

    Requires gcd(a, q) = 1 (otherwise at most one such prime exists and the
    progression is useless here).  Stops after ``count`` primes or past
    ``limit``; with neither the iterator is endless.
    """
    if q < 1:
        raise ValueError("modulus must be positive")
    if math.gcd(a, q) != 1:
        raise NonCoprimeResidue(f"gcd({a}, {q}) > 1")
    n = a % q
    if n == 0:
        n = q
    emitted = 0
    while True:
        if limit is not None and n > limit:
            return
        if n >= 2 and is_probable_prime(n):
            yield n
            emitted += 1
            if count is not None and emitted >= count:
                return
        n += q


def density_in_box(numer: int, denom: int) -> Fraction:
    """Exact record density helper used by search reports."""
    return Fraction(numer, denom)


def selftest() -> list:
    """Quick invariant checks; returns (name, ok) pairs."""
    results = []
    f = factor(-12)
    results.append(("factor(-12)", f.sign == -1 and f.factors == {2: 2, 3: 1}))
    results.append(("mersenne61", factor(2**61 - 1).factors == {2**61 - 1: 1}))
    results.append(("omega(360)", omega(360) == 6))
    results.append(("omega(0) sentinel", omega(0) == OMEGA_INFINITE))
    p = to_primitive((-2, 2, 4, -4))
    results.append(("to_primitive", p.coords == (1, -1, -2, 2)))
    results.append(("omega_projective", omega_projective((-1, 1, 2, -2)) == 2))
    ap = list(primes_in_ap(4, 1, count=3))
    results.append(("primes 1 mod 4", ap == [5, 13, 17]))
    rng = random.Random(7)
    ok = True
    for _ in range(50):
        x = rng.randrange(2, 10**6)
        y = rng.randrange(2, 10**6)
        ok = ok and omega(x * y) == omega(x) + omega(y)
    results.append(("omega additive", ok))
    return results
