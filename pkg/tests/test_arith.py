import math
import random

import pytest
import sympy

from satlab import arith
from satlab.errors import (
    IncompleteFactorization,
    NonCoprimeResidue,
    ZeroInput,
    ZeroVector,
)


def test_factor_small_known():
    fz = arith.factor(-360)
    assert fz.sign == -1
    assert fz.factors == {2: 3, 3: 2, 5: 1}
    assert fz.complete
    assert fz.omega() == 6
    assert fz.value() == -360


def test_factor_units():
    assert arith.factor(1).factors == {}
    assert arith.factor(-1).sign == -1
    with pytest.raises(ZeroInput):
        arith.factor(0)


def test_factor_rho_semiprime():
    p, q = 1_000_003, 1_000_033
    fz = arith.factor(p * q)
    assert fz.complete
    assert fz.factors == {p: 1, q: 1}


def test_factor_perfect_powers():
    assert arith.factor(2 ** 64).factors == {2: 64}
    assert arith.factor(3 ** 40).factors == {3: 40}
    n = (10 ** 6 + 3) ** 2
    assert arith.factor(n).factors == {10 ** 6 + 3: 2}


def test_factor_matches_sympy():
    rng = random.Random(0xA1)
    for _ in range(200):
        n = rng.randint(2, 10 ** 12)
        fz = arith.factor(n)
        assert fz.complete
        assert fz.factors == sympy.factorint(n)


def test_factor_variants_agree():
    rng = random.Random(0xA2)
    for _ in range(40):
        n = rng.randint(10 ** 8, 10 ** 14)
        f0 = arith.factor(n, variant=0)
        f1 = arith.factor(n, variant=1)
        assert f0.factors == f1.factors


def test_is_probable_prime_vs_sympy():
    for n in range(-3, 2000):
        assert arith.is_probable_prime(n) == sympy.isprime(n)
    rng = random.Random(0xA3)
    for _ in range(300):
        n = rng.randint(10 ** 9, 10 ** 15)
        assert arith.is_probable_prime(n) == sympy.isprime(n)


def test_omega_additive():
    rng = random.Random(0xA4)
    for _ in range(100):
        a = rng.randint(2, 10 ** 8)
        b = rng.randint(2, 10 ** 8)
        assert arith.omega(a * b) == arith.omega(a) + arith.omega(b)


def test_omega_zero_is_infinite():
    assert arith.omega(0) == arith.OMEGA_INFINITE
    assert arith.omega(1) == 0
    assert arith.omega(-8) == 3


def test_arith_functions_fields():
    facts = arith.arith_functions(360, primes=(2, 3, 7))
    assert dict(facts.valuations) == {2: 3, 3: 2, 7: 0}
    assert facts.omega == 6 and facts.nu == 3
    assert facts.radical == 30
    assert facts.mobius == 0
    assert arith.arith_functions(2 * 3 * 5 * 7).mobius == 1
    assert arith.arith_functions(2 * 3 * 5).mobius == -1


def test_incomplete_factorization_raises():
    # two 25-digit primes; a tiny budget cannot split the product
    p = sympy.nextprime(10 ** 24)
    q = sympy.nextprime(p)
    fz = arith.factor(p * q, budget=10)
    assert not fz.complete
    with pytest.raises(IncompleteFactorization):
        fz.omega()


def test_to_primitive_canonical():
    pt = arith.to_primitive((-2, 2, 4, -4))
    assert pt.coords == (1, -1, -2, 2)
    assert pt.height == 2
    assert arith.to_primitive((0, -3, 6)).coords == (0, 1, -2)
    with pytest.raises(ZeroVector):
        arith.to_primitive((0, 0, 0))


def test_omega_projective_values():
    assert arith.omega_projective((-1, 1, 2, -2)) == 2
    assert arith.omega_projective((0, 1, -1, 0)) == arith.OMEGA_INFINITE
    assert arith.omega_projective((30, 1)) == 3


def test_omega_projective_scale_invariant():
    rng = random.Random(0xA5)
    for _ in range(50):
        vec = tuple(rng.randint(1, 500) for _ in range(3))
        k = rng.randint(2, 9)
        assert arith.omega_projective(vec) == arith.omega_projective(
            tuple(k * x for x in vec))


def test_primes_in_ap():
    assert list(arith.primes_in_ap(4, 1, count=5)) == [5, 13, 17, 29, 37]
    assert list(arith.primes_in_ap(1470, 1, count=3)) == [1471, 5881, 7351]
    with pytest.raises(NonCoprimeResidue):
        list(arith.primes_in_ap(6, 3, count=1))


def test_density_in_box_exact():
    from fractions import Fraction
    assert arith.density_in_box(1, 4) == Fraction(1, 4)


def test_module_selftest():
    assert all(ok for _, ok in arith.selftest())
