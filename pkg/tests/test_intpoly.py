import math
import random

import pytest
import sympy

from satlab import intpoly
from satlab.errors import ArityMismatch, ZeroPolynomial
from satlab.intpoly import IntPoly


def _random_poly(rng, nvars, max_deg=4, max_coeff=20, max_terms=6):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = tuple(rng.randint(0, max_deg) for _ in range(nvars))
        if sum(exps) > max_deg:
            continue
        c = rng.randint(-max_coeff, max_coeff)
        if c:
            terms[exps] = terms.get(exps, 0) + c
    terms = {e: c for e, c in terms.items() if c}
    if not terms:
        terms = {(0,) * nvars: 1}
    return IntPoly(nvars, terms)


def _to_sympy(f, syms):
    expr = 0
    for exps, c in f.terms.items():
        mono = c
        for x, e in zip(syms, exps):
            mono *= x ** e
        expr += mono
    return sympy.expand(expr)


def test_ring_axioms_random():
    rng = random.Random(0xB1)
    xs = sympy.symbols("x0 x1")
    for _ in range(40):
        f = _random_poly(rng, 2)
        g = _random_poly(rng, 2)
        h = _random_poly(rng, 2)
        assert _to_sympy((f + g) * h, xs) == sympy.expand(
            _to_sympy(f, xs) * _to_sympy(h, xs) + _to_sympy(g, xs) * _to_sympy(h, xs))
        pt = (rng.randint(-5, 5), rng.randint(-5, 5))
        assert (f * g).eval_at(pt) == f.eval_at(pt) * g.eval_at(pt)


def test_arity_guard():
    f = IntPoly(2, {(1, 0): 1})
    g = IntPoly(3, {(1, 0, 0): 1})
    with pytest.raises(ArityMismatch):
        f + g


def _sylvester_det_sympy(fc, gc):
    # independent oracle: the Sylvester determinant itself (sympy's
    # resultant() follows a PRS sign convention that can differ)
    m, n = len(fc) - 1, len(gc) - 1
    rows = []
    for r in range(n):
        rows.append([0] * r + list(fc) + [0] * (n - 1 - r))
    for r in range(m):
        rows.append([0] * r + list(gc) + [0] * (m - 1 - r))
    return int(sympy.Matrix(rows).det())


def _desc_coeffs(f):
    d = f.degree()
    return [f.coeff((k,)) for k in range(d, -1, -1)]


def test_resultant_matches_sylvester_det():
    rng = random.Random(0xB2)
    for _ in range(50):
        f = _random_poly(rng, 1, max_deg=5)
        g = _random_poly(rng, 1, max_deg=5)
        if f.is_constant() or g.is_constant():
            continue
        mine = intpoly.resultant(f, g)
        theirs = _sylvester_det_sympy(_desc_coeffs(f), _desc_coeffs(g))
        assert mine == theirs


def test_discriminant_matches_sympy():
    rng = random.Random(0xB3)
    x = sympy.symbols("x")
    for _ in range(30):
        f = _random_poly(rng, 1, max_deg=5)
        if f.degree() < 2:
            continue
        assert intpoly.discriminant(f) == sympy.discriminant(_to_sympy(f, (x,)), x)


def test_depressed_cubic_discriminant():
    # x^3 + p x + q has discriminant -4p^3 - 27q^2
    for p, q in [(-1, 0), (2, 3), (0, 1), (-7, 6)]:
        f = IntPoly(1, {(3,): 1, (1,): p, (0,): q})
        assert intpoly.discriminant(f) == -4 * p ** 3 - 27 * q ** 2


def test_poly_gcd_matches_sympy():
    rng = random.Random(0xB4)
    x = sympy.symbols("x")
    for _ in range(50):
        g0 = _random_poly(rng, 1, max_deg=3)
        h1 = _random_poly(rng, 1, max_deg=2)
        h2 = _random_poly(rng, 1, max_deg=2)
        f1, f2 = g0 * h1, g0 * h2
        mine = intpoly.poly_gcd(f1, f2)
        theirs = sympy.expand(sympy.gcd(_to_sympy(f1, (x,)), _to_sympy(f2, (x,))))
        assert _to_sympy(mine, (x,)) in (theirs, sympy.expand(-theirs))


def test_is_squarefree_matches_sympy():
    rng = random.Random(0xB5)
    x = sympy.symbols("x")
    hits = {True: 0, False: 0}
    for _ in range(60):
        f = _random_poly(rng, 1, max_deg=3)
        if rng.random() < 0.4:
            f = f * f
        if f.degree() < 1:
            continue
        F = _to_sympy(f, (x,))
        is_sf = sympy.degree(sympy.gcd(F, sympy.diff(F, x)), gen=x) == 0
        got = intpoly.is_squarefree(f)
        assert got == is_sf
        hits[got] += 1
    assert hits[True] and hits[False]


def test_exact_div_roundtrip():
    rng = random.Random(0xB6)
    for _ in range(30):
        f = _random_poly(rng, 2)
        g = _random_poly(rng, 2)
        assert intpoly.exact_div(f * g, g) == f


def test_resultant_forms_on_binary_pairs():
    # linear forms (a0 s + a1 t, d0 s + d1 t) have resultant a0 d1 - a1 d0
    rng = random.Random(0xB7)
    for _ in range(25):
        a0, a1, d0, d1 = (rng.randint(-9, 9) for _ in range(4))
        f = IntPoly(2, {(1, 0): a0, (0, 1): a1})
        g = IntPoly(2, {(1, 0): d0, (0, 1): d1})
        if f.is_zero() or g.is_zero():
            continue
        assert intpoly.resultant_forms(f, g, 1, 1) == a0 * d1 - a1 * d0


def test_fixed_divisor_knowns():
    x = IntPoly(1, {(1,): 1})
    one = IntPoly.constant(1, 1)
    f = x * (x + one)
    assert intpoly.fixed_divisor(f).value == 2
    g = x * (x + one) * (x + IntPoly.constant(2, 1))
    fd = intpoly.fixed_divisor(g)
    assert fd.value == 6 and fd.exact
    # x^p - x is divisible by p for every x
    f5 = IntPoly(1, {(5,): 1, (1,): -1})
    assert intpoly.fixed_divisor(f5).value % 5 == 0


def test_fixed_divisor_multivar():
    f = IntPoly(2, {(1, 1): 1})
    assert intpoly.fixed_divisor(f).value == 1
    g = IntPoly(2, {(2, 0): 1, (1, 0): 1})  # x(x+1) in two vars
    assert intpoly.fixed_divisor(g).value == 2


def test_zero_polynomial_guard():
    with pytest.raises(ZeroPolynomial):
        intpoly.fixed_divisor(IntPoly.zero(1))


def test_sieve_modulus_stabilizes_valuations():
    f = IntPoly(1, {(3,): 1, (1,): -1})  # x^3 - x
    sm = intpoly.sieve_modulus(f)
    assert sm.divisor > 0 and sm.modulus > 0
    x0 = sm.residue[0]
    vals = [f.eval_at((x0 + k * sm.modulus,)) for k in range(1, 12)]
    assert all(v % sm.divisor == 0 for v in vals)
    # valuations at the sieve primes stay at the divisor's level
    for p in (2, 3):
        e = 0
        d = sm.divisor
        while d % p == 0:
            d //= p
            e += 1
        for v in vals:
            got, w = 0, abs(v)
            while w and w % p == 0:
                w //= p
                got += 1
            assert got == e or v == 0


def test_count_zeros_mod_knowns():
    f = IntPoly(1, {(2,): 1, (0,): 1})  # x^2 + 1
    assert intpoly.count_zeros_mod(f, 5).count == 2
    assert intpoly.count_zeros_mod(f, 3).count == 0
    g = IntPoly(2, {(1, 0): 1, (0, 1): 1})
    assert intpoly.count_zeros_mod(g, 3).count == 3


def test_count_zeros_matches_bruteforce():
    rng = random.Random(0xB8)
    for _ in range(20):
        f = _random_poly(rng, 2, max_deg=3, max_coeff=9)
        p = rng.choice([2, 3, 5, 7])
        expected = sum(
            1 for a in range(p) for b in range(p)
            if f.eval_at((a, b)) % p == 0)
        assert intpoly.count_zeros_mod(f, p).count == expected


def test_bound_checks_mod_p():
    # the mod-p zero count of a nonzero reduction is at most deg * p^(n-1)
    f = IntPoly(1, {(2,): 1, (1,): 1})
    rep = intpoly.bound_checks(f, 7, checks=("mod_p",))
    assert rep.within_p and rep.count_p == 2 and rep.limit_p == 2
    g = IntPoly(2, {(1, 0): 1, (0, 1): 1})
    rep2 = intpoly.bound_checks(g, 5, checks=("mod_p",))
    assert rep2.within_p and rep2.count_p == 5 and rep2.limit_p == 5


def test_module_selftest():
    assert all(ok for _, ok in intpoly.selftest())
