"""Sparse multivariate polynomials over the integers, exactly.

Coefficients are arbitrary-precision ints; no floating point anywhere.
Resultants go through a fraction-free Sylvester determinant, gcds through a
primitive pseudo-remainder sequence, fixed divisors through a finite
difference grid.  Irreducible factorization is deliberately not provided;
callers that need factors must supply them and can verify by multiplication.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, NamedTuple, Optional, Sequence, Tuple

from . import arith
from .errors import (
    ArityMismatch,
    BudgetExceeded,
    HypothesisViolated,
    RepeatedFactor,
    SearchExhausted,
    ZeroPolynomial,
)

GRID_BUDGET = 10_000_000
ENUM_BUDGET = 100_000_000
FALLBACK_SAMPLES = 64


class IntPoly:
    """Immutable-by-convention sparse polynomial in ``nvars`` variables.

    ``terms`` maps exponent tuples to nonzero integer coefficients.  The
    zero polynomial has an empty term dict.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Dict[Tuple[int, ...], int]] = None):
        if nvars < 1:
            raise ValueError("need at least one variable")
        self.nvars = nvars
        clean: Dict[Tuple[int, ...], int] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ArityMismatch(f"exponent tuple {exps} in {nvars} variables")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            c = int(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "IntPoly":
        return cls(nvars, {})

    @classmethod
    def constant(cls, c: int, nvars: int) -> "IntPoly":
        return cls(nvars, {tuple([0] * nvars): int(c)} if c else {})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "IntPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def from_terms(cls, nvars: int, terms: Iterable[Tuple[int, Sequence[int]]]) -> "IntPoly":
        """terms: iterable of (coeff, exponent sequence)."""
        d: Dict[Tuple[int, ...], int] = {}
        for c, exps in terms:
            key = tuple(int(e) for e in exps)
            d[key] = d.get(key, 0) + int(c)
        return cls(nvars, d)

    # -- predicates and simple data ---------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in k) for k in self.terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("not a constant")
        return next(iter(self.terms.values()), 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(k) for k in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(k[i] for k in self.terms)

    def height(self) -> int:
        """Largest coefficient magnitude (0 for the zero polynomial)."""
        if not self.terms:
            return 0
        return max(abs(c) for c in self.terms.values())

    def content(self) -> int:
        """Positive gcd of the coefficients; 0 only for the zero polynomial."""
        g = 0
        for c in self.terms.values():
            g = math.gcd(g, c)
        return g

    def primitive_part(self) -> "IntPoly":
        """self divided by its content; keeps the sign."""
        c = self.content()
        if c in (0, 1):
            return self
        return IntPoly(self.nvars, {k: v // c for k, v in self.terms.items()})

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        degs = {sum(k) for k in self.terms}
        return len(degs) == 1

    def coeff(self, exps: Sequence[int]) -> int:
        return self.terms.get(tuple(exps), 0)

    def lex_leading(self) -> Tuple[Tuple[int, ...], int]:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        k = max(self.terms)
        return k, self.terms[k]

    # -- ring operations ---------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def __add__(self, other: "IntPoly") -> "IntPoly":
        self._check(other)
        d = dict(self.terms)
        for k, v in other.terms.items():
            d[k] = d.get(k, 0) + v
        return IntPoly(self.nvars, d)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        self._check(other)
        d = dict(self.terms)
        for k, v in other.terms.items():
            d[k] = d.get(k, 0) - v
        return IntPoly(self.nvars, d)

    def __neg__(self) -> "IntPoly":
        return IntPoly(self.nvars, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(self.nvars, {k: v * other for k, v in self.terms.items()})
        self._check(other)
        d: Dict[Tuple[int, ...], int] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                d[k] = d.get(k, 0) + v1 * v2
        return IntPoly(self.nvars, d)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPoly":
        if e < 0:
            raise ValueError("negative power")
        out = IntPoly.constant(1, self.nvars)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def _check(self, other: "IntPoly"):
        if not isinstance(other, IntPoly) or other.nvars != self.nvars:
            raise ArityMismatch("mixed variable counts")

    # -- calculus / evaluation ----------------------------------------------

    def derivative(self, i: int) -> "IntPoly":
        d: Dict[Tuple[int, ...], int] = {}
        for k, v in self.terms.items():
            if k[i]:
                kk = list(k)
                kk[i] -= 1
                d[tuple(kk)] = d.get(tuple(kk), 0) + v * k[i]
        return IntPoly(self.nvars, d)

    def eval_at(self, point: Sequence) -> int:
        """Exact evaluation; accepts ints or Fractions."""
        if len(point) != self.nvars:
            raise ArityMismatch(f"expected {self.nvars} coordinates")
        total = 0
        for k, v in self.terms.items():
            term = v
            for x, e in zip(point, k):
                if e:
                    term *= x**e
            total += term
        return total

    def eval_mod(self, point: Sequence[int], mod: int) -> int:
        total = 0
        for k, v in self.terms.items():
            term = v % mod
            for x, e in zip(point, k):
                if e:
                    term = term * pow(x, e, mod) % mod
            total = (total + term) % mod
        return total

    # -- serialization -------------------------------------------------------

    def to_text(self) -> str:
        """One term per line, 'coeff e0 ... e_{n-1}', lex-sorted; round-trips
        bit-exactly."""
        lines = [f"vars={self.nvars}"]
        for k in sorted(self.terms, reverse=True):
            lines.append(str(self.terms[k]) + " " + " ".join(str(e) for e in k))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "IntPoly":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("vars="):
            raise ValueError("missing 'vars=' header")
        nvars = int(lines[0].split("=", 1)[1])
        terms: Dict[Tuple[int, ...], int] = {}
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != nvars + 1:
                raise ArityMismatch(f"term '{ln}' does not have {nvars} exponents")
            c = int(parts[0])
            exps = tuple(int(p) for p in parts[1:])
            terms[exps] = terms.get(exps, 0) + c
        return cls(nvars, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            mono = "*".join(
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(k) if e
            )
            if mono:
                txt = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            else:
                txt = str(abs(c))
            bits.append(("- " if c < 0 else "+ ") + txt)
        out = " ".join(bits)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    __repr__ = __str__


# ---------------------------------------------------------------------------
# exact division and gcd


def exact_div(f: IntPoly, g: IntPoly) -> IntPoly:
    """Exact quotient f/g; raises ValueError if g does not divide f."""
    f._check(g)
    if g.is_zero():
        raise ZeroPolynomial("division by the zero polynomial")
    if g.is_constant():
        c = g.constant_value()
        out = {}
        for k, v in f.terms.items():
            if v % c:
                raise ValueError("inexact constant division")
            out[k] = v // c
        return IntPoly(f.nvars, out)
    lk, lc = g.lex_leading()
    rem = f
    q: Dict[Tuple[int, ...], int] = {}
    while not rem.is_zero():
        rk, rc = rem.lex_leading()
        dk = tuple(a - b for a, b in zip(rk, lk))
        if any(e < 0 for e in dk) or rc % lc:
            raise ValueError("inexact polynomial division")
        qc = rc // lc
        q[dk] = q.get(dk, 0) + qc
        rem = rem - IntPoly(f.nvars, {dk: qc}) * g
    return IntPoly(f.nvars, q)


def _canon(f: IntPoly) -> IntPoly:
    """Sign-normalize: lex-leading coefficient positive."""
    if f.is_zero():
        return f
    _, lc = f.lex_leading()
    return -f if lc < 0 else f


def _univar_view(f: IntPoly, v: int) -> Dict[int, IntPoly]:
    """View f as a polynomial in variable v with IntPoly coefficients."""
    out: Dict[int, IntPoly] = {}
    for k, c in f.terms.items():
        kk = list(k)
        d = kk[v]
        kk[v] = 0
        coeff = out.setdefault(d, IntPoly.zero(f.nvars))
        out[d] = coeff + IntPoly(f.nvars, {tuple(kk): c})
    return {d: p for d, p in out.items() if not p.is_zero()}


def _content_in(f: IntPoly, v: int) -> IntPoly:
    """gcd of the coefficients of f viewed in variable v."""
    coeffs = list(_univar_view(f, v).values())
    g = coeffs[0]
    for c in coeffs[1:]:
        g = poly_gcd(g, c)
        if g.is_constant() and abs(g.constant_value()) == 1:
            break
    return _canon(g)


def _prem(a: IntPoly, b: IntPoly, v: int) -> IntPoly:
    """Pseudo-remainder of a by b in variable v (up to a unit times lc(b)^k)."""
    db = b.degree_in(v)
    bview = _univar_view(b, v)
    lcb = bview[db]
    while not a.is_zero() and a.degree_in(v) >= db:
        da = a.degree_in(v)
        lca = _univar_view(a, v)[da]
        shift = IntPoly(a.nvars, {tuple(da - db if i == v else 0 for i in range(a.nvars)): 1})
        a = a * lcb - b * lca * shift
    return a


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Multivariate gcd over the integers (primitive PRS), sign-normalized."""
    f._check(g)
    if f.is_zero():
        return _canon(g)
    if g.is_zero():
        return _canon(f)
    if f.is_constant() or g.is_constant():
        return IntPoly.constant(math.gcd(f.content(), g.content()), f.nvars)
    v = min(
        i
        for i in range(f.nvars)
        if f.degree_in(i) > 0 or g.degree_in(i) > 0
    )
    if f.degree_in(v) == 0:
        return poly_gcd(f, _content_in(g, v))
    if g.degree_in(v) == 0:
        return poly_gcd(_content_in(f, v), g)
    cf, cg = _content_in(f, v), _content_in(g, v)
    d = poly_gcd(cf, cg)
    a = exact_div(f, cf)
    b = exact_div(g, cg)
    if a.degree_in(v) < b.degree_in(v):
        a, b = b, a
    while not b.is_zero():
        r = _prem(a, b, v)
        if r.is_zero():
            a, b = b, r
        else:
            a, b = b, exact_div(r, _content_in(r, v))
    return _canon(d * exact_div(a, _content_in(a, v)))


def is_squarefree(f: IntPoly) -> bool:
    """No repeated polynomial factor of positive degree (char 0 criterion:
    gcd with all partial derivatives is constant)."""
    if f.is_zero():
        raise ZeroPolynomial("zero polynomial")
    g = f
    for i in range(f.nvars):
        if f.degree_in(i) > 0:
            g = poly_gcd(g, f.derivative(i))
            if g.is_constant():
                return True
    return g.degree() <= 0


# ---------------------------------------------------------------------------
# resultants and discriminants


def _bareiss_det(m: list) -> int:
    """Fraction-free determinant of a square integer matrix (destructive)."""
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _sylvester(ac: Sequence[int], bc: Sequence[int]) -> int:
    """Resultant from descending coefficient lists with declared degrees
    len-1; fraction-free elimination keeps everything integral."""
    m = len(ac) - 1
    n = len(bc) - 1
    if m < 0 or n < 0:
        raise ZeroPolynomial("resultant with zero polynomial")
    if m == 0 and n == 0:
        return 1
    if m == 0:
        return ac[0] ** n
    if n == 0:
        return bc[0] ** m
    size = m + n
    rows = []
    for r in range(n):
        rows.append([0] * r + list(ac) + [0] * (n - 1 - r))
    for r in range(m):
        rows.append([0] * r + list(bc) + [0] * (m - 1 - r))
    assert all(len(row) == size for row in rows)
    return _bareiss_det(rows)


def _univar_coeffs(f: IntPoly) -> list:
    """Descending coefficient list of an effectively univariate polynomial."""
    live = [i for i in range(f.nvars) if f.degree_in(i) > 0]
    if len(live) > 1:
        raise ArityMismatch("polynomial is not univariate")
    if not live:
        return [f.constant_value()] if not f.is_zero() else []
    v = live[0]
    d = f.degree_in(v)
    out = [0] * (d + 1)
    for k, c in f.terms.items():
        out[d - k[v]] = c
    return out


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Resultant of two univariate polynomials (true degrees)."""
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("resultant with zero polynomial")
    return _sylvester(_univar_coeffs(f), _univar_coeffs(g))


def binary_form_coeffs(f: IntPoly, deg: Optional[int] = None) -> list:
    """Coefficients [c_0..c_deg] of a binary form, c_k on u^(deg-k) v^k."""
    if f.nvars != 2:
        raise ArityMismatch("binary form needs exactly two variables")
    if not f.is_homogeneous():
        raise HypothesisViolated("not homogeneous")
    d = f.degree() if deg is None else deg
    if f.degree() > d:
        raise HypothesisViolated("declared degree too small")
    out = [0] * (d + 1)
    for (i, j), c in f.terms.items():
        out[d - i] = c
    return out


def resultant_forms(f: IntPoly, g: IntPoly, deg_f: Optional[int] = None,
                    deg_g: Optional[int] = None) -> int:
    """Resultant of binary forms at declared degrees; degree drops at the
    point at infinity are handled by the padded Sylvester matrix."""
    return _sylvester(binary_form_coeffs(f, deg_f), binary_form_coeffs(g, deg_g))


def discriminant(f: IntPoly) -> int:
    """Discriminant of a univariate polynomial of degree >= 1.

    (-1)^(d(d-1)/2) Res(f, f') / lc; for degree 2 this is b^2 - 4ac.
    """
    coeffs = _univar_coeffs(f)
    d = len(coeffs) - 1
    if d < 1:
        raise ZeroPolynomial("degree must be at least 1")
    if d == 1:
        return 1
    live = [i for i in range(f.nvars) if f.degree_in(i) > 0][0]
    res = _sylvester(coeffs, _univar_coeffs(f.derivative(live)))
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    num = sign * res
    if num % coeffs[0]:
        raise ArithmeticError("discriminant division not exact")
    return num // coeffs[0]


def binary_form_separable(f: IntPoly) -> bool:
    """True when a binary form has no repeated projective root."""
    cs = binary_form_coeffs(f)
    d = len(cs) - 1
    if d < 1:
        return True
    if cs[0] == 0 and cs[1] == 0:
        return False  # (1:0) at least a double root
    u_poly = IntPoly(1, {(d - k,): c for k, c in enumerate(cs) if c})
    if cs[0] == 0:
        return is_squarefree(u_poly)
    return discriminant(u_poly) != 0


# ---------------------------------------------------------------------------
# fixed divisors, sieve moduli, zero counts


class FixedDivisor(NamedTuple):
    value: int
    exact: bool


def fixed_divisor(f: IntPoly, grid_budget: int = GRID_BUDGET,
                  rng: Optional[random.Random] = None) -> FixedDivisor:
    """gcd of all integer values of f.

    The gcd over the grid {0..deg}^nvars already equals the gcd over all of
    Z^nvars (finite differences in the binomial basis), so the result is
    exact whenever that grid fits in ``grid_budget``.  Otherwise a sampled
    gcd is returned flagged as an upper bound only.
    """
    if f.is_zero():
        raise ZeroPolynomial("zero polynomial")
    d = f.degree()
    if d == 0:
        return FixedDivisor(abs(f.constant_value()), True)
    side = d + 1
    if side**f.nvars <= grid_budget:
        g = 0
        for pt in itertools.product(range(side), repeat=f.nvars):
            g = math.gcd(g, f.eval_at(pt))
            if g == 1:
                break
        return FixedDivisor(g, True)
    rng = rng or random.Random(0)
    g = 0
    for _ in range(FALLBACK_SAMPLES):
        pt = tuple(rng.randrange(-(10**6), 10**6) for _ in range(f.nvars))
        g = math.gcd(g, f.eval_at(pt))
        if g == 1:
            break
    return FixedDivisor(g, False)


class SieveModulus(NamedTuple):
    divisor: int          # fixed divisor D of f
    modulus: int          # W = prod over p | D of p^(1 + v_p(D))
    residue: Tuple[int, ...]  # z with gcd(f(x)/D, W) = 1 whenever x = z mod W


def sieve_modulus(f: IntPoly, rng: Optional[random.Random] = None,
                  samples: int = 32, scan_budget: int = GRID_BUDGET) -> SieveModulus:
    """Normalizing modulus and residue for the value distribution of f.

    For x in the residue class z mod W the cofactor f(x)/D is coprime to W;
    the residue is found by a per-prime scan and stitched together with the
    CRT, then spot checked on random lifts.
    """
    D, exact = fixed_divisor(f)
    if not exact:
        raise BudgetExceeded("fixed divisor known only as an upper bound")
    if D == 1:
        return SieveModulus(1, 1, tuple([0] * f.nvars))
    fac = arith.factor(D)
    W = 1
    parts = []
    for p, e in fac.factors.items():
        pk = p ** (e + 1)
        W *= pk
        if pk**f.nvars > scan_budget:
            raise BudgetExceeded(f"residue scan mod {pk} too large")
        found = None
        for z in itertools.product(range(pk), repeat=f.nvars):
            if f.eval_at(z) % pk:
                found = z
                break
        if found is None:
            raise SearchExhausted(f"no admissible residue mod {pk}")
        parts.append((pk, found))
    residue = []
    for i in range(f.nvars):
        x, mod = 0, 1
        for pk, z in parts:
            # CRT merge of x mod `mod` with z[i] mod pk
            inv = pow(mod, -1, pk)
            x = x + mod * ((z[i] - x) * inv % pk)
            mod *= pk
        residue.append(x % W)
    residue = tuple(residue)
    rng = rng or random.Random(0)
    for _ in range(samples):
        x = tuple(z + W * rng.randrange(-100, 100) for z in residue)
        val = f.eval_at(x)
        if val % D or math.gcd(val // D, W) != 1:
            raise SearchExhausted("sieve modulus verification failed")
    return SieveModulus(D, W, residue)


class ZeroCount(NamedTuple):
    modulus: int
    count: int
    density: Fraction  # count / modulus^(nvars - 1)


def count_zeros_mod(f: IntPoly, d: int, budget: int = ENUM_BUDGET) -> ZeroCount:
    """Exhaustive count of zeros of f in (Z/d)^nvars with exact density."""
    if f.is_zero():
        raise ZeroPolynomial("zero polynomial")
    if d < 2:
        raise ValueError("modulus must be at least 2")
    if d**f.nvars > budget:
        raise BudgetExceeded(f"{d}^{f.nvars} points exceed the budget")
    count = 0
    for pt in itertools.product(range(d), repeat=f.nvars):
        if f.eval_mod(pt, d) == 0:
            count += 1
    return ZeroCount(d, count, Fraction(count, d ** (f.nvars - 1)))


@dataclass(frozen=True)
class ModBoundReport:
    """Zero counts of a polynomial to prime and prime-square moduli."""

    p: int
    count_p: Optional[int] = None
    limit_p: Optional[int] = None          # deg(f) * p^(nvars-1)
    within_p: Optional[bool] = None
    count_p2: Optional[int] = None
    ratio_p2: Optional[Fraction] = None    # count / p^(2(nvars-1))


def bound_checks(f: IntPoly, p: int, checks: Tuple[str, ...] = ("mod_p", "mod_p2"),
                 budget: int = ENUM_BUDGET) -> ModBoundReport:
    """Zero-count checks against the degree bound mod p and the growth ratio
    mod p^2.

    The mod p bound requires a primitive polynomial; the mod p^2 ratio is
    only meaningful without repeated factors.  Violated hypotheses raise.
    """
    if not arith.is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    m = f.nvars - 1
    count_p = limit_p = within_p = None
    count_p2 = ratio_p2 = None
    if "mod_p" in checks:
        if f.content() != 1:
            raise HypothesisViolated("polynomial is not primitive")
        count_p = count_zeros_mod(f, p, budget).count
        limit_p = f.degree() * p**m
        within_p = count_p <= limit_p
    if "mod_p2" in checks:
        if not is_squarefree(f):
            raise RepeatedFactor("polynomial has a repeated factor")
        count_p2 = count_zeros_mod(f, p * p, budget).count
        ratio_p2 = Fraction(count_p2, p ** (2 * m)) if m > 0 else Fraction(count_p2)
    return ModBoundReport(p, count_p, limit_p, within_p, count_p2, ratio_p2)


# ---------------------------------------------------------------------------


def selftest() -> list:
    x = IntPoly.variable(0, 1)
    results = []
    results.append(("res(x, x+2)", resultant(x, x + IntPoly.constant(2, 1)) == 2))
    f = x * x + IntPoly.constant(1, 1)
    g = x * x - IntPoly.constant(1, 1)
    results.append(("res(x^2+1, x^2-1)", resultant(f, g) == 4))
    results.append(("disc(x^2-1)", discriminant(g) == 4))
    h = x * x + x + IntPoly.constant(1, 1)
    results.append(("disc(x^2+x+1)", discriminant(h) == -3))
    results.append(("fixdiv x^2+x", fixed_divisor(x * x + x) == (2, True)))
    x3 = x * x * x - x
    results.append(("fixdiv x^3-x", fixed_divisor(x3) == (6, True)))
    sm = sieve_modulus(x3)
    results.append(("sieve mod x^3-x", sm.divisor == 6 and sm.modulus == 36))
    u = IntPoly.variable(0, 2)
    v = IntPoly.variable(1, 2)
    results.append(("zeros of x0*x1 mod 7", count_zeros_mod(u * v, 7).count == 13))
    results.append(("gcd", poly_gcd((u + v) * (u - v), (u + v) * u) == u + v))
    results.append(("squarefree", is_squarefree(u * v) and not is_squarefree(u * u)))
    rt = IntPoly.from_text((u * v - IntPoly.constant(3, 2)).to_text())
    results.append(("text round trip", rt == u * v - IntPoly.constant(3, 2)))
    return results
