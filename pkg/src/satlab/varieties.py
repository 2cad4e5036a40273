"""Three concrete geometries as executable parametrizations.

* the cubic surface x0^3+x1^3+x2^3+x3^3 = 0 with its classical degree-3
  planar parametrization (elkies_map);
* skew-line conic-bundle cubic surfaces F = a x2^2 + d x2x3 + f x3^2
  + b x2 + e x3 with a,d,f linear and b,e quadratic in (x0,x1), fibered
  over (s:t) with conic sections split by the forms G, H;
* the cubic threefold sum-of-five-cubes family, covered by conics indexed
  by prime triples in the progression 1 mod 1470.

Everything is exact integer arithmetic; identities are asserted, not
assumed.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple

from .arith import factor, is_probable_prime, primes_in_ap
from .errors import (
    ConditionViolated,
    DegenerateModel,
    IncompleteFactorization,
    NonCoprimeFiber,
    NonIntegralF,
    ParityMismatch,
    SearchExhausted,
    ShapeMismatch,
    ZeroInput,
    ZeroParameter,
)
from .intpoly import (
    IntPoly,
    binary_form_separable,
    fixed_divisor,
    resultant_forms,
)

# ---------------------------------------------------------------------------
# sum-of-four-cubes surface


def _p3(terms) -> IntPoly:
    return IntPoly(3, terms)


ELKIES_FORMS: Tuple[IntPoly, ...] = (
    # -(y1+y0)y2^2 + (y1^2+2y0^2)y2 - y1^3 + y0y1^2 - 2y0^2y1 - y0^3
    _p3({(0, 1, 2): -1, (1, 0, 2): -1, (0, 2, 1): 1, (2, 0, 1): 2,
         (0, 3, 0): -1, (1, 2, 0): 1, (2, 1, 0): -2, (3, 0, 0): -1}),
    # y2^3 - (y1+y0)y2^2 + (y1^2+2y0^2)y2 + y0y1^2 - 2y0^2y1 + y0^3
    _p3({(0, 0, 3): 1, (0, 1, 2): -1, (1, 0, 2): -1, (0, 2, 1): 1,
         (2, 0, 1): 2, (1, 2, 0): 1, (2, 1, 0): -2, (3, 0, 0): 1}),
    # -y2^3 + (y1+y0)y2^2 - (y1^2+2y0^2)y2 + 2y0y1^2 - y0^2y1 + 2y0^3
    _p3({(0, 0, 3): -1, (0, 1, 2): 1, (1, 0, 2): 1, (0, 2, 1): -1,
         (2, 0, 1): -2, (1, 2, 0): 2, (2, 1, 0): -1, (3, 0, 0): 2}),
    # (y1-2y0)y2^2 + (y0^2-y1^2)y2 + y1^3 - y0y1^2 + 2y0^2y1 - 2y0^3
    _p3({(0, 1, 2): 1, (1, 0, 2): -2, (0, 2, 1): -1, (2, 0, 1): 1,
         (0, 3, 0): 1, (1, 2, 0): -1, (2, 1, 0): 2, (3, 0, 0): -2}),
)


def elkies_forms() -> Tuple[IntPoly, ...]:
    """The four cubic forms of the planar parametrization."""
    return ELKIES_FORMS


def elkies_map(y) -> Tuple[int, int, int, int]:
    """Image of an integer triple under the degree-3 parametrization of
    the surface x0^3+x1^3+x2^3+x3^3 = 0.  The cube-sum of the output is
    asserted to vanish."""
    y = tuple(int(c) for c in y)
    if len(y) != 3:
        raise ZeroInput("expected a triple")
    if not any(y):
        raise ZeroInput("zero triple has no image")
    x = tuple(f.eval_at(y) for f in ELKIES_FORMS)
    if sum(c ** 3 for c in x) != 0:
        raise ArithmeticError("cube-sum identity failed; corrupted forms")
    return x


# ---------------------------------------------------------------------------
# skew-line conic-bundle model

_MONOMIAL_SLOTS = {
    (1, 0, 2, 0): "a0", (0, 1, 2, 0): "a1",
    (1, 0, 1, 1): "d0", (0, 1, 1, 1): "d1",
    (1, 0, 0, 2): "f0", (0, 1, 0, 2): "f1",
    (2, 0, 1, 0): "b0", (1, 1, 1, 0): "b1", (0, 2, 1, 0): "b2",
    (2, 0, 0, 1): "e0", (1, 1, 0, 1): "e1", (0, 2, 0, 1): "e2",
}

_FIELD_ORDER = ("a0", "a1", "d0", "d1", "f0", "f1",
                "b0", "b1", "b2", "e0", "e1", "e2")


@dataclass(frozen=True)
class SkewCubicModel:
    """Coefficients of a x2^2 + d x2x3 + f x3^2 + b x2 + e x3 with
    a,d,f linear and b,e quadratic forms in (x0,x1)."""

    a0: int
    a1: int
    d0: int
    d1: int
    f0: int
    f1: int
    b0: int
    b1: int
    b2: int
    e0: int
    e1: int
    e2: int

    # -- linear/quadratic form evaluation ----------------------------------
    def a_at(self, s: int, t: int) -> int:
        return self.a0 * s + self.a1 * t

    def d_at(self, s: int, t: int) -> int:
        return self.d0 * s + self.d1 * t

    def f_at(self, s: int, t: int) -> int:
        return self.f0 * s + self.f1 * t

    def b_at(self, s: int, t: int) -> int:
        return self.b0 * s * s + self.b1 * s * t + self.b2 * t * t

    def e_at(self, s: int, t: int) -> int:
        return self.e0 * s * s + self.e1 * s * t + self.e2 * t * t

    def coeffs(self) -> Tuple[int, ...]:
        return tuple(getattr(self, name) for name in _FIELD_ORDER)

    def a_is_zero(self) -> bool:
        return self.a0 == 0 and self.a1 == 0

    def b_is_zero(self) -> bool:
        return self.b0 == 0 and self.b1 == 0 and self.b2 == 0

    # -- derived polynomials -----------------------------------------------
    def surface_poly(self) -> IntPoly:
        terms = {}
        for exps, name in _MONOMIAL_SLOTS.items():
            c = getattr(self, name)
            if c:
                terms[exps] = c
        return IntPoly(4, terms)

    def eval_surface(self, x) -> int:
        x0, x1, x2, x3 = (int(c) for c in x)
        a = self.a_at(x0, x1)
        d = self.d_at(x0, x1)
        f = self.f_at(x0, x1)
        b = self.b_at(x0, x1)
        e = self.e_at(x0, x1)
        return a * x2 * x2 + d * x2 * x3 + f * x3 * x3 + b * x2 + e * x3

    def delta_form(self) -> IntPoly:
        """The binary quintic a e^2 + f b^2 - b d e in (s,t)."""
        s, t = IntPoly.variable(0, 2), IntPoly.variable(1, 2)
        a = self.a0 * s + self.a1 * t
        d = self.d0 * s + self.d1 * t
        f = self.f0 * s + self.f1 * t
        b = self.b0 * s * s + self.b1 * s * t + self.b2 * t * t
        e = self.e0 * s * s + self.e1 * s * t + self.e2 * t * t
        return a * e * e + f * b * b - b * d * e

    def disc_form(self) -> IntPoly:
        """The binary quadratic d^2 - 4af in (s,t)."""
        s, t = IntPoly.variable(0, 2), IntPoly.variable(1, 2)
        a = self.a0 * s + self.a1 * t
        d = self.d0 * s + self.d1 * t
        f = self.f0 * s + self.f1 * t
        return d * d - 4 * a * f

    # -- serialization -------------------------------------------------
    def to_text(self) -> str:
        return "".join(f"{name}={getattr(self, name)}\n" for name in _FIELD_ORDER)

    @classmethod
    def from_text(cls, text: str) -> "SkewCubicModel":
        vals = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, rhs = line.partition("=")
            vals[key.strip()] = int(rhs.strip())
        missing = [n for n in _FIELD_ORDER if n not in vals]
        if missing:
            raise ShapeMismatch(f"missing coefficients: {', '.join(missing)}")
        extra = set(vals) - set(_FIELD_ORDER)
        if extra:
            raise ShapeMismatch(f"unknown coefficients: {', '.join(sorted(extra))}")
        return cls(**{n: vals[n] for n in _FIELD_ORDER})


def default_model() -> SkewCubicModel:
    """Built-in sample surface with split fibers; all five coefficient
    forms nonzero and the quintic separable."""
    return SkewCubicModel(a0=1, a1=-6, d0=0, d1=36, f0=36, f1=216,
                          b0=-1, b1=0, b2=0, e0=0, e1=0, e2=-216)


def model_from_cubic(F: IntPoly) -> SkewCubicModel:
    """Read the twelve coefficients off a cubic supported on the
    conic-bundle monomials.  No normalization is applied."""
    if F.nvars != 4:
        raise ShapeMismatch("expected a polynomial in x0..x3")
    vals = dict.fromkeys(_FIELD_ORDER, 0)
    for exps, c in F.terms.items():
        name = _MONOMIAL_SLOTS.get(exps)
        if name is None:
            raise ShapeMismatch(f"monomial with exponents {exps} not allowed")
        vals[name] = c
    return SkewCubicModel(**vals)


def _shear(m: SkewCubicModel, lam: int) -> SkewCubicModel:
    """Substitute x1 -> lam*x0 + x1; new a0 equals a(1, lam)."""
    return SkewCubicModel(
        a0=m.a0 + lam * m.a1, a1=m.a1,
        d0=m.d0 + lam * m.d1, d1=m.d1,
        f0=m.f0 + lam * m.f1, f1=m.f1,
        b0=m.b_at(1, lam), b1=m.b1 + 2 * lam * m.b2, b2=m.b2,
        e0=m.e_at(1, lam), e1=m.e1 + 2 * lam * m.e2, e2=m.e2,
    )


def _strip_contents(m: SkewCubicModel) -> SkewCubicModel:
    c = m.coeffs()
    k2 = math.gcd(*c[:6]) or 1
    k1 = math.gcd(*c[6:]) or 1
    if k2 == 1 and k1 == 1:
        return m
    vals = [x // k2 for x in c[:6]] + [x // k1 for x in c[6:]]
    return SkewCubicModel(*vals)


def _nu(p: int, n: int) -> int:
    if n == 0:
        return 0
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _p_balanced(m: SkewCubicModel, p: int) -> bool:
    c = m.coeffs()
    if m.a0 % p == 0 or m.b0 % p == 0:
        return False
    others = [c[i] for i, n in enumerate(_FIELD_ORDER) if n not in ("a0", "b0")]
    return all(x % p == 0 for x in others)


def _p_rescale(m: SkewCubicModel, p: int) -> SkewCubicModel:
    """Weighted rescale making a0, b0 units at p and every other
    coefficient divisible by p.  The exponents below make the combined
    scaling divisible by exactly p^(2u+2w), which is divided back out."""
    u, w = _nu(p, m.a0), _nu(p, m.b0)
    alpha = 1 + max(u + w, 2 * w)
    beta = 1 + max(u + w, 2 * u)
    l0, l1, m2, m3 = p ** u, p ** beta, p ** w, p ** alpha
    div = p ** (2 * u + 2 * w)
    scaled = (
        m.a0 * l0 * m2 * m2, m.a1 * l1 * m2 * m2,
        m.d0 * l0 * m2 * m3, m.d1 * l1 * m2 * m3,
        m.f0 * l0 * m3 * m3, m.f1 * l1 * m3 * m3,
        m.b0 * l0 * l0 * m2, m.b1 * l0 * l1 * m2, m.b2 * l1 * l1 * m2,
        m.e0 * l0 * l0 * m3, m.e1 * l0 * l1 * m3, m.e2 * l1 * l1 * m3,
    )
    if any(x % div for x in scaled):
        raise SearchExhausted("rescale bookkeeping failed")
    return SkewCubicModel(*(x // div for x in scaled))


def is_normalized(m: SkewCubicModel) -> bool:
    """Contents of both coefficient groups are 1; a0*b0 is coprime to 6
    and the other ten coefficients are divisible by 6."""
    c = m.coeffs()
    if math.gcd(*c[:6]) != 1 or math.gcd(*c[6:]) != 1:
        return False
    return _p_balanced(m, 2) and _p_balanced(m, 3)


def normalize_model(m: SkewCubicModel) -> SkewCubicModel:
    """Bring a model to the normal form: unit contents, a0*b0 coprime
    to 6, remaining coefficients divisible by 6.

    Steps: a shear x1 -> lam*x0 + x1 with the least lam >= 0 making
    a(1,lam)*b(1,lam) != 0, content removal per coefficient group, then
    for p in (2, 3) a weighted rescale whenever the p-condition fails.
    """
    if m.a_is_zero() or m.b_is_zero():
        raise DegenerateModel("a and b must be nonzero forms")
    cur = m
    if cur.a0 * cur.b0 == 0:
        for lam in range(0, 5):
            if cur.a_at(1, lam) != 0 and cur.b_at(1, lam) != 0:
                cur = _shear(cur, lam)
                break
        else:
            raise SearchExhausted("no shear parameter below 5 works")
    cur = _strip_contents(cur)
    for p in (2, 3):
        if not _p_balanced(cur, p):
            cur = _p_rescale(cur, p)
    cur = _strip_contents(cur)
    if not is_normalized(cur):
        raise SearchExhausted("normalization postcondition failed")
    return cur


@dataclass(frozen=True)
class FiberForms:
    """Binary forms attached to the fiber over (s:t): the linear G, the
    conic form H, the quintic value delta, and the splitting forms
    phi1..phi4 = u, v, G, H with products phi = u v G^2 H^2 and
    phi_alt = u v G H."""

    s: int
    t: int
    a: int
    b: int
    d: int
    e: int
    f: int
    G: IntPoly
    H: IntPoly
    delta: int
    disc: int
    phi1: IntPoly
    phi2: IntPoly
    phi3: IntPoly
    phi4: IntPoly
    phi: IntPoly
    phi_alt: IntPoly

    def g_at(self, u: int, v: int) -> int:
        return self.b * u + self.e * v

    def h_at(self, u: int, v: int) -> int:
        return self.a * u * u + self.d * u * v + self.f * v * v


def _require_coprime_fiber(s: int, t: int) -> Tuple[int, int]:
    s, t = int(s), int(t)
    if math.gcd(s, t) != 1:
        raise NonCoprimeFiber(f"({s}, {t}) is not a coprime pair")
    return s, t


def fiber_forms(m: SkewCubicModel, s: int, t: int) -> FiberForms:
    s, t = _require_coprime_fiber(s, t)
    a, d, f = m.a_at(s, t), m.d_at(s, t), m.f_at(s, t)
    b, e = m.b_at(s, t), m.e_at(s, t)
    u_, v_ = IntPoly.variable(0, 2), IntPoly.variable(1, 2)
    G = b * u_ + e * v_
    H = a * u_ * u_ + d * u_ * v_ + f * v_ * v_
    delta = a * e * e + f * b * b - b * d * e
    disc = d * d - 4 * a * f
    phi = u_ * v_ * G * G * H * H
    phi_alt = u_ * v_ * G * H
    return FiberForms(s=s, t=t, a=a, b=b, d=d, e=e, f=f, G=G, H=H,
                      delta=delta, disc=disc,
                      phi1=u_, phi2=v_, phi3=G, phi4=H,
                      phi=phi, phi_alt=phi_alt)


def fiber_point(m: SkewCubicModel, s: int, t: int, u: int, v: int
                ) -> Tuple[int, int, int, int]:
    """Point (-s H(u,v), -t H(u,v), u G(u,v), v G(u,v)) on the surface.
    The defining identity is asserted exactly; a common zero of G and H
    yields the zero vector (callers treat it as degenerate)."""
    s, t = _require_coprime_fiber(s, t)
    u, v = int(u), int(v)
    a, d, f = m.a_at(s, t), m.d_at(s, t), m.f_at(s, t)
    b, e = m.b_at(s, t), m.e_at(s, t)
    g = b * u + e * v
    h = a * u * u + d * u * v + f * v * v
    x = (-s * h, -t * h, u * g, v * g)
    if m.eval_surface(x) != 0:
        raise ArithmeticError("fiber point identity failed")
    return x


@dataclass(frozen=True)
class LocalConditions:
    """Named booleans for the model-level admissibility conditions plus
    the two resultants; with a fiber (s,t) supplied, the integer-level
    conditions and the radical D of the fiber data."""

    w0: int
    w1: Optional[int]
    w1_pair: Optional[str]
    checks: dict
    failures: Tuple[str, ...]
    fiber: Optional[dict] = None

    @property
    def all_ok(self) -> bool:
        if self.failures:
            return False
        if self.fiber is not None and self.fiber["failures"]:
            return False
        return True


def _first_resultant(m: SkewCubicModel) -> Tuple[Optional[int], Optional[str]]:
    # fixed order (a,d), (a,f), (d,f): first nonzero wins, for determinism
    pairs = (("a,d", (m.a0, m.a1), (m.d0, m.d1)),
             ("a,f", (m.a0, m.a1), (m.f0, m.f1)),
             ("d,f", (m.d0, m.d1), (m.f0, m.f1)))
    for tag, (p0, p1), (q0, q1) in pairs:
        r = p0 * q1 - p1 * q0
        if r:
            return r, tag
    return None, None


def square_discriminant_family(m: SkewCubicModel) -> Tuple[bool, IntPoly]:
    """Whether d^2 - 4af is the square of a polynomial (content times a
    perfect square pattern).  Split fibers only need per-fiber integer
    squares, which is a strictly weaker condition; both tests are
    exposed so reports can show when they disagree."""
    q = m.disc_form()
    if q.is_zero():
        return True, q
    c2 = q.coeff((2, 0))
    c1 = q.coeff((1, 1))
    c0 = q.coeff((0, 2))
    if c1 * c1 - 4 * c2 * c0 != 0:
        return False, q
    # q = (alpha s + beta t)^2 needs a square leading coefficient
    lead = c2 if c2 else c0
    if lead < 0:
        return False, q
    r = math.isqrt(lead)
    if r * r != lead:
        return False, q
    if c2 == 0:
        # q = c1 st + c0 t^2 with c1^2 = 0, so q = c0 t^2
        return True, q
    if c1 % (2 * r):
        return False, q
    other = c1 // (2 * r)
    return other * other == c0, q


def check_local_conditions(m: SkewCubicModel, s: Optional[int] = None,
                           t: Optional[int] = None) -> LocalConditions:
    """Evaluate the admissibility conditions.

    Model level: the 6-divisibility pattern, unit contents, nonzero
    coefficient forms, nonvanishing resultant of (b, e), a nonzero
    resultant among (a, d, f), separability of the quintic.  With a
    fiber (s, t): the integer conditions and the radical of
    2*3*5*a*b*e*f*(d^2-4af)*delta.
    """
    c = m.coeffs()
    w0 = resultant_forms(
        IntPoly(2, {(2, 0): m.b0, (1, 1): m.b1, (0, 2): m.b2}),
        IntPoly(2, {(2, 0): m.e0, (1, 1): m.e1, (0, 2): m.e2}),
        2, 2)
    w1, w1_pair = _first_resultant(m)
    delta = m.delta_form()
    disc = m.disc_form()
    quintic = delta.degree() == 5
    checks = {
        "a_nonzero": not m.a_is_zero(),
        "b_nonzero": not m.b_is_zero(),
        "e_nonzero": any((m.e0, m.e1, m.e2)),
        "f_nonzero": any((m.f0, m.f1)),
        "disc_form_nonzero": not disc.is_zero(),
        "unit_contents": math.gcd(*c[:6]) == 1 and math.gcd(*c[6:]) == 1,
        "six_pattern": _p_balanced(m, 2) and _p_balanced(m, 3),
        "b_e_resultant_nonzero": w0 != 0,
        "adf_resultant_nonzero": w1 is not None,
        "quintic_degree_5": quintic,
        "quintic_separable": quintic and binary_form_separable(delta),
    }
    failures = tuple(k for k, ok in checks.items() if not ok)
    fiber = None
    if s is not None or t is not None:
        s, t = _require_coprime_fiber(s, t)
        av, dv, fv = m.a_at(s, t), m.d_at(s, t), m.f_at(s, t)
        bv, ev = m.b_at(s, t), m.e_at(s, t)
        discv = dv * dv - 4 * av * fv
        deltav = av * ev * ev + fv * bv * bv - bv * dv * ev
        product = 2 * 3 * 5 * av * bv * ev * fv * discv * deltav
        fchecks = {
            "six_divides_def": dv % 6 == 0 and ev % 6 == 0 and fv % 6 == 0,
            "ab_unit": math.gcd(6, av * bv) == 1,
            "b_e_coprime": math.gcd(bv, ev) == 1,
            "a_d_f_coprime": math.gcd(av, math.gcd(dv, fv)) == 1,
            "product_nonzero": product != 0,
        }
        d_rad = None
        d_exact = False
        if product:
            try:
                d_rad = factor(abs(product)).radical()
                d_exact = True
            except IncompleteFactorization:
                d_rad = None
        fiber = {
            "s": s, "t": t, "a": av, "b": bv, "d": dv, "e": ev, "f": fv,
            "disc": discv, "delta": deltav,
            "checks": fchecks,
            "failures": tuple(k for k, ok in fchecks.items() if not ok),
            "d_radical": d_rad,
            "d_radical_exact": d_exact,
        }
    return LocalConditions(w0=w0, w1=w1, w1_pair=w1_pair, checks=checks,
                           failures=failures, fiber=fiber)


class ResidueClass:
    """Residue pair (s0, t0) modulo a squarefree W; every coprime (s,t)
    in the class has primitive G and H forms."""

    __slots__ = ("modulus", "s0", "t0", "primes")

    def __init__(self, modulus: int, s0: int, t0: int, primes: Tuple[int, ...]):
        self.modulus = modulus
        self.s0 = s0
        self.t0 = t0
        self.primes = primes

    def __iter__(self):
        return iter((self.modulus, self.s0, self.t0))

    def __repr__(self):
        return f"ResidueClass(modulus={self.modulus}, s0={self.s0}, t0={self.t0})"


def _residues_mod_p(m: SkewCubicModel, p: int) -> Tuple[int, int]:
    for s in range(1, p):
        for t in range(1, p):
            if (m.b_at(s, t) % p or m.e_at(s, t) % p) and \
               (m.a_at(s, t) % p or m.d_at(s, t) % p or m.f_at(s, t) % p):
                return s, t
    raise SearchExhausted(f"no admissible residue pair modulo {p}")


def admissible_residues(m: SkewCubicModel, rng: Optional[random.Random] = None,
                        samples: int = 100) -> ResidueClass:
    """Residues (s0, t0) mod W (W squarefree, supported on the primes of
    the two resultants) such that G and H are primitive on every coprime
    pair in the class.  Found by per-prime exhaustive scan over unit
    pairs and Chinese remaindering; verified on random samples."""
    report = check_local_conditions(m)
    if report.w0 == 0 or report.w1 is None:
        raise DegenerateModel("both resultants must be nonzero")
    support = factor(abs(report.w0)).radical() if abs(report.w0) > 1 else 1
    support *= factor(abs(report.w1)).radical() if abs(report.w1) > 1 else 1
    primes = tuple(sorted(factor(support).factors)) if support > 1 else ()
    W, s0, t0 = 1, 0, 0
    for p in primes:
        sp, tp = (1, 1) if p <= 3 else _residues_mod_p(m, p)
        if W == 1:
            W, s0, t0 = p, sp, tp
        else:
            inv = pow(W, -1, p)
            s0 = s0 + W * ((inv * (sp - s0)) % p)
            t0 = t0 + W * ((inv * (tp - t0)) % p)
            W *= p
    if W == 1:
        s0 = t0 = 1
    rng = rng or random.Random(0x5eed)
    for _ in range(samples):
        while True:
            s = s0 + W * rng.randrange(-50, 51)
            t = t0 + W * rng.randrange(-50, 51)
            if math.gcd(s, t) == 1:
                break
        if math.gcd(m.b_at(s, t), m.e_at(s, t)) != 1:
            raise SearchExhausted(f"G not primitive at ({s},{t})")
        if math.gcd(m.a_at(s, t), math.gcd(m.d_at(s, t), m.f_at(s, t))) != 1:
            raise SearchExhausted(f"H not primitive at ({s},{t})")
    return ResidueClass(W, s0 % W if W > 1 else 1, t0 % W if W > 1 else 1, primes)


def split_quadratic(a: int, d: int, f: int
                    ) -> Optional[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """Integer linear forms (c1 u + c2 v)(c3 u + c4 v) = a u^2 + d uv + f v^2
    when the discriminant is a nonzero perfect square, else None."""
    disc = d * d - 4 * a * f
    if disc <= 0:
        return None
    delta = math.isqrt(disc)
    if delta * delta != disc:
        return None
    if a == 0:
        # d != 0 since disc = d^2 > 0; form is v (d u + f v)
        return (0, 1), (d, f)
    r1 = Fraction(-d + delta, 2 * a)
    r2 = Fraction(-d - delta, 2 * a)
    p1, q1 = r1.numerator, r1.denominator
    p2, q2 = r2.numerator, r2.denominator
    if a % (q1 * q2):
        return None
    c = a // (q1 * q2)
    l4 = (c * q1, -c * p1)
    l5 = (q2, -p2)
    ok = (l4[0] * l5[0] == a and l4[0] * l5[1] + l4[1] * l5[0] == d
          and l4[1] * l5[1] == f)
    if not ok:
        raise SearchExhausted("split certificate failed verification")
    return l4, l5


@dataclass(frozen=True)
class SplitFiber:
    s: int
    t: int
    delta_sqrt: int
    l4: Tuple[int, int]
    l5: Tuple[int, int]


def find_split_fibers(m: SkewCubicModel, bound: int,
                      require_conditions: bool = False) -> List[SplitFiber]:
    """Coprime fibers (s,t) with max(|s|,|t|) <= bound whose conic form H
    has a nonzero square discriminant, together with the exact splitting.
    Fibers failing the integer-level admissibility conditions are skipped
    when require_conditions is set."""
    out = []
    for h in range(1, bound + 1):
        for s, t in _coprime_pairs_of_height(h):
            a, d, f = m.a_at(s, t), m.d_at(s, t), m.f_at(s, t)
            split = split_quadratic(a, d, f)
            if split is None:
                continue
            if require_conditions:
                rep = check_local_conditions(m, s, t)
                if rep.fiber["failures"]:
                    continue
            disc = d * d - 4 * a * f
            out.append(SplitFiber(s, t, math.isqrt(disc), *split))
    return out


def _coprime_pairs_of_height(h: int) -> Iterator[Tuple[int, int]]:
    """Canonical coprime pairs with max(|s|,|t|) = h, first nonzero
    coordinate positive, in a fixed deterministic order."""
    seen = []
    for s in range(-h, h + 1):
        for t in range(-h, h + 1):
            if max(abs(s), abs(t)) != h or math.gcd(s, t) != 1:
                continue
            if s < 0 or (s == 0 and t < 0):
                continue
            seen.append((s, t))
    return iter(seen)


# ---------------------------------------------------------------------------
# sum-of-five-cubes threefold

PROGRESSION_MODULUS = 1470  # 2 * 3 * 5 * 7^2
UV_MODULUS = 210
UV_RESIDUE = (1, 127)  # CRT of (1,1) mod 2,3,7 and (1,2) mod 5


def cube_sum(x) -> int:
    return sum(int(c) ** 3 for c in x)


def to_y_coords(x) -> Tuple[int, ...]:
    """Halved-sum coordinates (x0, (x1+x3)/2, (x2+x4)/2, (x1-x3)/2,
    (x2-x4)/2); exact on integer vectors with matching parities."""
    x0, x1, x2, x3, x4 = (int(c) for c in x)
    if (x1 + x3) % 2 or (x2 + x4) % 2:
        raise ParityMismatch("halved sums are not integral")
    return (x0, (x1 + x3) // 2, (x2 + x4) // 2, (x1 - x3) // 2, (x2 - x4) // 2)


def from_y_coords(y) -> Tuple[int, ...]:
    y0, y1, y2, y3, y4 = (int(c) for c in y)
    return (y0, y1 + y3, y2 + y4, y1 - y3, y2 - y4)


def y_equation(y) -> int:
    y0, y1, y2, y3, y4 = (int(c) for c in y)
    return y0 ** 3 + 2 * y1 * (y1 * y1 + 3 * y3 * y3) \
        + 2 * y2 * (y2 * y2 + 3 * y4 * y4)


def triple_conditions(p1: int, p2: int, p3: int) -> dict:
    """Named admissibility gates for a prime triple."""
    progression = all(
        p % PROGRESSION_MODULUS == 1 and is_probable_prime(p)
        for p in (p1, p2, p3))
    k = p1 ** 3 - 2 * p2 ** 6 + 2 * p3 ** 6
    return {
        "progression": progression,
        "p3_coprime": (p1 ** 3 - 2 * p2 ** 6) % p3 != 0,
        "form_separable": p1 ** 3 - 8 * p2 ** 6 + 2 * p3 ** 6 != 0,
        "nondegenerate": p3 * k != 0,
    }


@dataclass(frozen=True)
class ThreefoldFiber:
    """Conic fiber of the sum-of-five-cubes threefold indexed by a prime
    triple in the progression 1 mod 1470."""

    p1: int
    p2: int
    p3: int

    @property
    def k(self) -> int:
        return self.p1 ** 3 - 2 * self.p2 ** 6 + 2 * self.p3 ** 6

    def forms(self) -> Tuple[IntPoly, ...]:
        p2, p3, k = self.p2, self.p3, self.k
        q = p3 * p3
        mk = (
            {(1, 1): 1},
            {(2, 0): 6 * q, (1, 1): -12 * p2 ** 3 * p3, (0, 2): k},
            {(2, 0): -6 * q, (1, 1): -12 * p2 ** 3 * p3, (0, 2): -k},
            {(2, 0): -6 * q, (1, 1): 12 * p3 ** 4, (0, 2): k},
            {(2, 0): 6 * q, (1, 1): 12 * p3 ** 4, (0, 2): -k},
        )
        return tuple(IntPoly(2, t) for t in mk)

    def point(self, u: int, v: int) -> Tuple[Tuple[int, ...], int]:
        """Integer 5-vector on the threefold at parameters (u, v), and the
        exact integer F = (1/7) * product of the five form values."""
        u, v = int(u), int(v)
        if u == 0 and v == 0:
            raise ZeroParameter("(0, 0) is not a valid parameter pair")
        vals = [f.eval_at((u, v)) for f in self.forms()]
        coords = (12 * self.p1 * self.p2 * self.p3 ** 2 * vals[0],
                  self.p3 * vals[1], self.p3 * vals[2],
                  self.p2 * vals[3], self.p2 * vals[4])
        if cube_sum(coords) != 0:
            raise ArithmeticError("cube-sum identity failed; corrupted forms")
        prod = 1
        for w in vals:
            prod *= w
        if prod % 7:
            raise NonIntegralF("form product not divisible by 7")
        return coords, prod // 7

    def to_text(self) -> str:
        lines = [f"p1={self.p1}", f"p2={self.p2}", f"p3={self.p3}"]
        for i, f in enumerate(self.forms()):
            cs = (f.coeff((2, 0)), f.coeff((1, 1)), f.coeff((0, 2)))
            lines.append(f"f{i}=" + " ".join(str(c) for c in cs))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ThreefoldFiber":
        vals = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, rhs = line.partition("=")
            vals[key.strip()] = rhs.strip()
        try:
            fiber = threefold_fiber(int(vals["p1"]), int(vals["p2"]),
                                    int(vals["p3"]))
        except KeyError as exc:
            raise ShapeMismatch(f"missing field {exc}") from None
        for i, f in enumerate(fiber.forms()):
            if f"f{i}" in vals:
                got = tuple(int(c) for c in vals[f"f{i}"].split())
                want = (f.coeff((2, 0)), f.coeff((1, 1)), f.coeff((0, 2)))
                if got != want:
                    raise ShapeMismatch(f"stored f{i} disagrees with the triple")
        return fiber


def threefold_fiber(p1: int, p2: int, p3: int) -> ThreefoldFiber:
    """Validated fiber; raises ConditionViolated naming the failed gate."""
    gates = triple_conditions(p1, p2, p3)
    if not gates["progression"]:
        raise ConditionViolated(
            "each p must be a prime congruent to 1 mod 1470")
    if not gates["p3_coprime"]:
        raise ConditionViolated("p3 divides p1^3 - 2 p2^6")
    if not gates["form_separable"]:
        raise ConditionViolated("p1^3 - 8 p2^6 + 2 p3^6 vanishes")
    if not gates["nondegenerate"]:
        raise ConditionViolated("p1^3 - 2 p2^6 + 2 p3^6 vanishes")
    fiber = ThreefoldFiber(p1, p2, p3)
    _verify_fiber_identities(fiber)
    return fiber


def _verify_fiber_identities(fiber: ThreefoldFiber) -> None:
    f0, f1, f2, f3, f4 = fiber.forms()
    p2, p3 = fiber.p2, fiber.p3
    if f1 + f2 != (-24 * p2 ** 3 * p3) * f0:
        raise ArithmeticError("f1 + f2 relation failed")
    if f3 + f4 != (24 * p3 ** 4) * f0:
        raise ArithmeticError("f3 + f4 relation failed")
    c = 12 * fiber.p1 * p2 * p3 ** 2
    total = (c * f0) ** 3 + (p3 * f1) ** 3 + (p3 * f2) ** 3 \
        + (p2 * f3) ** 3 + (p2 * f4) ** 3
    if not total.is_zero():
        raise ArithmeticError("cube-sum identity failed symbolically")
    fd = fixed_divisor(f0 * f1 * f2 * f3 * f4)
    if fd.exact and fd.value % 7:
        raise ArithmeticError("form product fixed divisor not divisible by 7")


def admissible_triples(max_primes: int = 12) -> Iterator[ThreefoldFiber]:
    """Fibers over admissible prime triples, enumerated by largest prime
    index first and lexicographically within; inadmissible triples are
    skipped silently."""
    primes: List[int] = []
    gen = primes_in_ap(PROGRESSION_MODULUS, 1)
    for m in range(max_primes):
        primes.append(next(gen))
        for idx in itertools.product(range(m + 1), repeat=3):
            if max(idx) != m:
                continue
            try:
                yield threefold_fiber(primes[idx[0]], primes[idx[1]],
                                      primes[idx[2]])
            except ConditionViolated:
                continue


def d_product(fiber: ThreefoldFiber) -> int:
    """The (unfactored) integer whose prime support controls the local
    solubility gates: 210 times the leading/trailing coefficients and
    discriminants of f1..f4 and the pairwise resultants.  Residue classes
    avoiding it only need a gcd, never a factorization."""
    forms = fiber.forms()[1:]
    prod = 210
    for f in forms:
        a = f.coeff((2, 0))
        c = f.coeff((0, 2))
        disc = f.coeff((1, 1)) ** 2 - 4 * a * c
        if a == 0 or c == 0 or disc == 0:
            raise ConditionViolated("degenerate form in the fiber")
        prod *= a * c * disc
    for f, g in itertools.combinations(forms, 2):
        r = resultant_forms(f, g, 2, 2)
        if r == 0:
            raise ConditionViolated("two fiber forms share a root")
        prod *= r
    return prod


def selftest() -> list:
    results = []
    results.append(("planar map basepoints",
                    elkies_map((1, 0, 0)) == (-1, 1, 2, -2)
                    and elkies_map((0, 0, 1)) == (0, 1, -1, 0)
                    and elkies_map((1, 1, 1)) == (-2, 2, 1, -1)))
    total = sum((f ** 3 for f in ELKIES_FORMS), IntPoly.zero(3))
    results.append(("planar map identity", total.is_zero()))
    m = default_model()
    results.append(("model round trip",
                    model_from_cubic(m.surface_poly()) == m
                    and SkewCubicModel.from_text(m.to_text()) == m))
    results.append(("normal form fixed point", normalize_model(m) == m))
    ff = fiber_forms(m, 1, 0)
    u_, v_ = IntPoly.variable(0, 2), IntPoly.variable(1, 2)
    results.append(("fiber forms", ff.H == u_ * u_ + 36 * v_ * v_
                    and ff.G == -1 * u_))
    pt = fiber_point(m, 3, 1, 1, 1)
    results.append(("fiber point", m.eval_surface(pt) == 0 and any(pt)))
    results.append(("split fiber",
                    split_quadratic(-3, 36, 324) == ((-3, -18), (1, -18))))
    rc = admissible_residues(m)
    results.append(("residue class", rc.modulus % 6 == 0
                    and math.gcd(rc.s0 * rc.t0, rc.modulus) == 1))
    fib = threefold_fiber(1471, 1471, 5881)
    coords, fval = fib.point(1, 1)
    prodx = 1
    for cx in coords:
        prodx *= cx
    results.append(("threefold point", cube_sum(coords) == 0
                    and prodx != 0 and prodx % 7 == 0 and fval != 0))
    results.append(("coordinate change",
                    to_y_coords((0, 1, -1, -1, 1)) == (0, 0, 0, 1, -1)
                    and from_y_coords((0, 0, 0, 1, -1)) == (0, 1, -1, -1, 1)
                    and y_equation((0, 0, 0, 1, -1)) == 0))
    return results
