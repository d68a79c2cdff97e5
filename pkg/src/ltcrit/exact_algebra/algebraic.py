"""Exact algebraic numbers: minimal polynomial plus root selectors.

A selector pins one root of the minimal polynomial: a rational complex box
(complex embedding) and/or a p-adic ball (embedding into the p-adic closure).
Arithmetic goes through resultant transforms of the minimal polynomial; the
selectors are transported by interval arithmetic on boxes and valuation
bookkeeping on balls, then refined until they isolate a single root of the
new minimal polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import ceil, comb, floor
from typing import Callable, Optional

from ltcrit.errors import InvalidArgument, PrecisionExhausted, UnsupportedDegree
from ltcrit.exact_algebra.polynomials import (
    FACTOR_DEGREE_CAP,
    IntPoly,
    composed_product,
    factor,
    inverse_transform,
    is_irreducible,
    power_transform,
)
from ltcrit.exact_algebra.rootiso import Box, isolate_roots, roots_in_box
from ltcrit.padics.padic import PadicBall, refine_root_ball, vp

Interval = tuple[Fraction, Fraction]

EXTERIOR_SIZE_CAP = 256


# interval arithmetic on boxes


def _imul(a: Interval, b: Interval) -> Interval:
    ps = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
    return min(ps), max(ps)


def _iadd(a: Interval, b: Interval) -> Interval:
    return a[0] + b[0], a[1] + b[1]


def _ineg(a: Interval) -> Interval:
    return -a[1], -a[0]


def box_mul(a: Box, b: Box) -> Box:
    ar, ai = (a.re_lo, a.re_hi), (a.im_lo, a.im_hi)
    br, bi = (b.re_lo, b.re_hi), (b.im_lo, b.im_hi)
    re = _iadd(_imul(ar, br), _ineg(_imul(ai, bi)))
    im = _iadd(_imul(ar, bi), _imul(ai, br))
    return Box(re[0], re[1], im[0], im[1])


def box_inv(a: Box) -> Box:
    if a.contains_point(Fraction(0), Fraction(0)):
        raise PrecisionExhausted("box contains zero; refine before inverting")
    ar, ai = (a.re_lo, a.re_hi), (a.im_lo, a.im_hi)
    lo, hi = a.modulus_squared()
    if lo <= 0:
        raise PrecisionExhausted("box modulus not bounded away from zero")
    inv = (1 / hi, 1 / lo)
    re = _imul(ar, inv)
    im = _ineg(_imul(ai, inv))
    return Box(re[0], re[1], im[0], im[1])


def box_scale(a: Box, c: Fraction) -> Box:
    re = _imul((a.re_lo, a.re_hi), (c, c))
    im = _imul((a.im_lo, a.im_hi), (c, c))
    return Box(re[0], re[1], im[0], im[1])


def box_pow(a: Box, k: int) -> Box:
    out = Box(Fraction(1), Fraction(1), Fraction(0), Fraction(0))
    base = a
    while k:
        if k & 1:
            out = box_mul(out, base)
        base = box_mul(base, base)
        k >>= 1
    return out


# valuation bookkeeping on balls


def ball_inv(b: PadicBall) -> PadicBall:
    w = vp(b.center, b.p)
    if w is None or w >= b.radius:
        raise PrecisionExhausted("ball contains zero; refine before inverting")
    return PadicBall(b.p, 1 / b.center, b.radius - 2 * w)


def ball_pow(b: PadicBall, k: int) -> PadicBall:
    w = vp(b.center, b.p)
    if w is None or w >= b.radius:
        return PadicBall(b.p, Fraction(0), k * b.radius)
    return PadicBall(b.p, b.center**k, b.radius + (k - 1) * w)


def ball_scale(b: PadicBall, c: Fraction) -> PadicBall:
    return PadicBall(b.p, b.center * c, b.radius + vp(c, b.p))


def ball_mul(a: PadicBall, b: PadicBall) -> PadicBall:
    wa = vp(a.center, a.p)
    wb = vp(b.center, b.p)
    wa = a.radius if wa is None or wa >= a.radius else wa
    wb = b.radius if wb is None or wb >= b.radius else wb
    return PadicBall(a.p, a.center * b.center, min(a.radius + wb, b.radius + wa))


@dataclass(frozen=True)
class AlgebraicNumber:
    """An algebraic number given by its minimal polynomial and root selectors."""

    min_poly: IntPoly
    complex_selector: Optional[Box] = None
    padic_selector: Optional[PadicBall] = None
    trusted: bool = False
    notes: tuple[str, ...] = field(default=(), compare=False)

    @classmethod
    def make(
        cls,
        min_poly: IntPoly,
        complex_selector: Box | None = None,
        padic_selector: PadicBall | None = None,
        cap: int = FACTOR_DEGREE_CAP,
    ) -> AlgebraicNumber:
        """Validated constructor: irreducibility (up to ``cap``) and selector isolation."""
        if min_poly.degree < 1:
            raise InvalidArgument("minimal polynomial must be nonconstant")
        P = min_poly.primitive()
        trusted = False
        if P.degree <= cap:
            if not is_irreducible(P):
                raise InvalidArgument(f"{P} is not irreducible over Q")
        else:
            trusted = True
        if complex_selector is not None and roots_in_box(P, complex_selector) != 1:
            raise InvalidArgument("complex selector does not isolate exactly one root")
        if padic_selector is not None and not selector_isolates(P, padic_selector):
            raise InvalidArgument("p-adic selector does not isolate one root up to Q_p-conjugacy")
        return cls(P, complex_selector, padic_selector, trusted)

    @classmethod
    def rational(cls, q: Fraction | int, p: int | None = None) -> AlgebraicNumber:
        q = Fraction(q)
        P = IntPoly((-q.numerator, q.denominator))
        box = Box(q, q, Fraction(0), Fraction(0))
        ball = PadicBall(p, q, 64 + max(vp(q, p) or 0, 0)) if p is not None else None
        return cls(P, box, ball)

    @property
    def degree(self) -> int:
        return self.min_poly.degree

    def is_zero(self) -> bool:
        return self.min_poly.coeffs == (0, 1)

    def is_rational(self) -> bool:
        return self.degree == 1

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise InvalidArgument("not a rational number")
        return Fraction(-self.min_poly.coeffs[0], self.min_poly.coeffs[1])

    def complex_box(self, eps: Fraction) -> Box:
        """Isolating box of the selected complex root with width <= eps."""
        if self.complex_selector is None:
            raise InvalidArgument("no complex selector")
        if self.is_rational():
            q = self.rational_value()
            return Box(q, q, Fraction(0), Fraction(0))
        rs = isolate_roots(self.min_poly, min(eps, self.complex_selector.width or eps))
        inside = [b for b in rs.boxes if not b.disjoint(self.complex_selector)]
        while len(inside) != 1 or not self.complex_selector.contains_box(inside[0]):
            eps /= 16
            rs = isolate_roots(self.min_poly, eps)
            inside = [b for b in rs.boxes if not b.disjoint(self.complex_selector)]
            if eps < Fraction(1, 2**4000):
                raise PrecisionExhausted("complex selector refinement failed")
        return inside[0]

    def padic_ball(self, radius: int) -> PadicBall:
        if self.padic_selector is None:
            raise InvalidArgument("no p-adic selector")
        b = self.padic_selector
        if radius <= b.radius or b.count_roots(self.min_poly) != 1:
            # a conjugacy-class selector cannot be shrunk around a single root
            return b
        return refine_root_ball(self.min_poly, b, radius)

    def to_json(self) -> dict:
        return {
            "min_poly": [str(c) for c in self.min_poly.coeffs],
            "complex_selector": self.complex_selector.to_json() if self.complex_selector else None,
            "padic_selector": self.padic_selector.to_json() if self.padic_selector else None,
            "trusted": self.trusted,
        }

    @classmethod
    def from_json(cls, d: dict) -> AlgebraicNumber:
        return cls(
            IntPoly(int(c) for c in d["min_poly"]),
            Box.from_json(d["complex_selector"]) if d.get("complex_selector") else None,
            PadicBall.from_json(d["padic_selector"]) if d.get("padic_selector") else None,
            bool(d.get("trusted", False)),
        )


def selector_isolates(P: IntPoly, ball: PadicBall) -> bool:
    """Whether ``ball`` holds exactly one root of P, or exactly one Q_p-conjugacy class.

    Roots outside Q_p cannot be told apart from their Q_p-conjugates by a
    ball with rational center; every quantity consumed downstream (norms,
    characteristic polynomials over Q_p) is invariant under that ambiguity.
    """
    n = ball.count_roots(P)
    if n == 1:
        return True
    if n == 0:
        return False
    from ltcrit.padics.factor import count_roots_in_ball, factor_local
    from ltcrit.padics.fields import qp

    owners = []
    for fac in factor_local(P.primitive(), qp(ball.p), cap=max(P.degree, 12)):
        k = count_roots_in_ball(list(fac.poly), ball)
        if k:
            owners.append((fac.degree, k))
    return len(owners) == 1 and owners[0] == (n, n)


def is_algebraic_integer(a: AlgebraicNumber) -> bool:
    return a.min_poly.primitive().lc == 1


def _irreducible_part(T: IntPoly) -> IntPoly:
    """The unique irreducible factor of a transform of an irreducible polynomial."""
    facs = factor(T)
    if len(facs) != 1:
        raise InvalidArgument(f"expected a power of one irreducible, got {len(facs)} factors")
    return facs[0][0]


def _transport(
    a: AlgebraicNumber,
    target: IntPoly,
    box_map: Callable[[Box], Box],
    ball_map: Callable[[PadicBall], PadicBall],
) -> AlgebraicNumber:
    """Image of ``a`` under a root map whose minimal polynomial is ``target``."""
    cbox = None
    if a.complex_selector is not None:
        eps = Fraction(1, 2**20)
        for _ in range(40):
            try:
                img = box_map(a.complex_box(eps))
                if roots_in_box(target, img) == 1:
                    cbox = img
                    break
            except PrecisionExhausted:
                pass
            eps /= 2**8
        else:
            raise PrecisionExhausted("complex selector transport did not isolate")
    ball = None
    if a.padic_selector is not None:
        radius = a.padic_selector.radius
        for _ in range(12):
            try:
                img = ball_map(a.padic_ball(radius))
                if selector_isolates(target, img):
                    ball = img
                    break
            except PrecisionExhausted:
                pass
            radius = 2 * radius + 8
        else:
            raise PrecisionExhausted("p-adic selector transport did not isolate")
    return AlgebraicNumber(target, cbox, ball, a.trusted)


def algebraic_inverse(a: AlgebraicNumber) -> AlgebraicNumber:
    if a.is_zero():
        raise InvalidArgument("zero has no inverse")
    return _transport(a, inverse_transform(a.min_poly), box_inv, ball_inv)


def algebraic_power(a: AlgebraicNumber, k: int) -> AlgebraicNumber:
    if k == 0:
        return AlgebraicNumber.rational(1, a.padic_selector.p if a.padic_selector else None)
    if k < 0:
        return algebraic_power(algebraic_inverse(a), -k)
    if k == 1:
        return a
    target = _irreducible_part(power_transform(a.min_poly, k))
    return _transport(a, target, lambda b: box_pow(b, k), lambda b: ball_pow(b, k))


def algebraic_scale(a: AlgebraicNumber, c: Fraction | int) -> AlgebraicNumber:
    c = Fraction(c)
    if c == 0:
        raise InvalidArgument("scale factor must be nonzero")
    if c == 1:
        return a
    return _transport(a, a.min_poly.scale_roots(c), lambda b: box_scale(b, c), lambda b: ball_scale(b, c))


def rational_power_combo(q: int, r: int, a: AlgebraicNumber, h: Fraction | int) -> AlgebraicNumber:
    """q^(r v) * a^(-u) for h = u/v in lowest terms.

    Integrality of the result is equivalent to integrality of q^r a^(-h),
    since an algebraic number is integral iff some positive power is.
    """
    if a.is_zero():
        raise InvalidArgument("a must be nonzero")
    h = Fraction(h)
    if h == 0:
        raise InvalidArgument("h must be nonzero")
    u, v = h.numerator, h.denominator
    out = algebraic_power(a, -u)
    return algebraic_scale(out, Fraction(q) ** (r * v))


def select_padic_factor(P: IntPoly, ball: PadicBall) -> IntPoly | None:
    """The irreducible factor of P owning the unique root of P in ``ball``.

    Returns None when the ball does not single out one root of one factor.
    """
    owners = [F for F, _ in factor(P) if ball.count_roots(F)]
    if len(owners) == 1 and selector_isolates(owners[0], ball):
        return owners[0]
    return None


def algebraic_product(a: AlgebraicNumber, b: AlgebraicNumber) -> AlgebraicNumber:
    """Product of two p-adically anchored algebraic numbers.

    Both selectors must live in the same fixed embedding into the p-adic
    closure; complex selectors are not combined because two independent
    boxes need not come from one embedding of Q(a, b).
    """
    if a.padic_selector is None or b.padic_selector is None:
        raise InvalidArgument("products need p-adic selectors on both factors")
    if a.is_rational() and b.is_rational():
        return AlgebraicNumber.rational(a.rational_value() * b.rational_value(), a.padic_selector.p)
    T = composed_product(a.min_poly, b.min_poly)
    radius = max(a.padic_selector.radius, b.padic_selector.radius)
    for _ in range(12):
        img = ball_mul(a.padic_ball(radius), b.padic_ball(radius))
        F = select_padic_factor(T, img)
        if F is not None:
            return AlgebraicNumber(F, None, img, a.trusted or b.trusted)
        radius = 2 * radius + 8
    raise PrecisionExhausted("could not single out the product's minimal polynomial")


def exterior_power_poly(P: IntPoly, m: int, eps_bits: int = 64) -> IntPoly:
    """Polynomial whose roots are the products of the m-element subsets of roots of P.

    With c = lc(P), the numbers c*root are algebraic integers, so
    prod_S (x - c^m prod_S) has integer coefficients.  Those are enclosed by
    interval arithmetic over certified root boxes and rounded once every
    enclosure is narrower than 1; the roots are then scaled back by c^-m.
    P must be squarefree.
    """
    n = P.degree
    if not 1 <= m <= n:
        raise InvalidArgument("subset size out of range")
    if m == 1:
        return P.primitive()
    if m == n:
        c0, cn = P.coeffs[0], P.lc
        val = Fraction((-1) ** n * c0, cn)
        return IntPoly((-val.numerator, val.denominator))
    if comb(n, m) > EXTERIOR_SIZE_CAP:
        raise UnsupportedDegree(f"C({n},{m}) subsets exceed the cap {EXTERIOR_SIZE_CAP}")
    c = P.lc
    cm = Fraction(c) ** m
    bits = eps_bits
    for _ in range(30):
        rs = isolate_roots(P, Fraction(1, 2**bits))
        if any(k != 1 for k in rs.multiplicities):
            raise InvalidArgument("exterior power needs a squarefree polynomial")
        boxes = list(rs.boxes)
        coeffs = [Box(Fraction(1), Fraction(1), Fraction(0), Fraction(0))]
        for S in combinations(range(n), m):
            z = box_scale(boxes[S[0]], Fraction(c))
            for i in S[1:]:
                z = box_mul(z, box_scale(boxes[i], Fraction(c)))
            negz = box_scale(z, Fraction(-1))
            # coeffs *= (x - z)
            new = [None] * (len(coeffs) + 1)
            for i, cf in enumerate(coeffs):
                t = box_mul(cf, negz)
                new[i] = t if new[i] is None else _box_add(new[i], t)
                new[i + 1] = cf if new[i + 1] is None else _box_add(new[i + 1], cf)
            coeffs = new
        ints = []
        for cf in coeffs:
            lo, hi = cf.re_lo, cf.re_hi
            if hi - lo >= 1 or cf.im_lo > 0 or cf.im_hi < 0:
                ints = None
                break
            k = _unique_int(lo, hi)
            if k is None:
                ints = None
                break
            ints.append(k)
        if ints is not None:
            return IntPoly(ints).scale_roots(1 / cm)
        bits *= 2
    raise PrecisionExhausted("exterior power coefficients did not round")


def _box_add(a: Box, b: Box) -> Box:
    return Box(a.re_lo + b.re_lo, a.re_hi + b.re_hi, a.im_lo + b.im_lo, a.im_hi + b.im_hi)


def _unique_int(lo: Fraction, hi: Fraction) -> int | None:
    a, b = ceil(lo), floor(hi)
    return a if a == b else None


def conjugate_subset_product(P: IntPoly, subset_size: int, power: int, ball: PadicBall) -> AlgebraicNumber:
    """Recognize (product of ``subset_size`` conjugates)^power as an exact algebraic number.

    ``ball`` is a p-adic enclosure of the value; the owning irreducible factor
    of the exterior-power polynomial is the one with a root in the ball.
    """
    H = exterior_power_poly(P, subset_size)
    if power != 1:
        H = power_transform(H, power)
    F = select_padic_factor(H, ball)
    if F is None:
        raise PrecisionExhausted("p-adic enclosure too coarse to recognize the product")
    return AlgebraicNumber(F, None, ball)

