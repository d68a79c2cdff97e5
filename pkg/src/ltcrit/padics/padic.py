"""p-adic numbers with pessimistic precision tracking, and p-adic balls."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ltcrit.errors import InvalidArgument, PrecisionExhausted
from ltcrit.exact_algebra.polynomials import IntPoly, shift
from ltcrit.padics.newton import NewtonPolygon, newton_polygon_from_valuations

DEFAULT_PRECISION = 64
MAX_PRECISION = 1024


def vp(x: int | Fraction, p: int) -> int | None:
    """p-adic valuation; None for zero."""
    x = Fraction(x)
    if x == 0:
        return None
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def reduce_mod(x: Fraction | int, p: int, N: int) -> Fraction:
    """Canonical representative of x modulo p^N with only p-power denominators."""
    x = Fraction(x)
    v = vp(x, p)
    if v is None or v >= N:
        return Fraction(0)
    unit = x / Fraction(p) ** v
    m = p ** (N - v)
    u = unit.numerator * pow(unit.denominator, -1, m) % m
    return Fraction(u) * Fraction(p) ** v


@dataclass(frozen=True)
class PadicNumber:
    """p^valuation * unit, with ``precision`` known digits of the unit.

    A value indistinguishable from zero has unit 0, precision 0 and
    ``valuation`` equal to the absolute precision at which it vanishes.
    """

    p: int
    valuation: int
    unit: int
    precision: int

    @classmethod
    def from_rational(cls, x: Fraction | int, p: int, precision: int = DEFAULT_PRECISION) -> PadicNumber:
        x = Fraction(x)
        v = vp(x, p)
        if v is None:
            return cls(p, precision, 0, 0)
        m = p**precision
        unit = x / Fraction(p) ** v
        return cls(p, v, unit.numerator * pow(unit.denominator, -1, m) % m, precision)

    @classmethod
    def zero(cls, p: int, absolute_precision: int) -> PadicNumber:
        return cls(p, absolute_precision, 0, 0)

    @classmethod
    def from_absolute(cls, value: int, scale: int, p: int, absolute_precision: int) -> PadicNumber:
        """p^scale * value known modulo p^absolute_precision."""
        N = absolute_precision - scale
        value %= p ** max(N, 0) if N > 0 else 1
        if N <= 0 or value == 0:
            return cls.zero(p, absolute_precision)
        v = vp(value, p)
        return cls(p, scale + v, value // p**v, N - v)

    def is_zero(self) -> bool:
        return self.unit == 0

    @property
    def absolute_precision(self) -> int:
        return self.valuation + self.precision

    def to_fraction(self) -> Fraction:
        return Fraction(self.unit) * Fraction(self.p) ** self.valuation

    def digits(self) -> list[int]:
        """Unit digits, least significant first."""
        out, u = [], self.unit
        for _ in range(self.precision):
            out.append(u % self.p)
            u //= self.p
        return out

    def _check(self, other: PadicNumber) -> None:
        if self.p != other.p:
            raise InvalidArgument("p-adic numbers over different primes")

    def __add__(self, other: PadicNumber | int | Fraction) -> PadicNumber:
        if not isinstance(other, PadicNumber):
            other = PadicNumber.from_rational(other, self.p, max(self.absolute_precision, 1) + 8)
        self._check(other)
        N = min(self.absolute_precision, other.absolute_precision)
        s = min(self.valuation, other.valuation)
        val = (self.unit * self.p ** (self.valuation - s) + other.unit * other.p ** (other.valuation - s))
        return PadicNumber.from_absolute(val, s, self.p, N)

    __radd__ = __add__

    def __neg__(self) -> PadicNumber:
        if self.is_zero():
            return self
        return PadicNumber(self.p, self.valuation, (-self.unit) % self.p**self.precision, self.precision)

    def __sub__(self, other: PadicNumber | int | Fraction) -> PadicNumber:
        if not isinstance(other, PadicNumber):
            other = PadicNumber.from_rational(other, self.p, max(self.absolute_precision, 1) + 8)
        return self + (-other)

    def __mul__(self, other: PadicNumber | int | Fraction) -> PadicNumber:
        if not isinstance(other, PadicNumber):
            other = PadicNumber.from_rational(other, self.p, max(self.precision, 1))
        self._check(other)
        if self.is_zero() or other.is_zero():
            if self.is_zero() and other.is_zero():
                return PadicNumber.zero(self.p, self.valuation + other.valuation)
            nz = other if self.is_zero() else self
            z = self if self.is_zero() else other
            return PadicNumber.zero(self.p, z.valuation + nz.valuation)
        N = min(self.precision, other.precision)
        m = self.p**N
        return PadicNumber(self.p, self.valuation + other.valuation, self.unit * other.unit % m, N)

    __rmul__ = __mul__

    def inverse(self) -> PadicNumber:
        if self.is_zero():
            raise ZeroDivisionError("p-adic zero (at working precision) has no inverse")
        m = self.p**self.precision
        return PadicNumber(self.p, -self.valuation, pow(self.unit, -1, m), self.precision)

    def __truediv__(self, other: PadicNumber | int | Fraction) -> PadicNumber:
        if not isinstance(other, PadicNumber):
            other = PadicNumber.from_rational(other, self.p, max(self.precision, 1))
        return self * other.inverse()

    def __pow__(self, k: int) -> PadicNumber:
        if k < 0:
            return self.inverse() ** (-k)
        out = PadicNumber.from_rational(1, self.p, self.precision if not self.is_zero() else 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def agrees_with(self, other: PadicNumber | int | Fraction) -> bool:
        """Equality at the common absolute precision ("equal at O(p^N)")."""
        diff = self - other
        return diff.is_zero()

    def common_precision(self, other: PadicNumber) -> int:
        return min(self.absolute_precision, other.absolute_precision)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "valuation": self.valuation,
            "unit": str(self.unit),
            "precision": self.precision,
        }

    @classmethod
    def from_json(cls, d: dict) -> PadicNumber:
        return cls(int(d["p"]), int(d["valuation"]), int(d["unit"]), int(d["precision"]))

    def __repr__(self) -> str:
        if self.is_zero():
            return f"O({self.p}^{self.valuation})"
        return f"{self.p}^{self.valuation}*{self.unit} + O({self.p}^{self.absolute_precision})"


@dataclass(frozen=True)
class PadicBall:
    """The closed ball {x : v_p(x - center) >= radius} in C_p.

    The radius may be a non-integral rational.  Because the center is
    rational, a ball contains either all or none of the Q_p-conjugates of
    an algebraic number.
    """

    p: int
    center: Fraction
    radius: int | Fraction

    def __post_init__(self):
        r = Fraction(self.radius)
        object.__setattr__(self, "radius", int(r) if r.denominator == 1 else r)
        object.__setattr__(self, "center", reduce_mod(self.center, self.p, math.ceil(r)))

    @classmethod
    def from_digits(cls, p: int, digits: list[int], valuation: int = 0) -> PadicBall:
        c = sum(d * p**i for i, d in enumerate(digits))
        return cls(p, Fraction(c) * Fraction(p) ** valuation, valuation + len(digits))

    @classmethod
    def from_padic(cls, x: PadicNumber) -> PadicBall:
        return cls(x.p, x.to_fraction(), x.absolute_precision)

    def contains(self, x: Fraction | int) -> bool:
        v = vp(Fraction(x) - self.center, self.p)
        return v is None or v >= self.radius

    def newton_polygon(self, P: IntPoly) -> NewtonPolygon:
        """Newton polygon of y -> P(center + y)."""
        Q = shift(P, self.center)
        return newton_polygon_from_valuations([vp(c, self.p) if c else None for c in Q.coeffs])

    def count_roots(self, P: IntPoly) -> int:
        """Roots of P in the ball, with multiplicity, over the algebraic closure."""
        return self.newton_polygon(P).count_roots_with_valuation_at_least(self.radius)

    def children(self) -> list[PadicBall]:
        if not isinstance(self.radius, int):
            raise InvalidArgument("only balls of integral radius have child balls")
        step = Fraction(self.p) ** self.radius
        return [PadicBall(self.p, self.center + j * step, self.radius + 1) for j in range(self.p)]

    def to_json(self) -> dict:
        return {"p": self.p, "center": str(self.center), "radius": str(self.radius)}

    @classmethod
    def from_json(cls, d: dict) -> PadicBall:
        return cls(int(d["p"]), Fraction(d["center"]), Fraction(d["radius"]))


def refine_root_ball(P: IntPoly, ball: PadicBall, radius: int) -> PadicBall:
    """Shrink a ball holding exactly one root of P to the given radius.

    The root is fixed by Galois (a ball with rational center containing a
    single root), hence lies in Q_p and in exactly one child ball.  Once the
    Hensel condition v(P(c)) > 2 v(P'(c)) holds, Newton steps take over.
    """
    if ball.count_roots(P) != 1:
        raise InvalidArgument("ball does not isolate exactly one root")
    p = ball.p
    # a root in Q_p has integral distance to any rational center
    ball = PadicBall(p, ball.center, math.ceil(ball.radius))
    dP = P.derivative()
    while ball.radius < radius:
        c = ball.center
        fc, dc = P(c), dP(c)
        vf, vd = vp(fc, p), vp(dc, p)
        if fc == 0:
            return PadicBall(p, c, radius)
        if vd is not None and vf > 2 * vd:
            # Newton: precision after each step is at least 2(v(f) - v(f')) - ... ; stay conservative
            for _ in range(64):
                c = reduce_mod(c - P(c) / dP(c), p, radius + vd + 8)
                fc = P(c)
                if fc == 0 or vp(fc, p) - vd >= radius:
                    break
            out = PadicBall(p, c, radius)
            if out.count_roots(P) != 1:
                raise PrecisionExhausted("Newton refinement left the isolating ball")
            return out
        nxt = [b for b in ball.children() if b.count_roots(P) > 0]
        if len(nxt) != 1:
            raise InvalidArgument("isolated root did not descend to a unique child ball")
        ball = nxt[0]
    return ball
