"""Integer polynomials and resultant-based root transforms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

import sympy

from ltcrit.errors import InvalidArgument, UnsupportedDegree

FACTOR_DEGREE_CAP = 24

_X = sympy.Symbol("x")


@dataclass(frozen=True)
class IntPoly:
    """Polynomial with integer coefficients, lowest degree first."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Sequence[int]) -> IntPoly:
        out = cls((1,))
        for r in roots:
            out = out * cls((-r, 1))
        return out

    @classmethod
    def from_rational(cls, coeffs: Sequence[Fraction | int]) -> IntPoly:
        """Clear denominators of a rational polynomial (result is primitive)."""
        fr = [Fraction(c) for c in coeffs]
        den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in fr), 1)
        return cls(int(c * den) for c in fr).primitive()

    # basic structure

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def primitive(self) -> IntPoly:
        """Content removed, leading coefficient made positive."""
        if self.is_zero():
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return IntPoly(a // c for a in self.coeffs)

    def is_primitive(self) -> bool:
        return self.content() == 1 and self.lc > 0

    def trailing_zeros(self) -> int:
        """Multiplicity of 0 as a root."""
        m = 0
        while m < len(self.coeffs) and self.coeffs[m] == 0:
            m += 1
        return m

    def strip_zero_roots(self) -> tuple[IntPoly, int]:
        m = self.trailing_zeros()
        return IntPoly(self.coeffs[m:]), m

    # arithmetic

    def __add__(self, other: IntPoly) -> IntPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(x + y for x, y in zip(a, b))

    def __neg__(self) -> IntPoly:
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + (-other)

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPoly:
        out = IntPoly((1,))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> IntPoly:
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def reverse(self) -> IntPoly:
        """x^deg P(1/x); the roots are inverted (zero roots must be stripped first)."""
        return IntPoly(reversed(self.coeffs))

    def scale_roots(self, c: Fraction | int) -> IntPoly:
        """Polynomial whose roots are c times the roots of self."""
        c = Fraction(c)
        if c == 0:
            raise InvalidArgument("scale factor must be nonzero")
        a, b = c.numerator, c.denominator
        n = self.degree
        return IntPoly(
            p * b**i * a ** (n - i) for i, p in enumerate(self.coeffs)
        ).primitive()

    def to_sympy(self) -> sympy.Poly:
        return sympy.Poly(list(reversed(self.coeffs)) or [0], _X, domain="ZZ")

    @classmethod
    def from_sympy(cls, poly: sympy.Poly) -> IntPoly:
        return cls(int(c) for c in reversed(poly.all_coeffs()))

    def __repr__(self) -> str:
        if self.is_zero():
            return "IntPoly(0)"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mon and c in (1, -1):
                s = ("-" if c < 0 else "+") + mon
            else:
                s = f"{c:+d}" + ("*" + mon if mon else "")
            terms.append(s)
        txt = "".join(terms)
        return "IntPoly(" + (txt[1:] if txt.startswith("+") else txt) + ")"


# rational polynomial helpers (lists of Fractions, lowest degree first)


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _qdivmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list, list]:
    a = [Fraction(c) for c in a]
    b = _trim([Fraction(c) for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    inv = 1 / b[-1]
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        f = a[-1] * inv
        q[shift] = f
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a.pop()
    return _trim(q), _trim(a)


def _qgcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list:
    a = _trim([Fraction(c) for c in a])
    b = _trim([Fraction(c) for c in b])
    while b:
        a, b = b, _qdivmod(a, b)[1]
    return a


def poly_gcd(P: IntPoly, Q: IntPoly) -> IntPoly:
    if P.is_zero():
        return Q.primitive()
    g = _qgcd(P.coeffs, Q.coeffs)
    return IntPoly.from_rational(g)


def poly_divmod(P: IntPoly, Q: IntPoly) -> tuple[list[Fraction], list[Fraction]]:
    return _qdivmod(P.coeffs, Q.coeffs)


def exact_quotient(P: IntPoly, Q: IntPoly) -> IntPoly:
    q, r = _qdivmod(P.coeffs, Q.coeffs)
    if r:
        raise InvalidArgument(f"{Q} does not divide {P}")
    if any(c.denominator != 1 for c in q):
        return IntPoly.from_rational(q)
    return IntPoly(int(c) for c in q)


def _qderiv(a: Sequence[Fraction]) -> list:
    return _trim([i * c for i, c in enumerate(a) if i])


def _qmonic(a: Sequence[Fraction]) -> list:
    return [c / a[-1] for c in a]


def squarefree_decomposition(P: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm: P = c * prod S_k^k with S_k squarefree, pairwise coprime."""
    if P.is_zero():
        raise InvalidArgument("zero polynomial has no squarefree decomposition")
    out = []
    if P.degree < 1:
        return out
    a = _qmonic([Fraction(c) for c in P.coeffs])
    da = _qderiv(a)
    b = _qmonic(_qgcd(a, da))
    c = _qdivmod(a, b)[0]
    y = _trim([u - v for u, v in _zip_pad(_qdivmod(da, b)[0], _qderiv(c))])
    k = 1
    while len(c) > 1:
        z = _qmonic(_qgcd(c, y)) if y else c
        if len(z) > 1:
            out.append((IntPoly.from_rational(z), k))
        c = _qdivmod(c, z)[0]
        y = _trim([u - v for u, v in _zip_pad(_qdivmod(y, z)[0] if y else [], _qderiv(c))])
        k += 1
    return out


def _zip_pad(a: Sequence[Fraction], b: Sequence[Fraction]):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return zip(a, b)


def squarefree_part(P: IntPoly) -> IntPoly:
    out = IntPoly((1,))
    for s, _ in squarefree_decomposition(P):
        out = out * s
    return out.primitive()


def factor(P: IntPoly, cap: int = FACTOR_DEGREE_CAP) -> list[tuple[IntPoly, int]]:
    """Irreducible factorization over the rationals, factors primitive and sorted."""
    if P.is_zero():
        raise InvalidArgument("cannot factor the zero polynomial")
    if P.degree > cap:
        raise UnsupportedDegree(f"degree {P.degree} exceeds factorization cap {cap}")
    _, facs = P.to_sympy().factor_list()
    out = [(IntPoly.from_sympy(f).primitive(), m) for f, m in facs]
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return out


def is_irreducible(P: IntPoly) -> bool:
    if P.degree < 1:
        return False
    facs = factor(P, cap=max(P.degree, FACTOR_DEGREE_CAP))
    return len(facs) == 1 and facs[0][1] == 1


# resultants and transforms


def resultant(P: IntPoly, Q: IntPoly) -> int:
    """Res(P, Q) = lc(P)^deg Q * prod Q(roots of P), by the Euclidean recursion over Q."""
    if P.is_zero() or Q.is_zero():
        raise InvalidArgument("resultant of the zero polynomial")
    a = [Fraction(c) for c in P.coeffs]
    b = [Fraction(c) for c in Q.coeffs]
    acc = Fraction(1)
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return int(acc * b[0] ** da)
        if da == 0:
            return int(acc * a[0] ** db)
        if da < db:
            a, b = b, a
            da, db = db, da
            if (da * db) % 2:
                acc = -acc
        r = _qdivmod(a, b)[1]
        if not r:
            return 0
        dr = len(r) - 1
        if (da * db) % 2:
            acc = -acc
        acc *= b[-1] ** (da - dr)
        a, b = b, r


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Newton divided differences, returned in the monomial basis."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    poly[0] = coef[-1]
    deg = 0
    for k in range(n - 2, -1, -1):
        # poly = poly * (x - xs[k]) + coef[k]
        new = [Fraction(0)] * n
        for i in range(deg + 1):
            new[i + 1] += poly[i]
            new[i] -= poly[i] * xs[k]
        new[0] += coef[k]
        poly = new
        deg += 1
    return poly


def composed_product(P: IntPoly, Q: IntPoly) -> IntPoly:
    """Polynomial whose roots are all products a*b with P(a) = 0, Q(b) = 0.

    Computed as Res_y(P(y), y^m Q(x/y)) by evaluation at integer points and
    interpolation; zero roots are split off first so the auxiliary polynomial
    keeps full degree in y.
    """
    if P.is_zero() or Q.is_zero() or P.degree < 1 or Q.degree < 1:
        raise InvalidArgument("composed_product needs nonconstant polynomials")
    P1, _ = P.strip_zero_roots()
    Q1, _ = Q.strip_zero_roots()
    zeros = P.degree * Q.degree - P1.degree * Q1.degree
    n, m = P1.degree, Q1.degree
    if n == 0 or m == 0:
        return IntPoly((0,) * zeros + (1,))
    xs = list(range(n * m + 1))
    ys = []
    for c in xs:
        # y^m Q1(c/y) = sum_j q_j c^j y^(m-j)
        aux = [0] * (m + 1)
        for j, q in enumerate(Q1.coeffs):
            aux[m - j] = q * c**j
        ys.append(resultant(P1, IntPoly(aux)))
    body = IntPoly.from_rational(_interpolate(xs, ys))
    return IntPoly((0,) * zeros + body.coeffs).primitive()


def power_transform(P: IntPoly, b: int) -> IntPoly:
    """Polynomial whose roots are a^b for the roots a of P (multiplicities kept)."""
    if b < 1:
        raise InvalidArgument("power must be a positive integer")
    if P.is_zero() or P.degree < 1:
        raise InvalidArgument("power_transform needs a nonconstant polynomial")
    if b == 1:
        return P.primitive()
    P1, zeros = P.strip_zero_roots()
    n = P1.degree
    if n == 0:
        return IntPoly((0,) * zeros + (1,))
    xs = list(range(n + 1))
    ys = []
    for c in xs:
        g = IntPoly([c] + [0] * (b - 1) + [-1])
        ys.append(resultant(P1, g))
    body = IntPoly.from_rational(_interpolate(xs, ys))
    return IntPoly((0,) * zeros + body.coeffs).primitive()


def inverse_transform(P: IntPoly) -> IntPoly:
    """Polynomial whose roots are 1/a for the roots a of P."""
    if P.trailing_zeros():
        raise InvalidArgument("cannot invert a zero root")
    return P.reverse().primitive()


def shift(P: IntPoly, c: Fraction | int) -> IntPoly:
    """P(x + c) scaled to a primitive integer polynomial (roots moved by -c)."""
    c = Fraction(c)
    out = [Fraction(0)]
    for a in reversed(P.coeffs):
        # out = out * (x + c) + a
        new = [Fraction(0)] * (len(out) + 1)
        for i, v in enumerate(out):
            new[i + 1] += v
            new[i] += v * c
        new[0] += a
        out = new
    return IntPoly.from_rational(out)
