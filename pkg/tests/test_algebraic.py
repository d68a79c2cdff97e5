from __future__ import annotations

from fractions import Fraction

import pytest
import sympy

from ltcrit.errors import InvalidArgument
from ltcrit.exact_algebra.algebraic import (
    AlgebraicNumber,
    algebraic_inverse,
    algebraic_power,
    algebraic_product,
    algebraic_scale,
    conjugate_subset_product,
    exterior_power_poly,
    is_algebraic_integer,
    rational_power_combo,
)
from ltcrit.exact_algebra.polynomials import IntPoly
from ltcrit.exact_algebra.rootiso import Box, roots_in_box
from ltcrit.padics.padic import PadicBall

X = sympy.Symbol("x")

TWO_PLUS_I = AlgebraicNumber.make(IntPoly((5, -4, 1)), Box(Fraction(3, 2), Fraction(5, 2), Fraction(1, 2), Fraction(3, 2)),
                                  PadicBall(5, 0, 1))


def minpoly_of(expr) -> IntPoly:
    m = sympy.Poly(sympy.minimal_polynomial(expr, X), X)
    return IntPoly(tuple(int(c) for c in reversed(m.all_coeffs()))).primitive()


def test_make_validates():
    with pytest.raises(InvalidArgument):
        AlgebraicNumber.make(IntPoly((-4, 0, 1)))
    with pytest.raises(InvalidArgument):
        AlgebraicNumber.make(IntPoly((5, -4, 1)), padic_selector=PadicBall(5, 2, 1))
    with pytest.raises(InvalidArgument):
        AlgebraicNumber.make(IntPoly((5, -4, 1)), Box(Fraction(1), Fraction(3), Fraction(-2), Fraction(2)))


def test_conjugacy_class_selector():
    # sqrt(5) is not in Q_5, so a ball can only pick the pair {±sqrt(5)}
    a = AlgebraicNumber.make(IntPoly((-5, 0, 1)), padic_selector=PadicBall(5, 0, Fraction(1, 2)))
    assert a.padic_selector.radius == Fraction(1, 2)
    with pytest.raises(InvalidArgument):
        # a ball around 1 misses both roots
        AlgebraicNumber.make(IntPoly((-5, 0, 1)), padic_selector=PadicBall(5, 1, 1))


def test_is_algebraic_integer():
    assert is_algebraic_integer(AlgebraicNumber.make(IntPoly((2, -2, 1))))
    assert not is_algebraic_integer(AlgebraicNumber.make(IntPoly((-1, 2))))
    assert not is_algebraic_integer(AlgebraicNumber.make(IntPoly((1, -4, 5))))


def test_inverse_and_power():
    inv = algebraic_inverse(TWO_PLUS_I)
    assert inv.min_poly == minpoly_of(1 / (2 + sympy.I))
    assert roots_in_box(inv.min_poly, inv.complex_selector) == 1
    # (2+i)^-1 = (2-i)/5 lies in the lower half plane
    assert inv.complex_selector.im_hi < 0
    sq = algebraic_power(TWO_PLUS_I, 2)
    assert sq.min_poly == minpoly_of((2 + sympy.I) ** 2)
    assert sq.complex_selector.contains_point(Fraction(3), Fraction(4))
    # the p-adic selector of (2+i)^2 still singles out the root of positive valuation
    assert sq.padic_selector.count_roots(sq.min_poly) == 1
    assert sq.padic_selector.center % 5 == 0


def test_scale():
    s = algebraic_scale(TWO_PLUS_I, Fraction(1, 5))
    assert s.min_poly == minpoly_of((2 + sympy.I) / 5)


def test_rational_power_combo():
    # p^(r v) a^(-u) with h = 1/2: p^2 * p^-1 = p, the square of p^(1/2)
    c = rational_power_combo(7, 1, AlgebraicNumber.rational(7, 7), Fraction(1, 2))
    assert c.min_poly == IntPoly((-7, 1))
    assert is_algebraic_integer(c)
    c = rational_power_combo(5, 0, TWO_PLUS_I, 1)
    assert c.min_poly == minpoly_of((2 - sympy.I) / 5)
    assert not is_algebraic_integer(c)
    c = rational_power_combo(11, 0, AlgebraicNumber.rational(1, 11), 1)
    assert c.min_poly == IntPoly((-1, 1))
    with pytest.raises(InvalidArgument):
        rational_power_combo(5, 0, TWO_PLUS_I, 0)


def test_product_uses_padic_embedding():
    # (2+i)(2-i) = 5 versus (2+i)^2: the selectors decide which
    other = AlgebraicNumber.make(IntPoly((5, -4, 1)), padic_selector=PadicBall(5, 4, 1))
    assert algebraic_product(TWO_PLUS_I, other).min_poly == IntPoly((-5, 1))
    assert algebraic_product(TWO_PLUS_I, TWO_PLUS_I).min_poly == minpoly_of((2 + sympy.I) ** 2)


def test_exterior_power():
    P = IntPoly.from_roots([1, 2, 3, 5])
    E = exterior_power_poly(P, 2)
    expected = sympy.Poly(sympy.prod([X - a * b for a, b in [(1, 2), (1, 3), (1, 5), (2, 3), (2, 5), (3, 5)]]), X)
    assert E.coeffs == tuple(int(c) for c in reversed(expected.all_coeffs()))
    # product of all roots of x^2 - 4x + 5 is 5
    assert exterior_power_poly(IntPoly((5, -4, 1)), 2) == IntPoly((-5, 1))


def test_conjugate_subset_product():
    # the norm of 5^(1/3) from Q_5(5^(1/3)) is 5
    r = conjugate_subset_product(IntPoly((-5, 0, 0, 1)), 3, 1, PadicBall(5, 5, 8))
    assert r.min_poly == IntPoly((-5, 1))


def test_json_round_trip():
    assert AlgebraicNumber.from_json(TWO_PLUS_I.to_json()) == TWO_PLUS_I
