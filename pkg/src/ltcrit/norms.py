"""Anchoring algebraic uniformizers in local fields and recognizing their norms.

An algebraic π comes with a p-adic ball selecting one root of its minimal
polynomial P.  Inside a field k it is the unique root of P in k lying in that
ball.  Its norm to Q_p is (product of the conjugates in the local factor of P
owning that root)^(d/m), m being the degree of that local factor; the same
product of global conjugates is recognized exactly from the exterior power
of P by matching the p-adic value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ltcrit.errors import InvalidArgument, PrecisionExhausted, UnanchoredInput
from ltcrit.exact_algebra.algebraic import AlgebraicNumber, conjugate_subset_product
from ltcrit.exact_algebra.polynomials import IntPoly
from ltcrit.padics.factor import count_roots_in_ball, factor_local, roots_local
from ltcrit.padics.fields import LocalElement, LocalFieldDesc, norm_to_base, qp
from ltcrit.padics.padic import DEFAULT_PRECISION, MAX_PRECISION, PadicBall, PadicNumber


def _in_ball(x: LocalElement, ball: PadicBall) -> bool:
    d = x - x.field.element(ball.center, x.absolute_precision + 2)
    v = d.valuation()
    return v is None or v >= ball.radius


def anchor_in_field(field: LocalFieldDesc, pi: AlgebraicNumber, N: int = DEFAULT_PRECISION) -> LocalElement:
    """The element of ``field`` selected by the p-adic selector of ``pi``."""
    if pi.padic_selector is None:
        raise UnanchoredInput("uniformizer lacks a p-adic selector")
    ball = pi.padic_selector
    if ball.p != field.p:
        raise InvalidArgument("selector prime differs from the field's prime")
    if pi.is_rational():
        return field.element(pi.rational_value(), N)
    hits = [r for r in roots_local(pi.min_poly, field, N) if _in_ball(r, ball)]
    if not hits:
        raise InvalidArgument("the selected root of the minimal polynomial does not lie in the field")
    # several hits are Q_p-conjugate; any of them gives the same norm and
    # characteristic polynomial over Q_p, so take the first in the fixed order
    return hits[0]


def as_local(field: LocalFieldDesc, x, N: int = DEFAULT_PRECISION) -> LocalElement:
    """Coerce a rational, an anchored AlgebraicNumber or a LocalElement into ``field``."""
    if isinstance(x, LocalElement):
        if x.field != field:
            raise InvalidArgument("element belongs to a different field")
        return x
    if isinstance(x, AlgebraicNumber):
        return anchor_in_field(field, x, N)
    return field.element(Fraction(x), N)


def check_uniformizer(x: LocalElement) -> None:
    if x.ordinal() != 1:
        raise InvalidArgument(f"not a uniformizer: valuation {x.valuation()} but 1/e = 1/{x.field.e}")


def _local_factor_degree(P: IntPoly, ball: PadicBall, N: int) -> tuple[int, PadicNumber]:
    """Degree m of the Q_p-irreducible factor owning the selected root, and that factor's norm."""
    Qp = qp(ball.p)
    for fac in factor_local(P.primitive(), Qp, N, cap=max(P.degree, 12)):
        count = count_roots_in_ball(list(fac.poly), ball)
        if count:
            if count != fac.degree:
                raise PrecisionExhausted("selector does not single out one local factor")
            m = fac.degree
            c0 = fac.poly[0].to_padic()
            return m, c0 * (-1) ** m
    raise InvalidArgument("no local factor owns the selected root")


@dataclass(frozen=True)
class RecognizedNorm:
    algebraic: AlgebraicNumber
    padic: PadicNumber
    local_degree: int
    exponent: int

    def to_json(self) -> dict:
        return {
            "algebraic": self.algebraic.to_json(),
            "padic": self.padic.to_json(),
            "local_factor_degree": self.local_degree,
            "exponent": self.exponent,
        }


def algebraic_norm(field: LocalFieldDesc, pi: AlgebraicNumber, N: int = DEFAULT_PRECISION,
                   max_N: int = MAX_PRECISION) -> RecognizedNorm:
    """Nr_{k/Q_p}(π) both as an exact algebraic number and p-adically."""
    if pi.padic_selector is None:
        raise UnanchoredInput("uniformizer lacks a p-adic selector")
    p = field.p
    while True:
        try:
            local = anchor_in_field(field, pi, N)
            check_uniformizer(local)
            direct = norm_to_base(field, local)
            if pi.is_rational():
                val = pi.rational_value() ** field.d
                return RecognizedNorm(AlgebraicNumber.rational(val, p), direct, 1, field.d)
            m, nm = _local_factor_degree(pi.min_poly, pi.padic_selector, N)
            if field.d % m:
                raise InvalidArgument("local degree of π does not divide [k:Q_p]")
            R = field.d // m
            padic = nm**R
            if not padic.agrees_with(direct):
                raise PrecisionExhausted("norm via local factor disagrees with the field norm")
            ball = PadicBall.from_padic(padic)
            alg = conjugate_subset_product(pi.min_poly, m, R, ball)
            return RecognizedNorm(alg, padic, m, R)
        except PrecisionExhausted:
            if N * 2 > max_N:
                raise
            N *= 2
