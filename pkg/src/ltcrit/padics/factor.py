"""Polynomials over tower fields: Newton polygons, Hensel lifting, factorization.

Factorization is "order one": split at Newton polygon vertices, then by the
coprime factors of each segment's residual polynomial, refining every split
by Newton iteration.  A segment whose residual polynomial is a single
irreducible ψ with multiplicity one gives an irreducible factor with
ramification b (slope denominator) and residue degree deg ψ.  A repeated
linear residual with integral slope is handled by translating to the
residual root; anything else is reported as irregular.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction


from ltcrit.errors import (
    InvalidArgument,
    IrregularPolynomial,
    NotLiftable,
    PrecisionExhausted,
    UnsupportedDegree,
)
from ltcrit.exact_algebra.polynomials import IntPoly, poly_gcd
from ltcrit.padics.fields import LocalElement, LocalFieldDesc
from ltcrit.padics.newton import NewtonPolygon, newton_polygon_from_valuations
from ltcrit.padics.padic import DEFAULT_PRECISION

KPoly = list[LocalElement]

DEFAULT_DEGREE_CAP = 12
_MAX_TRANSLATIONS = 64


# polynomial arithmetic over a field


def kpoly(g, field: LocalFieldDesc, N: int = DEFAULT_PRECISION) -> KPoly:
    """Coerce an IntPoly, a list of rationals or a list of elements to a KPoly."""
    if isinstance(g, IntPoly):
        return [field.element(c, N) for c in g.coeffs]
    out = []
    for c in g:
        out.append(c if isinstance(c, LocalElement) else field.element(c, N))
    return out


def kp_trim(a: KPoly) -> KPoly:
    a = list(a)
    while len(a) > 1 and a[-1].is_zero():
        a.pop()
    return a


def kp_add(a: KPoly, b: KPoly) -> KPoly:
    if len(a) < len(b):
        a, b = b, a
    return [x + b[i] if i < len(b) else x for i, x in enumerate(a)]


def kp_neg(a: KPoly) -> KPoly:
    return [-x for x in a]


def kp_sub(a: KPoly, b: KPoly) -> KPoly:
    return kp_add(a, kp_neg(b))


def kp_mul(a: KPoly, b: KPoly) -> KPoly:
    F = a[0].field
    N = max(x.absolute_precision for x in a + b) + 1
    out = [F.zero(N) for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x.is_zero() and x.absolute_precision > N:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def kp_scale(a: KPoly, c: LocalElement) -> KPoly:
    return [x * c for x in a]


def kp_divmod_monic(a: KPoly, b: KPoly) -> tuple[KPoly, KPoly]:
    """Division by a monic polynomial (leading coefficient assumed exactly 1)."""
    F = b[0].field
    m = len(b) - 1
    a = list(a)
    if len(a) - 1 < m:
        return [F.zero(max(x.absolute_precision for x in a))], a
    q = [None] * (len(a) - m)
    for k in range(len(a) - 1, m - 1, -1):
        c = a[k]
        q[k - m] = c
        for j in range(m):
            a[k - m + j] = a[k - m + j] - c * b[j]
    return q, a[:m] if m else [F.zero(max(x.absolute_precision for x in a))]


def kp_eval(a: KPoly, x: LocalElement) -> LocalElement:
    acc = a[-1]
    for c in reversed(a[:-1]):
        acc = acc * x + c
    return acc


def kp_deriv(a: KPoly) -> KPoly:
    if len(a) == 1:
        return [a[0].field.zero(a[0].absolute_precision)]
    return [c * i for i, c in enumerate(a) if i]


def kp_shift(a: KPoly, c: LocalElement) -> KPoly:
    """a(x + c) by Horner."""
    out = [a[-1]]
    lin = [c, c.field.one(max(c.absolute_precision, a[-1].absolute_precision) + 1)]
    for coef in reversed(a[:-1]):
        out = kp_add(kp_mul(out, lin), [coef])
    return out


def kp_monic(a: KPoly) -> KPoly:
    a = kp_trim(a)
    lc = a[-1]
    if lc.is_zero():
        raise PrecisionExhausted("leading coefficient vanishes at working precision")
    inv = lc.inverse()
    out = [x * inv for x in a[:-1]]
    return out + [a[0].field.one(max(x.absolute_precision for x in out) + 1 if out else DEFAULT_PRECISION)]


def kp_ordinals(a: KPoly) -> list[int | None]:
    return [x.ordinal() for x in a]


def kp_min_precision(a: KPoly) -> int:
    return min(x.absolute_precision for x in a)


def newton_polygon_local(g: KPoly | IntPoly, field: LocalFieldDesc | None = None,
                         N: int = DEFAULT_PRECISION) -> NewtonPolygon:
    """Newton polygon with valuations normalized by v(p) = 1.

    Slopes are geometric slopes (negatives of root valuations).
    """
    if isinstance(g, IntPoly):
        if field is None:
            raise InvalidArgument("a field is required for IntPoly input")
        g = kpoly(g, field, N)
    return newton_polygon_from_valuations([x.valuation() for x in g])


def _ordinal_polygon(g: KPoly) -> NewtonPolygon:
    return newton_polygon_from_valuations(kp_ordinals(g))


# Hensel lifting


def hensel_lift(g, seed, targetN: int, field: LocalFieldDesc | None = None) -> LocalElement:
    """Lift an approximate simple root to absolute precision ``targetN``.

    Requires v(g(seed)) > 2 v(g'(seed)).  Plain integers are accepted for
    ``seed`` when ``field`` (default Q_p for the prime of an element seed) is given.
    """
    if not isinstance(seed, LocalElement):
        if field is None:
            raise InvalidArgument("field required for a rational seed")
        seed = field.element(seed, targetN + 8)
    F = seed.field
    G = kpoly(g, F, targetN + 8)
    dG = kp_deriv(G)
    x = F.element(seed.rational_coords(), targetN + 8)
    gx, dx = kp_eval(G, x), kp_eval(dG, x)
    vg, vd = gx.valuation(), dx.valuation()
    if gx.is_zero():
        return x.with_precision(targetN)
    if vd is None or vg <= 2 * vd:
        raise NotLiftable("Hensel hypothesis v(g(x)) > 2 v(g'(x)) fails")
    for _ in range(4 * max(targetN, 1).bit_length() + 8):
        gx = kp_eval(G, x)
        if gx.is_zero() or gx.valuation() - vd >= targetN:
            break
        x = x - gx / kp_eval(dG, x)
    gx = kp_eval(G, x)
    if not (gx.is_zero() or gx.valuation() - vd >= targetN):
        raise PrecisionExhausted("Newton iteration did not reach the target precision")
    return x.with_precision(targetN)


def hensel_lift_factorization(g, A0, B0, targetN: int, field: LocalFieldDesc) -> tuple[KPoly, KPoly]:
    """Lift g ≡ A0 B0 (mod the maximal ideal) with A0 monic and coprime to B0 mod π."""
    G = kp_monic(kpoly(g, field, targetN + 8))
    A = kp_monic(kpoly(A0, field, targetN + 8))
    B = kpoly(B0, field, targetN + 8)
    Fq = field.residue_field
    ra = [x.residue() for x in A]
    rb = [x.residue() for x in B]
    if len(Fq.pgcd(ra, rb)) > 1:
        raise NotLiftable("factors are not coprime modulo the maximal ideal")
    A, Q = refine_factor(G, A)
    return A, Q


# linear algebra over a field with valuation pivoting


def solve_linear(M: list[list[LocalElement]], b: list[LocalElement]) -> list[LocalElement]:
    n = len(M)
    A = [list(row) + [b[i]] for i, row in enumerate(M)]
    for col in range(n):
        best, bv = None, None
        for r in range(col, n):
            v = A[r][col].valuation()
            if v is not None and (bv is None or v < bv):
                best, bv = r, v
        if best is None:
            raise PrecisionExhausted("singular system at working precision")
        A[col], A[best] = A[best], A[col]
        inv = A[col][col].inverse()
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and not A[r][col].is_zero():
                c = A[r][col]
                A[r] = [x - c * y for x, y in zip(A[r], A[col])]
    return [A[i][n] for i in range(n)]


def _inverse_mod(Q: KPoly, A: KPoly) -> KPoly:
    m = len(A) - 1
    F = A[0].field
    N = kp_min_precision(A) + 2
    Qm = kp_divmod_monic(Q, A)[1]
    cols = []
    cur = Qm + [F.zero(N)] * (m - len(Qm))
    for _ in range(m):
        cols.append(cur)
        shifted = [F.zero(N)] + cur
        cur = kp_divmod_monic(shifted, A)[1]
        cur = cur + [F.zero(N)] * (m - len(cur))
    M = [[cols[j][i] for j in range(m)] for i in range(m)]
    e0 = [F.one(N)] + [F.zero(N) for _ in range(m - 1)]
    return solve_linear(M, e0)


def refine_factor(g: KPoly, A0: KPoly, max_iter: int = 80) -> tuple[KPoly, KPoly]:
    """Newton iteration A <- A + (R Q^{-1} mod A) for a monic factor of monic g."""
    A = list(A0)
    for _ in range(max_iter):
        Q, R = kp_divmod_monic(g, A)
        if all(r.is_zero() for r in R):
            return A, Q
        S = _inverse_mod(Q, A)
        delta = kp_divmod_monic(kp_mul(R, S), A)[1]
        if all(x.is_zero() for x in delta):
            return A, Q
        A = kp_add(A, delta + [A[0].field.zero(kp_min_precision(A))] * 0)
        A[-1] = A[0].field.one(kp_min_precision(A) + 1)
    raise PrecisionExhausted("factor refinement did not converge")


# residual polynomials


def _pi_power(field: LocalFieldDesc, n: int, N: int) -> LocalElement:
    pi = field.uniformizer(N + abs(n) + 2)
    if n >= 0:
        return pi**n
    return pi.inverse() ** (-n)


def residual_polynomial(g: KPoly, start: int, length: int, slope_ord: Fraction):
    """Residual polynomial of the segment [start, start + length] of g.

    ``slope_ord`` is the root valuation in units of the uniformizer.
    Returns (coefficients over the residue field, a, b).
    """
    F = g[0].field
    Fq = F.residue_field
    a, b = slope_ord.numerator, slope_ord.denominator
    h0 = g[start].ordinal()
    N = kp_min_precision(g) + 4
    out = []
    for k in range(length // b + 1):
        c = g[start + k * b]
        h = h0 - k * a
        if c.ordinal() is not None and c.ordinal() == h:
            out.append((c * _pi_power(F, -h, N)).residue())
        else:
            out.append(Fq.zero)
    return out, a, b


def _lift_residue(field: LocalFieldDesc, r, N: int) -> LocalElement:
    return field.element([list(r)], N)


@dataclass(frozen=True)
class LocalFactor:
    """A monic irreducible factor over the field with its ramification data."""

    poly: tuple[LocalElement, ...]
    e: int
    f: int
    slope: Fraction = Fraction(0)
    shift: LocalElement | None = dc_field(default=None, compare=False)

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    def is_linear(self) -> bool:
        return self.degree == 1

    def root(self) -> LocalElement:
        if not self.is_linear():
            raise InvalidArgument("only linear factors have a root")
        return -self.poly[0]

    def sort_key(self):
        key = []
        for c in reversed(self.poly):
            o = c.ordinal()
            if o is None:
                key.append((1, 0, ()))
            else:
                unit = c * _pi_power(c.field, -o, c.absolute_precision)
                key.append((0, o, unit.residue()))
        return (self.degree, key)

    def to_json(self) -> dict:
        return {"degree": self.degree, "e": self.e, "f": self.f, "slope": str(self.slope),
                "coefficients": [c.to_json() for c in self.poly]}


def _factor_monic(g: KPoly, depth: int) -> list[LocalFactor]:
    F = g[0].field
    n = len(g) - 1
    if n == 1:
        return [LocalFactor(tuple(g), 1, 1)]
    if g[0].is_zero():
        x = [F.zero(g[0].absolute_precision), F.one(kp_min_precision(g) + 1)]
        rest = g[1:]
        return [LocalFactor(tuple(x), 1, 1)] + _factor_monic(rest, depth)
    NP = _ordinal_polygon(g)
    segs = NP.segments
    if len(segs) > 1:
        m = segs[0].length
        lc = g[m]
        inv = lc.inverse()
        A0 = [c * inv for c in g[:m]] + [F.one(kp_min_precision(g) + 1)]
        A, Q = refine_factor(g, A0)
        return _factor_monic(A, depth) + _factor_monic(kp_monic(Q), depth)
    seg = segs[0]
    lam = seg.root_valuation
    R, a, b = residual_polynomial(g, 0, n, lam)
    Fq = F.residue_field
    facs = Fq.factor(R)
    if len(facs) > 1:
        psi, mult = facs[0]
        piece = [Fq.one]
        for _ in range(mult):
            piece = Fq.pmul(piece, psi)
        D = len(piece) - 1
        N = kp_min_precision(g) + 2
        A0 = [F.zero(N) for _ in range(b * D + 1)]
        for k, r in enumerate(piece):
            A0[b * k] = _lift_residue(F, r, N) * _pi_power(F, a * (D - k), N)
        A0[-1] = F.one(N)
        A, Q = refine_factor(g, A0)
        return _factor_monic(A, depth) + _factor_monic(kp_monic(Q), depth)
    psi, mult = facs[0]
    if mult == 1:
        return [LocalFactor(tuple(g), b, len(psi) - 1, Fraction(lam, F.e))]
    if b == 1 and len(psi) == 2:
        if depth >= _MAX_TRANSLATIONS:
            raise PrecisionExhausted("too many translations while separating roots")
        N = kp_min_precision(g) + 2
        c = _lift_residue(F, Fq.neg(psi[0]), N) * _pi_power(F, a, N)
        shifted = kp_shift(g, c)
        out = []
        for fac in _factor_monic(shifted, depth + 1):
            back = kp_shift(list(fac.poly), -c)
            total = c if fac.shift is None else fac.shift + c
            out.append(LocalFactor(tuple(back), fac.e, fac.f, fac.slope, total))
        return out
    raise IrregularPolynomial(
        f"segment with slope {lam} has residual polynomial with a repeated factor of degree {len(psi) - 1}"
    )


def factor_local(g, field: LocalFieldDesc, N: int = DEFAULT_PRECISION,
                 cap: int = DEFAULT_DEGREE_CAP) -> list[LocalFactor]:
    """Monic irreducible factors of a squarefree polynomial over ``field``.

    Each factor carries its ramification index and residue degree over the
    field; factors come in a deterministic order (degree, then residue data).
    """
    if isinstance(g, IntPoly):
        if g.is_zero() or g.degree < 1:
            raise InvalidArgument("factor_local needs a nonconstant polynomial")
        if g.degree > cap:
            raise UnsupportedDegree(f"degree {g.degree} exceeds the local factorization cap {cap}")
        if poly_gcd(g, g.derivative()).degree > 0:
            raise InvalidArgument("factor_local needs a squarefree polynomial")
    G = kp_trim(kpoly(g, field, N))
    if len(G) - 1 > cap:
        raise UnsupportedDegree(f"degree {len(G) - 1} exceeds the local factorization cap {cap}")
    if len(G) < 2:
        raise InvalidArgument("factor_local needs a nonconstant polynomial")
    out = _factor_monic(kp_monic(G), 0)
    for fac in out:
        if fac.e * fac.f != fac.degree:
            raise IrregularPolynomial("ramification bookkeeping failed for a factor")
    return sorted(out, key=LocalFactor.sort_key)


def count_roots_in_ball(g: KPoly, ball) -> int:
    """Roots of g over the algebraic closure lying in a p-adic ball with rational center."""
    F = g[0].field
    shifted = kp_shift(list(g), F.element(ball.center, kp_min_precision(g) + 2))
    vals = [c.valuation() for c in shifted]
    return newton_polygon_from_valuations(vals).count_roots_with_valuation_at_least(ball.radius)


def roots_local(g, field: LocalFieldDesc, N: int = DEFAULT_PRECISION,
                cap: int = DEFAULT_DEGREE_CAP) -> list[LocalElement]:
    return [fac.root() for fac in factor_local(g, field, N, cap) if fac.is_linear()]


def has_root(g, field: LocalFieldDesc, N: int = DEFAULT_PRECISION) -> bool:
    return any(fac.is_linear() for fac in factor_local(g, field, N))


def cyclotomic_prime_power(p: int, j: int) -> IntPoly:
    """Φ_{p^j}(x) = sum_{i<p} x^(i p^(j-1))."""
    step = p ** (j - 1)
    coeffs = [0] * ((p - 1) * step + 1)
    for i in range(p):
        coeffs[i * step] = 1
    return IntPoly(tuple(coeffs))


def roots_of_unity_order(field: LocalFieldDesc, N: int = DEFAULT_PRECISION) -> tuple[int, int]:
    """(q - 1, a) with #μ∞(field) = (q - 1) p^a."""
    p, e = field.p, field.e
    bound = math.floor(math.log(e * p / (p - 1), p)) + 1 if e * p / (p - 1) >= 1 else 1
    a = 0
    for j in range(1, bound + 1):
        phi = cyclotomic_prime_power(p, j)
        if phi.degree > field.d:
            break
        if phi.degree > DEFAULT_DEGREE_CAP:
            raise UnsupportedDegree("cyclotomic test polynomial exceeds the factorization cap")
        if has_root(phi, field, N):
            a = j
        else:
            break
    return field.q - 1, a
