"""φ-module characteristic polynomials and Lubin-Tate extension comparisons.

For a uniformizer π of k with minimal polynomial E over the unramified layer
k0, the characteristic polynomial of φ^f on D_cris of the inverse Lubin-Tate
character is the product of the Frobenius twists E^{φ^i}, i < f.  It is also
the characteristic polynomial of multiplication by 1⊗π on k0 ⊗ k, whose
matrix on the basis e_j (1⊗π^i) is the block companion matrix built here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ltcrit.errors import InvalidArgument, PrecisionExhausted
from ltcrit.exact_algebra.algebraic import (
    AlgebraicNumber,
    algebraic_inverse,
    algebraic_power,
    algebraic_product,
)
from ltcrit.exact_algebra.polynomials import IntPoly, poly_divmod
from ltcrit.linalg import berkowitz
from ltcrit.norms import algebraic_norm, as_local, check_uniformizer
from ltcrit.padics.factor import factor_local, kp_mul, roots_of_unity_order, solve_linear
from ltcrit.padics.fields import (
    LocalElement,
    LocalFieldDesc,
    frobenius_power,
    norm_to_base,
    qp,
)
from ltcrit.padics.padic import DEFAULT_PRECISION, PadicNumber


@dataclass(frozen=True)
class PhiCharPoly:
    base_field: LocalFieldDesc
    factors: tuple[tuple[LocalElement, ...], ...]
    product: tuple[PadicNumber, ...]

    @property
    def degree(self) -> int:
        return len(self.product) - 1

    def to_json(self) -> dict:
        return {
            "field": self.base_field.to_json(),
            "factors": [[c.to_json() for c in fac] for fac in self.factors],
            "product": [c.to_json() for c in self.product],
        }


@dataclass(frozen=True)
class BlockCompanion:
    """d x d matrix over k0, rows and columns indexed by (i, j) -> i*f + j."""

    size: int
    e: int
    f: int
    entries: tuple[tuple[LocalElement, ...], ...]

    def charpoly(self) -> list[LocalElement]:
        k0 = self.entries[0][0].field
        N = min(x.absolute_precision for row in self.entries for x in row) + 4
        return berkowitz([list(r) for r in self.entries], k0.zero(N), k0.one(N))


def minimal_polynomial_over_k0(field: LocalFieldDesc, pi: LocalElement) -> list[LocalElement]:
    """E(T): characteristic polynomial of π over the unramified layer, monic, lowest first."""
    check_uniformizer(pi)
    e = field.e
    k0 = field.unramified_layer()
    N = pi.absolute_precision
    pi0 = field.uniformizer(N + 2)
    cols = []
    power = field.one(N + 2)
    for _ in range(e):
        cols.append((pi * power).k0_parts())
        power = power * pi0
    M = [[cols[c][r] for c in range(e)] for r in range(e)]
    return berkowitz(M, k0.zero(N + 4), k0.one(N + 4))


def dcris_charpoly(field: LocalFieldDesc, pi, N: int = DEFAULT_PRECISION) -> PhiCharPoly:
    """∏_{i<f} E^{φ^i}(T), with E the minimal polynomial of π over k0."""
    x = as_local(field, pi, N)
    E = minimal_polynomial_over_k0(field, x)
    twists = []
    for i in range(field.f):
        twists.append(tuple(frobenius_power(field, c, i) for c in E))
    prod = list(twists[0])
    for tw in twists[1:]:
        prod = kp_mul(prod, list(tw))
    out = []
    for c in prod:
        if not c.lies_in_qp():
            raise PrecisionExhausted("product coefficient does not descend to Q_p at working precision")
        out.append(c.to_padic())
    return PhiCharPoly(field, tuple(twists), tuple(out))


def block_companion_matrix(field: LocalFieldDesc, pi, N: int = DEFAULT_PRECISION) -> BlockCompanion:
    """Matrix of 1⊗π on k0 ⊗ k in the ordered basis e_0, ..., e_{f-1}, e_0(1⊗π), ..."""
    x = as_local(field, pi, N)
    E = minimal_polynomial_over_k0(field, x)
    e, f = field.e, field.f
    k0 = field.unramified_layer()
    prec = min(c.absolute_precision for c in E)
    zero = k0.zero(prec)
    one = k0.one(prec)
    d = e * f
    M = [[zero] * d for _ in range(d)]
    for i in range(e - 1):
        for j in range(f):
            M[(i + 1) * f + j][i * f + j] = one
    for i in range(e):
        for j in range(f):
            M[i * f + j][(e - 1) * f + j] = -frobenius_power(field, E[i], j)
    return BlockCompanion(d, e, f, tuple(tuple(r) for r in M))


# comparison of Lubin-Tate extensions


@dataclass(frozen=True)
class Embedding:
    """k1 -> k2 given by the images of the generators t1 and π1."""

    source: LocalFieldDesc
    target: LocalFieldDesc
    image_t: LocalElement
    image_pi: LocalElement

    def __call__(self, x: LocalElement) -> LocalElement:
        k1, k2 = self.source, self.target
        N = x.absolute_precision
        acc = k2.zero(N)
        if x.is_zero():
            return acc
        s = Fraction(k1.p) ** x.scale
        pw_pi = k2.one(N + 2)
        for i in range(k1.e):
            pw_t = k2.one(N + 2)
            for j in range(k1.f):
                c = x.coords[i * k1.f + j]
                if c:
                    acc = acc + pw_pi * pw_t * k2.element(c * s, N + 2)
                pw_t = pw_t * self.image_t
            pw_pi = pw_pi * self.image_pi
        return acc.with_precision(N)


def find_embedding(k1: LocalFieldDesc, k2: LocalFieldDesc, N: int = DEFAULT_PRECISION) -> Embedding:
    """An embedding of k1 into k2.

    When k1 shares the unramified layer of k2's presentation the tower
    inclusion t -> t is used; otherwise the first root in the fixed order.
    """
    if k1.p != k2.p:
        raise InvalidArgument("fields over different primes")
    if k1 == k2:
        return Embedding(k1, k2, k2.generator_t(N), k2.uniformizer(N))
    if k2.d % k1.d or k2.f % k1.f or k2.e % k1.e:
        raise InvalidArgument("no embedding: degrees are incompatible")
    if k1.f == 1:
        t_img = k2.element(-k1.unramified_poly[0], N)
    elif k1.unramified_poly == k2.unramified_poly:
        t_img = k2.generator_t(N)
    else:
        roots = [fac.root() for fac in factor_local(IntPoly(k1.unramified_poly), k2, N) if fac.is_linear()]
        if not roots:
            raise InvalidArgument("no embedding of the unramified layer")
        t_img = roots[0]
    if k1.e == 1:
        return Embedding(k1, k2, t_img, k2.element(k1.p, N))
    k1_0 = k1.unramified_layer()
    pre = Embedding(k1_0, k2, t_img, k2.element(k1.p, N))
    E_img = [pre(k1_0.element(list(c), N)) for c in k1.eisenstein_poly]
    roots = [fac.root() for fac in factor_local(E_img, k2, N) if fac.is_linear()]
    if not roots:
        raise InvalidArgument("no embedding of k1 into k2")
    return Embedding(k1, k2, t_img, roots[0])


def relative_norm(emb: Embedding, x: LocalElement) -> LocalElement:
    """Nr_{k2/k1}(x) via the determinant of x acting on k2 as a k1-vector space."""
    k1, k2 = emb.source, emb.target
    if k1 == k2:
        return x
    if k1.d == 1:
        return k1.from_padic(norm_to_base(k2, x))
    N = x.absolute_precision
    Q = qp(k1.p)
    r = k2.d // k1.d

    def qcoords(y: LocalElement) -> list[LocalElement]:
        if y.is_zero():
            return [Q.zero(y.absolute_precision)] * k2.d
        return [LocalElement.make(Q, [c], y.scale, y.rel) for c in y.coords]

    k1_basis = [emb(_monomial(k1, i, j, N + 4)) for i in range(k1.e) for j in range(k1.f)]
    candidates = [_monomial(k2, i, j, N + 4) for i in range(k2.e) for j in range(k2.f)]
    chosen: list[LocalElement] = []
    cols: list[list[LocalElement]] = []
    for b in candidates:
        trial = cols + [qcoords(beta * b) for beta in k1_basis]
        if _full_column_rank(trial):
            chosen.append(b)
            cols = trial
        if len(chosen) == r:
            break
    if len(chosen) != r:
        raise PrecisionExhausted("could not build a relative basis")
    C = [[cols[c][rw] for c in range(k2.d)] for rw in range(k2.d)]

    def k1_coords(y: LocalElement) -> list[LocalElement]:
        z = solve_linear(C, qcoords(y))
        out = []
        for l in range(r):
            acc = k1.zero(N)
            for m, (i, j) in enumerate((i, j) for i in range(k1.e) for j in range(k1.f)):
                zz = z[l * k1.d + m]
                if not zz.is_zero():
                    acc = acc + k1.from_padic(zz.to_padic()) * _monomial(k1, i, j, N + 4)
            out.append(acc)
        return out

    M_cols = [k1_coords(x * b) for b in chosen]
    M = [[M_cols[c][rw] for c in range(r)] for rw in range(r)]
    cp = berkowitz(M, k1.zero(N + 4), k1.one(N + 4))
    return cp[0] * (-1) ** r


def _monomial(field: LocalFieldDesc, i: int, j: int, N: int) -> LocalElement:
    """t^j π^i as a coordinate vector."""
    return field.element([[0] * field.f] * i + [[0] * j + [1]], N)


def _full_column_rank(cols: list[list[LocalElement]]) -> bool:
    rows = len(cols[0])
    A = [[cols[c][rw] for c in range(len(cols))] for rw in range(rows)]
    rank = 0
    ncols = len(cols)
    for col in range(ncols):
        piv = None
        for rw in range(rank, rows):
            if not A[rw][col].is_zero():
                if piv is None or A[rw][col].valuation() < A[piv][col].valuation():
                    piv = rw
        if piv is None:
            return False
        A[rank], A[piv] = A[piv], A[rank]
        inv = A[rank][col].inverse()
        for rw in range(rows):
            if rw != rank and not A[rw][col].is_zero():
                c = A[rw][col] * inv
                A[rw] = [a - c * b for a, b in zip(A[rw], A[rank])]
        rank += 1
    return True


@dataclass(frozen=True)
class LTComparison:
    holds: bool
    exact: bool
    precision: int | None
    norm: str
    u: str
    M: int | None = None

    @property
    def marker(self) -> str:
        return "exact" if self.exact else f"equal at O(p^{self.precision})"

    def to_json(self) -> dict:
        return {"holds": self.holds, "decided": self.marker, "norm": self.norm, "u": self.u, "M": self.M}


def _has_model(x) -> bool:
    return isinstance(x, (AlgebraicNumber, int, Fraction))


def _algebraic(x, p: int) -> AlgebraicNumber:
    return x if isinstance(x, AlgebraicNumber) else AlgebraicNumber.rational(Fraction(x), p)


def _exact_u(k1, pi1, k2, pi2) -> AlgebraicNumber | None:
    """u = π1^{-f} Nr_{k2/k1}(π2) exactly, available when k1 = Q_p and both π carry models."""
    if not (k1.d == 1 and _has_model(pi1) and _has_model(pi2)):
        return None
    p = k1.p
    f = k2.f
    nr = algebraic_norm(k2, _algebraic(pi2, p)).algebraic
    a1 = _algebraic(pi1, p)
    if a1.padic_selector is None:
        return None
    return algebraic_product(algebraic_inverse(algebraic_power(a1, f)), nr)


def _local_u(k1, pi1, k2, pi2, N) -> tuple[LocalElement, LocalElement]:
    x1 = as_local(k1, pi1, N)
    x2 = as_local(k2, pi2, N)
    check_uniformizer(x1)
    check_uniformizer(x2)
    emb = find_embedding(k1, k2, N)
    nr = relative_norm(emb, x2)
    f = k2.f // k1.f
    return nr, nr / x1**f


def lt_norm_compatible(k1: LocalFieldDesc, pi1, k2: LocalFieldDesc, pi2,
                       N: int = DEFAULT_PRECISION) -> LTComparison:
    """Nr_{k2/k1}(π2) = π1^f, i.e. k1_{π1} ⊆ k2_{π2}."""
    nr, u = _local_u(k1, pi1, k2, pi2, N)
    exact = _exact_u(k1, pi1, k2, pi2)
    if exact is not None:
        holds = exact.min_poly == IntPoly((-1, 1))
        return LTComparison(holds, True, None, repr(nr), str(exact.min_poly))
    holds = (u - 1).is_zero()
    return LTComparison(holds, False, (u - 1).absolute_precision, repr(nr), repr(u))


def _divides_xM_minus_1(P: IntPoly, M: int) -> bool:
    target = IntPoly((-1,) + (0,) * (M - 1) + (1,))
    _, r = poly_divmod(target, P)
    return all(c == 0 for c in r)


def lt_contained_up_to_finite(k1: LocalFieldDesc, pi1, k2: LocalFieldDesc, pi2,
                              N: int = DEFAULT_PRECISION) -> LTComparison:
    """Whether u = π1^{-f} Nr_{k2/k1}(π2) is a root of unity; M = #μ∞(k1)."""
    nr, u = _local_u(k1, pi1, k2, pi2, N)
    tame, a = roots_of_unity_order(k1, N)
    M = tame * k1.p**a
    exact = _exact_u(k1, pi1, k2, pi2)
    if exact is not None:
        holds = _divides_xM_minus_1(exact.min_poly, M)
        return LTComparison(holds, True, None, repr(nr), str(exact.min_poly), M)
    uM = u**M
    holds = (uM - 1).is_zero()
    return LTComparison(holds, False, (uM - 1).absolute_precision, repr(nr), repr(u), M)


def charpoly_coefficients_agree(a: list[LocalElement], b: list[LocalElement]) -> bool:
    return len(a) == len(b) and all(x.agrees_with(y) for x, y in zip(a, b))


__all__ = [
    "BlockCompanion",
    "Embedding",
    "LTComparison",
    "PhiCharPoly",
    "block_companion_matrix",
    "dcris_charpoly",
    "find_embedding",
    "lt_contained_up_to_finite",
    "lt_norm_compatible",
    "minimal_polynomial_over_k0",
    "relative_norm",
]
