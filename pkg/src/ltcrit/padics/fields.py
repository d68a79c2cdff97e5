"""p-adic fields in tower normal form and their elements.

A field K is described by an unramified layer k0 = Q_p[t]/(u(t)) of degree f
and an Eisenstein polynomial E over O_{k0} of degree e, so K = k0[pi]/(E(pi)).
Elements are p^scale * sum c[i*f + j] t^j pi^i with integer coordinates
known modulo p^rel.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from ltcrit.errors import InvalidArgument, PrecisionExhausted

from ltcrit.linalg import berkowitz
from ltcrit.padics.finite_field import GF, conway_like_poly, is_irreducible_mod_p
from ltcrit.padics.padic import DEFAULT_PRECISION, PadicNumber, vp

K0Coords = tuple[int, ...]


@dataclass(frozen=True)
class LocalFieldDesc:
    """K = Q_p[t]/(u) [pi]/(E).

    ``unramified_poly`` is monic over Z, irreducible mod p, of degree f.
    ``eisenstein_poly`` lists the coefficients of E, lowest degree first, each
    a tuple of f integers (coordinates in 1, t, ..., t^(f-1)); E is monic,
    its middle coefficients lie in p O_{k0} and its constant term has
    valuation exactly 1.
    """

    p: int
    unramified_poly: tuple[int, ...]
    eisenstein_poly: tuple[K0Coords, ...]

    def __post_init__(self):
        p, u, E = self.p, tuple(self.unramified_poly), tuple(tuple(c) for c in self.eisenstein_poly)
        object.__setattr__(self, "unramified_poly", u)
        object.__setattr__(self, "eisenstein_poly", E)
        if p < 2 or any(p % r == 0 for r in range(2, int(p**0.5) + 1)):
            raise InvalidArgument(f"{p} is not prime")
        if len(u) < 2 or u[-1] != 1:
            raise InvalidArgument("unramified polynomial must be monic of positive degree")
        if not is_irreducible_mod_p(u, p):
            raise InvalidArgument("unramified polynomial is not irreducible mod p")
        f = len(u) - 1
        if len(E) < 2 or any(len(c) != f for c in E):
            raise InvalidArgument("Eisenstein coefficients must be k0 coordinate tuples of length f")
        if E[-1] != (1,) + (0,) * (f - 1):
            raise InvalidArgument("Eisenstein polynomial must be monic")
        for c in E[1:-1]:
            if any(x % p for x in c):
                raise InvalidArgument("middle Eisenstein coefficients must be divisible by p")
        a0 = E[0]
        if any(x % p for x in a0) or not any((x // p) % p for x in a0):
            raise InvalidArgument("Eisenstein constant term must have valuation exactly 1")

    @property
    def f(self) -> int:
        return len(self.unramified_poly) - 1

    @property
    def e(self) -> int:
        return len(self.eisenstein_poly) - 1

    @property
    def d(self) -> int:
        return self.e * self.f

    @property
    def q(self) -> int:
        return self.p**self.f

    @cached_property
    def residue_field(self) -> GF:
        return GF(self.p, self.unramified_poly)

    def unramified_layer(self) -> LocalFieldDesc:
        return unramified_from_poly(self.p, self.unramified_poly)

    def is_prime_field(self) -> bool:
        return self.d == 1

    # element constructors

    def element(self, coords, N: int = DEFAULT_PRECISION) -> LocalElement:
        """From rational coordinates: ``coords[i][j]`` multiplies t^j pi^i.

        A bare rational is read as a scalar.
        """
        if isinstance(coords, (int, Fraction)):
            coords = [[coords]]
        rows = [list(r) if isinstance(r, (list, tuple)) else [r] for r in coords]
        if len(rows) > self.e or any(len(r) > self.f for r in rows):
            raise InvalidArgument("too many coordinates for this field")
        flat = [Fraction(0)] * self.d
        for i, r in enumerate(rows):
            for j, c in enumerate(r):
                flat[i * self.f + j] = Fraction(c)
        nz = [vp(c, self.p) for c in flat if c]
        if not nz:
            return LocalElement.zero(self, N)
        s = min(nz)
        m = self.p**N
        out = []
        for c in flat:
            c = c / Fraction(self.p) ** s
            out.append(c.numerator * pow(c.denominator, -1, m) % m)
        return LocalElement.make(self, out, s, N)

    def scalar(self, x: int | Fraction, N: int = DEFAULT_PRECISION) -> LocalElement:
        return self.element(x, N)

    def from_padic(self, x: PadicNumber) -> LocalElement:
        if x.is_zero():
            return LocalElement.zero(self, x.valuation)
        return LocalElement.make(self, [x.unit] + [0] * (self.d - 1), x.valuation, x.precision)

    def one(self, N: int = DEFAULT_PRECISION) -> LocalElement:
        return self.element(1, N)

    def zero(self, N: int = DEFAULT_PRECISION) -> LocalElement:
        return LocalElement.zero(self, N)

    def uniformizer(self, N: int = DEFAULT_PRECISION) -> LocalElement:
        if self.e == 1:
            return self.element(self.p, N)
        return self.element([[0], [1]], N)

    def generator_t(self, N: int = DEFAULT_PRECISION) -> LocalElement:
        if self.f == 1:
            # u(t) = t - c with c = -u_0
            return self.element(-self.unramified_poly[0], N)
        return self.element([[0, 1]], N)

    def from_k0(self, parts: Sequence[LocalElement]) -> LocalElement:
        """sum parts[i] pi^i with parts in the unramified layer."""
        acc = self.zero(min((x.absolute_precision for x in parts), default=DEFAULT_PRECISION))
        pi_pow = self.one(acc.absolute_precision + 1)
        pi = self.uniformizer(acc.absolute_precision + 1)
        for x in parts:
            acc = acc + self.embed_k0(x) * pi_pow
            pi_pow = pi_pow * pi
        return acc

    def embed_k0(self, x: LocalElement) -> LocalElement:
        if x.field == self:
            return x
        if x.field.unramified_poly != self.unramified_poly or x.field.e != 1:
            raise InvalidArgument("element is not in the unramified layer of this field")
        if x.is_zero():
            return LocalElement.zero(self, x.absolute_precision)
        return LocalElement.make(self, list(x.coords) + [0] * (self.d - self.f), x.scale, x.rel)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "unramified_poly": list(self.unramified_poly),
            "eisenstein_poly": [list(c) for c in self.eisenstein_poly],
        }

    @classmethod
    def from_json(cls, d: dict) -> LocalFieldDesc:
        return cls(int(d["p"]), tuple(int(x) for x in d["unramified_poly"]),
                   tuple(tuple(int(x) for x in c) for c in d["eisenstein_poly"]))

    def describe(self) -> str:
        return f"K(p={self.p}, e={self.e}, f={self.f})"


def qp(p: int) -> LocalFieldDesc:
    return LocalFieldDesc(p, (0, 1), ((-p,), (1,)))


def unramified_from_poly(p: int, u: Sequence[int]) -> LocalFieldDesc:
    f = len(u) - 1
    return LocalFieldDesc(p, tuple(u), ((-p,) + (0,) * (f - 1), (1,) + (0,) * (f - 1)))


def unramified(p: int, f: int) -> LocalFieldDesc:
    """The degree-f unramified extension with a canonical defining polynomial."""
    return unramified_from_poly(p, conway_like_poly(p, f))


def eisenstein(p: int, coeffs: Sequence[int], base: LocalFieldDesc | None = None) -> LocalFieldDesc:
    """Totally ramified layer E(x) = sum coeffs[i] x^i over Q_p or over an unramified base."""
    u = base.unramified_poly if base is not None else (0, 1)
    f = len(u) - 1
    E = []
    for c in coeffs:
        if isinstance(c, (tuple, list)):
            E.append(tuple(c) + (0,) * (f - len(c)))
        else:
            E.append((int(c),) + (0,) * (f - 1))
    return LocalFieldDesc(p, tuple(u), tuple(E))


# arithmetic kernels on integer coordinate lists


def _k0_mul(a: Sequence[int], b: Sequence[int], u: Sequence[int]) -> list[int]:
    f = len(u) - 1
    raw = [0] * (2 * f - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                raw[i + j] += x * y
    for k in range(2 * f - 2, f - 1, -1):
        c = raw[k]
        if c:
            for j in range(f):
                raw[k - f + j] -= c * u[j]
    return raw[:f]


def _mul_coords(field: LocalFieldDesc, a: Sequence[int], b: Sequence[int], m: int) -> list[int]:
    e, f, u, E = field.e, field.f, field.unramified_poly, field.eisenstein_poly
    A = [a[i * f:(i + 1) * f] for i in range(e)]
    B = [b[i * f:(i + 1) * f] for i in range(e)]
    raw = [[0] * f for _ in range(2 * e - 1)]
    for i, x in enumerate(A):
        if not any(x):
            continue
        for j, y in enumerate(B):
            if not any(y):
                continue
            prod = _k0_mul(x, y, u)
            row = raw[i + j]
            for k in range(f):
                row[k] = (row[k] + prod[k]) % m
    for k in range(2 * e - 2, e - 1, -1):
        c = raw[k]
        if not any(c):
            continue
        for i in range(e):
            ai = E[i]
            if any(ai):
                prod = _k0_mul(c, ai, u)
                row = raw[k - e + i]
                for j in range(f):
                    row[j] = (row[j] - prod[j]) % m
    out = []
    for row in raw[:e]:
        out.extend(x % m for x in row)
    return out


class LocalElement:
    """An element of a LocalFieldDesc with pessimistic precision tracking.

    Normalized so that some coordinate is a p-adic unit; the zero element
    (indistinguishable from zero) has rel = 0 and scale equal to its
    absolute precision.
    """

    __slots__ = ("field", "coords", "scale", "rel")

    def __init__(self, field: LocalFieldDesc, coords: tuple[int, ...], scale: int, rel: int):
        self.field = field
        self.coords = coords
        self.scale = scale
        self.rel = rel

    @classmethod
    def zero(cls, field: LocalFieldDesc, absprec: int) -> LocalElement:
        return cls(field, (0,) * field.d, absprec, 0)

    @classmethod
    def make(cls, field: LocalFieldDesc, coords: Sequence[int], scale: int, rel: int) -> LocalElement:
        if rel <= 0:
            return cls.zero(field, scale + max(rel, 0))
        p = field.p
        m = p**rel
        cs = [c % m for c in coords]
        nz = [c for c in cs if c]
        if not nz:
            return cls.zero(field, scale + rel)
        v = min(vp(c, p) for c in nz)
        if v:
            pv = p**v
            cs = [c // pv for c in cs]
        return cls(field, tuple(cs), scale + v, rel - v)

    # basic predicates

    def is_zero(self) -> bool:
        return self.rel == 0

    @property
    def absolute_precision(self) -> int:
        return self.scale + self.rel

    def valuation(self) -> Fraction | None:
        """Valuation normalized by v(p) = 1; None when zero at precision."""
        if self.is_zero():
            return None
        e, f, p = self.field.e, self.field.f, self.field.p
        best = None
        for i in range(e):
            for j in range(f):
                c = self.coords[i * f + j]
                if c:
                    val = Fraction(vp(c, p) * e + i, e)
                    if best is None or val < best:
                        best = val
        return self.scale + best

    def ordinal(self) -> int | None:
        """Valuation in units of the uniformizer."""
        v = self.valuation()
        return None if v is None else int(v * self.field.e)

    def is_unit(self) -> bool:
        return self.valuation() == 0

    def is_integral(self) -> bool:
        v = self.valuation()
        return v is None or v >= 0

    # arithmetic

    def _coerce(self, other) -> LocalElement:
        if isinstance(other, LocalElement):
            if other.field != self.field:
                raise InvalidArgument("elements of different fields")
            return other
        return self.field.element(Fraction(other), max(self.absolute_precision - min(vp(Fraction(other), self.field.p) or 0, 0), 1) + 1) \
            if other != 0 else LocalElement.zero(self.field, self.absolute_precision)

    def __add__(self, other) -> LocalElement:
        other = self._coerce(other)
        A = min(self.absolute_precision, other.absolute_precision)
        if self.is_zero() and other.is_zero():
            return LocalElement.zero(self.field, A)
        s = min(self.scale, other.scale)
        if A - s <= 0:
            return LocalElement.zero(self.field, A)
        p = self.field.p
        f1, f2 = p ** (self.scale - s), p ** (other.scale - s)
        cs = [x * f1 + y * f2 for x, y in zip(self.coords, other.coords)]
        return LocalElement.make(self.field, cs, s, A - s)

    __radd__ = __add__

    def __neg__(self) -> LocalElement:
        if self.is_zero():
            return self
        m = self.field.p**self.rel
        return LocalElement(self.field, tuple(-c % m for c in self.coords), self.scale, self.rel)

    def __sub__(self, other) -> LocalElement:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> LocalElement:
        return self._coerce(other) - self

    def __mul__(self, other) -> LocalElement:
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            if self.is_zero() and other.is_zero():
                return LocalElement.zero(self.field, self.scale + other.scale)
            z, nz = (self, other) if self.is_zero() else (other, self)
            return LocalElement.zero(self.field, z.scale + nz.scale)
        rel = min(self.rel, other.rel)
        cs = _mul_coords(self.field, self.coords, other.coords, self.field.p**rel)
        return LocalElement.make(self.field, cs, self.scale + other.scale, rel)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LocalElement:
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one(max(self.rel, 1))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mult_matrix(self) -> list[list[int]]:
        """Integer matrix of multiplication by the unscaled coordinates, mod p^rel."""
        d = self.field.d
        m = self.field.p**self.rel
        cols = []
        for k in range(d):
            basis = [0] * d
            basis[k] = 1
            cols.append(_mul_coords(self.field, self.coords, basis, m))
        return [[cols[c][r] for c in range(d)] for r in range(d)]

    def _charpoly_ints(self) -> list[int]:
        m = self.field.p**self.rel
        M = self.mult_matrix()
        return [c % m for c in berkowitz(M, 0, 1)]

    def inverse(self) -> LocalElement:
        if self.is_zero():
            raise ZeroDivisionError("element is zero at working precision")
        field, p, d = self.field, self.field.p, self.field.d
        cp = self._charpoly_ints()
        c0 = cp[0]
        w = vp(c0, p) if c0 else None
        if w is None or w >= self.rel:
            raise PrecisionExhausted("norm vanishes at working precision")
        rel = self.rel - w
        m = p**self.rel
        # Cayley-Hamilton: x (x^{d-1} + c_{d-1} x^{d-2} + ... + c_1) = -c_0
        unscaled = LocalElement(field, self.coords, 0, self.rel)
        acc = field.one(self.rel)
        for c in reversed(cp[1:d]):
            acc = acc * unscaled + field.element(c, self.rel) if c else acc * unscaled
        unit = (c0 // p**w) % p**rel
        inv_unit = pow(unit, -1, p**rel)
        out = acc * field.element(Fraction(-inv_unit), rel)
        del m
        return LocalElement.make(field, out.coords, out.scale - w - self.scale, min(out.rel, rel))

    def __truediv__(self, other) -> LocalElement:
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> LocalElement:
        return self._coerce(other) * self.inverse()

    def agrees_with(self, other) -> bool:
        return (self - other).is_zero()

    # views

    def k0_parts(self) -> list[LocalElement]:
        """Coefficients of pi^0, ..., pi^(e-1) as elements of the unramified layer."""
        k0 = self.field.unramified_layer()
        f = self.field.f
        if self.is_zero():
            return [LocalElement.zero(k0, self.absolute_precision) for _ in range(self.field.e)]
        return [LocalElement.make(k0, self.coords[i * f:(i + 1) * f], self.scale, self.rel)
                for i in range(self.field.e)]

    def residue(self):
        """Image in the residue field (element must be integral)."""
        v = self.valuation()
        F = self.field.residue_field
        if v is None or v > 0:
            return F.zero
        if v < 0:
            raise InvalidArgument("non-integral element has no residue")
        if self.scale > 0:
            return F.zero
        return F.elem(self.coords[: self.field.f])

    def to_padic(self) -> PadicNumber:
        """Value as a p-adic number; requires the element to lie in Q_p at precision."""
        p = self.field.p
        if self.is_zero():
            return PadicNumber.zero(p, self.absolute_precision)
        if any(c for c in self.coords[1:]):
            raise InvalidArgument("element does not lie in Q_p at working precision")
        return PadicNumber.from_absolute(self.coords[0], self.scale, p, self.absolute_precision)

    def lies_in_qp(self) -> bool:
        return self.is_zero() or not any(self.coords[1:])

    def rational_coords(self) -> list[list[Fraction]]:
        f = self.field.f
        s = Fraction(self.field.p) ** self.scale
        return [[c * s for c in self.coords[i * f:(i + 1) * f]] for i in range(self.field.e)]

    def with_precision(self, N: int) -> LocalElement:
        """Truncate to absolute precision at most N."""
        if self.absolute_precision <= N:
            return self
        return LocalElement.make(self.field, self.coords, self.scale, N - self.scale)

    def to_json(self) -> dict:
        return {"coords": [str(c) for c in self.coords], "scale": self.scale, "rel": self.rel}

    @classmethod
    def from_json(cls, field: LocalFieldDesc, d: dict) -> LocalElement:
        return LocalElement.make(field, [int(c) for c in d["coords"]], int(d["scale"]), int(d["rel"]))

    def __repr__(self) -> str:
        if self.is_zero():
            return f"O({self.field.p}^{self.scale})"
        return f"{self.field.p}^{self.scale}*{list(self.coords)} + O({self.field.p}^{self.absolute_precision})"


def norm_to_base(field: LocalFieldDesc, x: LocalElement) -> PadicNumber:
    """Nr_{K/Q_p}(x) as the determinant of multiplication by x."""
    p, d = field.p, field.d
    if x.is_zero():
        return PadicNumber.zero(p, x.absolute_precision * d)
    cp = x._charpoly_ints()
    det = cp[0] * (-1) ** d
    return PadicNumber.from_absolute(det, x.scale * d, p, x.scale * d + x.rel)


def charpoly_over_qp(x: LocalElement) -> list[PadicNumber]:
    """Characteristic polynomial of x over Q_p, lowest degree first."""
    p, d = x.field.p, x.field.d
    if x.is_zero():
        raise InvalidArgument("characteristic polynomial of a zero-at-precision element")
    cp = x._charpoly_ints()
    return [PadicNumber.from_absolute(c, x.scale * (d - i), p, x.scale * (d - i) + x.rel)
            for i, c in enumerate(cp)]


@lru_cache(maxsize=256)
def _frobenius_image_of_t(field: LocalFieldDesc, N: int) -> LocalElement:
    k0 = field.unramified_layer()
    u = field.unramified_poly
    if k0.f == 1:
        return k0.generator_t(N)
    t = k0.generator_t(N + 2)
    z = t**k0.p
    for _ in range(2 * N.bit_length() + 4):
        uz = _eval_int_poly(u, z)
        if uz.is_zero() or uz.absolute_precision >= N and uz.valuation() >= N:
            break
        du = _eval_int_poly([i * c for i, c in enumerate(u)][1:], z)
        z = z - uz / du
    return z.with_precision(N)


def _eval_int_poly(coeffs: Sequence[int], x: LocalElement) -> LocalElement:
    acc = x.field.zero(x.absolute_precision + 1)
    for c in reversed(coeffs):
        acc = acc * x + c if c else acc * x
    return acc


def frobenius_unramified(field: LocalFieldDesc, x: LocalElement) -> LocalElement:
    """Arithmetic Frobenius on the unramified layer of ``field``.

    ``x`` may be an element of the unramified layer, or of ``field`` lying
    in it; the image lives in the same field as ``x``.
    """
    k0 = field.unramified_layer()
    if x.field != k0:
        parts = x.k0_parts()
        if any(not q.is_zero() for q in parts[1:]):
            raise InvalidArgument("element is not in the unramified layer")
        return field.embed_k0(frobenius_unramified(field, parts[0]))
    if x.is_zero() or k0.f == 1:
        return x
    N = x.absolute_precision
    img = _frobenius_image_of_t(k0, max(N, 1) + 2)
    acc = k0.zero(N)
    power = k0.one(N + 2)
    s = Fraction(k0.p) ** x.scale
    for c in x.coords:
        if c:
            acc = acc + power * k0.element(c * s, N + 2)
        power = power * img
    return acc.with_precision(N)


def frobenius_power(field: LocalFieldDesc, x: LocalElement, i: int) -> LocalElement:
    for _ in range(i % field.f):
        x = frobenius_unramified(field, x)
    return x


def elements_agree(xs: Iterable[LocalElement], ys: Iterable[LocalElement]) -> bool:
    return all(a.agrees_with(b) for a, b in zip(xs, ys))
