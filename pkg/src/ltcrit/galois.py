"""Galois closure invariants of p-adic fields.

The closure is built by repeatedly adjoining a root of the smallest
nonlinear local factor of the defining polynomial and re-normalizing the
result to tower form (unramified layer, then an Eisenstein layer).
"""

from __future__ import annotations

from dataclasses import dataclass

from ltcrit.errors import InvalidArgument, PrecisionExhausted, UnsupportedDegree
from ltcrit.exact_algebra.polynomials import IntPoly, poly_gcd
from ltcrit.linalg import berkowitz
from ltcrit.padics.factor import (
    DEFAULT_DEGREE_CAP,
    LocalFactor,
    factor_local,
    kp_divmod_monic,
    kp_mul,
)
from ltcrit.padics.fields import LocalElement, LocalFieldDesc, charpoly_over_qp, qp
from ltcrit.padics.finite_field import conway_like_poly
from ltcrit.padics.padic import DEFAULT_PRECISION

DEFAULT_GALOIS_CAP = 48


@dataclass(frozen=True)
class GaloisClosureData:
    d_G: int
    e_G: int
    f_G: int
    tower_trace: tuple[tuple[int, int, int], ...] = ()
    asserted: bool = False

    def to_json(self) -> dict:
        return {
            "d_G": self.d_G,
            "e_G": self.e_G,
            "f_G": self.f_G,
            "tower_trace": [list(t) for t in self.tower_trace],
            "provenance": "asserted, not computed" if self.asserted else "computed",
        }

    @classmethod
    def from_json(cls, d: dict) -> GaloisClosureData:
        return cls(int(d["d_G"]), int(d["e_G"]), int(d["f_G"]),
                   tuple(tuple(t) for t in d.get("tower_trace", [])),
                   d.get("provenance") == "asserted, not computed")


def asserted_closure(d_G: int, e_G: int, field: LocalFieldDesc) -> GaloisClosureData:
    """User override of (d_G, e_G), flagged in certificates."""
    if d_G < 1 or e_G < 1 or d_G % field.d:
        raise InvalidArgument("asserted d_G must be a positive multiple of [k:Q_p]")
    return GaloisClosureData(d_G, e_G, d_G // (e_G * field.e), (), True)


def _ints_of(x: LocalElement) -> tuple[int, ...]:
    """Integer coordinates of an integral element of an unramified field."""
    if x.is_zero():
        return (0,) * x.field.f
    if x.scale < 0:
        raise PrecisionExhausted("expected an integral coordinate")
    s = x.field.p**x.scale
    return tuple(c * s for c in x.coords)


def _embed_into_unramified(L: LocalFieldDesc, fprime: int, N: int):
    """Base change of L by the unramified extension of degree fprime.

    Returns the new field and a map sending elements of L to it.
    """
    p = L.p
    u_new = conway_like_poly(p, L.f * fprime)
    k0_new = LocalFieldDesc(p, u_new, ((-p,) + (0,) * (len(u_new) - 2), (1,) + (0,) * (len(u_new) - 2)))
    if L.f == 1:
        tau = k0_new.element(-L.unramified_poly[0], N)
    else:
        roots = [fac.root() for fac in factor_local(IntPoly(L.unramified_poly), k0_new, N) if fac.is_linear()]
        if not roots:
            raise PrecisionExhausted("no embedding of the unramified layer found")
        tau = roots[0]

    def map_k0(x: LocalElement) -> LocalElement:
        # x in L's unramified layer
        acc = k0_new.zero(x.absolute_precision)
        if x.is_zero():
            return acc
        power = k0_new.one(N + 2)
        scale = k0_new.element(p, N + 2) ** x.scale if x.scale >= 0 else k0_new.element(p, N + 2).inverse() ** (-x.scale)
        for c in x.coords:
            if c:
                acc = acc + power * c
            power = power * tau
        return (acc * scale).with_precision(x.absolute_precision)

    E_new = tuple(_ints_of(map_k0(L.unramified_layer().element(list(c), N))) for c in L.eisenstein_poly[:-1])
    one = (1,) + (0,) * (len(u_new) - 2)
    M = LocalFieldDesc(p, u_new, E_new + (one,))
    pi_new = M.uniformizer(N)

    def mapper(x: LocalElement) -> LocalElement:
        parts = x.k0_parts()
        acc = M.zero(x.absolute_precision)
        pw = M.one(N + 2)
        for part in parts:
            if not part.is_zero():
                acc = acc + M.embed_k0(map_k0(part)) * pw
            pw = pw * pi_new
        return acc

    return M, mapper


def _ramified_extension(L: LocalFieldDesc, fac: LocalFactor, N: int) -> LocalFieldDesc:
    """Tower form of L[w]/(h) for a totally ramified irreducible factor h."""
    h = list(fac.poly)
    ep = fac.e
    shift = fac.shift if fac.shift is not None else L.zero(N)
    # w - shift has valuation num/ep in units of v(pi_L)
    num = int(fac.slope * L.e * ep)
    # s*num + t*ep = 1
    s = pow(num % ep, -1, ep) if ep > 1 else 0
    t = (1 - s * num) // ep
    # Pi = (w - shift)^s * pi_L^t in L[w]/(h)
    one = L.one(N)
    w_minus = [-shift, one]
    Pi = [one]
    for _ in range(s):
        Pi = kp_divmod_monic(kp_mul(Pi, w_minus), h)[1]
    piL = L.uniformizer(N + abs(t) + 2)
    scal = piL**t if t >= 0 else piL.inverse() ** (-t)
    Pi = [c * scal for c in Pi]
    Pi = Pi + [L.zero(N)] * (ep - len(Pi))
    # matrix of multiplication by Pi over k0 on the basis pi_L^i w^j
    k0 = L.unramified_layer()
    eL = L.e
    dim = eL * ep
    cols = []
    piL1 = L.uniformizer(N)
    for j in range(ep):
        for i in range(eL):
            basis = [L.zero(N)] * j + [piL1**i] + [L.zero(N)] * (ep - j - 1)
            prod = kp_divmod_monic(kp_mul(Pi, basis), h)[1]
            prod = prod + [L.zero(N)] * (ep - len(prod))
            col = []
            for jj in range(ep):
                col.extend(prod[jj].k0_parts())
            # order: index jj*eL + ii
            cols.append(col)
    Mtx = [[cols[c][r] for c in range(dim)] for r in range(dim)]
    cp = berkowitz(Mtx, k0.zero(N + 8), k0.one(N + 8))
    coeffs = [_ints_of(c) for c in cp]
    try:
        return LocalFieldDesc(L.p, L.unramified_poly, tuple(coeffs))
    except InvalidArgument as ex:  # pragma: no cover - indicates lost precision
        raise PrecisionExhausted(f"re-normalized Eisenstein polynomial invalid: {ex}")


def adjoin_root(L: LocalFieldDesc, fac: LocalFactor, N: int = DEFAULT_PRECISION) -> LocalFieldDesc:
    """A tower-form field isomorphic to L(α) for a root α of ``fac``."""
    if fac.is_linear():
        return L
    M, mapper = _embed_into_unramified(L, fac.f, N) if fac.f > 1 else (L, lambda x: x)
    if fac.e == 1:
        return M
    h = [mapper(c) for c in fac.poly]
    pieces = [g for g in factor_local(h, M, N) if g.e == fac.e and g.f == 1]
    if not pieces:
        raise PrecisionExhausted("no totally ramified factor after unramified base change")
    return _ramified_extension(M, pieces[0], N)


def _defining_poly_of(field: LocalFieldDesc, N: int) -> IntPoly:
    """An integer polynomial whose root generates ``field`` over Q_p (p-adically approximated)."""
    if field.e == 1:
        return IntPoly(field.unramified_poly)
    if field.f == 1:
        return IntPoly(tuple(c[0] for c in field.eisenstein_poly))
    pi = field.uniformizer(N)
    t = field.generator_t(N)
    for c in range(1, 50):
        theta = t + pi * c
        cp = charpoly_over_qp(theta)
        ints = [x.to_fraction() for x in cp]
        if any(q.denominator != 1 for q in ints):
            continue
        P = IntPoly(tuple(int(q) for q in ints))
        if poly_gcd(P, P.derivative()).degree == 0:
            return P
    raise PrecisionExhausted("no primitive element found")


def is_galois(field: LocalFieldDesc, defining: IntPoly | None = None, N: int = DEFAULT_PRECISION,
              cap: int = DEFAULT_DEGREE_CAP) -> bool:
    defining = defining if defining is not None else _defining_poly_of(field, N)
    if defining.degree != field.d:
        raise InvalidArgument("defining polynomial degree differs from [k:Q_p]")
    return all(f.is_linear() for f in factor_local(defining, field, N, cap))


def galois_closure_data(field: LocalFieldDesc, defining: IntPoly | None = None,
                        N: int = DEFAULT_PRECISION, cap: int = DEFAULT_GALOIS_CAP) -> GaloisClosureData:
    """(d_G, e_G, f_G) of the Galois closure of ``field`` over Q_p."""
    if field.d == 1:
        return GaloisClosureData(1, 1, 1, ())
    defining = defining if defining is not None else _defining_poly_of(field, N)
    if defining.degree != field.d:
        raise InvalidArgument("defining polynomial degree differs from [k:Q_p]")
    L = field
    trace: list[tuple[int, int, int]] = []
    while True:
        facs = factor_local(defining, L, N)
        nonlinear = [f for f in facs if not f.is_linear()]
        if not nonlinear:
            break
        h = min(nonlinear, key=LocalFactor.sort_key)
        if L.d * h.degree > cap:
            raise UnsupportedDegree(
                f"closure degree would exceed the cap {cap}; partial trace {trace}"
            )
        L = adjoin_root(L, h, N)
        trace.append((h.degree, L.e, L.f))
    if L.e % field.e:
        raise PrecisionExhausted("closure ramification is not a multiple of e(k)")
    return GaloisClosureData(L.d, L.e // field.e, L.f, tuple(trace))


def field_from_defining(defining: IntPoly, p: int, N: int = DEFAULT_PRECISION) -> LocalFieldDesc:
    """Tower form of Q_p[x]/(defining) for a polynomial irreducible over Q_p."""
    facs = factor_local(defining, qp(p), N)
    if len(facs) != 1:
        raise InvalidArgument("defining polynomial is reducible over Q_p")
    return adjoin_root(qp(p), facs[0], N)


__all__ = [
    "GaloisClosureData",
    "adjoin_root",
    "asserted_closure",
    "field_from_defining",
    "galois_closure_data",
    "is_galois",
]
