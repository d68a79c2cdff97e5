"""Certified complex root isolation with rational boxes.

Approximate roots come from mpmath; certification is exact.  For a squarefree
polynomial S of degree n and any point z, the disk of radius n|S(z)|/|S'(z)|
around z contains a root of S.  When n such disks (taken from n approximations)
sit in pairwise disjoint boxes, each box holds exactly one root.  All
quantities in that argument are evaluated in exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

import mpmath

from ltcrit.errors import InvalidArgument, PrecisionExhausted
from ltcrit.exact_algebra.polynomials import IntPoly, squarefree_decomposition

MAX_DPS = 4096


@dataclass(frozen=True)
class Box:
    """Closed rectangle [re_lo, re_hi] x [im_lo, im_hi] with rational corners."""

    re_lo: Fraction
    re_hi: Fraction
    im_lo: Fraction
    im_hi: Fraction

    @classmethod
    def around(cls, re: Fraction, im: Fraction, r: Fraction) -> Box:
        return cls(re - r, re + r, im - r, im + r)

    @property
    def width(self) -> Fraction:
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    @property
    def center(self) -> tuple[Fraction, Fraction]:
        return (self.re_lo + self.re_hi) / 2, (self.im_lo + self.im_hi) / 2

    def disjoint(self, other: Box) -> bool:
        return (
            self.re_hi < other.re_lo
            or other.re_hi < self.re_lo
            or self.im_hi < other.im_lo
            or other.im_hi < self.im_lo
        )

    def contains_box(self, other: Box) -> bool:
        return (
            self.re_lo <= other.re_lo
            and other.re_hi <= self.re_hi
            and self.im_lo <= other.im_lo
            and other.im_hi <= self.im_hi
        )

    def contains_point(self, re: Fraction, im: Fraction) -> bool:
        return self.re_lo <= re <= self.re_hi and self.im_lo <= im <= self.im_hi

    def modulus_squared(self) -> tuple[Fraction, Fraction]:
        """Interval enclosing |z|^2 over the box."""
        lo_r, hi_r = _sq_interval(self.re_lo, self.re_hi)
        lo_i, hi_i = _sq_interval(self.im_lo, self.im_hi)
        return lo_r + lo_i, hi_r + hi_i

    def to_json(self) -> list[str]:
        return [str(self.re_lo), str(self.re_hi), str(self.im_lo), str(self.im_hi)]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> Box:
        return cls(*(Fraction(v) for v in data))


def _sq_interval(lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    if lo >= 0:
        return lo * lo, hi * hi
    if hi <= 0:
        return hi * hi, lo * lo
    return Fraction(0), max(lo * lo, hi * hi)


@dataclass(frozen=True)
class CertifiedRootSet:
    boxes: tuple[Box, ...]
    multiplicities: tuple[int, ...]
    source: IntPoly

    def __len__(self) -> int:
        return len(self.boxes)


def _eval_gauss(coeffs: Sequence[int], re: Fraction, im: Fraction) -> tuple[Fraction, Fraction]:
    ar, ai = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        ar, ai = ar * re - ai * im + c, ar * im + ai * re
    return ar, ai


def _to_fraction(x: mpmath.mpf, bits: int) -> Fraction:
    m = mpmath.floor(x * mpmath.mpf(2) ** bits)
    return Fraction(int(m), 2**bits)


def _sqrt_upper(q: Fraction, bits: int) -> Fraction:
    """A rational >= sqrt(q), within about 2^-bits relative slack."""
    scale = 4**bits
    n = q.numerator * scale
    d = q.denominator
    s = isqrt(n // d) + 1
    return Fraction(s, 2**bits)


def _certify_squarefree(S: IntPoly, dps: int) -> list[Box] | None:
    n = S.degree
    if n == 1:
        root = Fraction(-S.coeffs[0], S.coeffs[1])
        return [Box(root, root, Fraction(0), Fraction(0))]
    with mpmath.workdps(dps):
        try:
            approx = mpmath.polyroots(list(reversed(S.coeffs)), maxsteps=200 + 20 * n, extraprec=2 * dps)
        except mpmath.libmp.libhyper.NoConvergence:
            return None
        bits = int(dps * 3.33) + 16
        centers = [(_to_fraction(mpmath.re(z), bits), _to_fraction(mpmath.im(z), bits)) for z in approx]
    dS = S.derivative()
    boxes = []
    for re, im in centers:
        pr, pi = _eval_gauss(S.coeffs, re, im)
        dr, di = _eval_gauss(dS.coeffs, re, im)
        den = dr * dr + di * di
        if den == 0:
            return None
        rho2 = n * n * (pr * pr + pi * pi) / den
        r = _sqrt_upper(rho2, bits) if rho2 else Fraction(1, 2**bits)
        boxes.append(Box.around(re, im, r))
    return boxes


def _all_disjoint(boxes: Sequence[Box]) -> bool:
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            if not boxes[i].disjoint(boxes[j]):
                return False
    return True


def isolate_roots(P: IntPoly, eps: Fraction | int | str = Fraction(1, 2**20)) -> CertifiedRootSet:
    """Disjoint rational boxes of width <= eps, one per distinct root of P."""
    if P.is_zero():
        raise InvalidArgument("cannot isolate roots of the zero polynomial")
    eps = Fraction(eps)
    if eps <= 0:
        raise InvalidArgument("eps must be positive")
    parts = squarefree_decomposition(P)
    dps = 30
    while dps <= MAX_DPS:
        boxes: list[Box] = []
        mults: list[int] = []
        ok = True
        for S, k in parts:
            got = _certify_squarefree(S, dps)
            if got is None:
                ok = False
                break
            boxes.extend(got)
            mults.extend([k] * len(got))
        if ok and _all_disjoint(boxes) and all(b.width <= eps for b in boxes):
            order = sorted(range(len(boxes)), key=lambda i: (boxes[i].re_lo, boxes[i].im_lo))
            return CertifiedRootSet(
                tuple(boxes[i] for i in order), tuple(mults[i] for i in order), P
            )
        dps *= 2
    raise PrecisionExhausted(f"root isolation of {P} did not certify at {MAX_DPS} digits")


def min_nonzero_root_bound(P: IntPoly) -> Fraction:
    """Lower bound on |b| over the nonzero roots b of P.

    With P = x^m (c0 + c1 x + ...) and c0 != 0 this is |c0| / (|c0| + max |ci|).
    """
    if P.is_zero():
        raise InvalidArgument("zero polynomial")
    body, _ = P.strip_zero_roots()
    if body.degree < 1:
        raise InvalidArgument(f"{P} is a monomial and has no nonzero roots")
    c0 = abs(body.coeffs[0])
    rest = max(abs(c) for c in body.coeffs[1:])
    return Fraction(c0, c0 + rest)


def roots_in_box(P: IntPoly, box: Box) -> int:
    """Number of roots of P (with multiplicity) inside ``box``, certified.

    Isolation is refined until every isolating box is either inside ``box`` or
    disjoint from it; a root lying exactly on the boundary never certifies, so
    the refinement is capped.
    """
    eps = max(box.width, Fraction(1, 2**10))
    for _ in range(60):
        rs = isolate_roots(P, eps)
        count = 0
        undecided = False
        for b, m in zip(rs.boxes, rs.multiplicities):
            if box.contains_box(b):
                count += m
            elif not box.disjoint(b):
                undecided = True
                break
        if not undecided:
            return count
        eps /= 16
    raise PrecisionExhausted(f"a root of {P} sits on the boundary of {box}")
