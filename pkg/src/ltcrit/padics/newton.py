"""Newton polygons from coefficient valuations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class Segment:
    slope: Fraction
    length: int
    start: int

    @property
    def root_valuation(self) -> Fraction:
        return -self.slope


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of the points (i, v(c_i)).

    Segment slopes are geometric slopes, strictly increasing from left to
    right; each segment of slope s and length l accounts for l roots of
    valuation -s.  Zero roots (coefficients of infinite valuation at the low
    end) are counted separately in ``zero_roots``.
    """

    segments: tuple[Segment, ...]
    zero_roots: int = 0

    @property
    def degree(self) -> int:
        return self.zero_roots + sum(s.length for s in self.segments)

    def root_valuations(self) -> list[Fraction]:
        out = []
        for s in self.segments:
            out.extend([s.root_valuation] * s.length)
        return out

    def count_roots_with_valuation_at_least(self, bound: Fraction | int) -> int:
        return self.zero_roots + sum(s.length for s in self.segments if s.root_valuation >= bound)


def newton_polygon_from_valuations(vals: Sequence[Fraction | int | None]) -> NewtonPolygon:
    """``vals[i]`` is the valuation of the degree-i coefficient, None for zero."""
    top = len(vals) - 1
    while top >= 0 and vals[top] is None:
        top -= 1
    if top < 0:
        raise ValueError("the zero polynomial has no Newton polygon")
    low = 0
    while vals[low] is None:
        low += 1
    pts = [(i, Fraction(v)) for i, v in enumerate(vals) if v is not None and i >= low]
    hull: list[tuple[int, Fraction]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point unless it lies strictly below the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    segs = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segs.append(Segment(Fraction(y2 - y1) / (x2 - x1), x2 - x1, x1))
    return NewtonPolygon(tuple(segs), low)
