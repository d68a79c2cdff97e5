"""Exact decision of "q-Weil number (integer) of weight w".

For w = a/b in lowest terms, |α|^2 = q^w for every embedding iff
|β|^2 = N for every root β of P_β, where β = α^b and N = q^a.  The numbers
β·conj(β) - N are roots of S(z + N) with S the composed product of P_β with
itself, so each is either 0 or at least g = min_nonzero_root_bound(S(z + N))
in absolute value.  Enclosing every |β_i|^2 in an interval of width < g/2
therefore decides equality exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ltcrit.errors import InvalidArgument
from ltcrit.exact_algebra.algebraic import (
    AlgebraicNumber,
    is_algebraic_integer,
    rational_power_combo,
)
from ltcrit.exact_algebra.polynomials import IntPoly, composed_product, power_transform, shift
from ltcrit.exact_algebra.rootiso import Box, isolate_roots, min_nonzero_root_bound


@dataclass(frozen=True)
class WeilVerdict:
    subject: AlgebraicNumber
    q: int
    weight: Fraction
    is_weil: bool
    is_integer_variant: bool = False
    transcript: tuple[dict, ...] = field(default=(), compare=False)

    def to_json(self) -> dict:
        return {
            "subject": self.subject.to_json(),
            "q": self.q,
            "weight": str(self.weight),
            "is_weil": self.is_weil,
            "is_integer_variant": self.is_integer_variant,
            "transcript": list(self.transcript),
        }

    @classmethod
    def from_json(cls, d: dict) -> WeilVerdict:
        return cls(
            AlgebraicNumber.from_json(d["subject"]),
            int(d["q"]),
            Fraction(d["weight"]),
            bool(d["is_weil"]),
            bool(d["is_integer_variant"]),
            tuple(d["transcript"]),
        )


def _check(alpha: AlgebraicNumber, q: int) -> None:
    if alpha.is_zero():
        raise InvalidArgument("the weight of 0 is undefined")
    if int(q) != q or q <= 1:
        raise InvalidArgument("q must be an integer > 1")


def _modulus_test(P_beta: IntPoly, N: Fraction) -> tuple[bool, list[dict]]:
    steps: list[dict] = []
    S = composed_product(P_beta, P_beta)
    SN = shift(S, N)
    body, zeros = SN.strip_zero_roots()
    if body.degree == 0:
        steps.append({"step": "separation", "shifted_product_is_monomial": True, "N": str(N)})
        return True, steps
    g = min_nonzero_root_bound(SN)
    steps.append({
        "step": "separation",
        "shifted_product_is_monomial": False,
        "N": str(N),
        "shifted_product_degree": SN.degree,
        "zero_root_multiplicity": zeros,
        "bound": str(g),
    })
    eps = min(Fraction(1, 2**16), g / 8)
    while True:
        rs = isolate_roots(P_beta, eps)
        encl = []
        ok = True
        for box, m in zip(rs.boxes, rs.multiplicities):
            lo, hi = box.modulus_squared()
            if hi - lo >= g / 2:
                ok = False
                break
            encl.append((box, m, lo, hi))
        if ok:
            break
        eps /= 2**16
    verdict = True
    for box, m, lo, hi in encl:
        inside = lo <= N <= hi
        dist = Fraction(0) if inside else min(abs(lo - N), abs(hi - N))
        steps.append({
            "step": "enclosure",
            "box": box.to_json(),
            "multiplicity": m,
            "modulus_squared": [str(lo), str(hi)],
            "contains_N": inside,
            "distance_to_N": str(dist),
        })
        verdict = verdict and inside
    return verdict, steps


def is_weil_number(alpha: AlgebraicNumber, q: int, w: Fraction | int | str) -> WeilVerdict:
    """Decide whether every complex embedding of alpha has modulus q^(w/2)."""
    _check(alpha, q)
    w = Fraction(w)
    a, b = w.numerator, w.denominator
    P_beta = power_transform(alpha.min_poly, b) if b > 1 else alpha.min_poly
    N = Fraction(q) ** a
    transcript = [{
        "step": "power_reduction",
        "min_poly": [str(c) for c in alpha.min_poly.coeffs],
        "b": b,
        "a": a,
        "beta_poly": [str(c) for c in P_beta.coeffs],
        "N": str(N),
    }]
    verdict, steps = _modulus_test(P_beta, N)
    transcript.extend(steps)
    transcript.append({"step": "conclusion", "is_weil": verdict})
    return WeilVerdict(alpha, int(q), w, verdict, False, tuple(transcript))


def is_weil_integer(alpha: AlgebraicNumber, q: int, w: Fraction | int | str) -> WeilVerdict:
    v = is_weil_number(alpha, q, w)
    integral = is_algebraic_integer(alpha)
    transcript = v.transcript[:-1] + (
        {"step": "integrality", "monic_min_poly": integral},
        {"step": "conclusion", "is_weil": v.is_weil and integral},
    )
    return WeilVerdict(alpha, v.q, v.weight, v.is_weil and integral, True, transcript)


def integrality_condition(q: int, r: int, alpha: AlgebraicNumber, h: Fraction | int | str) -> bool:
    """Whether q^r alpha^(-h) is an algebraic integer."""
    _check(alpha, q)
    h = Fraction(h)
    if h == 0:
        raise InvalidArgument("h must be nonzero")
    return is_algebraic_integer(rational_power_combo(q, r, alpha, h))


def replay(verdict: WeilVerdict | dict) -> bool:
    """Re-check a transcript; returns the verdict bit it proves.

    Every recorded enclosure is recomputed from its box, checked to hold a
    root of P_β, and compared with the recorded separation bound.
    """
    d = verdict.to_json() if isinstance(verdict, WeilVerdict) else verdict
    steps = d["transcript"]
    head = steps[0]
    alpha_poly = IntPoly(int(c) for c in head["min_poly"])
    b, a = int(head["b"]), int(head["a"])
    P_beta = power_transform(alpha_poly, b) if b > 1 else alpha_poly
    if [str(c) for c in P_beta.coeffs] != head["beta_poly"]:
        raise InvalidArgument("transcript power reduction does not match")
    N = Fraction(int(d["q"])) ** a
    if Fraction(head["N"]) != N:
        raise InvalidArgument("transcript target modulus does not match")
    sep = next(s for s in steps if s["step"] == "separation")
    result = True
    if not sep["shifted_product_is_monomial"]:
        SN = shift(composed_product(P_beta, P_beta), N)
        g = min_nonzero_root_bound(SN)
        if Fraction(sep["bound"]) != g:
            raise InvalidArgument("transcript separation bound does not match")
        total = 0
        for s in steps:
            if s["step"] != "enclosure":
                continue
            box = Box.from_json(s["box"])
            lo, hi = box.modulus_squared()
            if [str(lo), str(hi)] != s["modulus_squared"] or hi - lo >= g / 2:
                raise InvalidArgument("transcript enclosure does not close")
            total += int(s["multiplicity"])
            result = result and (lo <= N <= hi)
        if total != P_beta.degree:
            raise InvalidArgument("transcript does not cover every root")
    for s in steps:
        if s["step"] == "integrality":
            result = result and (IntPoly(int(c) for c in head["min_poly"]).primitive().lc == 1)
    return result
