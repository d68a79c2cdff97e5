"""Verdict engine for the finiteness and vanishing criteria.

Each verdict computes Nr_{k/Q_p}(π) exactly, enumerates candidate weights
(or exponents h) from the Galois closure invariants (d_G, e_G), and tests each
candidate with the exact Weil decision.  The criterion is satisfied when every
candidate fails; otherwise the verdict is Inconclusive, which makes no claim
about infinitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Optional

import sympy

from ltcrit import __version__
from ltcrit.errors import HypothesisViolated, InvalidArgument, UnanchoredInput
from ltcrit.exact_algebra.algebraic import AlgebraicNumber, is_algebraic_integer
from ltcrit.exact_algebra.polynomials import IntPoly
from ltcrit.galois import DEFAULT_GALOIS_CAP, GaloisClosureData, asserted_closure, galois_closure_data
from ltcrit.norms import RecognizedNorm, algebraic_norm
from ltcrit.padics.fields import LocalElement, LocalFieldDesc
from ltcrit.padics.padic import DEFAULT_PRECISION, MAX_PRECISION
from ltcrit.weil import WeilVerdict, integrality_condition, is_weil_integer, is_weil_number, replay as replay_weil

FINITE = "FiniteTorsion"
NO_INVARIANTS = "NoInvariants"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class CandidateSet:
    """Exact rationals in deterministic order, each with its provenance pairs."""

    values: tuple[Fraction, ...]
    provenance: dict = dc_field(default_factory=dict, compare=False)

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def as_set(self) -> set[Fraction]:
        return set(self.values)

    def to_json(self) -> list[dict]:
        return [{"value": str(v), "provenance": [list(pr) for pr in self.provenance.get(v, ())]}
                for v in self.values]


def _positive(n: int, name: str) -> None:
    if int(n) != n or n < 1:
        raise InvalidArgument(f"{name} must be a positive integer")


def weight_candidates(d_G: int, e_G: int) -> CandidateSet:
    """{s·d_G/t : 1 <= s <= e_G, 1 <= t <= s·d_G}, descending, with (s, t) provenance."""
    _positive(d_G, "d_G")
    _positive(e_G, "e_G")
    prov: dict[Fraction, list[tuple[int, int]]] = {}
    for s in range(1, e_G + 1):
        for t in range(1, s * d_G + 1):
            prov.setdefault(Fraction(s * d_G, t), []).append((s, t))
    values = tuple(sorted(prov, reverse=True))
    return CandidateSet(values, {w: tuple(v) for w, v in prov.items()})


def h_range_candidates(h1: Fraction, h2: Fraction, d_G: int, e_G: int) -> CandidateSet:
    """Nonzero h in [h1, h2] lying in (1/(s·d_G))Z for some s <= e_G, with (s, numerator) provenance."""
    _positive(d_G, "d_G")
    _positive(e_G, "e_G")
    h1, h2 = Fraction(h1), Fraction(h2)
    if h1 > h2:
        raise InvalidArgument("empty exponent range: h1 > h2")
    prov: dict[Fraction, list[tuple[int, int]]] = {}
    for s in range(1, e_G + 1):
        den = s * d_G
        for n in range(math.ceil(h1 * den), math.floor(h2 * den) + 1):
            if n:
                prov.setdefault(Fraction(n, den), []).append((s, n))
    values = tuple(sorted(prov, reverse=True))
    return CandidateSet(values, {h: tuple(v) for h, v in prov.items()})


def h_candidates(i: int, r: int, d_G: int, e_G: int) -> CandidateSet:
    """Nonzero h in [-i+r, r] with denominator dividing s·d_G for some s <= e_G."""
    if int(i) != i or i < 0:
        raise InvalidArgument("i must be a nonnegative integer")
    if i == 2 * r:
        raise HypothesisViolated("i = 2r is excluded")
    return h_range_candidates(Fraction(-i + r), Fraction(r), d_G, e_G)


# certificates


@dataclass(frozen=True)
class CandidateResult:
    weight: Fraction
    h: Optional[Fraction]
    provenance: tuple[tuple[int, int], ...]
    weil: WeilVerdict
    integrality: Optional[bool]

    @property
    def passes(self) -> bool:
        return self.weil.is_weil and self.integrality is not False

    def to_json(self) -> dict:
        return {
            "weight": str(self.weight),
            "h": None if self.h is None else str(self.h),
            "provenance": [list(pr) for pr in self.provenance],
            "weil": self.weil.to_json(),
            "integrality": self.integrality,
            "passes": self.passes,
        }

    @classmethod
    def from_json(cls, d: dict) -> CandidateResult:
        return cls(
            Fraction(d["weight"]),
            None if d["h"] is None else Fraction(d["h"]),
            tuple(tuple(pr) for pr in d["provenance"]),
            WeilVerdict.from_json(d["weil"]),
            d["integrality"],
        )


@dataclass(frozen=True)
class VerdictCertificate:
    mode: str
    field: LocalFieldDesc
    pi: AlgebraicNumber
    q: int
    galois: GaloisClosureData
    norm: dict
    parameters: dict
    candidates: tuple[CandidateResult, ...]
    verdict: str
    flags: tuple[str, ...] = ()
    precision: int = DEFAULT_PRECISION

    @property
    def satisfied(self) -> bool:
        return self.verdict != INCONCLUSIVE

    @property
    def witnesses(self) -> list[CandidateResult]:
        return [c for c in self.candidates if c.passes]

    def to_json(self) -> dict:
        return {
            "kind": "verdict",
            "mode": self.mode,
            "version": __version__,
            "precision": self.precision,
            "inputs": {
                "field": self.field.to_json(),
                "pi": self.pi.to_json(),
                "parameters": self.parameters,
            },
            "q": self.q,
            "galois": self.galois.to_json(),
            "norm": self.norm,
            "candidates": [c.to_json() for c in self.candidates],
            "verdict": self.verdict,
            "witnesses": [_witness_json(c) for c in self.witnesses],
            "flags": list(self.flags),
        }

    @classmethod
    def from_json(cls, d: dict) -> VerdictCertificate:
        return cls(
            d["mode"],
            LocalFieldDesc.from_json(d["inputs"]["field"]),
            AlgebraicNumber.from_json(d["inputs"]["pi"]),
            int(d["q"]),
            GaloisClosureData.from_json(d["galois"]),
            d["norm"],
            d["inputs"]["parameters"],
            tuple(CandidateResult.from_json(c) for c in d["candidates"]),
            d["verdict"],
            tuple(d.get("flags", ())),
            int(d.get("precision", DEFAULT_PRECISION)),
        )


def _witness_json(c: CandidateResult) -> dict:
    out = {"weight": str(c.weight), "provenance": [list(pr) for pr in c.provenance]}
    if c.h is not None:
        out["h"] = str(c.h)
    return out


# engine


def _check_weight_uniqueness(results: Iterable[CandidateResult]) -> None:
    # |α| determines the weight, so two distinct passing weights mean a bug
    passing = {c.weight for c in results if c.weil.is_weil}
    if len(passing) > 1:
        raise AssertionError(f"several weights pass the Weil test: {sorted(passing)}")


def _anchored(field: LocalFieldDesc, pi) -> AlgebraicNumber:
    if isinstance(pi, AlgebraicNumber):
        if pi.padic_selector is None:
            raise UnanchoredInput("uniformizer lacks a p-adic selector")
        return pi
    if isinstance(pi, LocalElement):
        raise UnanchoredInput("Weil-facing verdicts need an algebraic model of π, not a local element")
    if isinstance(pi, (int, Fraction)):
        return AlgebraicNumber.rational(pi, field.p)
    raise InvalidArgument(f"unsupported uniformizer type {type(pi).__name__}")


def _galois(field: LocalFieldDesc, galois, cap: int, N: int) -> GaloisClosureData:
    if galois is None:
        return galois_closure_data(field, N=N, cap=cap)
    if isinstance(galois, GaloisClosureData):
        return galois
    d_G, e_G = galois
    return asserted_closure(int(d_G), int(e_G), field)


@dataclass(frozen=True)
class _Setup:
    pi: AlgebraicNumber
    q: int
    galois: GaloisClosureData
    norm: RecognizedNorm


def _setup(field: LocalFieldDesc, pi, galois, cap: int, N: int, max_N: int) -> _Setup:
    alg = _anchored(field, pi)
    norm = algebraic_norm(field, alg, N, max_N)
    gal = _galois(field, galois, cap, N)
    return _Setup(alg, field.p**field.f, gal, norm)


def _flags(gal: GaloisClosureData, extra: Iterable[str] = ()) -> tuple[str, ...]:
    out = list(extra)
    if gal.asserted:
        out.append("galois-asserted")
    return tuple(out)


def verdict_abelian(field: LocalFieldDesc, pi, galois=None, cap: int = DEFAULT_GALOIS_CAP,
                    N: int = DEFAULT_PRECISION, max_N: int = MAX_PRECISION) -> VerdictCertificate:
    """FiniteTorsion unless Nr(π) is a q-Weil integer of some weight s·d_G/t."""
    st = _setup(field, pi, galois, cap, N, max_N)
    nr = st.norm.algebraic
    cands = weight_candidates(st.galois.d_G, st.galois.e_G)
    results = []
    for w in cands:
        wv = is_weil_integer(nr, st.q, w)
        results.append(CandidateResult(w, None, cands.provenance[w], wv, None))
    _check_weight_uniqueness(results)
    verdict = INCONCLUSIVE if any(c.passes for c in results) else FINITE
    return VerdictCertificate("abelian", field, st.pi, st.q, st.galois, st.norm.to_json(), {},
                              tuple(results), verdict, _flags(st.galois), N)


def _h_tests(nr: AlgebraicNumber, q: int, S: Iterable[Fraction], hs: CandidateSet,
             r: Optional[int]) -> list[CandidateResult]:
    results = []
    for w in S:
        for h in hs:
            weight = -Fraction(w) / h
            wv = is_weil_number(nr, q, weight)
            integ = integrality_condition(q, r, nr, h) if r is not None else None
            results.append(CandidateResult(weight, h, hs.provenance[h], wv, integ))
    _check_weight_uniqueness(results)
    return results


def verdict_cohomology(field: LocalFieldDesc, pi, i: int, r: int, galois=None, cap: int = DEFAULT_GALOIS_CAP,
                       N: int = DEFAULT_PRECISION, max_N: int = MAX_PRECISION) -> VerdictCertificate:
    """NoInvariants unless some h makes Nr(π) a q-Weil number of weight -(i-2r)/h with q^r Nr^{-h} integral."""
    if int(i) != i or i < 0 or int(r) != r:
        raise InvalidArgument("i must be a nonnegative integer and r an integer")
    if i == 2 * r:
        raise HypothesisViolated("i = 2r is excluded")
    st = _setup(field, pi, galois, cap, N, max_N)
    hs = h_candidates(i, r, st.galois.d_G, st.galois.e_G)
    results = _h_tests(st.norm.algebraic, st.q, [Fraction(i - 2 * r)], hs, r)
    verdict = INCONCLUSIVE if any(c.passes for c in results) else NO_INVARIANTS
    flags = ["empty-candidates"] if not hs else []
    return VerdictCertificate("cohomology", field, st.pi, st.q, st.galois, st.norm.to_json(),
                              {"i": int(i), "r": int(r)}, tuple(results), verdict, _flags(st.galois, flags), N)


def verdict_general(field: LocalFieldDesc, pi, S: Iterable, h1, h2, r_integrality: Optional[int] = None,
                    galois=None, cap: int = DEFAULT_GALOIS_CAP, N: int = DEFAULT_PRECISION,
                    max_N: int = MAX_PRECISION) -> VerdictCertificate:
    """Weights in S (asserted by the caller), exponents h in [h1, h2]."""
    S = sorted({Fraction(w) for w in S}, reverse=True)
    if not S:
        raise InvalidArgument("the weight set S must be nonempty")
    if Fraction(0) in S:
        raise InvalidArgument("0 may not belong to the weight set S")
    h1, h2 = Fraction(h1), Fraction(h2)
    if h1 > h2:
        raise InvalidArgument("h1 must not exceed h2")
    st = _setup(field, pi, galois, cap, N, max_N)
    hs = h_range_candidates(h1, h2, st.galois.d_G, st.galois.e_G)
    results = _h_tests(st.norm.algebraic, st.q, S, hs, r_integrality)
    verdict = INCONCLUSIVE if any(c.passes for c in results) else NO_INVARIANTS
    flags = ["empty-candidates"] if not hs else []
    params = {
        "S": [str(w) for w in S],
        "S_provenance": "asserted",
        "h1": str(h1),
        "h2": str(h2),
        "r_integrality": r_integrality,
    }
    return VerdictCertificate("general", field, st.pi, st.q, st.galois, st.norm.to_json(),
                              params, tuple(results), verdict, _flags(st.galois, flags), N)


def replay_certificate(cert: VerdictCertificate | dict) -> str:
    """Re-run every recorded sub-test and return the verdict they imply.

    Raises InvalidArgument when a recorded test or the candidate table
    disagrees with recomputation.
    """
    c = cert if isinstance(cert, VerdictCertificate) else VerdictCertificate.from_json(cert)
    if c.q != c.field.p**c.field.f:
        raise InvalidArgument("recorded q is not the residue cardinality")
    nr = AlgebraicNumber.from_json(c.norm["algebraic"])
    d_G, e_G = c.galois.d_G, c.galois.e_G
    if c.mode == "abelian":
        expected = [(w, None) for w in weight_candidates(d_G, e_G)]
    else:
        if c.mode == "cohomology":
            i, r = c.parameters["i"], c.parameters["r"]
            S = [Fraction(i - 2 * r)]
            hs = h_candidates(i, r, d_G, e_G)
        else:
            S = [Fraction(w) for w in c.parameters["S"]]
            hs = h_range_candidates(Fraction(c.parameters["h1"]), Fraction(c.parameters["h2"]), d_G, e_G)
            r = c.parameters["r_integrality"]
        expected = [(-w / h, h) for w in S for h in hs]
    if [(x.weight, x.h) for x in c.candidates] != expected:
        raise InvalidArgument("candidate table does not match the Galois invariants")
    any_pass = False
    for x in c.candidates:
        if x.weil.subject.min_poly != nr.min_poly or x.weil.q != c.q or x.weil.weight != x.weight:
            raise InvalidArgument("sub-verdict refers to a different subject")
        bit = replay_weil(x.weil)
        if bit != x.weil.is_weil:
            raise InvalidArgument("recorded Weil verdict does not replay")
        if c.mode == "abelian":
            if bit != (is_weil_number(nr, c.q, x.weight).is_weil and is_algebraic_integer(nr)):
                raise InvalidArgument("recorded Weil-integer verdict does not replay")
        elif x.integrality is not None:
            if integrality_condition(c.q, r, nr, x.h) != x.integrality:
                raise InvalidArgument("recorded integrality result does not replay")
        any_pass = any_pass or x.passes
    satisfied = FINITE if c.mode == "abelian" else NO_INVARIANTS
    verdict = INCONCLUSIVE if any_pass else satisfied
    if verdict != c.verdict:
        raise InvalidArgument("recorded verdict does not follow from the sub-tests")
    return verdict


# prime-to-p part


@dataclass(frozen=True)
class PrimeToPCheck:
    value_at_one: Fraction
    nonvanishing: bool
    bad_primes: tuple[int, ...]
    flags: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "kind": "ell-check",
            "P(1)": str(self.value_at_one),
            "nonvanishing": self.nonvanishing,
            "bad_primes": list(self.bad_primes),
            "flags": list(self.flags),
        }


def _in_z_localized(c: Fraction, q_L: int) -> bool:
    den = c.denominator
    g = math.gcd(den, q_L)
    while g > 1:
        den //= g
        g = math.gcd(den, q_L)
    return den == 1


def prime_to_p_check(P, q_L: int, p: int) -> PrimeToPCheck:
    """P(1) != 0 and the primes l != p dividing its numerator."""
    coeffs = [Fraction(c) for c in (P.coeffs if isinstance(P, IntPoly) else P)]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise InvalidArgument("P must be nonzero")
    if not sympy.isprime(p):
        raise InvalidArgument("p must be prime")
    if q_L < 2 or set(sympy.factorint(q_L)) != {p}:
        raise InvalidArgument("q_L must be a power of p")
    lc = coeffs[-1]
    monic = [c / lc for c in coeffs]
    if not all(_in_z_localized(c, q_L) for c in monic):
        raise InvalidArgument("coefficients of the monic polynomial must lie in Z[1/q_L]")
    value = sum(monic, Fraction(0))
    if value == 0:
        return PrimeToPCheck(value, False, (), ("weight-0 eigenvalue present (i = 2r regime)",))
    primes = sorted(ell for ell in sympy.factorint(abs(value.numerator)) if ell != p)
    return PrimeToPCheck(value, True, tuple(primes))


__all__ = [
    "CandidateResult",
    "CandidateSet",
    "FINITE",
    "INCONCLUSIVE",
    "NO_INVARIANTS",
    "PrimeToPCheck",
    "VerdictCertificate",
    "h_candidates",
    "h_range_candidates",
    "prime_to_p_check",
    "replay_certificate",
    "verdict_abelian",
    "verdict_cohomology",
    "verdict_general",
    "weight_candidates",
]
