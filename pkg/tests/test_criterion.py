from __future__ import annotations

import copy
import math
import random
import time
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ltcrit.criterion import (
    FINITE,
    INCONCLUSIVE,
    NO_INVARIANTS,
    VerdictCertificate,
    h_candidates,
    h_range_candidates,
    prime_to_p_check,
    replay_certificate,
    verdict_abelian,
    verdict_cohomology,
    verdict_general,
    weight_candidates,
)
from ltcrit.errors import CapabilityError, HypothesisViolated, InvalidArgument, UnanchoredInput
from ltcrit.exact_algebra.algebraic import AlgebraicNumber
from ltcrit.exact_algebra.polynomials import IntPoly
from ltcrit.galois import field_from_defining
from ltcrit.norms import algebraic_norm, anchor_in_field
from ltcrit.padics.fields import eisenstein, norm_to_base, qp, unramified
from ltcrit.padics.padic import PadicBall

F = Fraction
TWO_PLUS_I = AlgebraicNumber.make(IntPoly((5, -4, 1)), padic_selector=PadicBall(5, 0, 1))
SQRT5 = AlgebraicNumber.make(IntPoly((-5, 0, 1)), padic_selector=PadicBall(5, 0, F(1, 2)))


def _cube_root_field(p):
    return field_from_defining(IntPoly((-p, 0, 0, 1)), p)


def corpus():
    """(field, pi) pairs covering the verdict modes used across the tests."""
    out = [(qp(p), p) for p in (2, 3, 5, 7)]
    out.append((qp(5), TWO_PLUS_I))
    out += [(unramified(p, 2), p * (1 + p)) for p in (3, 5)]
    out.append((eisenstein(5, [-5, 0, 1]), SQRT5))
    out.append((unramified(5, 2), TWO_PLUS_I))
    return out


def test_weight_candidates():
    assert weight_candidates(1, 1).values == (1,)
    assert weight_candidates(2, 1).values == (2, 1)
    w = weight_candidates(2, 2)
    # s = 1 gives 2, 1; s = 2 gives 4, 2, 4/3, 1
    assert w.values == (4, 2, F(4, 3), 1)
    assert w.provenance[F(2)] == ((1, 1), (2, 2))
    assert w.provenance[F(1)] == ((1, 2), (2, 4))
    with pytest.raises(InvalidArgument):
        weight_candidates(0, 1)


@given(st.integers(1, 8), st.integers(1, 4))
def test_weight_candidates_brute_force(d_G, e_G):
    brute = {F(s * d_G, t) for s in range(1, e_G + 1) for t in range(1, s * d_G + 1)}
    w = weight_candidates(d_G, e_G)
    assert w.as_set() == brute
    assert list(w.values) == sorted(brute, reverse=True)
    for v in w:
        assert all(F(s * d_G, t) == v for s, t in w.provenance[v])


def test_h_candidates():
    assert h_candidates(1, 0, 1, 1).values == (-1,)
    assert h_candidates(1, 0, 2, 1).values == (F(-1, 2), -1)
    with pytest.raises(HypothesisViolated):
        h_candidates(2, 1, 3, 2)
    with pytest.raises(InvalidArgument):
        h_candidates(-1, 0, 1, 1)


@given(st.fractions(-3, 3, max_denominator=6), st.fractions(0, 4, max_denominator=6),
       st.integers(1, 6), st.integers(1, 3))
def test_h_set_closed_form(h1, width, d_G, e_G):
    h2 = h1 + width
    got = h_range_candidates(h1, h2, d_G, e_G).as_set()
    # {-R/(s d_G)}: scan every fraction with a small denominator and keep those a multiple of 1/(s d_G)
    top = e_G * d_G
    closed = set()
    for den in range(1, top + 1):
        for n in range(math.floor(h1 * den) - 1, math.ceil(h2 * den) + 2):
            h = F(n, den)
            if h and h1 <= h <= h2 and any((h * s * d_G).denominator == 1 for s in range(1, e_G + 1)):
                closed.add(h)
    assert got == closed


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_imai(p):
    t = time.perf_counter()
    c = verdict_abelian(qp(p), p)
    assert time.perf_counter() - t < 1
    assert c.verdict == FINITE and c.satisfied
    assert [x.weight for x in c.candidates] == [1]


def test_cm_example():
    c = verdict_abelian(qp(5), TWO_PLUS_I)
    assert c.verdict == INCONCLUSIVE
    (w,) = c.witnesses
    assert w.weight == 1 and w.provenance == ((1, 1),) and w.weil.is_weil


@pytest.mark.parametrize("p", [3, 5, 7])
def test_new_finite_example(p):
    c = verdict_abelian(unramified(p, 2), p * (1 + p))
    assert c.verdict == FINITE
    assert [x.weight for x in c.candidates] == [2, 1]
    assert not any(x.weil.is_weil for x in c.candidates)


def test_ramified_example():
    # Nr(sqrt 5) = -5 is a 5-Weil integer of weight 2, and 2 is a candidate for (d_G, e_G) = (2, 1)
    c = verdict_abelian(eisenstein(5, [-5, 0, 1]), SQRT5)
    assert c.verdict == INCONCLUSIVE
    assert [w.weight for w in c.witnesses] == [2]


def test_cohomology_examples():
    for p in (2, 3, 5):
        assert verdict_cohomology(qp(p), p, 1, 0).verdict == NO_INVARIANTS
    c = verdict_cohomology(qp(5), TWO_PLUS_I, 1, 0)
    assert c.verdict == INCONCLUSIVE
    (w,) = c.witnesses
    assert w.h == -1 and w.weight == 1 and w.integrality is True
    with pytest.raises(HypothesisViolated):
        verdict_cohomology(qp(5), 5, 2, 1)


def test_general_examples():
    assert verdict_general(qp(5), 5, [1], -1, 0).verdict == NO_INVARIANTS
    c = verdict_general(qp(5), 5, [2], -1, 1)
    assert c.verdict == INCONCLUSIVE and [w.h for w in c.witnesses] == [-1]
    assert c.parameters["S_provenance"] == "asserted"
    e = verdict_general(qp(5), 5, [1], 0, 0)
    assert e.verdict == NO_INVARIANTS and "empty-candidates" in e.flags and not e.candidates
    with pytest.raises(InvalidArgument):
        verdict_general(qp(5), 5, [0, 1], -1, 0)
    with pytest.raises(InvalidArgument):
        verdict_general(qp(5), 5, [1], 1, 0)


@pytest.mark.parametrize("field,pi", corpus())
def test_wrappers_agree(field, pi):
    a = verdict_abelian(field, pi)
    g = verdict_general(field, pi, [1], -1, 0, r_integrality=0)
    assert a.satisfied == g.satisfied
    assert sorted(w.weight for w in a.witnesses) == sorted({w.weight for w in g.witnesses})
    assert verdict_cohomology(field, pi, 1, 0).satisfied == g.satisfied


@pytest.mark.parametrize("field,pi", corpus())
def test_replay(field, pi):
    for c in (verdict_abelian(field, pi), verdict_cohomology(field, pi, 3, 1)):
        assert replay_certificate(c) == c.verdict
        d = c.to_json()
        assert replay_certificate(d) == c.verdict
        assert VerdictCertificate.from_json(d).verdict == c.verdict


def test_replay_detects_tampering():
    d = verdict_abelian(qp(5), TWO_PLUS_I).to_json()
    forged = copy.deepcopy(d)
    forged["verdict"] = FINITE
    with pytest.raises(InvalidArgument):
        replay_certificate(forged)
    forged = copy.deepcopy(d)
    forged["witnesses"] = []
    forged["candidates"] = forged["candidates"][:0]
    with pytest.raises(InvalidArgument):
        replay_certificate(forged)


@settings(max_examples=15)
@given(st.sets(st.sampled_from([F(1), F(2), F(1, 2), F(3), F(-1)]), min_size=1, max_size=3),
       st.fractions(-2, 0, max_denominator=2), st.fractions(0, 2, max_denominator=2),
       st.sampled_from([F(1, 2), F(1)]))
def test_monotonicity(S, h1, h2, grow):
    for field, pi in ((qp(5), TWO_PLUS_I), (qp(3), 3)):
        small = verdict_general(field, pi, S, h1, h2)
        big = verdict_general(field, pi, set(S) | {F(2)}, h1 - grow, h2 + grow)
        if not small.satisfied:
            assert not big.satisfied


@pytest.mark.parametrize("field,pi", corpus())
def test_norm_recognition_soundness(field, pi):
    if not isinstance(pi, AlgebraicNumber):
        pi = AlgebraicNumber.rational(pi, field.p)
    r = algebraic_norm(field, pi)
    direct = norm_to_base(field, anchor_in_field(field, pi))
    assert r.padic.agrees_with(direct)
    ball = r.algebraic.padic_selector
    gap = direct - ball.center
    assert gap.is_zero() or gap.valuation >= min(ball.radius, direct.precision)


def test_input_errors():
    with pytest.raises(UnanchoredInput):
        verdict_abelian(qp(5), AlgebraicNumber.make(IntPoly((5, -4, 1))))
    with pytest.raises(UnanchoredInput):
        verdict_abelian(qp(5), qp(5).element(5))
    with pytest.raises(InvalidArgument):
        verdict_abelian(qp(5), 25)
    with pytest.raises(CapabilityError):
        verdict_abelian(_cube_root_field(5), AlgebraicNumber.make(IntPoly((-5, 0, 0, 1)),
                                                                 padic_selector=PadicBall(5, 0, F(1, 3))), cap=3)


def test_asserted_galois_is_flagged():
    c = verdict_abelian(qp(5), 5, galois=(2, 1))
    assert "galois-asserted" in c.flags
    assert [x.weight for x in c.candidates] == [2, 1]


def test_weight_uniqueness():
    c = verdict_general(qp(5), 5, [1, 2, 3], -3, 3)
    assert len({w.weight for w in c.witnesses}) <= 1


def test_prime_to_p_examples():
    r = prime_to_p_check(IntPoly((5, 1, 1)), 5, 5)
    assert r.nonvanishing and r.bad_primes == (7,)
    r = prime_to_p_check(IntPoly((-1, 1)), 5, 5)
    assert not r.nonvanishing and r.bad_primes == () and r.flags
    assert prime_to_p_check(IntPoly((5, 0, 1)), 5, 5).bad_primes == (2, 3)
    # coefficients in Z[1/q_L] are allowed, anything else is not
    assert prime_to_p_check([F(1, 5), 1], 5, 5).value_at_one == F(6, 5)
    with pytest.raises(InvalidArgument):
        prime_to_p_check([F(1, 3), 1], 5, 5)
    with pytest.raises(InvalidArgument):
        prime_to_p_check(IntPoly((5, 1, 1)), 6, 5)


def test_bad_primes_exclude_p():
    rng = random.Random(11)
    for _ in range(100):
        p = rng.choice([2, 3, 5, 7, 11, 13])
        f = rng.randint(1, 2)
        q = p**f
        a = rng.randint(-int(2 * q**0.5), int(2 * q**0.5))
        r = prime_to_p_check(IntPoly((q, -a, 1)), q, p)
        value = 1 - a + q
        assert r.nonvanishing and p not in r.bad_primes
        assert set(r.bad_primes) == {ell for ell in sympy.factorint(value) if ell != p}
