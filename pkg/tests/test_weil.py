from __future__ import annotations

import copy
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from ltcrit.errors import InvalidArgument
from ltcrit.exact_algebra.algebraic import AlgebraicNumber, algebraic_power
from ltcrit.exact_algebra.polynomials import IntPoly
from ltcrit.exact_algebra.rootiso import Box
from ltcrit.weil import WeilVerdict, integrality_condition, is_weil_integer, is_weil_number, replay

F = Fraction
TWO_PLUS_I = AlgebraicNumber.make(IntPoly((5, -4, 1)), Box(F(3, 2), F(5, 2), F(1, 2), F(3, 2)))
TWO_MINUS_I = AlgebraicNumber.make(IntPoly((5, -4, 1)), Box(F(3, 2), F(5, 2), F(-3, 2), F(-1, 2)))
PRIMES = [2, 3, 5, 7, 11, 13]


def alg(*coeffs):
    return AlgebraicNumber.make(IntPoly(coeffs))


def float_oracle(coeffs, q, w, dps=60):
    with mpmath.workdps(dps):
        roots = mpmath.polyroots(list(reversed(coeffs)), maxsteps=200, extraprec=4 * dps)
        target = mpmath.power(q, mpmath.mpf(w.numerator) / w.denominator)
        return all(abs(abs(r) ** 2 - target) < mpmath.mpf(10) ** (-dps // 2) for r in roots)


@pytest.mark.parametrize("p", PRIMES)
def test_rational_examples(p):
    assert is_weil_number(AlgebraicNumber.rational(p), p, 2).is_weil
    assert not is_weil_number(AlgebraicNumber.rational(p), p, 1).is_weil
    assert is_weil_number(AlgebraicNumber.rational(-p), p, 2).is_weil


def test_gaussian_examples():
    assert is_weil_number(TWO_PLUS_I, 5, 1).is_weil
    assert is_weil_integer(TWO_PLUS_I, 5, 1).is_weil
    assert not is_weil_number(TWO_PLUS_I, 5, 2).is_weil
    assert is_weil_number(alg(2, -2, 1), 2, 1).is_weil  # 1+i


def test_integrality_gate():
    half = alg(1, -2, 2)  # (1+i)/2, modulus squared 1/2
    assert is_weil_number(half, 2, -1).is_weil
    assert not is_weil_integer(half, 2, -1).is_weil


@pytest.mark.parametrize("p", [3, 5, 7])
def test_p_times_one_plus_p(p):
    x = AlgebraicNumber.rational(p * (1 + p))
    for w in (1, 2):
        assert not is_weil_integer(x, p * p, w).is_weil


def test_fractional_weights():
    root4_2 = alg(-2, 0, 0, 0, 1)
    assert is_weil_number(root4_2, 2, F(1, 2)).is_weil
    assert not is_weil_number(root4_2, 2, 1).is_weil
    assert is_weil_number(AlgebraicNumber.rational(2), 4, F(1)).is_weil
    assert is_weil_number(AlgebraicNumber.rational(8), 4, F(3)).is_weil
    assert is_weil_number(AlgebraicNumber.rational(2), 8, F(2, 3)).is_weil


def test_mixed_moduli_fail():
    # x^4 - 2x^2 + 4 has roots of modulus sqrt 2 only; x^4 + x + 2 does not
    assert is_weil_number(alg(4, 0, -2, 0, 1), 2, 1).is_weil
    assert not is_weil_number(alg(2, 1, 0, 0, 1), 2, 1).is_weil


def test_errors():
    with pytest.raises(InvalidArgument):
        is_weil_number(AlgebraicNumber.rational(0), 5, 1)
    with pytest.raises(InvalidArgument):
        is_weil_number(TWO_PLUS_I, 1, 1)
    with pytest.raises(InvalidArgument):
        integrality_condition(5, 0, TWO_PLUS_I, 0)


def test_any_integer_q():
    assert is_weil_number(AlgebraicNumber.rational(6), 6, 2).is_weil
    assert is_weil_number(alg(10, -2, 1), 10, 1).is_weil  # 1 +- 3i


@pytest.mark.parametrize("q", PRIMES)
def test_hasse_corpus_matches_float_oracle(q):
    a_max = int((4 * q) ** 0.5)
    for a in range(-a_max, a_max + 1):
        good = (q, -a, 1)
        bad = (q + 1, -a, 1)
        v, u = is_weil_integer(alg(*good), q, 1), is_weil_integer(alg(*bad), q, 1)
        assert v.is_weil and float_oracle(good, q, F(1))
        assert not u.is_weil and not float_oracle(bad, q, F(1))


def test_conjugate_independence():
    for w in (1, 2):
        assert is_weil_number(TWO_PLUS_I, 5, w).is_weil == is_weil_number(TWO_MINUS_I, 5, w).is_weil


@pytest.mark.parametrize("coeffs,q,w", [((5, -4, 1), 5, 1), ((2, -2, 1), 2, 1), ((-2, 0, 0, 0, 1), 2, F(1, 2)),
                                        ((7, 1, 1), 7, 1), ((3, 1, 1), 5, 1)])
def test_power_consistency(coeffs, q, w):
    x = alg(*coeffs)
    base = is_weil_number(x, q, w).is_weil
    for b in range(1, 5):
        assert is_weil_number(algebraic_power(x, b), q, w * b).is_weil == base


@given(st.sampled_from(PRIMES), st.integers(-8, 8), st.integers(1, 40))
def test_quadratics_against_oracle(q, a, c):
    if a * a - 4 * c >= 0:
        return  # keep to irreducible quadratics with complex roots
    coeffs = (c, -a, 1)
    assert is_weil_number(alg(*coeffs), q, 1).is_weil == float_oracle(coeffs, q, F(1)) == (c == q)


def test_replay_and_tamper():
    for v in (is_weil_integer(TWO_PLUS_I, 5, 1), is_weil_number(alg(2, 1, 0, 0, 1), 2, 1),
              is_weil_number(AlgebraicNumber.rational(3), 3, 2)):
        assert replay(v) == v.is_weil
        d = v.to_json()
        assert WeilVerdict.from_json(d) == v
        assert replay(d) == v.is_weil
    d = copy.deepcopy(is_weil_number(alg(2, 1, 0, 0, 1), 2, 1).to_json())
    sep = next(s for s in d["transcript"] if s["step"] == "separation")
    sep["bound"] = str(F(sep["bound"]) * 2)
    with pytest.raises(InvalidArgument):
        replay(d)


def test_false_verdicts_close_with_margin():
    v = is_weil_number(alg(6, -4, 1), 5, 1)  # 2 +- i sqrt 2, modulus squared 6
    assert not v.is_weil
    g = F(next(s for s in v.transcript if s["step"] == "separation")["bound"])
    for s in v.transcript:
        if s["step"] == "enclosure":
            assert F(s["distance_to_N"]) > 0
            lo, hi = (F(t) for t in s["modulus_squared"])
            assert hi - lo < g / 2


def test_integrality_condition():
    for p in (2, 3, 5):
        assert integrality_condition(p, 1, AlgebraicNumber.rational(p), F(1, 2))
        assert integrality_condition(p, 0, AlgebraicNumber.rational(1), 1)
    assert not integrality_condition(5, 0, TWO_PLUS_I, 1)
    assert integrality_condition(5, 1, TWO_PLUS_I, 1)  # 5/(2+i) = 2-i
    assert integrality_condition(5, 0, TWO_PLUS_I, -1)
