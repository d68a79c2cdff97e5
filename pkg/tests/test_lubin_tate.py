from __future__ import annotations

import random
from fractions import Fraction

import pytest

from ltcrit.errors import InvalidArgument
from ltcrit.exact_algebra.algebraic import AlgebraicNumber
from ltcrit.exact_algebra.polynomials import IntPoly
from ltcrit.lubin_tate import (
    block_companion_matrix,
    charpoly_coefficients_agree,
    dcris_charpoly,
    find_embedding,
    lt_contained_up_to_finite,
    lt_norm_compatible,
    minimal_polynomial_over_k0,
    relative_norm,
)
from ltcrit.padics.fields import eisenstein, frobenius_unramified, norm_to_base, qp, unramified
from ltcrit.padics.padic import PadicBall
from towers import random_pair, random_tower, random_uniformizer

N = 48


def _agree(padics, values):
    return len(padics) == len(values) and all(c.agrees_with(v) for c, v in zip(padics, values))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_dcris_examples(p):
    assert _agree(dcris_charpoly(qp(p), p, N).product, [-p, 1])
    K = eisenstein(p, [-p, 0, 1])
    assert _agree(dcris_charpoly(K, K.uniformizer(N), N).product, [-p, 0, 1])
    U = unramified(p, 2)
    assert _agree(dcris_charpoly(U, p, N).product, [p * p, -2 * p, 1])


@pytest.mark.parametrize("p", [3, 5])
def test_block_companion_examples(p):
    M = block_companion_matrix(qp(p), p, N)
    assert M.size == 1 and M.entries[0][0].agrees_with(p)
    K = eisenstein(p, [-p, 0, 1])
    M = block_companion_matrix(K, K.uniformizer(N), N)
    expected = [[0, p], [1, 0]]
    assert all(M.entries[i][j].agrees_with(expected[i][j]) for i in range(2) for j in range(2))
    U = unramified(p, 2)
    M = block_companion_matrix(U, p, N)
    assert all(M.entries[i][j].agrees_with(p if i == j else 0) for i in range(2) for j in range(2))


def test_minimal_polynomial_of_a_non_generator_uniformizer():
    K = eisenstein(5, [-5, 0, 1])
    pi0 = K.uniformizer(N)
    pi = pi0 + pi0 * pi0
    E = minimal_polynomial_over_k0(K, pi)
    # pi = sqrt 5 + 5 is a root of (x - 5)^2 - 5
    assert all(c.agrees_with(v) for c, v in zip(E, [20, -10, 1]))


def test_uniformizer_required():
    with pytest.raises(InvalidArgument):
        dcris_charpoly(qp(5), 25, N)


def test_random_towers_block_companion_matches_product():
    rng = random.Random(20240601)
    for _ in range(100):
        K = random_tower(rng)
        pi = random_uniformizer(rng, K, N)
        M = block_companion_matrix(K, pi, N)
        cp = M.charpoly()
        prod = dcris_charpoly(K, pi, N)
        k0 = K.unramified_layer()
        assert len(cp) == K.d + 1 == prod.degree + 1
        assert all(c.agrees_with(k0.from_padic(v)) for c, v in zip(cp, prod.product))
        for tw in prod.factors:
            assert len(tw) == K.e + 1
        # descent: the product is fixed by Frobenius
        for c in prod.product:
            x = k0.from_padic(c)
            assert frobenius_unramified(k0, x).agrees_with(x)
        assert prod.product[0].agrees_with(norm_to_base(K, pi) * (-1) ** K.d)


def test_lt_examples():
    for p in (3, 5, 7):
        assert lt_norm_compatible(qp(p), p, qp(p), p).holds
        assert lt_norm_compatible(qp(p), p, unramified(p, 2), p).holds
        K = eisenstein(p, [-p, 0, 1])
        root = AlgebraicNumber.make(IntPoly((-p, 0, 1)), padic_selector=PadicBall(p, 0, Fraction(1, 2)))
        a = lt_norm_compatible(qp(p), p, K, root)
        assert not a.holds and a.exact
        b = lt_contained_up_to_finite(qp(p), p, K, root)
        assert b.holds and b.exact and b.M == p - 1
        assert b.u == str(IntPoly((1, 1)))  # u = -1
        c = lt_contained_up_to_finite(qp(p), p, qp(p), p * (1 + p))
        assert not c.holds


def test_lt_local_mode_marker():
    K = eisenstein(5, [-5, 0, 1])
    r = lt_norm_compatible(qp(5), 5, K, K.uniformizer(N), N)
    assert not r.holds and not r.exact and r.marker.startswith("equal at O(p^")


def test_no_embedding():
    with pytest.raises(InvalidArgument):
        find_embedding(unramified(5, 2), eisenstein(5, [-5, 0, 1]), N)
    with pytest.raises(InvalidArgument):
        find_embedding(qp(3), qp(5), N)


def test_relative_norm_transitivity_of_norms():
    p = 3
    U = unramified(p, 2)
    K = eisenstein(p, [p, 0, 1], base=U)
    x = random_uniformizer(random.Random(7), K, N)
    down = relative_norm(find_embedding(U, K, N), x)
    assert norm_to_base(U, down).agrees_with(norm_to_base(K, x))


def test_transitivity():
    p = 5
    U2, U4 = unramified(p, 2), unramified(p, 4)
    K3 = eisenstein(p, [p, 0, 1], base=U2)
    assert lt_norm_compatible(qp(p), p, U2, p).holds
    assert lt_norm_compatible(U2, U2.element(p, N), K3, K3.uniformizer(N), N).holds
    assert lt_norm_compatible(qp(p), p, K3, K3.uniformizer(N), N).holds
    assert lt_norm_compatible(U2, U2.element(p, N), U4, U4.element(p, N), N).holds
    assert lt_norm_compatible(qp(p), p, U4, p).holds


def test_random_pairs_implication():
    rng = random.Random(5)
    expected = {"compatible": (True, True), "torsion": (False, True), "infinite": (False, False)}
    for i in range(60):
        kind = ("compatible", "torsion", "infinite")[i % 3]
        k1, pi1, k2, pi2 = random_pair(rng, 40, kind)
        a = lt_norm_compatible(k1, pi1, k2, pi2, 40)
        b = lt_contained_up_to_finite(k1, pi1, k2, pi2, 40)
        assert (a.holds, b.holds) == expected[kind]
        assert not a.holds or b.holds


def test_charpoly_helper():
    K = unramified(5, 2)
    a = [K.element(1, N), K.element(2, N)]
    assert charpoly_coefficients_agree(a, list(a))
    assert not charpoly_coefficients_agree(a, a[:1])
