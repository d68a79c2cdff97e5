"""The ten acceptance criteria, one test each.

Every test prints a single PASS/FAIL line; the lines are repeated in the
pytest terminal summary.  Running this file directly prints the same lines
without pytest.
"""

from __future__ import annotations

import contextlib
import io
import random
import sys
import tempfile
import time
from fractions import Fraction
from pathlib import Path

import mpmath
import pytest
import sympy

sys.path.insert(0, str(Path(__file__).parent))

from ltcrit import certificates  # noqa: E402
from ltcrit.cli import main  # noqa: E402
from ltcrit.criterion import (  # noqa: E402
    FINITE,
    INCONCLUSIVE,
    NO_INVARIANTS,
    prime_to_p_check,
    replay_certificate,
    verdict_abelian,
    verdict_cohomology,
)
from ltcrit.errors import HypothesisViolated  # noqa: E402
from ltcrit.exact_algebra.algebraic import AlgebraicNumber  # noqa: E402
from ltcrit.exact_algebra.polynomials import IntPoly  # noqa: E402
from ltcrit.galois import field_from_defining, galois_closure_data  # noqa: E402
from ltcrit.lubin_tate import (  # noqa: E402
    block_companion_matrix,
    dcris_charpoly,
    lt_contained_up_to_finite,
    lt_norm_compatible,
)
from ltcrit.padics.fields import eisenstein, frobenius_unramified, norm_to_base, qp, unramified  # noqa: E402
from ltcrit.padics.padic import PadicBall  # noqa: E402
from ltcrit.weil import is_weil_integer, is_weil_number  # noqa: E402
from towers import random_pair, random_tower, random_uniformizer  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"
TWO_PLUS_I = AlgebraicNumber.make(IntPoly((5, -4, 1)), padic_selector=PadicBall(5, 0, 1))


def imai_recovery():
    worst = 0.0
    for p in (2, 3, 5, 7, 11):
        t = time.perf_counter()
        c = verdict_abelian(qp(p), p)
        worst = max(worst, time.perf_counter() - t)
        assert c.verdict == FINITE, f"p={p}: {c.verdict}"
        assert [x.weight for x in c.candidates] == [1], f"p={p}: candidates {[str(x.weight) for x in c.candidates]}"
    assert worst < 1, f"slowest case took {worst:.3f} s"
    return f"FiniteTorsion with candidates {{1}} for p in 2..11, slowest {worst * 1000:.0f} ms"


def cm_counterexample():
    c = verdict_abelian(qp(5), TWO_PLUS_I)
    assert c.verdict == INCONCLUSIVE, c.verdict
    assert len(c.witnesses) == 1
    w = c.witnesses[0]
    assert w.weight == 1 and w.provenance == ((1, 1),), (w.weight, w.provenance)
    assert w.weil.is_weil and w.weil.is_integer_variant
    assert is_weil_integer(TWO_PLUS_I, 5, 1).is_weil
    assert is_weil_number(TWO_PLUS_I, 5, 1).is_weil
    assert replay_certificate(c.to_json()) == INCONCLUSIVE
    return "Inconclusive, witness (s,t)=(1,1) at weight 1; 2+i is a 5-Weil integer of weight 1"


def phi_module_formula():
    rng = random.Random(20240601)
    N = 48
    shapes = set()
    for _ in range(100):
        K = random_tower(rng, fmax=3, emax=6)
        pi = random_uniformizer(rng, K, N)
        k0 = K.unramified_layer()
        prod = dcris_charpoly(K, pi, N)
        cp = block_companion_matrix(K, pi, N).charpoly()
        assert len(cp) == len(prod.product) == K.d + 1
        for a, b in zip(cp, prod.product):
            assert a.agrees_with(k0.from_padic(b)), f"{K.describe()}: coefficient mismatch"
            assert b.absolute_precision >= 40, f"{K.describe()}: known only modulo p^{b.absolute_precision}"
        for b in prod.product:
            x = k0.from_padic(b)
            assert frobenius_unramified(k0, x).agrees_with(x)
        assert prod.product[0].agrees_with(norm_to_base(K, pi) * (-1) ** K.d)
        shapes.add((K.e, K.f))
    return f"100 towers ({len(shapes)} distinct (e,f) shapes), all coefficients agree at >= 40 digits"


def lubin_tate_comparison():
    for p in (3, 5, 7):
        assert lt_norm_compatible(qp(p), p, unramified(p, 2), p).holds
        K = eisenstein(p, [-p, 0, 1])
        root = AlgebraicNumber.make(IntPoly((-p, 0, 1)), padic_selector=PadicBall(p, 0, Fraction(1, 2)))
        assert not lt_norm_compatible(qp(p), p, K, root).holds
        fin = lt_contained_up_to_finite(qp(p), p, K, root)
        assert fin.holds and fin.M == p - 1 and fin.u == str(IntPoly((1, 1))), fin
    rng = random.Random(5)
    compatible = 0
    for i in range(50):
        kind = ("compatible", "torsion", "infinite")[i % 3]
        k1, pi1, k2, pi2 = random_pair(rng, 40, kind)
        a = lt_norm_compatible(k1, pi1, k2, pi2, 40)
        b = lt_contained_up_to_finite(k1, pi1, k2, pi2, 40)
        assert not a.holds or b.holds, f"pair {i}: implication fails"
        compatible += a.holds
    return f"examples hold for p=3,5,7 (u=-1, M=p-1); implication on 50 random pairs ({compatible} compatible)"


def _oracle_moduli(coeffs, dps=200):
    with mpmath.workdps(dps):
        roots = mpmath.polyroots(list(reversed(coeffs)), maxsteps=500, extraprec=2 * dps)
        return [abs(r) ** 2 for r in roots]


def weil_oracle():
    cases = disagreements = 0
    for q in (2, 3, 5, 7, 11, 13):
        a_max = int((4 * q) ** 0.5)
        for a in range(-a_max, a_max + 1):
            for const, expected in ((q, True), (q + 1, False)):
                coeffs = (const, -a, 1)
                v = is_weil_integer(AlgebraicNumber.make(IntPoly(coeffs)), q, 1)
                with mpmath.workdps(200):
                    moduli = _oracle_moduli(coeffs)
                    oracle = all(abs(m - q) < mpmath.mpf(10) ** -150 for m in moduli)
                cases += 1
                disagreements += (v.is_weil != oracle) + (v.is_weil != expected)
                if not v.is_weil:
                    g = Fraction(next(s for s in v.transcript if s["step"] == "separation")["bound"])
                    with mpmath.workdps(200):
                        assert all(abs(m - q) >= mpmath.mpf(g.numerator) / g.denominator for m in moduli), \
                            f"q={q}, a={a}: true gap below the separation bound"
                    for s in v.transcript:
                        if s["step"] == "enclosure":
                            lo, hi = (Fraction(x) for x in s["modulus_squared"])
                            assert hi - lo < g / 2 and not lo <= q <= hi
                            assert Fraction(s["distance_to_N"]) + (hi - lo) >= g
    assert disagreements == 0, f"{disagreements} disagreements"
    return f"{cases} Hasse-bound cases, 0 disagreements with the 200-digit oracle"


def cohomology_engine():
    for p in (2, 3, 5, 7):
        assert verdict_cohomology(qp(p), p, 1, 0).verdict == NO_INVARIANTS
    c = verdict_cohomology(qp(5), TWO_PLUS_I, 1, 0)
    assert c.verdict == INCONCLUSIVE
    w = [x for x in c.witnesses if x.h == -1]
    assert w and w[0].integrality is True and w[0].weil.is_weil
    with pytest.raises(HypothesisViolated):
        verdict_cohomology(qp(5), 5, 2, 1)
    return "NoInvariants for (Q_p, p); 2+i Inconclusive at h=-1 with integrality; i=2r rejected"


def galois_invariants():
    seen = []
    for p in (5, 7, 11, 13):
        g = IntPoly((-p, 0, 0, 1))
        K = field_from_defining(g, p)
        G = galois_closure_data(K, g)
        expected = (6, 1) if p % 3 == 2 else (3, 1)
        assert (G.d_G, G.e_G) == expected, f"p={p}: {(G.d_G, G.e_G)}"
        assert G.d_G == G.e_G * K.e * G.f_G and K.d == K.e * K.f
        seen.append(f"{p}:{G.d_G},{G.e_G}")
    rng = random.Random(20240601)
    for _ in range(100):
        K = random_tower(rng)
        assert K.d == K.e * K.f
    return "(d_G, e_G) " + " ".join(seen) + "; e*f = d on every constructed tower"


def prime_to_p():
    r = prime_to_p_check(IntPoly((5, 1, 1)), 5, 5)
    assert r.nonvanishing and r.bad_primes == (7,), r
    r = prime_to_p_check(IntPoly((-1, 1)), 5, 5)
    assert not r.nonvanishing and any("weight-0" in f for f in r.flags)
    rng = random.Random(11)
    for _ in range(100):
        p = rng.choice([2, 3, 5, 7, 11, 13])
        q = p ** rng.randint(1, 2)
        bound = int(2 * q**0.5)
        a = rng.randint(-bound, bound)
        r = prime_to_p_check(IntPoly((q, -a, 1)), q, p)
        assert p not in r.bad_primes
        assert set(r.bad_primes) == {ell for ell in sympy.factorint(1 - a + q) if ell != p}
    return "bad primes {7} for T^2+T+5, weight-0 flag for T-1, p excluded on 100 random cases"


def new_finite_example():
    for p in (3, 5, 7):
        c = verdict_abelian(unramified(p, 2), p * (1 + p))
        assert c.verdict == FINITE, f"p={p}: {c.verdict}"
        assert [x.weight for x in c.candidates] == [2, 1]
        assert not any(x.weil.is_weil for x in c.candidates)
        assert replay_certificate(c.to_json()) == FINITE
    return "FiniteTorsion for p=3,5,7 with weights 2 and 1 both failing"


def determinism_and_replay():
    corpus = FIXTURES / "corpus.toml"
    with tempfile.TemporaryDirectory() as tmp:
        a, b = Path(tmp) / "a", Path(tmp) / "b"
        with contextlib.redirect_stdout(io.StringIO()):
            main(["batch", str(corpus), "--out-dir", str(a)])
            main(["batch", str(corpus), "--out-dir", str(b)])
        names = sorted(p.name for p in a.iterdir())
        assert names == sorted(p.name for p in b.iterdir())
        for name in names:
            assert (a / name).read_bytes() == (b / name).read_bytes(), f"{name} differs"
        certs = sorted(a.glob("job-*.json"))
        for cert in certs:
            doc = certificates.loads(cert.read_text())
            assert certificates.replay(doc), f"{cert.name} does not replay"
            if doc["result"].get("kind") == "verdict":
                assert replay_certificate(doc["result"]) == doc["result"]["verdict"]
    return f"{len(certs)} certificates byte-identical across two runs, all replay"


CRITERIA = [
    (1, "Imai recovery", imai_recovery),
    (2, "CM counterexample", cm_counterexample),
    (3, "phi-module characteristic polynomial", phi_module_formula),
    (4, "Lubin-Tate containment", lubin_tate_comparison),
    (5, "Weil decision oracle", weil_oracle),
    (6, "cohomology engine", cohomology_engine),
    (7, "Galois invariants", galois_invariants),
    (8, "prime-to-p check", prime_to_p),
    (9, "new finite example", new_finite_example),
    (10, "determinism and replay", determinism_and_replay),
]


def evaluate(num: int, title: str, fn) -> tuple[bool, str]:
    try:
        ok, detail = True, fn()
    except Exception as ex:  # any failure, assertion or crash, is a FAIL line
        ok, detail = False, f"{type(ex).__name__}: {ex}"
    return ok, f"[{'PASS' if ok else 'FAIL'}] {num:2d}. {title}: {detail}"


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"criterion-{n}" for n, _, _ in CRITERIA])
def test_criterion(num, title, fn, acceptance_log):
    ok, line = evaluate(num, title, fn)
    print(line)
    acceptance_log.append(line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
