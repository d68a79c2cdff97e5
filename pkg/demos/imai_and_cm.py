"""
Finite torsion over Lubin-Tate extensions
=========================================

"""

from fractions import Fraction

from ltcrit.criterion import verdict_abelian
from ltcrit.exact_algebra.algebraic import AlgebraicNumber
from ltcrit.exact_algebra.polynomials import IntPoly
from ltcrit.padics.fields import qp, unramified
from ltcrit.padics.padic import PadicBall

# k = Q_p with pi = p: the Lubin-Tate extension is the cyclotomic one.
# The only candidate weight is 1, and p has weight 2, so torsion is finite.
for p in (2, 3, 5, 7, 11):
    cert = verdict_abelian(qp(p), p)
    print(p, cert.verdict, [str(c.weight) for c in cert.candidates])

# pi = 2+i in Q_5. Since |2+i|^2 = 5, the norm is a 5-Weil integer of
# weight 1 and the criterion says nothing.
two_plus_i = AlgebraicNumber.make(IntPoly((5, -4, 1)), padic_selector=PadicBall(5, 0, 1))
cert = verdict_abelian(qp(5), two_plus_i)
print(cert.verdict, [(str(w.weight), w.provenance) for w in cert.witnesses])

# Over the unramified quadratic, pi = p(1+p) has norm p^2 (1+p)^2. Its
# absolute value is neither p nor p^2, so both candidate weights fail.
for p in (3, 5, 7):
    cert = verdict_abelian(unramified(p, 2), p * (1 + p))
    print(p, cert.verdict, {str(c.weight): c.weil.is_weil for c in cert.candidates})

# The same certificate as JSON; every candidate carries its Weil transcript.
doc = cert.to_json()
print(doc["verdict"], doc["galois"], doc["witnesses"])

# The anchor of pi is a p-adic ball; a ball of radius 1/2 picks a root up
# to conjugacy, which is all the norm needs.
print(PadicBall(5, 0, Fraction(1, 2)))
