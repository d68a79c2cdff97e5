"""
Weil numbers, transcripts and the cohomological criterion
=========================================================

"""

from fractions import Fraction

from ltcrit.criterion import replay_certificate, verdict_cohomology, verdict_general
from ltcrit.exact_algebra.algebraic import AlgebraicNumber
from ltcrit.exact_algebra.polynomials import IntPoly
from ltcrit.padics.fields import qp
from ltcrit.padics.padic import PadicBall
from ltcrit.weil import is_weil_number, replay

# 1 + i has |1+i|^2 = 2, so it is a 2-Weil number of weight 1.
v = is_weil_number(AlgebraicNumber.make(IntPoly((2, -2, 1))), 2, 1)
print(v.is_weil)

# A negative answer is a proof: the transcript holds a separation bound and
# root enclosures narrow enough that the gap to q^w cannot close.
v = is_weil_number(AlgebraicNumber.make(IntPoly((6, -4, 1))), 5, 1)
for step in v.transcript:
    if step["step"] == "separation":
        print("separation bound", step["bound"])
    elif step["step"] == "enclosure":
        print("|alpha|^2 in", [float(Fraction(x)) for x in step["modulus_squared"]])

# Replaying the transcript recomputes every enclosure and returns the bit it proves.
print("replay proves is_weil =", replay(v.to_json()))

# Fractional weights reduce to integer ones through powers: 2^(1/4) has weight 1/2.
print(is_weil_number(AlgebraicNumber.make(IntPoly((-2, 0, 0, 0, 1))), 2, "1/2").is_weil)

# H^1 with r = 0: only h = -1 is a candidate over Q_p.
print(verdict_cohomology(qp(3), 3, 1, 0).verdict)
two_plus_i = AlgebraicNumber.make(IntPoly((5, -4, 1)), padic_selector=PadicBall(5, 0, 1))
cert = verdict_cohomology(qp(5), two_plus_i, 1, 0)
print(cert.verdict, [(str(w.h), str(w.weight), w.integrality) for w in cert.witnesses])

# The general form takes a weight set S on trust and an exponent range.
cert = verdict_general(qp(5), 5, [2], -1, 1)
print(cert.verdict, cert.parameters["S_provenance"], [str(w.h) for w in cert.witnesses])
print(replay_certificate(cert.to_json()))
