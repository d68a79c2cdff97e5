"""
Comparing Lubin-Tate extensions through norms
=============================================

"""

from fractions import Fraction

from ltcrit.exact_algebra.algebraic import AlgebraicNumber
from ltcrit.exact_algebra.polynomials import IntPoly
from ltcrit.lubin_tate import lt_contained_up_to_finite, lt_norm_compatible
from ltcrit.padics.fields import eisenstein, qp, unramified
from ltcrit.padics.padic import PadicBall

p = 5

# The norm from the unramified quadratic sends p to p^2 = p^f, so the
# cyclotomic extension of Q_5 sits inside the Lubin-Tate extension for p.
print(lt_norm_compatible(qp(p), p, unramified(p, 2), p))

# For sqrt 5 the norm is -5. The comparison fails by u = -1, which is a
# root of unity, so containment holds after a finite extension.
k = eisenstein(p, [-p, 0, 1])
sqrt5 = AlgebraicNumber.make(IntPoly((-p, 0, 1)), padic_selector=PadicBall(p, 0, Fraction(1, 2)))
print(lt_norm_compatible(qp(p), p, k, sqrt5))
print(lt_contained_up_to_finite(qp(p), p, k, sqrt5))

# p(1+p) differs from p by the unit 1+p of infinite order.
print(lt_contained_up_to_finite(qp(p), p, qp(p), p * (1 + p)))

# Local uniformizers without a global model are compared p-adically; the
# result says to which precision the equality was checked.
k2 = eisenstein(p, [p, 0, 1], base=unramified(p, 2))
print(lt_norm_compatible(unramified(p, 2), unramified(p, 2).element(-p), k2, k2.uniformizer()).marker)
