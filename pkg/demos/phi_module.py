"""
Characteristic polynomial of the Lubin-Tate phi-module
======================================================

"""

from ltcrit.lubin_tate import block_companion_matrix, dcris_charpoly
from ltcrit.padics.fields import eisenstein, norm_to_base, unramified

N = 40

# A ramified quadratic over the unramified quadratic of Q_3:
# E(x) = x^2 + (3 + 3t) x + 3 with t^2 + 1 = 0.
k0 = unramified(3, 2)
k = eisenstein(3, [[3, 0], [3, 3], [1, 0]], base=k0)
pi = k.uniformizer(N)
print(k.describe(), k.unramified_poly, k.eisenstein_poly)

# The product of the Frobenius twists of E has coefficients in Q_3.
D = dcris_charpoly(k, pi, N)
for i, twist in enumerate(D.factors):
    print("E twisted", i, [c for c in twist])
print("product", [str(c) for c in D.product])

# The block companion matrix of pi acting on k0 (x) k has the same
# characteristic polynomial.
M = block_companion_matrix(k, pi, N)
for row in M.entries:
    print([str(x) for x in row])
cp = M.charpoly()
print(all(a.agrees_with(k0.from_padic(b)) for a, b in zip(cp, D.product)))

# Its constant term is the norm of pi down to Q_3, up to the sign (-1)^d.
print(D.product[0], norm_to_base(k, pi) * (-1) ** k.d)
