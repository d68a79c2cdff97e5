"""Division-free characteristic polynomials over commutative rings."""

from __future__ import annotations

from typing import Any, Sequence


def berkowitz(M: Sequence[Sequence[Any]], zero: Any, one: Any) -> list[Any]:
    """Coefficients of det(T*I - M), lowest degree first.

    Berkowitz's algorithm uses only ring operations, so it is safe for
    truncated p-adic entries where division would lose precision.
    """
    n = len(M)
    if n == 0:
        return [one]
    # vect holds coefficients highest degree first
    vect = [one, zero - M[0][0]]
    for r in range(1, n):
        # partition of the leading (r+1)x(r+1) block
        R = [M[r][j] for j in range(r)]
        C = [M[i][r] for i in range(r)]
        A = [[M[i][j] for j in range(r)] for i in range(r)]
        a = M[r][r]
        # Toeplitz column: 1, -a, -R C, -R A C, -R A^2 C, ...
        col = [one, zero - a]
        v = C
        for _ in range(r):
            s = zero
            for x, y in zip(R, v):
                s = s + x * y
            col.append(zero - s)
            v = [_dot(row, v, zero) for row in A]
        # multiply Toeplitz (r+2) x (r+1) lower triangular by vect
        new = []
        for i in range(r + 2):
            s = zero
            for j in range(min(i, r) + 1):
                if j < len(vect):
                    s = s + col[i - j] * vect[j]
            new.append(s)
        vect = new
    return list(reversed(vect))


def _dot(row: Sequence[Any], v: Sequence[Any], zero: Any) -> Any:
    s = zero
    for x, y in zip(row, v):
        s = s + x * y
    return s


def mat_mul(A: Sequence[Sequence[Any]], B: Sequence[Sequence[Any]], zero: Any) -> list[list[Any]]:
    cols = list(zip(*B))
    return [[_dot(row, col, zero) for col in cols] for row in A]

