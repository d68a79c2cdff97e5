"""Residue fields F_q = F_p[t]/(u) and polynomials over them.

Elements are tuples of length f (coefficients of 1, t, ..., t^(f-1)).
Polynomials over F_q are lists of elements, lowest degree first.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Sequence

Elem = tuple[int, ...]
Poly = list[Elem]


def _polymod_p(a: list[int], m: Sequence[int], p: int) -> list[int]:
    a = [c % p for c in a]
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return a[:dm] + [0] * max(0, dm - len(a))


def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _fp_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = _fp_trim([c % p for c in a])
    b = _fp_trim([c % p for c in b])
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        s = len(a) - len(b)
        q[s] = c
        for j, y in enumerate(b):
            a[s + j] = (a[s + j] - c * y) % p
        _fp_trim(a)
    return q, a


def _fp_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _fp_trim([c % p for c in a])
    b = _fp_trim([c % p for c in b])
    while b:
        a, b = b, _fp_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _fp_powmod(base: list[int], e: int, m: Sequence[int], p: int) -> list[int]:
    out = [1]
    base = _fp_divmod(base, m, p)[1]
    while e:
        if e & 1:
            out = _fp_divmod(_fp_mul(out, base, p), m, p)[1]
        base = _fp_divmod(_fp_mul(base, base, p), m, p)[1]
        e >>= 1
    return out


def is_irreducible_mod_p(u: Sequence[int], p: int) -> bool:
    """Rabin's test for a polynomial over F_p (lowest degree first)."""
    u = _fp_trim([c % p for c in u])
    n = len(u) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    primes = [q for q in range(2, n + 1) if n % q == 0 and all(q % r for r in range(2, q))]
    for q in primes:
        h = _fp_powmod(x, p ** (n // q), u, p)
        diff = _fp_trim([(a - b) % p for a, b in itertools.zip_longest(h, x, fillvalue=0)])
        if len(_fp_gcd(u, diff, p)) > 1:
            return False
    h = _fp_powmod(x, p**n, u, p)
    diff = _fp_trim([(a - b) % p for a, b in itertools.zip_longest(h, x, fillvalue=0)])
    return not diff


@lru_cache(maxsize=None)
def conway_like_poly(p: int, f: int) -> tuple[int, ...]:
    """First monic irreducible polynomial of degree f over F_p in a fixed order.

    Candidates are enumerated by the integer sum c_i p^i of the lower
    coefficients, so the choice is deterministic.
    """
    if f == 1:
        return (0, 1)
    for code in range(p**f):
        cs = [(code // p**i) % p for i in range(f)]
        if cs[0] == 0:
            continue
        u = cs + [1]
        if is_irreducible_mod_p(u, p):
            return tuple(u)
    raise RuntimeError("no irreducible polynomial found")  # unreachable


class GF:
    """The finite field F_p[t]/(u)."""

    def __init__(self, p: int, u: Sequence[int]):
        self.p = p
        self.u = tuple(c % p for c in u)
        self.f = len(u) - 1
        self.q = p**self.f
        self.zero: Elem = (0,) * self.f
        self.one: Elem = (1,) + (0,) * (self.f - 1)

    def elem(self, coeffs: Sequence[int]) -> Elem:
        return tuple(_polymod_p(list(coeffs), self.u, self.p)) if len(coeffs) > self.f else tuple(
            (list(c % self.p for c in coeffs) + [0] * self.f)[: self.f]
        )

    def add(self, a: Elem, b: Elem) -> Elem:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a: Elem, b: Elem) -> Elem:
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a: Elem) -> Elem:
        return tuple(-x % self.p for x in a)

    def mul(self, a: Elem, b: Elem) -> Elem:
        return tuple(_polymod_p(_fp_mul(a, b, self.p) or [0], self.u, self.p))

    def pow(self, a: Elem, e: int) -> Elem:
        out, base = self.one, a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, a: Elem) -> Elem:
        if a == self.zero:
            raise ZeroDivisionError("zero in residue field")
        return self.pow(a, self.q - 2)

    def is_zero(self, a: Elem) -> bool:
        return not any(a)

    def elements(self):
        for code in range(self.q):
            yield tuple((code // self.p**i) % self.p for i in range(self.f))

    def random(self, rng: random.Random) -> Elem:
        return tuple(rng.randrange(self.p) for _ in range(self.f))

    # polynomials over F_q

    def ptrim(self, a: Poly) -> Poly:
        a = list(a)
        while a and self.is_zero(a[-1]):
            a.pop()
        return a

    def pmul(self, a: Poly, b: Poly) -> Poly:
        if not a or not b:
            return []
        out = [self.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if self.is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = self.add(out[i + j], self.mul(x, y))
        return self.ptrim(out)

    def pdivmod(self, a: Poly, b: Poly) -> tuple[Poly, Poly]:
        a = self.ptrim(a)
        b = self.ptrim(b)
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        inv = self.inv(b[-1])
        q = [self.zero] * max(len(a) - len(b) + 1, 0)
        while len(a) >= len(b):
            c = self.mul(a[-1], inv)
            s = len(a) - len(b)
            q[s] = c
            for j, y in enumerate(b):
                a[s + j] = self.sub(a[s + j], self.mul(c, y))
            a = self.ptrim(a)
        return q, a

    def pmonic(self, a: Poly) -> Poly:
        a = self.ptrim(a)
        inv = self.inv(a[-1])
        return [self.mul(c, inv) for c in a]

    def pgcd(self, a: Poly, b: Poly) -> Poly:
        a, b = self.ptrim(a), self.ptrim(b)
        while b:
            a, b = b, self.pdivmod(a, b)[1]
        return self.pmonic(a) if a else a

    def psub(self, a: Poly, b: Poly) -> Poly:
        n = max(len(a), len(b))
        a = list(a) + [self.zero] * (n - len(a))
        b = list(b) + [self.zero] * (n - len(b))
        return self.ptrim([self.sub(x, y) for x, y in zip(a, b)])

    def padd(self, a: Poly, b: Poly) -> Poly:
        n = max(len(a), len(b))
        a = list(a) + [self.zero] * (n - len(a))
        b = list(b) + [self.zero] * (n - len(b))
        return self.ptrim([self.add(x, y) for x, y in zip(a, b)])

    def pderiv(self, a: Poly) -> Poly:
        return self.ptrim([self.mul(self.elem([i]), c) for i, c in enumerate(a) if i])

    def ppowmod(self, base: Poly, e: int, m: Poly) -> Poly:
        out: Poly = [self.one]
        base = self.pdivmod(base, m)[1]
        while e:
            if e & 1:
                out = self.pdivmod(self.pmul(out, base), m)[1]
            base = self.pdivmod(self.pmul(base, base), m)[1]
            e >>= 1
        return out

    def peval(self, a: Poly, x: Elem) -> Elem:
        acc = self.zero
        for c in reversed(a):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def _pth_root(self, a: Elem) -> Elem:
        return self.pow(a, self.q // self.p)

    def squarefree_factorization(self, a: Poly) -> list[tuple[Poly, int]]:
        """Monic squarefree factors with multiplicities (handles characteristic p)."""
        a = self.pmonic(a)
        out: list[tuple[Poly, int]] = []
        if len(a) <= 1:
            return out
        i = 1
        c = self.pgcd(a, self.pderiv(a))
        w = self.pdivmod(a, c)[0]
        while len(w) > 1:
            y = self.pgcd(w, c)
            fac = self.pdivmod(w, y)[0]
            if len(fac) > 1:
                out.append((self.pmonic(fac), i))
            w = y
            c = self.pdivmod(c, y)[0]
            i += 1
        if len(c) > 1:
            # c is a p-th power
            root = [self._pth_root(c[j]) for j in range(0, len(c), self.p)]
            for fac, m in self.squarefree_factorization(root):
                out.append((fac, m * self.p))
        merged: dict[tuple, int] = {}
        for fac, m in out:
            key = tuple(fac)
            merged[key] = merged.get(key, 0) + m
        return [(list(k), m) for k, m in merged.items()]

    def distinct_degree(self, a: Poly) -> list[tuple[Poly, int]]:
        out = []
        x: Poly = [self.zero, self.one]
        h = x
        a = self.pmonic(a)
        d = 0
        while len(a) > 1:
            d += 1
            if 2 * d > len(a) - 1:
                out.append((a, len(a) - 1))
                break
            h = self.ppowmod(h, self.q, a)
            g = self.pgcd(a, self.psub(h, x))
            if len(g) > 1:
                out.append((g, d))
                a = self.pdivmod(a, g)[0]
                h = self.pdivmod(h, a)[1] if len(a) > 1 else h
        return out

    def equal_degree(self, a: Poly, d: int, rng: random.Random) -> list[Poly]:
        a = self.pmonic(a)
        n = len(a) - 1
        if n == d:
            return [a]
        while True:
            r = [self.random(rng) for _ in range(n)]
            r = self.ptrim(r)
            if len(r) < 2:
                continue
            if self.p == 2:
                # trace map x + x^2 + ... + x^(2^(k d - 1)) with q = 2^k
                t = r
                acc = r
                for _ in range(self.f * d - 1):
                    t = self.pdivmod(self.pmul(t, t), a)[1]
                    acc = self.padd(acc, t)
                cand = acc
            else:
                cand = self.psub(self.ppowmod(r, (self.q**d - 1) // 2, a), [self.one])
            g = self.pgcd(a, cand)
            if 1 < len(g) < len(a):
                return self.equal_degree(g, d, rng) + self.equal_degree(self.pdivmod(a, g)[0], d, rng)

    def factor(self, a: Poly) -> list[tuple[Poly, int]]:
        """Monic irreducible factors with multiplicities, in a deterministic order."""
        rng = random.Random(0x5EED)
        out = []
        for sq, m in self.squarefree_factorization(a):
            for part, d in self.distinct_degree(sq):
                for irr in self.equal_degree(part, d, rng):
                    out.append((irr, m))
        out.sort(key=lambda fm: (len(fm[0]), [list(c) for c in fm[0]]))
        return out

    def roots(self, a: Poly) -> list[tuple[Elem, int]]:
        """Roots in F_q with multiplicities."""
        out = []
        for fac, m in self.factor(a):
            if len(fac) == 2:
                out.append((self.neg(fac[0]), m))
        return out
