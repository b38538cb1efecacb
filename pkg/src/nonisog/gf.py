"""Table-driven arithmetic in small finite fields F_q, q = p^k.

Elements are encoded as integers 0..q-1 whose base-p digits are the
coefficients of a polynomial in the generator (lowest digit = constant).
The defining polynomial is the lexicographically smallest monic
irreducible of degree k, so encodings are reproducible.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .errors import DomainError
from .poly import PolyModP, ddf_degrees, is_squarefree
from .primes import prime_power


def _smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    if k == 1:
        return (0, 1)
    for tail in product(range(p), repeat=k):
        coeffs = tuple(reversed(tail)) + (1,)
        f = PolyModP(p, coeffs)
        if coeffs[0] and is_squarefree(f) and ddf_degrees(f) == {k: 1}:
            return coeffs
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class GF:
    def __init__(self, q: int):
        pk = prime_power(q)
        if pk is None:
            raise DomainError(f"{q} is not a prime power")
        self.p, self.k = pk
        self.q = q
        self.modulus = _smallest_irreducible(self.p, self.k)
        p, k = self.p, self.k
        digits = [self._digits(a) for a in range(q)]
        self.add = [[self._encode([(x + y) % p for x, y in zip(digits[a], digits[b])])
                     for b in range(q)] for a in range(q)]
        self.neg = [self._encode([(-x) % p for x in digits[a]]) for a in range(q)]
        self.mul = [[self._mul_digits(digits[a], digits[b]) for b in range(q)] for a in range(q)]
        self.inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self.mul[a][b] == 1:
                    self.inv[a] = b
                    break
        self.primitive = self._find_primitive()
        # additive basis: 1, w, ..., w^(k-1) for the primitive element w
        basis, x = [], 1
        for _ in range(k):
            basis.append(x)
            x = self.mul[x][self.primitive]
        self.additive_basis = basis

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, digits) -> int:
        a = 0
        for d in reversed(digits):
            a = a * self.p + d
        return a

    def _mul_digits(self, x, y) -> int:
        p, k, m = self.p, self.k, self.modulus
        prod = [0] * (2 * k - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    prod[i + j] += a * b
        for i in range(len(prod) - 1, k - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(k + 1):
                    prod[i - k + j] -= c * m[j]
        return self._encode([c % p for c in prod[:k]])

    def _find_primitive(self) -> int:
        q = self.q
        for g in range(1, q):
            x, order = g, 1
            while x != 1:
                x = self.mul[x][g]
                order += 1
            if order == q - 1:
                return g
        raise AssertionError("no primitive element")  # pragma: no cover


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)
