"""Small-prime helpers (trial division is plenty at desk scale)."""

from __future__ import annotations

from itertools import count
from typing import Iterator


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


def primes(start: int = 2) -> Iterator[int]:
    """Yield primes >= start in increasing order, forever."""
    for n in count(max(start, 2)):
        if is_prime(n):
            yield n


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q == p**k, or None if q is not a prime power."""
    if q < 2:
        return None
    for p in primes():
        if p * p > q:
            break
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return (q, 1)


def factorint(n: int) -> dict[int, int]:
    """Trial-division factorization of |n| (n != 0)."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, k in factorint(n).items():
        divs = [d * p**e for d in divs for e in range(k + 1)]
    return sorted(divs)
