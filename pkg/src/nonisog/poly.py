"""Exact univariate polynomials over Q and over prime fields F_p.

Coefficient tuples are stored lowest degree first; the zero polynomial is
the empty tuple.  Everything here is exact (``Fraction``/``int``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

from .errors import DegenerateInputError, DomainError, PreconditionError
from .primes import is_prime

RationalLike = Union[int, Fraction]


def _strip(coeffs: Sequence) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


# ---------------------------------------------------------------------------
# Polynomials over Q
# ---------------------------------------------------------------------------


class PolyRat:
    """Immutable polynomial with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        object.__setattr__(self, "coeffs", _strip([Fraction(c) for c in coeffs]))

    def __setattr__(self, name, value):
        raise AttributeError("PolyRat is immutable")

    @classmethod
    def x(cls) -> "PolyRat":
        return cls([0, 1])

    @classmethod
    def constant(cls, c: RationalLike) -> "PolyRat":
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            raise DegenerateInputError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        if isinstance(other, PolyRat):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("PolyRat", self.coeffs))

    def __repr__(self):
        return f"PolyRat({str(self)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __neg__(self):
        return PolyRat([-c for c in self.coeffs])

    def __add__(self, other):
        other = _as_polyrat(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return PolyRat([u + v for u, v in zip(a, b)])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_polyrat(other))

    def __rsub__(self, other):
        return _as_polyrat(other) - self

    def __mul__(self, other):
        other = _as_polyrat(other)
        if not self.coeffs or not other.coeffs:
            return PolyRat()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyRat(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative exponent")
        result, base = PolyRat([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        other = _as_polyrat(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv_lc = 1 / other.lc
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv_lc
            if c:
                quot[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return PolyRat(quot), PolyRat(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x: RationalLike) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "PolyRat":
        return PolyRat([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "PolyRat":
        lc = self.lc
        return PolyRat([c / lc for c in self.coeffs])

    def gcd(self, other: "PolyRat") -> "PolyRat":
        """Monic gcd (zero if both are zero)."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def integral_primitive(self) -> tuple[int, ...]:
        """Scale to coprime integer coefficients with positive leading term."""
        if not self.coeffs:
            raise DegenerateInputError("zero polynomial")
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return tuple(v // g for v in ints)

    def mod(self, p: int) -> "PolyModP":
        """Reduce coefficientwise mod p; p must not divide any denominator."""
        out = []
        for c in self.coeffs:
            if c.denominator % p == 0:
                raise PreconditionError(f"{p} divides a coefficient denominator")
            out.append(c.numerator * pow(c.denominator, -1, p) % p)
        return PolyModP(p, out)


def _as_polyrat(v) -> PolyRat:
    if isinstance(v, PolyRat):
        return v
    if isinstance(v, (int, Fraction)):
        return PolyRat([v])
    raise TypeError(f"cannot treat {type(v).__name__} as a polynomial")


def exp_poly(n: int) -> PolyRat:
    """Truncated exponential 1 + x + x^2/2! + ... + x^n/n!."""
    coeffs, fact = [], 1
    for i in range(n + 1):
        if i:
            fact *= i
        coeffs.append(Fraction(1, fact))
    return PolyRat(coeffs)


def trinomial(n: int, a: int = -1, b: int = -1) -> PolyRat:
    """x^n + a*x + b (default: the x^n - x - 1 family)."""
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    coeffs[1] += a
    coeffs[0] += b
    return PolyRat(coeffs)


# ---------------------------------------------------------------------------
# Polynomials over F_p
# ---------------------------------------------------------------------------


class PolyModP:
    """Immutable polynomial over the prime field F_p."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Iterable[int] = ()):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", _strip([c % p for c in coeffs]))

    def __setattr__(self, name, value):
        raise AttributeError("PolyModP is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        if not self.coeffs:
            raise DegenerateInputError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        if isinstance(other, PolyModP):
            return self.p == other.p and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("PolyModP", self.p, self.coeffs))

    def __repr__(self):
        return f"PolyModP({self.p}, {list(self.coeffs)})"

    def _new(self, coeffs) -> "PolyModP":
        return PolyModP(self.p, coeffs)

    def _check(self, other: "PolyModP"):
        if other.p != self.p:
            raise DomainError("mixing polynomials over different primes")

    def __add__(self, other: "PolyModP"):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return self._new([u + v for u, v in zip(a, b)])

    def __neg__(self):
        return self._new([-c for c in self.coeffs])

    def __sub__(self, other: "PolyModP"):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self._new([c * other for c in self.coeffs])
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return self._new([])
        p = self.p
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return self._new([c % p for c in out])

    __rmul__ = __mul__

    def __divmod__(self, other: "PolyModP"):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        dq = other.degree
        inv = pow(other.lc, -1, p)
        quot = [0] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv % p
            if c:
                quot[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] = (rem[k - dq + j] - c * b) % p
        return self._new(quot), self._new(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def derivative(self) -> "PolyModP":
        return self._new([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "PolyModP":
        inv = pow(self.lc, -1, self.p)
        return self._new([c * inv for c in self.coeffs])

    def gcd(self, other: "PolyModP") -> "PolyModP":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def powmod(self, e: int, modulus: "PolyModP") -> "PolyModP":
        result = self._new([1]) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result


# ---------------------------------------------------------------------------
# Resultants and discriminants
# ---------------------------------------------------------------------------


def sylvester_matrix(f: Sequence[int], g: Sequence[int]) -> list[list[int]]:
    """Sylvester matrix of two coefficient lists (lowest degree first)."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    return rows


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of a square integer matrix."""
    a = [list(r) for r in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def resultant(f: PolyRat, g: PolyRat) -> Fraction:
    """Res(f, g) via the Sylvester determinant on denominator-cleared inputs."""
    if f.is_zero() or g.is_zero():
        raise DegenerateInputError("resultant with the zero polynomial")
    m, n = f.degree, g.degree
    df = lcm(*(c.denominator for c in f.coeffs))
    dg = lcm(*(c.denominator for c in g.coeffs))
    fi = [int(c * df) for c in f.coeffs]
    gi = [int(c * dg) for c in g.coeffs]
    det = bareiss_det(sylvester_matrix(fi, gi))
    return Fraction(det, df**n * dg**m)


def discriminant(f: PolyRat) -> Fraction:
    n = f.degree
    if n < 1:
        raise DegenerateInputError("discriminant needs degree >= 1")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.lc


def is_squarefree(f: Union[PolyRat, PolyModP]) -> bool:
    if f.degree < 1:
        raise DegenerateInputError("squarefreeness needs degree >= 1")
    return f.gcd(f.derivative()).degree == 0


# ---------------------------------------------------------------------------
# Factor-degree data over F_p
# ---------------------------------------------------------------------------


def ddf_degrees(f: PolyModP) -> dict[int, int]:
    """Distinct-degree factorization: {d: number of irreducible factors of degree d}.

    Only the degree pattern is produced; factors of equal degree are never
    separated.
    """
    if f.degree < 1:
        raise DegenerateInputError("ddf needs degree >= 1")
    if not is_squarefree(f):
        raise PreconditionError("ddf_degrees requires a squarefree polynomial")
    p = f.p
    rest = f.monic()
    x = PolyModP(p, [0, 1])
    h = x
    out: dict[int, int] = {}
    d = 0
    while rest.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(p, rest)
        g = rest.gcd(h - x)
        if g.degree > 0:
            out[d] = g.degree // d
            rest = rest // g
            h = h % rest
    if rest.degree > 0:
        out[rest.degree] = out.get(rest.degree, 0) + 1
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class Squarefree:
    kind: str = "squarefree"


@dataclass(frozen=True)
class DoubleRootShape:
    """f = (x - root)^2 * cofactor with cofactor squarefree and cofactor(root) != 0."""

    root: int
    cofactor: PolyModP
    kind: str = "double_root"


@dataclass(frozen=True)
class OtherShape:
    kind: str = "other"


def multiple_root_shape(f: PolyModP) -> Union[Squarefree, DoubleRootShape, OtherShape]:
    if f.degree < 1:
        raise DegenerateInputError("shape needs degree >= 1")
    g = f.gcd(f.derivative())
    if g.degree == 0:
        return Squarefree()
    if g.degree != 1:
        return OtherShape()
    p = f.p
    c = -g.coeffs[0] * pow(g.coeffs[1], -1, p) % p
    lin = PolyModP(p, [-c, 1])
    w, r = divmod(f, lin * lin)
    if not r.is_zero() or w(c) == 0 or w.degree < 0:
        return OtherShape()
    if w.degree >= 1 and not is_squarefree(w):
        return OtherShape()
    return DoubleRootShape(root=c, cofactor=w)


def genus_of_curve(n: int) -> int:
    """Genus of y^2 = f(x) for squarefree f of degree n."""
    if n < 3:
        raise DomainError("hyperelliptic genus needs degree >= 3")
    return (n - 1) // 2 if n % 2 else (n - 2) // 2
