"""p-adic valuations, Newton polygons and local ramification evidence."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from .errors import DomainError, PreconditionError
from .poly import DoubleRootShape, PolyRat, Squarefree, multiple_root_shape
from .primes import is_prime, primes

Rational = Union[int, Fraction]


def ord_p(x: Rational, p: int) -> int:
    x = Fraction(x)
    if x == 0:
        raise DomainError("ord_p(0) is undefined")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def legendre(n: int, p: int) -> int:
    """ord_p(n!) by Legendre's formula."""
    v, q = 0, p
    while q <= n:
        v += n // q
        q *= p
    return v


@dataclass(frozen=True)
class NewtonPolygon:
    p: int
    vertices: tuple[tuple[int, int], ...]
    segments: tuple[tuple[Fraction, int], ...]

    def slopes(self) -> list[Fraction]:
        return [s for s, _ in self.segments]

    def denominators(self) -> list[int]:
        return [s.denominator for s, _ in self.segments]

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "vertices": [list(v) for v in self.vertices],
            "segments": [{"slope": str(s), "length": n} for s, n in self.segments],
        }


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(f: PolyRat, p: int) -> NewtonPolygon:
    """Lower convex hull of the points (i, ord_p(a_i)); slopes increase left to right."""
    if f.is_zero():
        raise DomainError("Newton polygon of the zero polynomial")
    pts = [(i, ord_p(c, p)) for i, c in enumerate(f.coeffs) if c != 0]
    hull: list[tuple[int, int]] = []
    for pt in pts:
        # pop while the turn is not strictly counter-clockwise (drops collinear points)
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    segs = tuple(
        (Fraction(b[1] - a[1], b[0] - a[0]), b[0] - a[0]) for a, b in zip(hull, hull[1:])
    )
    return NewtonPolygon(p, tuple(hull), segs)


class RamificationKind(str, Enum):
    UNRAMIFIED = "Unramified"
    UPPER_BOUND_TWO = "UpperBoundTwo"
    LOWER_BOUND = "LowerBound"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class RamificationEvidence:
    p: int
    kind: RamificationKind
    bound: Optional[int] = None
    detail: Optional[dict] = None

    @property
    def all_at_most_two(self) -> bool:
        """Every prime above p has ramification index <= 2."""
        return self.kind in (RamificationKind.UNRAMIFIED, RamificationKind.UPPER_BOUND_TWO)

    def to_dict(self) -> dict:
        out = {"p": self.p, "kind": self.kind.value}
        if self.bound is not None:
            out["bound"] = self.bound
        if self.detail:
            out["detail"] = self.detail
        return out


def ramification_evidence(f: PolyRat, p: int) -> RamificationEvidence:
    """Local evidence at p for the field Q[x]/(f); f must be irreducible over Q.

    A p-unit leading coefficient lets the reduction mod p speak: squarefree
    means unramified, a lone double root means every index is at most 2.
    Otherwise the Newton polygon gives a lower bound on some index.
    """
    if f.degree < 1:
        raise PreconditionError("need a non-constant polynomial")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    g = PolyRat(f.integral_primitive())
    if int(g.lc) % p:
        shape = multiple_root_shape(g.mod(p))
        if isinstance(shape, Squarefree):
            return RamificationEvidence(p, RamificationKind.UNRAMIFIED)
        if isinstance(shape, DoubleRootShape):
            return RamificationEvidence(p, RamificationKind.UPPER_BOUND_TWO, 2,
                                        {"double_root": shape.root})
    poly = newton_polygon(f, p)
    b = max(poly.denominators(), default=1)
    if b == 1:
        return RamificationEvidence(p, RamificationKind.INCONCLUSIVE, None, poly.to_dict())
    return RamificationEvidence(p, RamificationKind.LOWER_BOUND, b, poly.to_dict())


class FieldComparison(str, Enum):
    NON_ISOMORPHIC = "NonIsomorphic"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class FieldEvidence:
    status: FieldComparison
    witness: Optional[dict] = None
    # every witness prime in the scanned range, for audit
    witness_primes: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {"status": self.status.value, "witness": self.witness,
                "witness_primes": list(self.witness_primes)}


def _one_sided(ef: RamificationEvidence, eh: RamificationEvidence) -> Optional[dict]:
    for big, small, side in ((ef, eh, "f"), (eh, ef, "h")):
        if big.kind is RamificationKind.LOWER_BOUND and big.bound > 2 and small.all_at_most_two:
            return {"prime": big.p, "ramified_side": side, "lower_bound": big.bound,
                    "other_side": small.kind.value}
    return None


def fields_nonisomorphic_evidence(f: PolyRat, h: PolyRat, prime_budget: int = 50) -> FieldEvidence:
    """Sound one-sided test: some index >= b > 2 on one side, all indices <= 2 on the other."""
    if f.degree != h.degree:
        raise PreconditionError("field comparison expects equal degrees")
    first, found = None, []
    for k, p in enumerate(primes()):
        if k >= prime_budget:
            break
        w = _one_sided(ramification_evidence(f, p), ramification_evidence(h, p))
        if w:
            found.append(p)
            first = first or w
    if first is None:
        return FieldEvidence(FieldComparison.UNKNOWN)
    return FieldEvidence(FieldComparison.NON_ISOMORPHIC, first, tuple(found))


def bertrand_prime(g: int) -> int:
    """Smallest prime in [g+1, 2g+1]."""
    if g < 1:
        raise DomainError("need g >= 1")
    return next(primes(g + 1))
