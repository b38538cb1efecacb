"""Witness-carrying identification of Gal(f) over Q as S_n or A_n.

Cycle types come from Dedekind's theorem (factor degrees of f mod a good
prime).  Only the following classical facts are used to *prove* anything:

* f irreducible  =>  Gal(f) transitive.
* transitive + a pure q-cycle, q prime, q > n/2            =>  primitive.
* transitive + an (n-1)-cycle                              =>  primitive (2-transitive).
* primitive + a transposition                              =>  S_n        (Jordan).
* primitive + a pure q-cycle, q = 3 or q prime <= n - 3    =>  contains A_n (Jordan).
* Gal(f) <= A_n  iff  disc(f) is a rational square.
* n = 4: Gal(f) in {A_4, S_4} iff the cubic resolvent is irreducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Iterator, Optional

from .errors import DegenerateInputError, PreconditionError
from .poly import PolyRat, ddf_degrees, discriminant, is_squarefree
from .primes import divisors, is_prime, primes

DEFAULT_PRIME_BUDGET = 100

# rational-root search factors |a0| and |an|; beyond this it is skipped
_ROOT_SEARCH_LIMIT = 10**12

CycleType = tuple[int, ...]


class GaloisStatus(str, Enum):
    SN_PROVEN = "SnProven"
    AN_PROVEN = "AnProven"
    CONTAINED_IN_AN = "ContainedInAn"
    UNKNOWN = "Unknown"


class IrreducibilityStatus(str, Enum):
    IRREDUCIBLE = "Irreducible"
    REDUCIBLE = "Reducible"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class IrreducibilityResult:
    status: IrreducibilityStatus
    witness: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"status": self.status.value, "witness": self.witness}


@dataclass(frozen=True)
class GaloisVerdict:
    degree: int
    status: GaloisStatus
    witnesses: tuple[tuple[int, CycleType], ...]
    disc_square: bool
    rules_fired: tuple[str, ...]
    irreducibility: IrreducibilityResult

    @property
    def proven(self) -> bool:
        return self.status in (GaloisStatus.SN_PROVEN, GaloisStatus.AN_PROVEN)

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "status": self.status.value,
            "witnesses": [{"prime": p, "cycle_type": list(t)} for p, t in self.witnesses],
            "disc_square": self.disc_square,
            "rules_fired": list(self.rules_fired),
            "irreducibility": self.irreducibility.to_dict(),
        }


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _integral(f: PolyRat) -> PolyRat:
    return PolyRat(f.integral_primitive())


def good_primes(f: PolyRat) -> Iterator[int]:
    """Primes not dividing lc * disc of the primitive integral form of f."""
    g = _integral(f)
    bad = int(g.lc) * discriminant(g)
    if bad == 0:
        raise PreconditionError("polynomial has a repeated root")
    bad_num = abs(bad.numerator)
    for p in primes():
        if bad_num % p:
            yield p


def _cycle_type(degrees: dict[int, int]) -> CycleType:
    return tuple(sorted(d for d, c in degrees.items() for _ in range(c)))


def cycle_type_power(t: CycleType, k: int) -> CycleType:
    """Cycle type of sigma**k for any sigma of cycle type t."""
    out = []
    for length in t:
        g = gcd(length, k)
        out.extend([length // g] * g)
    return tuple(sorted(out))


def power_closure(t: CycleType) -> set[CycleType]:
    order = lcm(*t) if t else 1
    return {cycle_type_power(t, k) for k in range(1, order + 1)}


def _is_pure_cycle(t: CycleType, q: int) -> bool:
    """True if t is a single q-cycle plus fixed points."""
    moved = [c for c in t if c != 1]
    return q > 1 and moved == [q]


def rational_roots(f: PolyRat) -> Optional[list[Fraction]]:
    """All rational roots of f, or None if the coefficients are too large to search."""
    c = list(f.integral_primitive())
    roots: list[Fraction] = []
    while c and c[0] == 0:
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
        c = c[1:]
    if len(c) <= 1:
        return roots
    a0, an = abs(c[0]), abs(c[-1])
    if a0 > _ROOT_SEARCH_LIMIT or an > _ROOT_SEARCH_LIMIT:
        return None
    g = PolyRat(c)
    for num in divisors(a0):
        for den in divisors(an):
            if gcd(num, den) != 1:
                continue
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if g(cand) == 0 and cand not in roots:
                    roots.append(cand)
    return sorted(roots)


def _subset_sums(parts: CycleType) -> set[int]:
    sums = {0}
    for d in parts:
        sums |= {s + d for s in sums}
    return sums


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def sample_cycle_types(f: PolyRat, prime_budget: int = DEFAULT_PRIME_BUDGET) -> list[tuple[int, CycleType]]:
    """Frobenius cycle types at the first ``prime_budget`` good primes."""
    if f.degree < 1:
        raise DegenerateInputError("need degree >= 1")
    out = []
    if prime_budget <= 0:
        return out
    g = _integral(f)
    for p in good_primes(g):
        out.append((p, _cycle_type(ddf_degrees(g.mod(p)))))
        if len(out) >= prime_budget:
            break
    return out


def irreducibility_certificate(f: PolyRat, prime_budget: int = DEFAULT_PRIME_BUDGET,
                               _types: Optional[list[tuple[int, CycleType]]] = None) -> IrreducibilityResult:
    n = f.degree
    if n < 2:
        raise DegenerateInputError("irreducibility certificate needs degree >= 2")
    if not is_squarefree(f):
        raise PreconditionError("irreducibility_certificate requires a squarefree polynomial")
    roots = rational_roots(f)
    if roots:
        return IrreducibilityResult(
            IrreducibilityStatus.REDUCIBLE,
            {"rule": "rational_root", "roots": [str(r) for r in roots]},
        )
    types = _types if _types is not None else sample_cycle_types(f, prime_budget)
    for p, t in types:
        if t == (n,):
            return IrreducibilityResult(
                IrreducibilityStatus.IRREDUCIBLE, {"rule": "irreducible_mod_p", "prime": p}
            )
    achievable = set(range(n + 1))
    used = []
    for p, t in types:
        sums = _subset_sums(t)
        if not achievable <= sums:
            used.append(p)
        achievable &= sums
        if achievable == {0, n}:
            return IrreducibilityResult(
                IrreducibilityStatus.IRREDUCIBLE, {"rule": "degree_sieve", "primes": used}
            )
    if roots is not None and n <= 3:
        return IrreducibilityResult(
            IrreducibilityStatus.IRREDUCIBLE, {"rule": "no_rational_root_low_degree"}
        )
    return IrreducibilityResult(
        IrreducibilityStatus.UNKNOWN,
        {"possible_factor_degrees": sorted(d for d in achievable if 0 < d < n)},
    )


def is_rational_square(x: Fraction) -> bool:
    x = Fraction(x)
    if x < 0:
        return False
    return isqrt(x.numerator) ** 2 == x.numerator and isqrt(x.denominator) ** 2 == x.denominator


def disc_is_square(f: PolyRat) -> bool:
    d = discriminant(f)
    if d == 0:
        raise PreconditionError("disc_is_square requires a squarefree polynomial")
    return is_rational_square(d)


def cubic_resolvent(f: PolyRat) -> PolyRat:
    """Resolvent with roots r1*r2 + r3*r4 etc.

    For monic x^4 + a x^3 + b x^2 + c x + d this is
    x^3 - b x^2 + (a c - 4 d) x - (a^2 d + c^2 - 4 b d).
    """
    if f.degree != 4:
        raise PreconditionError("cubic resolvent is defined for quartics")
    d, c, b, a, _ = f.monic().coeffs
    return PolyRat([-(a * a * d + c * c - 4 * b * d), a * c - 4 * d, -b, 1])


def identify_sn_an(f: PolyRat, prime_budget: int = DEFAULT_PRIME_BUDGET) -> GaloisVerdict:
    n = f.degree
    if n < 3:
        raise DegenerateInputError("identify_sn_an needs degree >= 3")
    if not is_squarefree(f):
        raise PreconditionError("identify_sn_an requires a squarefree polynomial")
    square = disc_is_square(f)
    types = sample_cycle_types(f, prime_budget)
    irr = irreducibility_certificate(f, prime_budget, _types=types)
    rules: list[str] = []
    witnesses: list[tuple[int, CycleType]] = []

    def verdict(status: GaloisStatus) -> GaloisVerdict:
        seen, wit = set(), []
        for w in witnesses:
            if w not in seen:
                seen.add(w)
                wit.append(w)
        return GaloisVerdict(n, status, tuple(wit), square, tuple(rules), irr)

    def by_square() -> GaloisVerdict:
        rules.append("disc_square" if square else "disc_nonsquare")
        return verdict(GaloisStatus.AN_PROVEN if square else GaloisStatus.SN_PROVEN)

    fallback = GaloisStatus.CONTAINED_IN_AN if square else GaloisStatus.UNKNOWN
    if irr.status is not IrreducibilityStatus.IRREDUCIBLE:
        return verdict(fallback)
    rules.append("R1_irreducible_transitive")
    if "prime" in irr.witness:
        witnesses.append((irr.witness["prime"], (n,)))

    if n == 3:
        rules.append("n3_transitive_is_A3_or_S3")
        return by_square()
    if n == 4:
        res = cubic_resolvent(f)
        if not is_squarefree(res):
            rules.append("n4_resolvent_degenerate")
            return verdict(fallback)
        if rational_roots(res) == []:
            rules.append("n4_resolvent_irreducible")
            return by_square()
        rules.append("n4_resolvent_reducible")
        return verdict(fallback)

    closures = [(p, t, power_closure(t)) for p, t in types]

    primitive = None
    for p, t, cl in closures:
        if primitive:
            break
        if any(_is_pure_cycle(s, q) for s in cl for q in range(n // 2 + 1, n + 1) if is_prime(q)):
            primitive = ("R2_prime_cycle_over_half", (p, t))
        elif (1, n - 1) in cl:
            primitive = ("R2_n_minus_1_cycle", (p, t))
    if primitive is None and is_prime(n):
        primitive = ("R2_prime_degree", None)
    if primitive is None:
        return verdict(fallback)
    rules.append(primitive[0])
    if primitive[1]:
        witnesses.append(primitive[1])

    for p, t, cl in closures:
        if any(_is_pure_cycle(s, 2) for s in cl):
            rules.append("R3_transposition_symmetric")
            witnesses.append((p, t))
            if square:  # impossible for a sound engine; refuse to certify
                return verdict(GaloisStatus.UNKNOWN)
            return by_square()
    small = [q for q in range(3, n - 2) if is_prime(q)] + [3]
    for p, t, cl in closures:
        if any(_is_pure_cycle(s, q) for s in cl for q in set(small)):
            rules.append("R4_small_prime_cycle_alternating")
            witnesses.append((p, t))
            return by_square()
    return verdict(fallback)
