"""Linear algebra over F_2 and the heart module of a permutation group.

Vectors are Python ints (bit j = coordinate j).  A matrix is a tuple of row
ints and acts on column vectors, so the image of basis vector j is column j.
With this convention ``mat(g) @ mat(h) == mat(g∘h)`` for the permutation
composition used in :mod:`nonisog.perm`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

from .errors import DomainError, SimplicityUnknown
from .perm import PermGroup, is_k_transitive, transitivity_degree

NORTON_WORDS = 64
NORTON_TRIALS = 8
EXHAUSTIVE_MAX_DIM = 16
# irreducible factors of the characteristic polynomial tried by Norton's test
_MAX_FACTOR_DEGREE = 8


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


class MatF2:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Iterable[int]):
        rows = tuple(rows)
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        mask = (1 << ncols) - 1
        if any(r & ~mask for r in rows):
            raise ValueError("row has bits beyond the column count")
        object.__setattr__(self, "nrows", nrows)
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("MatF2 is immutable")

    @classmethod
    def identity(cls, n: int) -> "MatF2":
        return cls(n, n, (1 << i for i in range(n)))

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "MatF2":
        return cls(nrows, ncols, [0] * nrows)

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[int]]) -> "MatF2":
        ncols = len(data[0]) if data else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            rows.append(sum((int(v) & 1) << j for j, v in enumerate(r)))
        return cls(len(data), ncols, rows)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[int]) -> "MatF2":
        rows = [0] * nrows
        for j, c in enumerate(columns):
            for i in range(nrows):
                if c >> i & 1:
                    rows[i] |= 1 << j
        return cls(nrows, len(columns), rows)

    def to_lists(self) -> list[list[int]]:
        return [[r >> j & 1 for j in range(self.ncols)] for r in self.rows]

    def __eq__(self, other):
        return isinstance(other, MatF2) and (self.nrows, self.ncols, self.rows) == (
            other.nrows, other.ncols, other.rows)

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.rows))

    def __repr__(self):
        return f"MatF2({self.to_lists()})"

    def __add__(self, other: "MatF2") -> "MatF2":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return MatF2(self.nrows, self.ncols, (a ^ b for a, b in zip(self.rows, other.rows)))

    def __matmul__(self, other: "MatF2") -> "MatF2":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        brows = other.rows
        for r in self.rows:
            acc, j = 0, 0
            while r:
                if r & 1:
                    acc ^= brows[j]
                r >>= 1
                j += 1
            out.append(acc)
        return MatF2(self.nrows, other.ncols, out)

    def apply(self, v: int) -> int:
        """Matrix times column vector."""
        out = 0
        for i, r in enumerate(self.rows):
            if _parity(r & v):
                out |= 1 << i
        return out

    def columns(self) -> list[int]:
        return [self.apply(1 << j) for j in range(self.ncols)]

    def transpose(self) -> "MatF2":
        return MatF2(self.ncols, self.nrows, self.columns())

    def rank(self) -> int:
        return len(echelon(self.rows))

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self) -> "MatF2":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        # row-reduce [A | I] packed into one int per row
        aug = [r | (1 << (n + i)) for i, r in enumerate(self.rows)]
        for c in range(n):
            piv = next((i for i in range(c, n) if aug[i] >> c & 1), None)
            if piv is None:
                raise ValueError("matrix is singular")
            aug[c], aug[piv] = aug[piv], aug[c]
            for i in range(n):
                if i != c and aug[i] >> c & 1:
                    aug[i] ^= aug[c]
        return MatF2(n, n, (r >> n for r in aug))

    def kernel(self) -> list[int]:
        """Basis of {v : A v = 0}."""
        n = self.ncols
        rows = list(self.rows)
        pivots: list[int] = []
        r = 0
        for c in range(n):
            piv = next((i for i in range(r, len(rows)) if rows[i] >> c & 1), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            for i in range(len(rows)):
                if i != r and rows[i] >> c & 1:
                    rows[i] ^= rows[r]
            pivots.append(c)
            r += 1
        free = [c for c in range(n) if c not in pivots]
        basis = []
        for f in free:
            v = 1 << f
            for i, c in enumerate(pivots):
                if rows[i] >> f & 1:
                    v |= 1 << c
            basis.append(v)
        return basis

    def __pow__(self, k: int) -> "MatF2":
        result, base = MatF2.identity(self.nrows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result


def echelon(vectors: Iterable[int]) -> list[int]:
    """Reduced basis of the span, keyed by distinct leading bits."""
    basis: dict[int, int] = {}
    for v in vectors:
        v = _reduce(v, basis)
        if v:
            basis[v.bit_length() - 1] = v
    return list(basis.values())


def _reduce(v: int, basis: dict[int, int]) -> int:
    while v:
        top = v.bit_length() - 1
        b = basis.get(top)
        if b is None:
            return v
        v ^= b
    return 0


def spin(vectors: Iterable[int], gens: Sequence[MatF2], limit: Optional[int] = None) -> int:
    """Dimension of the smallest gens-invariant subspace containing ``vectors``.

    Stops early once the dimension reaches ``limit``.
    """
    basis: dict[int, int] = {}
    queue = []
    for v in vectors:
        r = _reduce(v, basis)
        if r:
            basis[r.bit_length() - 1] = r
            queue.append(v)
    while queue:
        if limit is not None and len(basis) >= limit:
            break
        v = queue.pop()
        for g in gens:
            w = g.apply(v)
            r = _reduce(w, basis)
            if r:
                basis[r.bit_length() - 1] = r
                queue.append(w)
    return len(basis)


# ---------------------------------------------------------------------------
# polynomials over F_2 as ints (bit i = coefficient of x^i)
# ---------------------------------------------------------------------------


def _pdeg(a: int) -> int:
    return a.bit_length() - 1


def _pdivmod(a: int, b: int) -> tuple[int, int]:
    q, db = 0, _pdeg(b)
    while a and _pdeg(a) >= db:
        s = _pdeg(a) - db
        q |= 1 << s
        a ^= b << s
    return q, a


def _small_irreducible_factors(f: int, max_degree: int) -> list[tuple[int, int]]:
    """(factor, multiplicity) for irreducible factors of degree <= max_degree."""
    out = []
    for cand in range(2, 1 << (max_degree + 1)):
        if _pdeg(cand) > _pdeg(f):
            break
        mult = 0
        while True:
            q, r = _pdivmod(f, cand)
            if r:
                break
            f, mult = q, mult + 1
        if mult:
            out.append((cand, mult))
    return out


def _poly_at(p: int, a: MatF2) -> MatF2:
    n = a.nrows
    acc = MatF2.zero(n, n)
    ident = MatF2.identity(n)
    for i in range(_pdeg(p), -1, -1):
        acc = acc @ a
        if p >> i & 1:
            acc = acc + ident
    return acc


def charpoly(a: MatF2) -> int:
    """Characteristic polynomial via Krylov chains, as a bit-int polynomial."""
    n = a.nrows
    # each echelon entry carries a tag: which vectors of the current chain it combines
    basis: dict[int, tuple[int, int]] = {}
    result = 1
    for start in range(n):
        u = 1 << start
        if _reduce_tagged(u, 0, basis)[0] == 0:
            continue
        chain_basis = dict(basis)
        v, k = u, 0
        while True:
            r, tag = _reduce_tagged(v, 1 << k, chain_basis, keep_tags=True)
            if r == 0:
                factor = tag
                break
            chain_basis[r.bit_length() - 1] = (r, tag)
            v = a.apply(v)
            k += 1
        result = _pmul(result, factor)
        for key, (vec, _) in chain_basis.items():
            basis[key] = (vec, 0)
        if len(basis) == n:
            break
    return result


def _reduce_tagged(v: int, tag: int, basis, keep_tags: bool = False):
    while v:
        top = v.bit_length() - 1
        entry = basis.get(top)
        if entry is None:
            break
        v ^= entry[0]
        if keep_tags:
            tag ^= entry[1]
    return v, tag


def _pmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class F2Module:
    dimension: int
    matrices: tuple[MatF2, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "matrices", tuple(self.matrices))
        if self.dimension < 1:
            raise DomainError("module dimension must be >= 1")
        if not self.matrices:
            raise DomainError("module needs at least one generator matrix")
        for m in self.matrices:
            if m.nrows != self.dimension or m.ncols != self.dimension:
                raise DomainError("generator matrix has the wrong shape")
            if not m.is_invertible():
                raise DomainError("generator matrix is singular")


def trivial_module(label: str = "trivial") -> F2Module:
    return F2Module(1, (MatF2.identity(1),), label)


def heart_dimension(n: int) -> int:
    if n < 3:
        raise DomainError("heart needs degree >= 3")
    return n - 1 if n % 2 else n - 2


def heart_matrix(perm: Sequence[int]) -> MatF2:
    """Action of one permutation on the heart, in the basis b_i = e_i + e_{i+1}."""
    n = len(perm)
    d = heart_dimension(n)
    cols = []
    for j in range(d):
        image = (1 << perm[j]) | (1 << perm[j + 1])
        # coordinates in the b-basis of a sum-zero vector are its prefix sums
        coords, running = 0, 0
        for i in range(n - 1):
            running ^= image >> i & 1
            coords |= running << i
        if n % 2 == 0 and coords >> (n - 2) & 1:
            # b_{n-2} = sum of b_i over even i <= n-4, modulo the all-ones vector
            coords ^= 1 << (n - 2)
            for i in range(0, n - 3, 2):
                coords ^= 1 << i
        cols.append(coords)
    return MatF2.from_columns(d, cols)


def heart_module(g: PermGroup) -> F2Module:
    n = g.degree
    d = heart_dimension(n)
    mats = tuple(heart_matrix(p) for p in g.generators) or (MatF2.identity(d),)
    name = ":".join(map(str, g.label)) if g.label else "gens"
    return F2Module(d, mats, f"heart({name})")


def hom_module(m1: F2Module, m2: F2Module) -> F2Module:
    """Hom(W1, W2) as a module for H1 x H2: (h1, h2).phi = B(h2) phi A(h1)^-1.

    phi is a d2 x d1 matrix; coordinate a*d1 + b holds entry (a, b).
    """
    d1, d2 = m1.dimension, m2.dimension

    def vec_to_mat(v: int) -> MatF2:
        return MatF2(d2, d1, ((v >> (a * d1)) & ((1 << d1) - 1) for a in range(d2)))

    def mat_to_vec(m: MatF2) -> int:
        return sum(r << (a * d1) for a, r in enumerate(m.rows))

    def lift(fn) -> MatF2:
        cols = [mat_to_vec(fn(vec_to_mat(1 << k))) for k in range(d1 * d2)]
        return MatF2.from_columns(d1 * d2, cols)

    mats = []
    for a in m1.matrices:
        ainv = a.inverse()
        mats.append(lift(lambda phi: phi @ ainv))
    for b in m2.matrices:
        mats.append(lift(lambda phi: b @ phi))
    return F2Module(d1 * d2, tuple(mats), f"Hom({m1.label},{m2.label})")


def endomorphism_dimension(m: F2Module) -> int:
    """dim of {X : X A = A X for every generator A}."""
    d = m.dimension
    nvar = d * d
    eqs = []
    for a in m.matrices:
        acols = a.columns()
        for i in range(d):
            for j in range(d):
                # (XA - AX)_{ij} = sum_k X_ik A_kj + A_ik X_kj
                row = 0
                colj = acols[j]
                for k in range(d):
                    if colj >> k & 1:
                        row ^= 1 << (i * d + k)
                    if a.rows[i] >> k & 1:
                        row ^= 1 << (k * d + j)
                if row:
                    eqs.append(row)
    return nvar - len(echelon(eqs))


class SimplicityMethod(str, Enum):
    NORTON = "norton"
    EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True)
class SimplicityVerdict:
    simple: bool
    endomorphism_dimension: int
    absolutely_simple: bool
    method: SimplicityMethod
    witness: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {
            "simple": self.simple,
            "endomorphism_dimension": self.endomorphism_dimension,
            "absolutely_simple": self.absolutely_simple,
            "method": self.method.value,
            "witness": self.witness,
        }


def _norton(m: F2Module, seed: int) -> Optional[tuple[bool, dict]]:
    d = m.dimension
    gens = m.matrices
    transposes = tuple(a.transpose() for a in gens)
    rng = random.Random(seed)
    attempts = 0
    for trial in range(NORTON_TRIALS):
        words = list(gens)
        for _ in range(NORTON_WORDS):
            attempts += 1
            words.append(rng.choice(words) @ rng.choice(words))
            theta = MatF2.zero(d, d)
            for w in words:
                if rng.getrandbits(1):
                    theta = theta + w
            cp = charpoly(theta)
            for p, _mult in _small_irreducible_factors(cp, min(_MAX_FACTOR_DEGREE, d)):
                ptheta = _poly_at(p, theta)
                ker = ptheta.kernel()
                if not ker:
                    continue
                sub = spin([ker[0]], gens)
                if sub < d:
                    return False, {"rule": "invariant_subspace", "dimension": sub, "trial": trial}
                if len(ker) != _pdeg(p):
                    continue
                wker = ptheta.transpose().kernel()
                sub_t = spin([wker[0]], transposes)
                if sub_t < d:
                    return False, {"rule": "dual_invariant_subspace", "dimension": d - sub_t,
                                   "trial": trial}
                return True, {"rule": "norton", "trial": trial, "attempts": attempts,
                              "factor_degree": _pdeg(p)}
    return None


def _exhaustive(m: F2Module) -> tuple[bool, dict]:
    d = m.dimension
    gens = m.matrices
    seen = bytearray(1 << d)
    for v in range(1, 1 << d):
        if seen[v]:
            continue
        # the whole orbit of v spins to the same subspace
        seen[v] = 1
        stack = [v]
        while stack:
            x = stack.pop()
            for g in gens:
                y = g.apply(x)
                if not seen[y]:
                    seen[y] = 1
                    stack.append(y)
        sub = spin([v], gens)
        if sub < d:
            return False, {"rule": "invariant_subspace", "dimension": sub, "vector": v}
    return True, {"rule": "exhaustive_spin"}


def simplicity(m: F2Module, seed: int = 0, method: str = "auto") -> SimplicityVerdict:
    """Decide whether ``m`` is simple.

    ``method`` is "norton", "exhaustive" or "auto" (Norton first, exhaustive
    fallback for small dimension).  Raises SimplicityUnknown when no method decides.
    """
    if method not in ("auto", "norton", "exhaustive"):
        raise ValueError(f"unknown method {method!r}")
    end_dim = endomorphism_dimension(m)
    outcome = None
    used = SimplicityMethod.NORTON
    if method in ("auto", "norton"):
        outcome = _norton(m, seed)
    if outcome is None and method in ("auto", "exhaustive"):
        if m.dimension <= EXHAUSTIVE_MAX_DIM:
            outcome = _exhaustive(m)
            used = SimplicityMethod.EXHAUSTIVE
    if outcome is None:
        raise SimplicityUnknown(
            dimension=m.dimension,
            endomorphism_dimension=end_dim,
            attempts=NORTON_TRIALS * NORTON_WORDS,
        )
    simple, witness = outcome
    return SimplicityVerdict(simple, end_dim, simple and end_dim == 1, used, witness)


# ---------------------------------------------------------------------------
# niceness
# ---------------------------------------------------------------------------


class Niceness(str, Enum):
    VERY_NICE = "VeryNice"
    NICE_NOT_VERY_NICE = "NiceNotVeryNice"
    NOT_NICE = "NotNice"
    UNKNOWN = "Unknown"

    @property
    def nice(self) -> bool:
        return self in (Niceness.VERY_NICE, Niceness.NICE_NOT_VERY_NICE)


@dataclass(frozen=True)
class NicenessVerdict:
    verdict: Niceness
    evidence: dict

    def to_dict(self) -> dict:
        return {"verdict": self.verdict.value, "evidence": self.evidence}


def classify_niceness(g: PermGroup, seed: int = 0) -> NicenessVerdict:
    n = g.degree
    if n < 3:
        raise DomainError("niceness needs degree >= 3")
    caveats = [] if g.label else ["heart-criterion"]
    if n == 3 and g.order() == 3:
        return NicenessVerdict(Niceness.NICE_NOT_VERY_NICE,
                               {"rule": "degree3_cyclic", "transitivity_degree": 1,
                                "caveats": caveats})
    tdeg = transitivity_degree(g)
    evidence: dict = {"transitivity_degree": tdeg, "caveats": caveats}
    if not is_k_transitive(g, 2):
        evidence["rule"] = "not_doubly_transitive"
        return NicenessVerdict(Niceness.NOT_NICE, evidence)
    try:
        sv = simplicity(heart_module(g), seed)
    except SimplicityUnknown as exc:
        evidence["rule"] = "heart_undecided"
        evidence["endomorphism_dimension"] = exc.endomorphism_dimension
        return NicenessVerdict(Niceness.UNKNOWN, evidence)
    evidence["rule"] = "heart"
    evidence["simplicity"] = sv.to_dict()
    if sv.absolutely_simple:
        return NicenessVerdict(Niceness.VERY_NICE, evidence)
    if sv.simple:
        return NicenessVerdict(Niceness.NICE_NOT_VERY_NICE, evidence)
    return NicenessVerdict(Niceness.NOT_NICE, evidence)
