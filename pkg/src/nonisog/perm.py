"""Permutation groups: Schreier-Sims, orbits, normal subgroups, disjointness, Goursat.

Permutations are tuples ``p`` of images on ``0..n-1``; ``compose(a, b)`` is
``a o b`` (apply ``b`` first), so every action in the package is a left action.
"""

from __future__ import annotations

import re
from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import product
from math import factorial, gcd
from typing import Iterable, Iterator, Optional, Sequence

from .errors import DomainError, PreconditionError, ResourceLimitError
from .gf import field as gf_field

Perm = tuple[int, ...]

MAX_DEGREE = 64
DEFAULT_ORDER_CAP = 20000
ISO_SEARCH_LIMIT = 200


# ---------------------------------------------------------------------------
# bare permutations
# ---------------------------------------------------------------------------


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(a: Perm) -> bool:
    return all(i == x for i, x in enumerate(a))


def compose(a: Perm, b: Perm) -> Perm:
    """a o b: first b, then a."""
    return tuple(a[j] for j in b)


def inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def cycles(a: Perm) -> list[tuple[int, ...]]:
    seen, out = set(), []
    for i in range(len(a)):
        if i in seen:
            continue
        cyc = [i]
        seen.add(i)
        j = a[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = a[j]
        out.append(tuple(cyc))
    return out


def cycle_type(a: Perm) -> tuple[int, ...]:
    return tuple(sorted(len(c) for c in cycles(a)))


def perm_order(a: Perm) -> int:
    o = 1
    for c in cycles(a):
        o = o * len(c) // gcd(o, len(c))
    return o


def sign(a: Perm) -> int:
    return -1 if sum(len(c) - 1 for c in cycles(a)) % 2 else 1


def power(a: Perm, k: int) -> Perm:
    result, base = identity(len(a)), a
    if k < 0:
        base, k = inverse(a), -k
    while k:
        if k & 1:
            result = compose(base, result)
        base = compose(base, base)
        k >>= 1
    return result


def from_cycles(n: int, cyc: Iterable[Sequence[int]]) -> Perm:
    img = list(range(n))
    for c in cyc:
        for i, x in enumerate(c):
            img[x] = c[(i + 1) % len(c)]
    if sorted(img) != list(range(n)):
        raise ValueError("cycles do not describe a permutation")
    return tuple(img)


def format_perm(a: Perm) -> str:
    parts = ["(" + " ".join(map(str, c)) + ")" for c in cycles(a) if len(c) > 1]
    return "".join(parts) or "()"


_CYCLE_RE = re.compile(r"\(([\d\s,]*)\)")


def parse_perm(text: str, n: Optional[int] = None) -> Perm:
    """Parse cycle notation such as ``(0 1 2)(3 4)``."""
    stripped = text.strip()
    if not stripped or _CYCLE_RE.sub("", stripped).strip():
        raise ValueError(f"could not parse permutation {text!r}")
    cyc = []
    for body in _CYCLE_RE.findall(stripped):
        pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
        if len(set(pts)) != len(pts):
            raise ValueError(f"repeated point in cycle of {text!r}")
        if pts:
            cyc.append(pts)
    m = max((max(c) for c in cyc), default=-1) + 1
    return from_cycles(max(n or 0, m), cyc)


def _check_perm(a: Sequence[int], n: int) -> Perm:
    t = tuple(int(x) for x in a)
    if len(t) != n or sorted(t) != list(range(n)):
        raise ValueError(f"not a permutation of {n} points: {a!r}")
    return t


# ---------------------------------------------------------------------------
# Schreier-Sims
# ---------------------------------------------------------------------------


def _transversal(point: int, gens: Sequence[Perm], n: int) -> dict[int, Perm]:
    """Map each orbit point b to u with u(point) = b."""
    t = {point: identity(n)}
    _extend_transversal(t, gens)
    return t


def _extend_transversal(t: dict[int, Perm], gens: Sequence[Perm]) -> list[int]:
    """Close t under gens in place, keeping existing entries; return new points."""
    queue = deque(t)
    added = []
    while queue:
        b = queue.popleft()
        ub = t[b]
        for s in gens:
            c = s[b]
            if c not in t:
                t[c] = compose(s, ub)
                queue.append(c)
                added.append(c)
    return added


class _BSGS:
    """Deterministic Schreier-Sims.

    Transversals only ever grow, so a Schreier generator checked once stays
    checked; ``checked[i]`` records (orbit point, generator index) pairs.
    """

    def __init__(self, n: int, gens: Sequence[Perm], base_prefix: Sequence[int] = ()):
        self.n = n
        self.base: list[int] = list(base_prefix)
        gens = [g for g in gens if not is_identity(g)]
        for g in gens:
            if all(g[b] == b for b in self.base):
                self.base.append(next(i for i in range(n) if g[i] != i))
        self.levels: list[list[Perm]] = [
            [g for g in gens if all(g[b] == b for b in self.base[:i])] for i in range(len(self.base))
        ]
        self.trans = [_transversal(self.base[i], self.levels[i], n) for i in range(len(self.base))]
        self.inv_trans = [{b: inverse(u) for b, u in t.items()} for t in self.trans]
        self.checked: list[set] = [set() for _ in self.base]
        self._build()

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for i in range(start, len(self.base)):
            ui = self.inv_trans[i].get(g[self.base[i]])
            if ui is None:
                return g, i
            g = compose(ui, g)
        return g, len(self.base)

    def _add_generator(self, r: Perm, lo: int, hi: int):
        n = self.n
        if hi == len(self.base):
            self.base.append(next(x for x in range(n) if r[x] != x))
            self.levels.append([])
            self.trans.append({self.base[-1]: identity(n)})
            self.inv_trans.append({self.base[-1]: identity(n)})
            self.checked.append(set())
        for lvl in range(lo, hi + 1):
            self.levels[lvl].append(r)
            t = self.trans[lvl]
            for b in _extend_transversal(t, self.levels[lvl]):
                self.inv_trans[lvl][b] = inverse(t[b])

    def _build(self):
        i = len(self.base) - 1
        while i >= 0:
            restart = False
            trans, inv_trans, checked = self.trans[i], self.inv_trans[i], self.checked[i]
            for b in list(trans):
                ub = trans[b]
                for k, s in enumerate(self.levels[i]):
                    if (b, k) in checked:
                        continue
                    checked.add((b, k))
                    h = compose(inv_trans[s[b]], compose(s, ub))
                    if is_identity(h):
                        continue
                    r, j = self.sift(h, i + 1)
                    if is_identity(r):
                        continue
                    self._add_generator(r, i + 1, j)
                    i = j
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1

    def order(self) -> int:
        o = 1
        for t in self.trans:
            o *= len(t)
        return o


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------


class PermGroup:
    """A permutation group given by generators, with a stabilizer chain built eagerly.

    ``label`` is set only by the family constructors and names the group
    exactly, e.g. ``("PSL", 2, 5)``; the disjointness catalogue trusts it.
    """

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = (),
                 label: Optional[tuple] = None, base_prefix: Sequence[int] = ()):
        if degree > MAX_DEGREE:
            raise ResourceLimitError(f"degree {degree} exceeds cap {MAX_DEGREE}")
        if degree < 1:
            raise DomainError("degree must be positive")
        self.degree = degree
        self.generators: tuple[Perm, ...] = tuple(_check_perm(g, degree) for g in generators)
        self.label = label
        self._bsgs = _BSGS(degree, self.generators, base_prefix)
        self._order = self._bsgs.order()
        self._elements: Optional[frozenset[Perm]] = None

    def __repr__(self):
        name = ":".join(map(str, self.label)) if self.label else "gens"
        return f"PermGroup({name}, degree={self.degree}, order={self._order})"

    def order(self) -> int:
        return self._order

    def contains(self, g: Sequence[int]) -> bool:
        g = tuple(g)
        if len(g) != self.degree:
            return False
        r, _ = self._bsgs.sift(g)
        return is_identity(r)

    __contains__ = contains

    def is_trivial(self) -> bool:
        return self._order == 1

    def nontrivial_generators(self) -> list[Perm]:
        return [g for g in self.generators if not is_identity(g)]

    def iter_elements(self) -> Iterator[Perm]:
        n = self.degree
        trans = [list(t.values()) for t in self._bsgs.trans]
        for combo in product(*trans):
            g = identity(n)
            for u in reversed(combo):
                g = compose(u, g)
            yield g

    def elements(self, cap: int = DEFAULT_ORDER_CAP) -> frozenset[Perm]:
        if self._elements is None:
            if self._order > cap:
                raise ResourceLimitError(f"group order {self._order} exceeds cap {cap}")
            self._elements = frozenset(self.iter_elements())
        return self._elements

    def random_element(self, rng) -> Perm:
        g = identity(self.degree)
        for t in self._bsgs.trans:
            g = compose(g, rng.choice(sorted(t.values())))
        return g

    def orbit(self, point: int) -> set[int]:
        return set(_transversal(point, self.generators, self.degree))

    def orbits(self) -> list[list[int]]:
        seen, out = set(), []
        for i in range(self.degree):
            if i not in seen:
                o = sorted(self.orbit(i))
                seen.update(o)
                out.append(o)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermGroup":
        pts = list(dict.fromkeys(points))
        chain = _BSGS(self.degree, self.generators, pts)
        k = len(pts)
        gens = chain.levels[k] if k < len(chain.levels) else []
        return PermGroup(self.degree, gens)

    def subgroup(self, gens: Iterable[Sequence[int]]) -> "PermGroup":
        return PermGroup(self.degree, gens)

    def normal_closure(self, xs: Iterable[Perm]) -> "PermGroup":
        gens: list[Perm] = []
        h = PermGroup(self.degree, [])
        queue = deque(x for x in xs if not is_identity(x))
        while queue:
            x = queue.popleft()
            if h.contains(x):
                continue
            gens.append(x)
            h = PermGroup(self.degree, gens)
            for g in self.generators:
                queue.append(compose(inverse(g), compose(x, g)))
        return h

    def derived_subgroup(self) -> "PermGroup":
        gs = self.generators
        comms = [compose(compose(inverse(a), inverse(b)), compose(a, b)) for a in gs for b in gs]
        return self.normal_closure(comms)


def group_order(g: PermGroup) -> int:
    return g.order()


def is_k_transitive(g: PermGroup, k: int) -> bool:
    n = g.degree
    if not 1 <= k <= n:
        raise DomainError("need 1 <= k <= degree")
    target = factorial(n) // factorial(n - k)
    if g.order() < target:
        return False
    start = tuple(range(k))
    seen = {start}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        for s in g.generators:
            u = tuple(s[x] for x in t)
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen) == target


def transitivity_degree(g: PermGroup) -> int:
    """Largest k with g k-transitive (0 if intransitive)."""
    n = g.degree
    # S_n and A_n are recognised by order alone
    if g.order() == factorial(n):
        return n
    if n >= 3 and g.order() == factorial(n) // 2:
        return n - 2
    k = 0
    while k < g.degree and is_k_transitive(g, k + 1):
        k += 1
    return k


# ---------------------------------------------------------------------------
# conjugacy classes and normal subgroups
# ---------------------------------------------------------------------------


def conjugacy_classes(g: PermGroup, order_cap: int = DEFAULT_ORDER_CAP) -> list[list[Perm]]:
    elems = sorted(g.elements(order_cap))
    gens = g.generators
    invs = [inverse(s) for s in gens]
    assigned: set[Perm] = set()
    out = []
    for x in elems:
        if x in assigned:
            continue
        cls = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for s, si in zip(gens, invs):
                z = compose(s, compose(y, si))
                if z not in cls:
                    cls.add(z)
                    queue.append(z)
        assigned |= cls
        out.append(sorted(cls))
    return out


def normal_subgroups(g: PermGroup, order_cap: int = DEFAULT_ORDER_CAP) -> list[PermGroup]:
    """All normal subgroups, sorted by order, as joins of normal closures of class reps."""
    if g.order() > order_cap:
        raise ResourceLimitError(f"group order {g.order()} exceeds cap {order_cap}")
    found: dict[frozenset, PermGroup] = {}
    trivial = PermGroup(g.degree, [])
    found[trivial.elements()] = trivial
    for cls in conjugacy_classes(g, order_cap):
        if is_identity(cls[0]):
            continue
        nc = g.normal_closure([cls[0]])
        found.setdefault(nc.elements(order_cap), nc)
    changed = True
    while changed:
        changed = False
        groups = list(found.values())
        for i, a in enumerate(groups):
            for b in groups[i + 1:]:
                ea, eb = a.elements(order_cap), b.elements(order_cap)
                if ea <= eb or eb <= ea:
                    continue
                j = PermGroup(g.degree, a.generators + b.generators)
                key = j.elements(order_cap)
                if key not in found:
                    found[key] = j
                    changed = True
    return sorted(found.values(), key=lambda h: (h.order(), sorted(h.elements())))


# ---------------------------------------------------------------------------
# quotients
# ---------------------------------------------------------------------------


def coset_partition(g: PermGroup, n_sub: PermGroup, order_cap: int = DEFAULT_ORDER_CAP) -> dict[Perm, int]:
    """Map each element of g to the index of its coset x N (N normal, so = N x)."""
    nel = list(n_sub.elements(order_cap))
    index: dict[Perm, int] = {}
    k = 0
    for x in sorted(g.elements(order_cap)):
        if x in index:
            continue
        for m in nel:
            index[compose(x, m)] = k
        k += 1
    return index


def _quotient_order_histogram(g: PermGroup, nset: frozenset, order_cap: int) -> dict[int, int]:
    hist: Counter = Counter()
    for x in g.elements(order_cap):
        k, y = 1, x
        while y not in nset:
            y = compose(x, y)
            k += 1
        hist[k] += 1
    size = len(nset)
    return {k: v // size for k, v in sorted(hist.items())}


@dataclass(frozen=True)
class QuotientFingerprint:
    order: int
    order_histogram: tuple[tuple[int, int], ...]
    abelianization_order: int
    abelianization_histogram: tuple[tuple[int, int], ...]

    @property
    def abelian(self) -> bool:
        return self.abelianization_order == self.order

    def describe(self) -> str:
        if self.abelian:
            exps = dict(self.order_histogram)
            if self.order in exps:
                return f"C{self.order}"
            return f"abelian of order {self.order}"
        return f"non-abelian of order {self.order}"


def quotient_fingerprint(g: PermGroup, n_sub: PermGroup, order_cap: int = DEFAULT_ORDER_CAP,
                         derived: Optional[PermGroup] = None) -> QuotientFingerprint:
    nset = n_sub.elements(order_cap)
    derived = derived if derived is not None else g.derived_subgroup()
    nd = PermGroup(g.degree, n_sub.generators + derived.generators)
    return QuotientFingerprint(
        g.order() // n_sub.order(),
        tuple(_quotient_order_histogram(g, nset, order_cap).items()),
        g.order() // nd.order(),
        tuple(_quotient_order_histogram(g, nd.elements(order_cap), order_cap).items()),
    )


def quotient_table(g: PermGroup, n_sub: PermGroup, order_cap: int = DEFAULT_ORDER_CAP) -> list[list[int]]:
    """Multiplication table of g/N with coset 0 the identity coset."""
    index = coset_partition(g, n_sub, order_cap)
    q = g.order() // n_sub.order()
    reps: list[Optional[Perm]] = [None] * q
    for x, k in index.items():
        if reps[k] is None:
            reps[k] = x
    return [[index[compose(reps[a], reps[b])] for b in range(q)] for a in range(q)]


def _table_orders(t: list[list[int]]) -> list[int]:
    out = []
    for a in range(len(t)):
        k, y = 1, a
        while y != 0:
            y = t[y][a]
            k += 1
        out.append(k)
    return out


def _generated(t, gens) -> set[int]:
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = t[x][s]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def _small_generating_set(t) -> list[int]:
    orders = _table_orders(t)
    gens: list[int] = []
    span = {0}
    for a in sorted(range(len(t)), key=lambda a: -orders[a]):
        if a not in span:
            gens.append(a)
            span = _generated(t, gens)
            if len(span) == len(t):
                break
    return gens


def tables_isomorphic(t1, t2, budget: int = 200000) -> Optional[bool]:
    """Decide isomorphism of two groups given by multiplication tables.

    Returns None if the backtracking budget runs out.
    """
    if len(t1) != len(t2):
        return False
    o1, o2 = _table_orders(t1), _table_orders(t2)
    if sorted(o1) != sorted(o2):
        return False
    gens = _small_generating_set(t1)
    steps = 0

    def extend(images: list[int]) -> Optional[dict[int, int]]:
        k = len(images)
        phi = {0: 0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for s, hs in zip(gens[:k], images):
                y, hy = t1[x][s], t2[phi[x]][hs]
                if y in phi:
                    if phi[y] != hy:
                        return None
                else:
                    phi[y] = hy
                    queue.append(y)
        if len(set(phi.values())) != len(phi):
            return None
        return phi

    def search(images: list[int]) -> Optional[bool]:
        nonlocal steps
        steps += 1
        if steps > budget:
            return None
        phi = extend(images)
        if phi is None:
            return False
        if len(images) == len(gens):
            return len(phi) == len(t1)
        want = o1[gens[len(images)]]
        undecided = False
        for cand in range(len(t2)):
            if o2[cand] != want:
                continue
            r = search(images + [cand])
            if r:
                return True
            if r is None:
                undecided = True
        return None if undecided else False

    return search([])


# ---------------------------------------------------------------------------
# disjointness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DisjointnessVerdict:
    status: str  # "Disjoint" | "NotDisjoint" | "Unknown"
    reason: str
    witness: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"status": self.status, "reason": self.reason, "witness": self.witness}


def catalogue_id(g: PermGroup) -> Optional[tuple]:
    """Exact identification: constructor labels, or S_n / A_n recognized by order."""
    if g.label and g.label[0] in ("S", "A", "PSL", "PGL"):
        return g.label
    n = g.degree
    if g.order() == factorial(n):
        return ("S", n)
    if n >= 2 and g.order() * 2 == factorial(n):
        return ("A", n)
    return None


def _catalogue_rule(a: tuple, b: tuple) -> Optional[DisjointnessVerdict]:
    for x, y in ((a, b), (b, a)):
        if x == ("S", 3) and y == ("A", 3):
            return DisjointnessVerdict("Disjoint", "catalogue: S_3 and A_3")
        if x[0] == "S" and y[0] == "A" and y[1] >= 5:
            return DisjointnessVerdict("Disjoint", f"catalogue: S_{x[1]} and simple A_{y[1]}")
        if x[0] == "A" and y[0] == "A" and x[1] != y[1] and y[1] >= 5:
            return DisjointnessVerdict("Disjoint", f"catalogue: A_{x[1]} and simple A_{y[1]}, distinct degrees")
        if x[0] == "PSL" and y[0] == "PGL" and x[1:] == y[1:]:
            d, q = x[1], x[2]
            if d > 1 and (d, q) not in ((2, 2), (2, 3)) and gcd(d, q - 1) > 1:
                return DisjointnessVerdict(
                    "Disjoint",
                    f"catalogue: PSL({d},{q}) simple, PGL({d},{q})/PSL({d},{q}) cyclic of order {gcd(d, q - 1)}",
                )
        if x[0] == "S" and y[0] == "S" and x[1] >= 2 and y[1] >= 2:
            return DisjointnessVerdict(
                "NotDisjoint", "catalogue: both symmetric, common sign quotient",
                {"quotient_order": 2, "quotient": "C2"},
            )
    return None


def are_disjoint(g1: PermGroup, g2: PermGroup, order_cap: int = DEFAULT_ORDER_CAP,
                 use_catalogue: bool = True) -> DisjointnessVerdict:
    """Decide whether g1 and g2 share a nontrivial quotient (up to isomorphism)."""
    if g1.is_trivial() or g2.is_trivial():
        return DisjointnessVerdict("Disjoint", "a trivial group has no nontrivial quotient")
    if use_catalogue:
        a, b = catalogue_id(g1), catalogue_id(g2)
        if a and b:
            v = _catalogue_rule(a, b)
            if v is not None:
                return v
    if g1.order() > order_cap or g2.order() > order_cap:
        return DisjointnessVerdict("Unknown", f"group order exceeds cap {order_cap} and no catalogue rule applies")
    return _brute_force_disjoint(g1, g2, order_cap)


def _brute_force_disjoint(g1: PermGroup, g2: PermGroup, order_cap: int) -> DisjointnessVerdict:
    def quotients(g):
        der = g.derived_subgroup()
        out = []
        for nsub in normal_subgroups(g, order_cap):
            if nsub.order() < g.order():
                out.append((nsub, quotient_fingerprint(g, nsub, order_cap, der)))
        return sorted(out, key=lambda item: item[1].order)

    q1, q2 = quotients(g1), quotients(g2)
    undecided = []
    for n1, f1 in q1:
        for n2, f2 in q2:
            if f1 != f2:
                continue
            witness = {"quotient_order": f1.order, "quotient": f1.describe(),
                       "kernel_orders": [n1.order(), n2.order()]}
            if f1.abelian:
                # finite abelian groups are determined by their element-order counts
                return DisjointnessVerdict("NotDisjoint", "common abelian quotient", witness)
            if f1.order > ISO_SEARCH_LIMIT:
                undecided.append(f1.order)
                continue
            iso = tables_isomorphic(quotient_table(g1, n1, order_cap), quotient_table(g2, n2, order_cap))
            if iso:
                return DisjointnessVerdict("NotDisjoint", "isomorphic quotients found by explicit search", witness)
            if iso is None:
                undecided.append(f1.order)
    if undecided:
        return DisjointnessVerdict(
            "Unknown", "quotients with matching fingerprints could not be separated",
            {"undecided_quotient_orders": sorted(set(undecided))},
        )
    return DisjointnessVerdict(
        "Disjoint", "every pair of nontrivial quotients is non-isomorphic",
        {"quotient_orders": [sorted({f.order for _, f in q1}), sorted({f.order for _, f in q2})]},
    )


# ---------------------------------------------------------------------------
# Goursat
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GoursatData:
    h1: PermGroup
    h2: PermGroup
    quotient_order: int
    reconstruction_verified: bool


def _restrict(g: Perm, lo: int, hi: int) -> Perm:
    return tuple(g[i] - lo for i in range(lo, hi))


def goursat_decompose(h: PermGroup, g1: PermGroup, g2: PermGroup,
                      order_cap: int = DEFAULT_ORDER_CAP) -> GoursatData:
    """Kernels and matched quotient of a subdirect product h <= g1 x g2.

    ``h`` acts on ``g1.degree + g2.degree`` points, the first block carrying g1.
    """
    n1, n2 = g1.degree, g2.degree
    if h.degree != n1 + n2:
        raise PreconditionError("h must act on the disjoint union of the two point sets")
    for gen in h.generators:
        if any(gen[i] >= n1 for i in range(n1)):
            raise PreconditionError("h does not preserve the two blocks")
    p1 = PermGroup(n1, [_restrict(x, 0, n1) for x in h.generators])
    p2 = PermGroup(n2, [_restrict(x, n1, n1 + n2) for x in h.generators])
    if p1.order() != g1.order() or not all(g1.contains(x) for x in p1.generators):
        raise PreconditionError("projection to the first factor is not surjective")
    if p2.order() != g2.order() or not all(g2.contains(x) for x in p2.generators):
        raise PreconditionError("projection to the second factor is not surjective")

    k2 = h.pointwise_stabilizer(range(n1, n1 + n2))  # ker pr2 = H1 x 1
    k1 = h.pointwise_stabilizer(range(n1))           # ker pr1 = 1 x H2
    h1 = PermGroup(n1, [_restrict(x, 0, n1) for x in k2.generators])
    h2 = PermGroup(n2, [_restrict(x, n1, n1 + n2) for x in k1.generators])
    q1, q2 = g1.order() // h1.order(), g2.order() // h2.order()
    if q1 != q2 or h.order() != h1.order() * h2.order() * q1:
        raise AssertionError("Goursat counting identity failed")  # pragma: no cover

    c1 = coset_partition(g1, h1, order_cap)
    c2 = coset_partition(g2, h2, order_cap)
    gamma: dict[int, int] = {}
    helems = h.elements(order_cap)
    ok = True
    for x in helems:
        a, b = c1[_restrict(x, 0, n1)], c2[_restrict(x, n1, n1 + n2)]
        if gamma.setdefault(a, b) != b:
            ok = False
    ok = ok and len(gamma) == q1 and len(set(gamma.values())) == q1
    if ok:
        by_coset2: dict[int, list[Perm]] = {}
        for y, k in c2.items():
            by_coset2.setdefault(k, []).append(y)
        preimage = {
            x + tuple(v + n1 for v in y)
            for x, k in c1.items()
            for y in by_coset2[gamma[k]]
        }
        ok = preimage == helems
    return GoursatData(h1, h2, q1, ok)


def direct_product(g1: PermGroup, g2: PermGroup) -> PermGroup:
    n1, n2 = g1.degree, g2.degree
    gens = [x + tuple(range(n1, n1 + n2)) for x in g1.generators]
    gens += [tuple(range(n1)) + tuple(v + n1 for v in y) for y in g2.generators]
    return PermGroup(n1 + n2, gens)


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------


def symmetric_group(n: int) -> PermGroup:
    gens = []
    if n >= 2:
        gens = [from_cycles(n, [(0, 1)]), from_cycles(n, [tuple(range(n))])]
    return PermGroup(n, gens, label=("S", n))


def alternating_group(n: int) -> PermGroup:
    gens = [from_cycles(n, [(0, 1, i)]) for i in range(2, n)]
    return PermGroup(n, gens, label=("A", n))


def cyclic_group(n: int) -> PermGroup:
    return PermGroup(n, [from_cycles(n, [tuple(range(n))])] if n > 1 else [], label=("C", n))


def projective_points(d: int, q: int) -> list[tuple[int, ...]]:
    """Points of P^{d-1}(F_q), last nonzero coordinate 1, lexicographic order."""
    pts = []
    for v in product(range(q), repeat=d):
        nz = [c for c in v if c]
        if nz and nz[-1] == 1:
            pts.append(v)
    return pts


def _matrix_action(mats, d: int, q: int) -> list[Perm]:
    k = gf_field(q)
    pts = projective_points(d, q)
    index = {p: i for i, p in enumerate(pts)}
    if len(pts) > MAX_DEGREE:
        raise ResourceLimitError(f"{len(pts)} projective points exceed cap {MAX_DEGREE}")
    out = []
    for m in mats:
        img = []
        for v in pts:
            w = []
            for row in m:
                acc = 0
                for a, b in zip(row, v):
                    acc = k.add[acc][k.mul[a][b]]
                w.append(acc)
            last = next(c for c in reversed(w) if c)
            inv = k.inv[last]
            img.append(index[tuple(k.mul[c][inv] for c in w)])
        out.append(tuple(img))
    return out


def _sl_generators(d: int, q: int):
    k = gf_field(q)
    mats = []
    for i in range(d):
        for j in range(d):
            if i != j:
                for lam in k.additive_basis:
                    m = [[1 if r == c else 0 for c in range(d)] for r in range(d)]
                    m[i][j] = lam
                    mats.append(m)
    return mats


def _check_pq(d: int, q: int):
    if d < 2:
        raise DomainError("projective groups need d >= 2")
    gf_field(q)  # raises DomainError for non-prime-powers
    if (q**d - 1) // (q - 1) > MAX_DEGREE:
        raise ResourceLimitError(f"P^{d - 1}(F_{q}) has more than {MAX_DEGREE} points")


def psl(d: int, q: int) -> PermGroup:
    _check_pq(d, q)
    return PermGroup((q**d - 1) // (q - 1), _matrix_action(_sl_generators(d, q), d, q), label=("PSL", d, q))


def pgl(d: int, q: int) -> PermGroup:
    _check_pq(d, q)
    k = gf_field(q)
    diag = [[1 if r == c else 0 for c in range(d)] for r in range(d)]
    diag[0][0] = k.primitive
    mats = _sl_generators(d, q) + [diag]
    return PermGroup((q**d - 1) // (q - 1), _matrix_action(mats, d, q), label=("PGL", d, q))


def agl1(q: int) -> PermGroup:
    k = gf_field(q)
    if q > MAX_DEGREE:
        raise ResourceLimitError(f"{q} points exceed cap {MAX_DEGREE}")
    gens = [tuple(k.mul[k.primitive][x] for x in range(q))]
    gens += [tuple(k.add[lam][x] for x in range(q)) for lam in k.additive_basis]
    return PermGroup(q, gens, label=("AGL", 1, q))


_FAMILIES = {
    "S": (symmetric_group, 1), "A": (alternating_group, 1), "C": (cyclic_group, 1),
    "AGL": (lambda d, q: agl1(q) if d == 1 else _no_agl(d), 2),
    "PSL": (psl, 2), "PGL": (pgl, 2),
}


def _no_agl(d):
    raise DomainError("only AGL(1,q) is constructed")


def construct_family(name: str, *params: int) -> PermGroup:
    key = name.upper()
    if key not in _FAMILIES:
        raise DomainError(f"unknown family {name!r}")
    fn, arity = _FAMILIES[key]
    if len(params) != arity:
        raise DomainError(f"family {name} takes {arity} parameter(s)")
    if key in ("S", "A", "C") and params[0] > MAX_DEGREE:
        raise ResourceLimitError(f"degree {params[0]} exceeds cap {MAX_DEGREE}")
    if key in ("S", "A", "C") and params[0] < 1:
        raise DomainError("degree must be positive")
    return fn(*params)


def group_from_spec(spec: str) -> PermGroup:
    """Parse ``S:5``, ``PSL:2:5``, ``AGL:1:7`` or ``gens:(0 1 2)(3 4),(0 1)``."""
    spec = spec.strip()
    if spec.lower().startswith("gens:"):
        body = spec[5:]
        parts = [p for p in re.split(r",(?![^()]*\))", body) if p.strip()]
        if not parts:
            raise ValueError("gens: needs at least one permutation")
        perms = [parse_perm(p) for p in parts]
        n = max(len(p) for p in perms)
        perms = [p + tuple(range(len(p), n)) for p in perms]
        if n < 1:
            raise ValueError("empty permutation list")
        return PermGroup(n, perms)
    fields = spec.split(":")
    try:
        params = [int(x) for x in fields[1:]]
    except ValueError:
        raise ValueError(f"bad group spec {spec!r}") from None
    return construct_family(fields[0], *params)
