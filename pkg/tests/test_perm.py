import random
from math import factorial, gcd

import pytest
from hypothesis import given, strategies as st

from nonisog.errors import DomainError, PreconditionError, ResourceLimitError
from nonisog.perm import (PermGroup, agl1, alternating_group, are_disjoint, catalogue_id,
                          compose, construct_family, conjugacy_classes, cycle_type, cyclic_group,
                          direct_product, format_perm, from_cycles, goursat_decompose,
                          group_from_spec, group_order, inverse, is_k_transitive,
                          normal_subgroups, parse_perm, perm_order, pgl, projective_points, psl,
                          sign, symmetric_group, transitivity_degree)

from oracles import all_subgroups, closure

perms = st.integers(2, 8).flatmap(lambda n: st.permutations(list(range(n))).map(tuple))


def _psl_order(d, q):
    o = q ** (d * (d - 1) // 2)
    for i in range(2, d + 1):
        o *= q**i - 1
    return o // gcd(d, q - 1)


FIXTURES = {
    "S3": lambda: symmetric_group(3), "S4": lambda: symmetric_group(4),
    "S5": lambda: symmetric_group(5), "S6": lambda: symmetric_group(6),
    "S7": lambda: symmetric_group(7), "A4": lambda: alternating_group(4),
    "A5": lambda: alternating_group(5), "A6": lambda: alternating_group(6),
    "A7": lambda: alternating_group(7), "C4": lambda: cyclic_group(4),
    "PSL25": lambda: psl(2, 5), "PGL25": lambda: pgl(2, 5), "PSL27": lambda: psl(2, 7),
    "PSL32": lambda: psl(3, 2), "PSL28": lambda: psl(2, 8), "PSL29": lambda: psl(2, 9),
    "PSL211": lambda: psl(2, 11), "PSL213": lambda: psl(2, 13), "AGL17": lambda: agl1(7),
    "D4": lambda: group_from_spec("gens:(0 1 2 3),(0 2)"),
}


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_group_order_matches_enumeration(name):
    g = FIXTURES[name]()
    if g.order() <= 5040:
        assert group_order(g) == len(closure(g.generators, g.degree))


@pytest.mark.parametrize("d,q", [(2, 5), (2, 7), (2, 8), (2, 9), (2, 11), (2, 13), (3, 2),
                                 (3, 3), (3, 4), (4, 2), (2, 16)])
def test_projective_orders(d, q):
    assert psl(d, q).order() == _psl_order(d, q)
    assert pgl(d, q).order() == _psl_order(d, q) * gcd(d, q - 1)
    assert psl(d, q).degree == len(projective_points(d, q)) == (q**d - 1) // (q - 1)


def test_large_symmetric_groups():
    assert symmetric_group(10).order() == factorial(10)
    assert alternating_group(8).order() == factorial(8) // 2
    assert agl1(7).order() == 42


def test_degree_cap():
    with pytest.raises(ResourceLimitError):
        construct_family("S", 65)
    with pytest.raises(ResourceLimitError):
        psl(3, 8)


def test_bad_specs():
    with pytest.raises(DomainError):
        group_from_spec("PSL:2:6")
    with pytest.raises(DomainError):
        group_from_spec("Q:3")
    with pytest.raises(ValueError):
        group_from_spec("S:x")


def test_spec_parsing():
    g = group_from_spec("gens:(0 1 2)(3 4),(0 1)")
    assert g.degree == 5 and g.order() == 12
    assert group_from_spec("S:5").label == ("S", 5)
    assert group_from_spec("PGL:3:4").order() == 60480


def test_perm_text_round_trip():
    p = from_cycles(6, [(0, 3, 5), (1, 2)])
    assert parse_perm(format_perm(p), 6) == p
    assert format_perm(tuple(range(4))) == "()"


@given(perms)
def test_inverse_and_order(p):
    n = len(p)
    ident = tuple(range(n))
    assert compose(p, inverse(p)) == ident
    q = ident
    for _ in range(perm_order(p)):
        q = compose(q, p)
    assert q == ident
    assert sum(cycle_type(p)) == n


@given(perms, st.data())
def test_sign_is_multiplicative(p, data):
    q = data.draw(st.permutations(list(range(len(p)))).map(tuple))
    assert sign(compose(p, q)) == sign(p) * sign(q)


@given(st.integers(3, 6), st.data())
def test_random_subgroup_order_matches_closure(n, data):
    gens = [data.draw(st.permutations(list(range(n))).map(tuple)) for _ in range(2)]
    g = PermGroup(n, gens)
    elems = closure(gens, n)
    assert g.order() == len(elems)
    assert all(g.contains(x) for x in list(elems)[:50])


def test_membership_rejects_outsiders():
    a5 = alternating_group(5)
    assert not a5.contains(from_cycles(5, [(0, 1)]))
    assert a5.contains(from_cycles(5, [(0, 1), (2, 3)]))


@pytest.mark.parametrize("spec,k,expected", [
    ("PGL:2:5", 3, True), ("PSL:2:5", 3, False), ("PSL:2:5", 2, True), ("AGL:1:7", 2, True),
    ("AGL:1:7", 3, False), ("C:5", 2, False), ("A:5", 3, True),
])
def test_k_transitivity(spec, k, expected):
    assert is_k_transitive(group_from_spec(spec), k) is expected


def test_transitivity_degree():
    assert transitivity_degree(symmetric_group(6)) == 6
    assert transitivity_degree(alternating_group(6)) == 4
    assert transitivity_degree(pgl(2, 5)) == 3
    assert transitivity_degree(PermGroup(4, [(1, 0, 2, 3)])) == 0


def _normal_orders_oracle(g):
    elems = closure(g.generators, g.degree)
    out = []
    for h in all_subgroups(elems, g.degree):
        if all(compose(compose(x, y), inverse(x)) in h for x in g.generators for y in h):
            out.append(len(h))
    return sorted(out)


@pytest.mark.parametrize("name", ["S3", "S4", "A4", "C4", "D4", "A5"])
def test_normal_subgroups_match_oracle(name):
    g = FIXTURES[name]()
    assert sorted(n.order() for n in normal_subgroups(g)) == _normal_orders_oracle(g)


def test_conjugacy_classes_partition():
    classes = conjugacy_classes(symmetric_group(5))
    assert sorted(len(c) for c in classes) == [1, 10, 15, 20, 20, 24, 30]


ACCEPTANCE_PAIRS = [
    (("S", 3), ("A", 3), "Disjoint"), (("S", 6), ("A", 5), "Disjoint"),
    (("A", 5), ("A", 6), "Disjoint"), (("PSL", 2, 5), ("PGL", 2, 5), "Disjoint"),
    (("S", 3), ("S", 4), "NotDisjoint"),
]


@pytest.mark.parametrize("a,b,status", ACCEPTANCE_PAIRS)
def test_catalogue_and_brute_force_agree(a, b, status):
    g1, g2 = construct_family(*a), construct_family(*b)
    cat = are_disjoint(g1, g2)
    brute = are_disjoint(g1, g2, use_catalogue=False)
    assert cat.status == brute.status == status
    assert cat.reason.startswith("catalogue")
    if status == "NotDisjoint":
        assert cat.witness["quotient_order"] == brute.witness["quotient_order"] == 2


@pytest.mark.parametrize("s1,s2,status", [
    ("S:3", "C:2", "NotDisjoint"), ("A:4", "C:3", "NotDisjoint"), ("A:4", "S:3", "Disjoint"),
    ("C:4", "C:2", "NotDisjoint"), ("C:3", "C:5", "Disjoint"), ("A:5", "PSL:2:5", "NotDisjoint"),
    ("PSL:2:7", "PSL:3:2", "NotDisjoint"), ("S:4", "C:3", "Disjoint"),
])
def test_brute_force_disjointness(s1, s2, status):
    assert are_disjoint(group_from_spec(s1), group_from_spec(s2), use_catalogue=False).status == status


def test_disjointness_unknown_beyond_cap():
    g1 = group_from_spec("gens:(0 1 2 3 4 5 6),(0 1)")  # S7 without a label
    g2 = group_from_spec("gens:(0 1 2 3 4 5 6 7),(0 1)")
    v = are_disjoint(g1, g2, order_cap=100, use_catalogue=False)
    assert v.status == "Unknown"


def _s3xs3_subdirect():
    s3 = symmetric_group(3)
    g = direct_product(s3, s3)
    elems = closure(g.generators, 6)
    out = []
    for h in all_subgroups(elems, 6):
        left = {x[:3] for x in h}
        right = {tuple(v - 3 for v in x[3:]) for x in h}
        if len(left) == 6 and len(right) == 6:
            out.append(h)
    return s3, out


def test_goursat_exhaustive():
    s3, subs = _s3xs3_subdirect()
    assert len(subs) == 8
    quotients = []
    for h in subs:
        data = goursat_decompose(PermGroup(6, sorted(h)), s3, s3)
        assert data.reconstruction_verified
        assert data.h1.order() * data.h2.order() * data.quotient_order == len(h)
        quotients.append(data.quotient_order)
    assert sorted(quotients) == [1, 2, 6, 6, 6, 6, 6, 6]


def test_goursat_sign_diagonal():
    s3 = symmetric_group(3)
    t, c = from_cycles(3, [(0, 1)]), from_cycles(3, [(0, 1, 2)])
    shift = lambda p: tuple(v + 3 for v in p)
    h = PermGroup(6, [c + tuple(range(3, 6)), tuple(range(3)) + shift(c), t + shift(t)])
    data = goursat_decompose(h, s3, s3)
    assert data.h1.order() == data.h2.order() == 3
    assert catalogue_id(data.h1) == ("A", 3)
    assert data.quotient_order == 2 and data.reconstruction_verified


def test_goursat_rejects_non_subdirect():
    s3 = symmetric_group(3)
    h = PermGroup(6, [from_cycles(6, [(0, 1)])])
    with pytest.raises(PreconditionError):
        goursat_decompose(h, s3, s3)


def test_random_elements_are_members():
    g = psl(2, 11)
    rng = random.Random(3)
    for _ in range(20):
        assert g.contains(g.random_element(rng))
