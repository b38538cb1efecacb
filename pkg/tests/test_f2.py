import pytest
from hypothesis import given, strategies as st

from nonisog.errors import DomainError
from nonisog.f2 import (F2Module, MatF2, Niceness, charpoly, classify_niceness,
                        endomorphism_dimension, heart_dimension, heart_matrix, heart_module,
                        hom_module, simplicity, trivial_module)
from nonisog.perm import compose, cycle_type, group_from_spec

from oracles import endo_dim_oracle, is_simple_oracle

square = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=n, max_size=n))


def _mul_lists(a, b):
    return [[sum(a[i][k] & b[k][j] for k in range(len(b))) & 1 for j in range(len(b[0]))]
            for i in range(len(a))]


@given(square, st.data())
def test_matmul_matches_lists(a, data):
    n = len(a)
    b = data.draw(st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n),
                           min_size=n, max_size=n))
    assert (MatF2.from_lists(a) @ MatF2.from_lists(b)).to_lists() == _mul_lists(a, b)
    s = (MatF2.from_lists(a) + MatF2.from_lists(b)).to_lists()
    assert s == [[x ^ y for x, y in zip(r, t)] for r, t in zip(a, b)]


@given(square)
def test_inverse_rank_kernel(a):
    m = MatF2.from_lists(a)
    n = m.nrows
    assert m.rank() + len(m.kernel()) == n
    assert all(m.apply(v) == 0 for v in m.kernel())
    if m.is_invertible():
        assert m @ m.inverse() == MatF2.identity(n)
    assert m.transpose().transpose() == m


@given(square)
def test_cayley_hamilton(a):
    m = MatF2.from_lists(a)
    cp = charpoly(m)
    n = m.nrows
    assert cp.bit_length() - 1 == n
    acc = MatF2.zero(n, n)
    power = MatF2.identity(n)
    for i in range(n + 1):
        if cp >> i & 1:
            acc = acc + power
        power = power @ m
    assert acc == MatF2.zero(n, n)


def test_a3_heart_example():
    g = group_from_spec("A:3")
    assert heart_matrix(g.generators[0]).to_lists() in ([[0, 1], [1, 1]], [[1, 1], [1, 0]])
    assert heart_matrix((1, 2, 0)).to_lists() == [[0, 1], [1, 1]]


@pytest.mark.parametrize("n,d", [(3, 2), (4, 2), (5, 4), (6, 4), (7, 6), (8, 6), (9, 8), (10, 8)])
def test_heart_dimensions(n, d):
    assert heart_dimension(n) == d
    assert heart_module(group_from_spec(f"S:{n}")).dimension == d


def test_heart_dimension_domain():
    with pytest.raises(DomainError):
        heart_dimension(2)


@given(st.integers(3, 9).flatmap(lambda n: st.tuples(
    st.permutations(list(range(n))).map(tuple), st.permutations(list(range(n))).map(tuple))))
def test_heart_is_a_representation(pq):
    p, q = pq
    assert heart_matrix(compose(p, q)) == heart_matrix(p) @ heart_matrix(q)


@given(st.integers(3, 10).flatmap(lambda n: st.permutations(list(range(n))).map(tuple)))
def test_heart_trace_counts_fixed_points(p):
    # trace on sum-zero vectors (odd n) or their quotient by the all-ones line (even n)
    n = len(p)
    fixed = cycle_type(p).count(1)
    m = heart_matrix(p)
    trace = sum(m.rows[i] >> i & 1 for i in range(m.nrows)) & 1
    assert trace == (fixed - 1) % 2 if n % 2 else trace == fixed % 2


SIMPLE_END = {"S:3": 1, "S:4": 1, "S:5": 1, "S:6": 1, "S:7": 1, "S:8": 1, "A:5": 1,
              "A:6": 1, "A:7": 1, "A:8": 1, "A:3": 2, "A:4": 2}


@pytest.mark.parametrize("spec", sorted(SIMPLE_END))
def test_heart_simplicity_both_methods(spec):
    m = heart_module(group_from_spec(spec))
    norton = simplicity(m, method="norton")
    exhaustive = simplicity(m, method="exhaustive")
    assert norton.simple and exhaustive.simple
    assert norton.endomorphism_dimension == SIMPLE_END[spec]
    if m.dimension <= 8:
        assert is_simple_oracle([a.to_lists() for a in m.matrices])


@pytest.mark.parametrize("spec", ["A:3", "A:4", "S:3", "S:4", "C:4", "S:5", "A:5", "PSL:2:5"])
def test_endomorphism_dimension_oracle(spec):
    m = heart_module(group_from_spec(spec))
    if m.dimension > 4:
        pytest.skip("oracle enumerates all d x d matrices")
    assert endomorphism_dimension(m) == endo_dim_oracle([a.to_lists() for a in m.matrices])


def test_cyclic_heart_not_simple():
    m = heart_module(group_from_spec("C:4"))
    assert not is_simple_oracle([a.to_lists() for a in m.matrices])
    for method in ("norton", "exhaustive"):
        assert not simplicity(m, method=method).simple


def test_dual_has_same_simplicity():
    for spec in ("S:5", "A:4", "C:5", "PSL:2:7", "AGL:1:7"):
        m = heart_module(group_from_spec(spec))
        dual = F2Module(m.dimension, tuple(a.inverse().transpose() for a in m.matrices))
        assert simplicity(m).simple == simplicity(dual).simple
        assert simplicity(m).endomorphism_dimension == simplicity(dual).endomorphism_dimension


W1 = ["A:3", "A:4", "S:3", "S:4", "S:5", "A:5", "PSL:2:5"]
W2 = ["S:3", "S:4", "S:5", "A:5"]


def test_hom_of_simple_and_absolutely_simple_is_simple():
    satisfied = 0
    for s1 in W1:
        m1 = heart_module(group_from_spec(s1))
        assert simplicity(m1).simple
        for s2 in W2:
            m2 = heart_module(group_from_spec(s2))
            assert simplicity(m2).absolutely_simple
            hom = hom_module(m1, m2)
            assert hom.dimension == m1.dimension * m2.dimension
            assert simplicity(hom).simple
            if hom.dimension <= 8:
                assert is_simple_oracle([a.to_lists() for a in hom.matrices])
            satisfied += 1
    assert satisfied >= 12


def test_hom_with_non_simple_source_is_not_simple():
    m1 = heart_module(group_from_spec("C:4"))
    for s2 in ["S:3", "S:4", "A:5"]:
        hom = hom_module(m1, heart_module(group_from_spec(s2)))
        assert not simplicity(hom).simple
        if hom.dimension <= 8:
            assert not is_simple_oracle([a.to_lists() for a in hom.matrices])


def test_hom_from_trivial():
    assert simplicity(hom_module(trivial_module(), heart_module(group_from_spec("S:5")))).simple


def test_singular_generator_rejected():
    with pytest.raises(DomainError):
        F2Module(2, (MatF2.from_lists([[1, 1], [1, 1]]),))


def test_unknown_method():
    with pytest.raises(ValueError):
        simplicity(trivial_module(), method="magic")


@pytest.mark.parametrize("spec,verdict", [
    ("S:5", Niceness.VERY_NICE), ("A:6", Niceness.VERY_NICE), ("A:3", Niceness.NICE_NOT_VERY_NICE),
    ("A:4", Niceness.NICE_NOT_VERY_NICE), ("PSL:2:5", Niceness.NICE_NOT_VERY_NICE),
    ("PSL:2:11", Niceness.NICE_NOT_VERY_NICE), ("PSL:2:13", Niceness.NICE_NOT_VERY_NICE),
    ("PGL:2:5", Niceness.VERY_NICE), ("PSL:2:8", Niceness.VERY_NICE),
    ("PSL:2:7", Niceness.NOT_NICE), ("PSL:3:4", Niceness.NOT_NICE), ("PGL:3:4", Niceness.NOT_NICE),
    ("C:5", Niceness.NOT_NICE), ("AGL:1:7", Niceness.VERY_NICE),
])
def test_niceness(spec, verdict):
    v = classify_niceness(group_from_spec(spec))
    assert v.verdict is verdict
    assert v.evidence["caveats"] == []


def test_unlabelled_group_carries_caveat():
    v = classify_niceness(group_from_spec("gens:(0 1 2 3 4),(0 1)"))
    assert v.verdict is Niceness.VERY_NICE
    assert v.evidence["caveats"] == ["heart-criterion"]
