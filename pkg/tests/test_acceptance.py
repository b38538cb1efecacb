"""Acceptance criteria, one test each; run directly for a plain PASS/FAIL listing."""

import random
import sys
import time
from itertools import product
from math import factorial
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from oracles import (all_subgroups, closure, disc_oracle, factor_degrees_oracle,  # noqa: E402
                     is_simple_oracle)

from nonisog.certify import Conclusion, certify_hom_zero  # noqa: E402
from nonisog.f2 import (Niceness, classify_niceness, heart_dimension, heart_module,  # noqa: E402
                        hom_module, simplicity)
from nonisog.galois import GaloisStatus, disc_is_square, identify_sn_an  # noqa: E402
from nonisog.padic import RamificationKind, bertrand_prime, newton_polygon, ramification_evidence  # noqa: E402
from nonisog.perm import (PermGroup, are_disjoint, catalogue_id, construct_family,  # noqa: E402
                          direct_product, from_cycles, goursat_decompose, group_from_spec,
                          group_order, symmetric_group)
from nonisog.poly import (PolyModP, PolyRat, ddf_degrees, discriminant, exp_poly,  # noqa: E402
                          genus_of_curve, is_squarefree, trinomial)
from nonisog.primes import factorint  # noqa: E402

RESULTS: dict[int, str] = {}


def _timed(fn, *args):
    t = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t


def criterion_1():
    bad = []
    for n in range(3, 11):
        v, dt = _timed(identify_sn_an, trinomial(n), 100)
        if v.status is not GaloisStatus.SN_PROVEN or dt >= 5:
            bad.append((n, v.status.value, round(dt, 2)))
    return not bad, f"x^n-x-1 SnProven for n=3..10 under 5s; failures={bad}"


def criterion_2():
    bad = [n for n in range(3, 9)
           if disc_is_square(exp_poly(n) * factorial(n)) != (n % 4 == 0)]
    return not bad, f"disc(n!*exp_n) square iff 4|n for n=3..8; failures={bad}"


def criterion_3():
    bad = []
    for n in range(3, 11):
        if heart_dimension(n) != (n - 1 if n % 2 else n - 2):
            bad.append(("dim", n))
    cases = {f"{k}:{n}": 1 for k in "SA" for n in range(5, 9)}
    cases.update({"A:3": 2, "A:4": 2})
    for spec, end in cases.items():
        m = heart_module(group_from_spec(spec))
        nv, ev = simplicity(m, method="norton"), simplicity(m, method="exhaustive")
        if not (nv.simple and ev.simple and nv.endomorphism_dimension == end):
            bad.append(spec)
        if end == 1 and not nv.absolutely_simple:
            bad.append((spec, "absolute"))
    m = heart_module(group_from_spec("C:4"))
    if simplicity(m, method="norton").simple or simplicity(m, method="exhaustive").simple:
        bad.append("C:4")
    if is_simple_oracle([a.to_lists() for a in m.matrices]):
        bad.append("C:4 oracle")
    return not bad, f"heart dimensions, simplicity and End dims; Norton = exhaustive; failures={bad}"


def criterion_4():
    expected = {"PSL:2:5": Niceness.NICE_NOT_VERY_NICE, "PSL:2:11": Niceness.NICE_NOT_VERY_NICE,
                "PSL:2:13": Niceness.NICE_NOT_VERY_NICE, "PGL:2:5": Niceness.VERY_NICE}
    bad = []
    for spec, want in expected.items():
        v, dt = _timed(classify_niceness, group_from_spec(spec))
        if v.verdict is not want or dt >= 10:
            bad.append((spec, v.verdict.value, round(dt, 2)))
    return not bad, f"PSL(2,5/11/13) NiceNotVeryNice, PGL(2,5) VeryNice, each < 10s; failures={bad}"


def criterion_5():
    w1 = ["A:3", "A:4", "S:3", "S:4", "S:5", "A:5", "PSL:2:5"]
    w2 = ["S:3", "S:4", "S:5", "A:5"]
    good = bad = 0
    failures = []
    for s1 in w1:
        m1 = heart_module(group_from_spec(s1))
        for s2 in w2:
            m2 = heart_module(group_from_spec(s2))
            if not (simplicity(m1).simple and simplicity(m2).absolutely_simple):
                continue
            good += 1
            if not simplicity(hom_module(m1, m2)).simple:
                failures.append((s1, s2))
    m1 = heart_module(group_from_spec("C:4"))
    assert not simplicity(m1).simple
    for s2 in ["S:3", "S:4", "S:5", "A:5"]:
        bad += 1
        if simplicity(hom_module(m1, heart_module(group_from_spec(s2)))).simple:
            failures.append(("C:4", s2))
    ok = good >= 12 and bad >= 3 and not failures
    return ok, f"{good} satisfying pairs simple, {bad} violating pairs not simple; failures={failures}"


def criterion_6():
    bad = []
    for n in (5, 6, 7, 8):
        p = bertrand_prime(genus_of_curve(n))
        if p not in newton_polygon(exp_poly(n), p).denominators():
            bad.append(("exp", n, p))
    for n in (5, 6, 7):
        f = trinomial(n)
        for p in factorint(abs(int(discriminant(f)))):
            e = ramification_evidence(f, p)
            if e.kind not in (RamificationKind.UNRAMIFIED, RamificationKind.UPPER_BOUND_TWO):
                bad.append(("trinomial", n, p, e.kind.value))
    return not bad, f"Bertrand-prime slopes for exp_5..8; trinomial discriminant primes <= 2; failures={bad}"


def criterion_7():
    cases = [(trinomial(5), trinomial(7), "CorNneM", Conclusion.HOM_ZERO),
             (trinomial(7), exp_poly(7), "CorNeqM", Conclusion.HOM_ZERO),
             (trinomial(5), trinomial(5), None, Conclusion.NOT_APPLICABLE)]
    bad = []
    for f, h, thm, concl in cases:
        c1, dt = _timed(certify_hom_zero, f, h)
        c2 = certify_hom_zero(f, h)
        if c1.theorem != thm or c1.conclusion is not concl or dt >= 30 or c1.to_json() != c2.to_json():
            bad.append((str(f), str(h), c1.theorem, c1.conclusion.value, round(dt, 2)))
    return not bad, f"three end-to-end certificates, byte-stable; failures={bad}"


def criterion_8():
    s3 = symmetric_group(3)
    elems = closure(direct_product(s3, s3).generators, 6)
    ident = (0, 1, 2)
    subdirect = [h for h in all_subgroups(elems, 6)
                 if len({x[:3] for x in h}) == 6 and len({x[3:] for x in h}) == 6]
    bad = []
    for h in subdirect:
        data = goursat_decompose(PermGroup(6, sorted(h)), s3, s3)
        k1 = {x[:3] for x in h if x[3:] == (3, 4, 5)}
        k2 = {tuple(v - 3 for v in x[3:]) for x in h if x[:3] == ident}
        k1_got = closure(data.h1.generators, 3) if data.h1.generators else {ident}
        k2_got = closure(data.h2.generators, 3) if data.h2.generators else {ident}
        if not data.reconstruction_verified or k1 != k1_got or k2 != k2_got \
                or data.quotient_order != 6 // len(k1):
            bad.append(len(h))
    t, c = from_cycles(3, [(0, 1)]), from_cycles(3, [(0, 1, 2)])
    shift = lambda p: tuple(v + 3 for v in p)  # noqa: E731
    diag = PermGroup(6, [c + (3, 4, 5), ident + shift(c), t + shift(t)])
    d = goursat_decompose(diag, s3, s3)
    diag_ok = catalogue_id(d.h1) == catalogue_id(d.h2) == ("A", 3) and d.quotient_order == 2
    ok = len(subdirect) == 8 and not bad and diag_ok
    return ok, f"{len(subdirect)} subdirect subgroups of S3xS3 round-trip; sign diagonal ok={diag_ok}; failures={bad}"


def criterion_9():
    pairs = [(("S", 3), ("A", 3), "Disjoint"), (("S", 6), ("A", 5), "Disjoint"),
             (("A", 5), ("A", 6), "Disjoint"), (("PSL", 2, 5), ("PGL", 2, 5), "Disjoint"),
             (("S", 3), ("S", 4), "NotDisjoint")]
    bad = []
    for a, b, want in pairs:
        g1, g2 = construct_family(*a), construct_family(*b)
        cat, brute = are_disjoint(g1, g2), are_disjoint(g1, g2, use_catalogue=False)
        if cat.status != want or brute.status != want:
            bad.append((a, b, cat.status, brute.status))
        if want == "NotDisjoint" and not (cat.witness["quotient_order"] == 2
                                          and brute.witness["quotient_order"] == 2):
            bad.append((a, b, "witness"))
    return not bad, f"catalogue and brute force agree on the five pairs, C2 witness; failures={bad}"


FIXTURES = ["S:3", "S:4", "S:5", "S:6", "S:7", "A:3", "A:4", "A:5", "A:6", "A:7", "C:4", "C:5",
            "AGL:1:7", "PSL:2:5", "PGL:2:5", "PSL:2:7", "PGL:2:7", "PSL:3:2", "PSL:2:8",
            "PSL:2:9", "PSL:2:11", "PSL:2:13", "PGL:2:11", "gens:(0 1 2 3),(0 2)"]


def criterion_10():
    bad = []
    for spec in FIXTURES:
        g = group_from_spec(spec)
        if g.order() <= 5040 and group_order(g) != len(closure(g.generators, g.degree)):
            bad.append(spec)
    checked = 0
    rng = random.Random(10)
    for p in (2, 3, 5, 7):
        if p <= 3:
            cands = [list(t) + [1] for d in range(1, 7) for t in product(range(p), repeat=d)]
        else:
            cands = [[rng.randrange(p) for _ in range(d)] + [1]
                     for d in (rng.randint(1, 6) for _ in range(150))]
        for coeffs in cands:
            f = PolyModP(p, coeffs)
            if not is_squarefree(f):
                continue
            got = sorted(d for d, k in ddf_degrees(f).items() for _ in range(k))
            if got != factor_degrees_oracle(coeffs, p):
                bad.append((p, coeffs))
            checked += 1
    rng = random.Random(20261015)
    for _ in range(50):
        deg = rng.randint(1, 6)
        coeffs = [rng.randint(-9, 9) for _ in range(deg)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
        if discriminant(PolyRat(coeffs)) != disc_oracle(coeffs):
            bad.append(coeffs)
    return not bad, f"group orders, {checked} DDF factorizations, 50 discriminants vs oracles; failures={bad}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def _check(k):
    ok, detail = CRITERIA[k - 1]()
    line = f"criterion {k:2d} {'PASS' if ok else 'FAIL'}: {detail}"
    RESULTS[k] = line
    print(line)
    assert ok, line


def test_criterion_01_galois_trinomials():
    _check(1)


def test_criterion_02_schur_parity():
    _check(2)


def test_criterion_03_heart_tables():
    _check(3)


def test_criterion_04_taxonomy():
    _check(4)


def test_criterion_05_hom_simplicity():
    _check(5)


def test_criterion_06_newton_polygons():
    _check(6)


def test_criterion_07_certificates():
    _check(7)


def test_criterion_08_goursat():
    _check(8)


def test_criterion_09_disjointness():
    _check(9)


def test_criterion_10_oracles():
    _check(10)


if __name__ == "__main__":
    failed = 0
    for k, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        failed += not ok
        print(f"criterion {k:2d} {'PASS' if ok else 'FAIL'}: {detail}")
    sys.exit(1 if failed else 0)
