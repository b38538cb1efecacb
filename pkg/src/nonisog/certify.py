"""Hypothesis checking and certificate assembly for Hom(J(C_f), J(C_h)) = 0.

Each route lists every hypothesis of the theorem it applies, with a status
and a machine-checkable witness.  The first route whose hypotheses all hold
wins; otherwise the certificate is NotApplicable and records why each route
failed.  The supersingular branch in positive characteristic is reported,
never decided.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

from .errors import DomainError, PreconditionError
from .f2 import Niceness, classify_niceness
from .galois import DEFAULT_PRIME_BUDGET, GaloisStatus, GaloisVerdict, IrreducibilityStatus, identify_sn_an
from .padic import FieldComparison, fields_nonisomorphic_evidence
from .perm import (DEFAULT_ORDER_CAP, PermGroup, alternating_group, are_disjoint, catalogue_id,
                   symmetric_group)
from .poly import PolyRat, is_squarefree
from .primes import is_prime


class Status(str, Enum):
    PROVEN = "Proven"
    ASSERTED = "Asserted"
    FAILED = "Failed"
    UNKNOWN = "Unknown"


class Conclusion(str, Enum):
    HOM_ZERO = "HomZero"
    HOM_ZERO_OR_SUPERSINGULAR = "HomZeroOrBothSupersingular"
    NOT_APPLICABLE = "NotApplicable"


# theorem id -> statement the certificate relies on
CITATIONS = {
    "ThmEndo": "End(J(C_f)) = Z when Gal(f) is S_n or A_n, n >= 5 (n >= 9 and f separable in "
               "positive characteristic), char != 2",
    "ThmMain": "Hom(J(C_f), J(C_h)) = 0 when the splitting fields are linearly disjoint, Gal(h) is "
               "A_m or S_m, and Gal(f) is S_n, or A_n with n >= 5",
    "CorNneM": "Hom(J(C_f), J(C_h)) = 0 when n >= 5, m >= 3, Gal(f) in {S_n, A_n}, Gal(h) in "
               "{S_m, A_m}, and n != m or (Gal(f), Gal(h)) = (S_n, A_m)",
    "CorNeqM": "Hom(J(C_f), J(C_h)) = 0 when n = m >= 5, n != 6, both Galois groups are S_n or A_n "
               "and the root fields K[x]/f and K[x]/h are not isomorphic",
    "ThmMgood": "either Hom(J(C_f), J(C_h)) = 0 or char(K) > 0 and both jacobians are "
                "supersingular, when the splitting fields are linearly disjoint, f is very nice "
                "and h is nice",
    "PropDisjoint": "either Hom(J(C_f), J(C_h)) = 0 or char(K) > 0 and both jacobians are "
                    "supersingular, when Gal(f) and Gal(h) have no common nontrivial quotient, "
                    "f is very nice and h is nice",
    "GoursatSufficient": "groups with no common nontrivial quotient force the compositum's group "
                         "to be the full product, so the splitting fields are linearly disjoint",
    "ProjectiveEndo": "End(J(C_f)) = Z for Gal(f) = PSL(d,q) or PGL(d,q) acting on P^{d-1}(F_q), "
                      "q odd, d >= 3, (q,d) != (3,4)",
}

NARRATIVE_NOTE = (
    "Linear disjointness of the 2-torsion fields is only certified through the stronger "
    "sufficient condition that the splitting fields are linearly disjoint."
)


@dataclass(frozen=True)
class Hypothesis:
    name: str
    status: Status
    witness: dict = field(default_factory=dict)
    citation: str = ""

    @property
    def holds(self) -> bool:
        return self.status in (Status.PROVEN, Status.ASSERTED)

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status.value, "witness": self.witness,
                "citation": self.citation}


def _hyp(name: str, ok: bool, witness: dict | None = None, citation: str = "",
         unknown: bool = False, asserted: bool = False) -> Hypothesis:
    if ok:
        status = Status.ASSERTED if asserted else Status.PROVEN
    else:
        status = Status.UNKNOWN if unknown else Status.FAILED
    return Hypothesis(name, status, witness or {}, citation)


@dataclass(frozen=True)
class GaloisAssertion:
    """User-supplied Galois group, e.g. from a function-field computation done elsewhere."""

    description: str
    degree: int
    group: PermGroup
    provenance: str = "asserted by user"

    def __post_init__(self):
        if self.group.degree != self.degree:
            raise PreconditionError(
                f"generator degree {self.group.degree} differs from polynomial degree {self.degree}"
            )

    def to_dict(self) -> dict:
        label = ":".join(map(str, self.group.label)) if self.group.label else "gens"
        return {"description": self.description, "degree": self.degree, "group": label,
                "group_order": self.group.order(), "provenance": self.provenance}


GaloisData = Union[GaloisVerdict, GaloisAssertion]


@dataclass
class Certificate:
    theorem: Optional[str]
    inputs: dict
    hypotheses: list[Hypothesis]
    conclusion: Conclusion
    char: int
    witnesses: dict = field(default_factory=dict)
    routes: list[dict] = field(default_factory=list)

    @property
    def conditional(self) -> bool:
        return any(h.status is Status.ASSERTED for h in self.hypotheses)

    @property
    def citations(self) -> list[str]:
        ids = {self.theorem} if self.theorem else set()
        for h in self.hypotheses:
            ids.update(k for k, v in CITATIONS.items() if v == h.citation)
        return [f"{k}: {CITATIONS[k]}" for k in sorted(ids)]

    def narrative(self) -> str:
        if self.conclusion is Conclusion.NOT_APPLICABLE:
            return "No route had all hypotheses satisfied; see routes for the failing hypotheses."
        text = f"All hypotheses of {self.theorem} hold"
        text += " (some by assertion)." if self.conditional else "."
        if self.conclusion is Conclusion.HOM_ZERO_OR_SUPERSINGULAR:
            text += " The supersingular branch could not be excluded and is not evaluated."
        return text + " " + NARRATIVE_NOTE

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "inputs": self.inputs,
            "hypotheses": [h.to_dict() for h in self.hypotheses],
            "conclusion": self.conclusion.value,
            "conditional": self.conditional,
            "char_zero": self.char == 0,
            "characteristic": self.char,
            "witnesses": self.witnesses,
            "paper_citations": self.citations,
            "narrative": self.narrative(),
            "routes": self.routes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# galois data helpers
# ---------------------------------------------------------------------------


def _sa_kind(data: GaloisData) -> Optional[str]:
    """"S" or "A" when the data pins the group down as S_n or A_n."""
    if isinstance(data, GaloisVerdict):
        return {GaloisStatus.SN_PROVEN: "S", GaloisStatus.AN_PROVEN: "A"}.get(data.status)
    cid = catalogue_id(data.group)
    if cid and cid[0] in ("S", "A") and cid[1] == data.degree:
        return cid[0]
    return None


def _degree(data: GaloisData) -> int:
    return data.degree


def _group(data: GaloisData) -> Optional[PermGroup]:
    if isinstance(data, GaloisAssertion):
        return data.group
    kind = _sa_kind(data)
    if kind == "S":
        return symmetric_group(data.degree)
    if kind == "A":
        return alternating_group(data.degree)
    return None


def _galois_witness(data: GaloisData) -> dict:
    return data.to_dict()


def _gal_hyp(name: str, data: GaloisData, min_alt_degree: int = 0) -> Hypothesis:
    """Gal is S_n, or A_n with n >= min_alt_degree."""
    kind = _sa_kind(data)
    ok = kind == "S" or (kind == "A" and data.degree >= min_alt_degree)
    asserted = isinstance(data, GaloisAssertion)
    wit = {"group": f"{kind}{data.degree}" if kind else None, "status":
           data.status.value if isinstance(data, GaloisVerdict) else "Asserted"}
    unknown = kind is None and not asserted
    return _hyp(name, ok, wit, unknown=unknown, asserted=asserted)


def _irreducible_hyp(name: str, data: GaloisData) -> Hypothesis:
    if isinstance(data, GaloisAssertion):
        return _hyp(name, data.group.is_transitive(), {"transitive": data.group.is_transitive()},
                    asserted=True)
    st = data.irreducibility.status
    return _hyp(name, st is IrreducibilityStatus.IRREDUCIBLE, data.irreducibility.to_dict(),
                unknown=st is IrreducibilityStatus.UNKNOWN)


def _char_hyps(char: int, degree_f: int, separable: bool = True) -> list[Hypothesis]:
    out = [_hyp("char_not_2", char != 2, {"char": char})]
    if char > 0:
        out.append(_hyp("positive_char_degree_ge_9", degree_f >= 9, {"n": degree_f}))
        out.append(_hyp("no_multiple_roots", separable, {}, asserted=True))
    return out


# ---------------------------------------------------------------------------
# hypothesis checkers
# ---------------------------------------------------------------------------


def check_endo_trivial(f: Optional[PolyRat], galois: GaloisData, char: int = 0) -> Hypothesis:
    """End(J(C_f)) = Z gate; its conclusion rules out supersingularity."""
    n = galois.degree
    kind = _sa_kind(galois)
    wit = {"n": n, "group": f"{kind}{n}" if kind else None, "char": char,
           "excludes_supersingular": True}
    if char == 2:
        return _hyp("endo_trivial", False, wit, CITATIONS["ThmEndo"])
    if f is not None and not is_squarefree(f):
        return _hyp("endo_trivial", False, wit, CITATIONS["ThmEndo"])
    if char == 0:
        proven = isinstance(galois, GaloisVerdict) and galois.proven
        ok = n >= 5 and kind is not None
        unknown = not ok and n >= 5 and not proven
        return _hyp("endo_trivial", ok, wit, CITATIONS["ThmEndo"], unknown=unknown,
                    asserted=ok and not proven)
    if kind is not None:
        return _hyp("endo_trivial", n >= 9, wit, CITATIONS["ThmEndo"], asserted=True)
    cid = catalogue_id(galois.group) if isinstance(galois, GaloisAssertion) else None
    if cid and cid[0] in ("PSL", "PGL"):
        d, q = cid[1], cid[2]
        wit.update({"group": f"{cid[0]}({d},{q})", "d": d, "q": q})
        ok = n >= 9 and d >= 3 and q % 2 == 1 and (q, d) != (3, 4)
        return _hyp("endo_trivial", ok, wit, CITATIONS["ProjectiveEndo"], asserted=True)
    return _hyp("endo_trivial", False, wit, CITATIONS["ThmEndo"], unknown=True)


def check_linear_disjointness(gf: GaloisData, gh: GaloisData,
                              order_cap: int = DEFAULT_ORDER_CAP) -> Hypothesis:
    """Splitting fields linearly disjoint, via disjointness of the Galois groups."""
    g1, g2 = _group(gf), _group(gh)
    if g1 is None or g2 is None:
        return _hyp("splitting_fields_linearly_disjoint", False,
                    {"reason": "Galois group not determined"}, CITATIONS["GoursatSufficient"],
                    unknown=True)
    v = are_disjoint(g1, g2, order_cap)
    asserted = isinstance(gf, GaloisAssertion) or isinstance(gh, GaloisAssertion)
    return _hyp("splitting_fields_linearly_disjoint", v.status == "Disjoint", v.to_dict(),
                CITATIONS["GoursatSufficient"], unknown=v.status == "Unknown", asserted=asserted)


def _niceness_hyp(name: str, data: GaloisData, want_very: bool, seed: int) -> Hypothesis:
    g = _group(data)
    if g is None:
        return _hyp(name, False, {"reason": "Galois group not determined"}, unknown=True)
    if g.degree < 3:
        return _hyp(name, False, {"n": g.degree})
    v = classify_niceness(g, seed)
    ok = v.verdict is Niceness.VERY_NICE if want_very else v.verdict.nice
    asserted = isinstance(data, GaloisAssertion) or "heart-criterion" in v.evidence["caveats"]
    return _hyp(name, ok, v.to_dict(), unknown=v.verdict is Niceness.UNKNOWN, asserted=asserted)


# ---------------------------------------------------------------------------
# routes
# ---------------------------------------------------------------------------


def _route_nnem(f_data, h_data, char) -> list[Hypothesis]:
    n, m = f_data.degree, h_data.degree
    kf, kh = _sa_kind(f_data), _sa_kind(h_data)
    return _char_hyps(char, n) + [
        _hyp("deg_f_ge_5", n >= 5, {"n": n}),
        _hyp("deg_h_ge_3", m >= 3, {"m": m}),
        _irreducible_hyp("f_irreducible", f_data),
        _irreducible_hyp("h_irreducible", h_data),
        _gal_hyp("gal_h_is_Am_or_Sm", h_data),
        _gal_hyp("gal_f_is_Sn_or_An", f_data),
        _hyp("degrees_differ_or_Sn_vs_Am", n != m or (kf == "S" and kh == "A"),
             {"n": n, "m": m, "gal_f": kf, "gal_h": kh}),
    ]


def _route_neqm(f, h, f_data, h_data, char, budget) -> list[Hypothesis]:
    n, m = f_data.degree, h_data.degree
    hyps = _char_hyps(char, n) + [
        _hyp("equal_degrees", n == m, {"n": n, "m": m}),
        _hyp("degree_ge_5_and_not_6", n >= 5 and n != 6, {"n": n}),
        _irreducible_hyp("f_irreducible", f_data),
        _irreducible_hyp("h_irreducible", h_data),
        _gal_hyp("gal_h_is_An_or_Sn", h_data),
        _gal_hyp("gal_f_is_Sn_or_An", f_data),
    ]
    if n == m and f is not None and h is not None and all(x.holds for x in hyps):
        ev = fields_nonisomorphic_evidence(f, h, budget)
        hyps.append(_hyp("root_fields_not_isomorphic",
                         ev.status is FieldComparison.NON_ISOMORPHIC, ev.to_dict(), unknown=True))
    else:
        hyps.append(_hyp("root_fields_not_isomorphic", False, {"reason": "not evaluated"},
                         unknown=True))
    return hyps


def _route_main(f_data, h_data, char, order_cap) -> list[Hypothesis]:
    n, m = f_data.degree, h_data.degree
    return _char_hyps(char, n) + [
        _hyp("degrees_ge_3", n >= 3 and m >= 3, {"n": n, "m": m}),
        _irreducible_hyp("f_irreducible", f_data),
        _irreducible_hyp("h_irreducible", h_data),
        _gal_hyp("gal_h_is_Am_or_Sm", h_data),
        _gal_hyp("gal_f_is_Sn_or_An_n_ge_5", f_data, min_alt_degree=5),
        check_linear_disjointness(f_data, h_data, order_cap),
    ]


def _route_disjoint(f_data, h_data, char, order_cap, seed) -> list[Hypothesis]:
    n, m = f_data.degree, h_data.degree
    hyps = [_hyp("char_not_2", char != 2, {"char": char}),
            _hyp("degrees_ge_3", n >= 3 and m >= 3, {"n": n, "m": m}),
            _irreducible_hyp("f_irreducible", f_data),
            _irreducible_hyp("h_irreducible", h_data)]
    if isinstance(f_data, GaloisAssertion) or isinstance(h_data, GaloisAssertion):
        hyps.append(_hyp("no_multiple_roots", True, {}, asserted=True))
    disj = check_linear_disjointness(f_data, h_data, order_cap)
    hyps.append(Hypothesis("galois_groups_disjoint", disj.status, disj.witness,
                           CITATIONS["PropDisjoint"]))
    hyps.append(_niceness_hyp("f_very_nice", f_data, True, seed))
    hyps.append(_niceness_hyp("h_nice", h_data, False, seed))
    return hyps


def _failing(hyps: list[Hypothesis]) -> list[dict]:
    return [{"name": h.name, "status": h.status.value} for h in hyps if not h.holds]


@dataclass
class Options:
    prime_budget: int = DEFAULT_PRIME_BUDGET
    seed: int = 0
    order_cap: int = DEFAULT_ORDER_CAP


def _witnesses(f_data: GaloisData, h_data: GaloisData) -> dict:
    return {"f": _galois_witness(f_data), "h": _galois_witness(h_data)}


def _run_routes(routes, char, inputs, witnesses, endo) -> Certificate:
    tried = []
    for theorem, orientation, hyps in routes:
        failing = _failing(hyps)
        tried.append({"theorem": theorem, "orientation": orientation, "failing": failing})
        if failing:
            continue
        conclusion = Conclusion.HOM_ZERO
        all_hyps = list(hyps)
        if theorem in ("ThmMgood", "PropDisjoint") and char > 0:
            # one non-supersingular jacobian is enough to exclude the second branch
            gates = endo()
            holding = [g for g in gates if g.holds]
            if holding:
                all_hyps.append(holding[0])
            else:
                all_hyps.extend(gates)
                conclusion = Conclusion.HOM_ZERO_OR_SUPERSINGULAR
        return Certificate(theorem, dict(inputs, orientation=orientation), all_hyps, conclusion,
                           char, witnesses, tried)
    return Certificate(None, inputs, [], Conclusion.NOT_APPLICABLE, char, witnesses, tried)


def certify_hom_zero(f: PolyRat, h: PolyRat, options: Optional[Options] = None) -> Certificate:
    """Certify Hom(J(C_f), J(C_h)) = 0 over Q from the two polynomials alone."""
    opts = options or Options()
    inputs = {"f": str(f), "h": str(h)}
    bad = []
    for name, p in (("f", f), ("h", h)):
        if p.degree < 3:
            bad.append(Hypothesis(f"{name}_degree_ge_3", Status.FAILED, {"degree": p.degree}))
        elif not is_squarefree(p):
            bad.append(Hypothesis(f"{name}_squarefree", Status.FAILED, {}))
    if bad:
        return Certificate(None, inputs, bad, Conclusion.NOT_APPLICABLE, 0, {},
                           [{"theorem": "input", "orientation": "f,h", "failing": _failing(bad)}])
    f_data = identify_sn_an(f, opts.prime_budget)
    h_data = identify_sn_an(h, opts.prime_budget)
    witnesses = _witnesses(f_data, h_data)

    def routes():
        yield "CorNneM", "f,h", _route_nnem(f_data, h_data, 0)
        yield "CorNneM", "h,f", _route_nnem(h_data, f_data, 0)
        yield "CorNeqM", "f,h", _route_neqm(f, h, f_data, h_data, 0, opts.prime_budget)
        yield "ThmMain", "f,h", _route_main(f_data, h_data, 0, opts.order_cap)
        yield "ThmMain", "h,f", _route_main(h_data, f_data, 0, opts.order_cap)
        yield "PropDisjoint", "f,h", _route_disjoint(f_data, h_data, 0, opts.order_cap, opts.seed)
        yield "PropDisjoint", "h,f", _route_disjoint(h_data, f_data, 0, opts.order_cap, opts.seed)

    return _run_routes(routes(), 0, inputs, witnesses, lambda: [])


def certify_asserted(ga: GaloisAssertion, gh: GaloisAssertion, char: int,
                     options: Optional[Options] = None) -> Certificate:
    """Certificate from asserted Galois groups, e.g. over F_p(t).  Always conditional."""
    opts = options or Options()
    if char != 0 and not is_prime(char):
        raise DomainError(f"characteristic {char} is not 0 or a prime")
    inputs = {"f": ga.to_dict(), "h": gh.to_dict()}
    witnesses = {"f": ga.to_dict(), "h": gh.to_dict()}

    def routes():
        yield "PropDisjoint", "f,h", _route_disjoint(ga, gh, char, opts.order_cap, opts.seed)
        yield "PropDisjoint", "h,f", _route_disjoint(gh, ga, char, opts.order_cap, opts.seed)

    def endo():
        return [check_endo_trivial(None, ga, char), check_endo_trivial(None, gh, char)]

    return _run_routes(routes(), char, inputs, witnesses, endo)


def soundness_violations(cert: Certificate) -> list[str]:
    """Ways in which a certificate breaks the soundness invariant (empty if sound)."""
    out = []
    if cert.conclusion is not Conclusion.NOT_APPLICABLE:
        for h in cert.hypotheses:
            gate_only = h.name == "endo_trivial" and cert.conclusion is not Conclusion.HOM_ZERO
            if not h.holds and not gate_only:
                out.append(f"hypothesis {h.name} is {h.status.value}")
    if cert.conclusion is Conclusion.HOM_ZERO and cert.char > 0:
        if not any(h.name == "endo_trivial" and h.holds for h in cert.hypotheses):
            out.append("HomZero in positive characteristic without an endomorphism gate")
    return out
