"""Command-line front end.

Exit codes: 0 when the question was decided, 2 when the answer is soundly
inconclusive (Unknown, NotApplicable, reducible input), 1 on misuse.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .certify import Conclusion, GaloisAssertion, Options, certify_asserted, certify_hom_zero
from .errors import PolySyntaxError, ResourceLimitError, SimplicityUnknown
from .f2 import Niceness, classify_niceness, heart_module, simplicity
from .galois import (DEFAULT_PRIME_BUDGET, IrreducibilityStatus, identify_sn_an,
                     irreducibility_certificate)
from .padic import newton_polygon
from .perm import DEFAULT_ORDER_CAP, are_disjoint, group_from_spec
from .poly import PolyRat, is_squarefree

EXIT_DECIDED, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2
BUDGET_ENV = "NONISOG_PRIME_BUDGET"


# ---------------------------------------------------------------------------
# polynomial expressions
# ---------------------------------------------------------------------------


class _Parser:
    """expr := term (('+'|'-') term)*;  term := unary (('*'|'/') unary)*;
    unary := ('+'|'-') unary | power;  power := atom ('^' integer)?;
    atom := integer | 'x' | '(' expr ')'."""

    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def _error(self, msg: str):
        raise PolySyntaxError(msg, self.pos)

    def parse(self) -> PolyRat:
        if not self._peek():
            self._error("empty expression")
        value = self._expr()
        if self._peek():
            self._error(f"unexpected {self._peek()!r}")
        return value

    def _expr(self) -> PolyRat:
        value = self._term()
        while self._peek() in ("+", "-"):
            op = self.src[self.pos]
            self.pos += 1
            rhs = self._term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _term(self) -> PolyRat:
        value = self._unary()
        while self._peek() in ("*", "/"):
            op = self.src[self.pos]
            where = self.pos
            self.pos += 1
            rhs = self._unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.degree != 0:
                    raise PolySyntaxError("division only by nonzero constants", where)
                value = value * PolyRat.constant(1 / rhs.coeffs[0])
        return value

    def _unary(self) -> PolyRat:
        c = self._peek()
        if c in ("+", "-"):
            self.pos += 1
            inner = self._unary()
            return -inner if c == "-" else inner
        return self._power()

    def _power(self) -> PolyRat:
        base = self._atom()
        if self._peek() == "^":
            self.pos += 1
            self._skip()
            start = self.pos
            while self.pos < len(self.src) and self.src[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                self._error("exponent must be a non-negative integer")
            base = base ** int(self.src[start:self.pos])
        return base

    def _atom(self) -> PolyRat:
        c = self._peek()
        if c.isdigit():
            start = self.pos
            while self.pos < len(self.src) and self.src[self.pos].isdigit():
                self.pos += 1
            return PolyRat.constant(Fraction(int(self.src[start:self.pos])))
        if c == "x":
            self.pos += 1
            return PolyRat.x()
        if c == "(":
            self.pos += 1
            value = self._expr()
            if self._peek() != ")":
                self._error("expected ')'")
            self.pos += 1
            return value
        if c.isalpha():
            self._error(f"unsupported variable {c!r}; only x is allowed")
        if not c:
            self._error("unexpected end of input")
        self._error(f"unexpected {c!r}")


def parse_poly(src: str) -> PolyRat:
    """Parse a univariate polynomial in x with rational coefficients."""
    return _Parser(src).parse()


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    prime_budget: int = DEFAULT_PRIME_BUDGET
    seed: int = 0
    order_cap: int = DEFAULT_ORDER_CAP
    fmt: str = "text"


@dataclass(frozen=True)
class RunResult:
    code: int
    stdout: str
    stderr: str


class _UsageError(Exception):
    pass


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_PRIME_BUDGET
    try:
        return _positive(raw)
    except (ValueError, argparse.ArgumentTypeError):
        raise _UsageError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}\n") from None


def build_parser() -> argparse.ArgumentParser:
    common = _ArgParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text", dest="fmt")
    common.add_argument("--budget", type=_positive, default=None,
                        help=f"number of good primes to sample (env {BUDGET_ENV})")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--order-cap", type=_positive, default=DEFAULT_ORDER_CAP)

    parser = _ArgParser(prog="nonisog", description="Non-isogeny certificates for hyperelliptic jacobians.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    p = sub.add_parser("galois", parents=[common], help="identify Gal(f) as S_n or A_n")
    p.add_argument("poly")
    p = sub.add_parser("heart", parents=[common], help="simplicity of the heart module")
    p.add_argument("--group", required=True)
    p.add_argument("--method", choices=("auto", "norton", "exhaustive"), default="auto")
    p = sub.add_parser("nice", parents=[common], help="nice / very nice classification")
    p.add_argument("--group", required=True)
    p = sub.add_parser("newton", parents=[common], help="p-adic Newton polygon")
    p.add_argument("poly")
    p.add_argument("prime", type=int)
    p = sub.add_parser("disjoint", parents=[common], help="common nontrivial quotients")
    p.add_argument("group1")
    p.add_argument("group2")
    p.add_argument("--no-catalogue", action="store_true")
    p = sub.add_parser("certify", parents=[common], help="certify Hom(J(C_f), J(C_h)) = 0")
    p.add_argument("f", nargs="?")
    p.add_argument("h", nargs="?")
    p.add_argument("--assert-f", metavar="SPEC", help="asserted Galois group of f")
    p.add_argument("--assert-h", metavar="SPEC", help="asserted Galois group of h")
    p.add_argument("--char", type=int, default=0)
    return parser


def _cmd_galois(args, cfg: RunConfig):
    f = parse_poly(args.poly)
    if f.degree < 2:
        raise ValueError("need degree >= 2")
    if not is_squarefree(f):
        raise ValueError("polynomial has a repeated root")
    irr = irreducibility_certificate(f, cfg.prime_budget)
    out = {"polynomial": str(f), "degree": f.degree, "irreducibility": irr.to_dict(), "verdict": None}
    if irr.status is IrreducibilityStatus.REDUCIBLE or f.degree < 3:
        return EXIT_INCONCLUSIVE, out
    v = identify_sn_an(f, cfg.prime_budget)
    out["verdict"] = v.to_dict()
    return (EXIT_DECIDED if v.proven else EXIT_INCONCLUSIVE), out


def _cmd_heart(args, cfg):
    g = group_from_spec(args.group)
    m = heart_module(g)
    out = {"group": args.group, "dimension": m.dimension,
           "matrices": [a.to_lists() for a in m.matrices], "simplicity": None}
    try:
        out["simplicity"] = simplicity(m, cfg.seed, args.method).to_dict()
    except SimplicityUnknown as exc:
        out["unknown"] = {"endomorphism_dimension": exc.endomorphism_dimension,
                          "attempts": exc.attempts}
        return EXIT_INCONCLUSIVE, out
    return EXIT_DECIDED, out


def _cmd_nice(args, cfg):
    v = classify_niceness(group_from_spec(args.group), cfg.seed)
    out = dict(v.to_dict(), group=args.group)
    return (EXIT_INCONCLUSIVE if v.verdict is Niceness.UNKNOWN else EXIT_DECIDED), out


def _cmd_newton(args, cfg):
    f = parse_poly(args.poly)
    return EXIT_DECIDED, dict(newton_polygon(f, args.prime).to_dict(), polynomial=str(f))


def _cmd_disjoint(args, cfg):
    g1, g2 = group_from_spec(args.group1), group_from_spec(args.group2)
    v = are_disjoint(g1, g2, cfg.order_cap, use_catalogue=not args.no_catalogue)
    out = dict(v.to_dict(), groups=[args.group1, args.group2])
    return (EXIT_INCONCLUSIVE if v.status == "Unknown" else EXIT_DECIDED), out


def _cmd_certify(args, cfg):
    opts = Options(cfg.prime_budget, cfg.seed, cfg.order_cap)
    if args.assert_f or args.assert_h:
        if not (args.assert_f and args.assert_h):
            raise ValueError("--assert-f and --assert-h must be given together")
        if args.f or args.h:
            raise ValueError("give either two polynomials or two asserted groups")
        assertions = []
        for spec in (args.assert_f, args.assert_h):
            g = group_from_spec(spec)
            assertions.append(GaloisAssertion(spec, g.degree, g))
        cert = certify_asserted(assertions[0], assertions[1], args.char, opts)
    else:
        if not (args.f and args.h):
            raise ValueError("certify needs two polynomials")
        if args.char != 0:
            raise ValueError("positive characteristic needs --assert-f/--assert-h")
        cert = certify_hom_zero(parse_poly(args.f), parse_poly(args.h), opts)
    code = EXIT_INCONCLUSIVE if cert.conclusion is Conclusion.NOT_APPLICABLE else EXIT_DECIDED
    return code, cert.to_dict()


_COMMANDS = {"galois": _cmd_galois, "heart": _cmd_heart, "nice": _cmd_nice,
             "newton": _cmd_newton, "disjoint": _cmd_disjoint, "certify": _cmd_certify}


def _text(command: str, out: dict) -> str:
    lines = []
    if command == "galois":
        lines.append(f"polynomial: {out['polynomial']}")
        lines.append(f"irreducibility: {out['irreducibility']['status']}")
        v = out["verdict"]
        if v:
            lines.append(f"galois: {v['status']}")
            lines.append(f"disc square: {v['disc_square']}")
            lines.append("witnesses: " + ", ".join(
                f"p={w['prime']} {tuple(w['cycle_type'])}" for w in v["witnesses"]))
            lines.append("rules: " + ", ".join(v["rules_fired"]))
    elif command == "heart":
        lines.append(f"group: {out['group']}  heart dimension: {out['dimension']}")
        s = out["simplicity"]
        if s:
            lines.append(f"simple: {s['simple']}  absolutely simple: {s['absolutely_simple']}  "
                         f"End dim: {s['endomorphism_dimension']}  method: {s['method']}")
        else:
            lines.append("simplicity: Unknown")
    elif command == "nice":
        lines.append(f"{out['group']}: {out['verdict']}")
        ev = out["evidence"]
        lines.append(f"transitivity degree: {ev['transitivity_degree']}")
        if ev.get("caveats"):
            lines.append("caveats: " + ", ".join(ev["caveats"]))
    elif command == "newton":
        lines.append(f"p = {out['p']}: vertices {[tuple(v) for v in out['vertices']]}")
        for seg in out["segments"]:
            lines.append(f"  slope {seg['slope']}  length {seg['length']}")
    elif command == "disjoint":
        lines.append(f"{out['groups'][0]} / {out['groups'][1]}: {out['status']} ({out['reason']})")
        if out.get("witness"):
            lines.append(f"common quotient: {out['witness']}")
    else:
        lines.append(f"theorem: {out['theorem']}")
        lines.append(f"conclusion: {out['conclusion']}" + ("  (conditional)" if out["conditional"] else ""))
        for h in out["hypotheses"]:
            lines.append(f"  [{h['status']}] {h['name']}")
        if out["conclusion"] == "NotApplicable":
            for r in out["routes"]:
                failing = ", ".join(f"{x['name']}={x['status']}" for x in r["failing"])
                lines.append(f"  {r['theorem']} ({r['orientation']}): {failing}")
        lines.append(out["narrative"])
    return "\n".join(lines) + "\n"


def run(argv: Optional[Sequence[str]] = None) -> RunResult:
    argv = list(sys.argv[1:] if argv is None else argv)
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            args = build_parser().parse_args(argv)
            budget = args.budget if args.budget is not None else _default_budget()
        except _UsageError as exc:
            err.write(str(exc))
            return RunResult(EXIT_ERROR, out.getvalue(), err.getvalue())
        except SystemExit as exc:  # --help
            return RunResult(EXIT_DECIDED if not exc.code else EXIT_ERROR, out.getvalue(), err.getvalue())
        cfg = RunConfig(budget, args.seed, args.order_cap, args.fmt)
        try:
            code, payload = _COMMANDS[args.command](args, cfg)
        except (ValueError, ResourceLimitError) as exc:
            err.write(f"nonisog: error: {exc}\n")
            return RunResult(EXIT_ERROR, out.getvalue(), err.getvalue())
    if cfg.fmt == "json":
        text = json.dumps({"command": args.command, "result": payload}, sort_keys=True, indent=2) + "\n"
    else:
        text = _text(args.command, payload)
    return RunResult(code, out.getvalue() + text, err.getvalue())


def main(argv: Optional[Sequence[str]] = None) -> int:
    res = run(argv)
    sys.stdout.write(res.stdout)
    sys.stderr.write(res.stderr)
    return res.code


if __name__ == "__main__":
    raise SystemExit(main())
