"""Expression parser, command dispatch and JSON output.

Grammar (whitespace insignificant, variables are names from the declared
list)::

    expression := ['+'|'-'] term (('+'|'-') term)*
    term       := factor (('*' factor) | ('/' uint))*
    factor     := atom ('^' uint)*
    atom       := uint | variable | '(' expression ')'

Division is only allowed by an unsigned integer literal, so `y/2` is sugar
for `1/2*y` and `1/2` is an ordinary rational literal; `x/(y)` is a syntax
error.  Vector fields are comma-separated component expressions.

Every command writes exactly one JSON object to stdout and exits 0 once an
answer is produced (whatever the verdict); input and parse errors exit 2,
unmet bound hypotheses exit 3, and the dimension guard exits 4, each with
an {"error": ...} object on stderr.  The guard (21) can be lifted with the
EXTATICA_MAX_DIM environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .bounds import (BoundInput, HypothesisNotMetError, MissingInputError,
                     abelian_bound, genus_rhs, genus_threshold,
                     invariant_count_check, pn_threshold,
                     poincare_degree_bound, surface_bound, CONSISTENT, FORCES)
from .corpus import (CorpusEntry, hamiltonian, pencil_field,
                     planted_lines_field, random_field, slv)
from .extactic import (DimensionGuardError, ExtacticNotZeroError,
                       ExtractionFailedError, extactic, extract_first_integral,
                       monomial_system)
from .foliation import AFFINE, HOMOGENEOUS, VectorField, check_invariance
from .polyring import ContextError, PolyRing, Polynomial


class ParseError(ValueError):
    """Syntax error with 1-based line/column position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


# ---------------------------------------------------------------------------
# tokenizer / recursive descent parser
# ---------------------------------------------------------------------------

_OPERATORS = set("+-*/^(),")


class _Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column


def _tokenize(text: str):
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("number", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("name", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in _OPERATORS:
            tokens.append(_Token(ch, ch, line, col))
            col += 1
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ring = ring

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(
                f"expected {kind!r}, found {tok.text or 'end of input'!r}",
                tok.line, tok.column)
        return self.advance()

    def parse_expression(self) -> Polynomial:
        sign = 1
        if self.peek().kind in ("+", "-"):
            if self.advance().kind == "-":
                sign = -1
        value = self.parse_term()
        if sign < 0:
            value = -value
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            rhs = self.parse_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_term(self) -> Polynomial:
        value = self.parse_factor()
        while True:
            tok = self.peek()
            if tok.kind == "*":
                self.advance()
                value = value * self.parse_factor()
            elif tok.kind == "/":
                self.advance()
                num = self.peek()
                if num.kind != "number":
                    raise ParseError(
                        "division is only allowed by an integer literal",
                        num.line, num.column)
                self.advance()
                d = int(num.text)
                if d == 0:
                    raise ParseError("zero denominator", num.line, num.column)
                value = value.scale(Fraction(1, d))
            else:
                return value

    def parse_factor(self) -> Polynomial:
        value = self.parse_atom()
        while self.peek().kind == "^":
            self.advance()
            num = self.expect("number")
            value = value ** int(num.text)
        return value

    def parse_atom(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "number":
            self.advance()
            return self.ring.constant(int(tok.text))
        if tok.kind == "name":
            self.advance()
            if tok.text not in self.ring.names:
                raise ParseError(f"unknown variable {tok.text!r}", tok.line,
                                 tok.column)
            return self.ring.variable(self.ring.names.index(tok.text))
        if tok.kind == "(":
            self.advance()
            value = self.parse_expression()
            self.expect(")")
            return value
        raise ParseError(
            f"expected a value, found {tok.text or 'end of input'!r}",
            tok.line, tok.column)


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse one expression; the whole text must be consumed."""
    parser = _Parser(text, ring)
    value = parser.parse_expression()
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.column)
    return value


def parse_vector_field(text: str, ring: PolyRing) -> list:
    """Parse a comma-separated component list."""
    parser = _Parser(text, ring)
    comps = [parser.parse_expression()]
    while parser.peek().kind == ",":
        parser.advance()
        comps.append(parser.parse_expression())
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.column)
    if len(comps) != ring.nvars:
        raise ParseError(
            f"{len(comps)} components for {ring.nvars} variables",
            tok.line, tok.column)
    return comps


# ---------------------------------------------------------------------------
# command helpers
# ---------------------------------------------------------------------------

def _split_vars(text: str) -> PolyRing:
    names = tuple(v.strip() for v in text.split(","))
    if not names or any(not n.isidentifier() for n in names):
        raise ValueError(f"bad variable list {text!r}")
    return PolyRing(names)


def _corpus_entry(selector: str) -> CorpusEntry:
    kind, _, rest = selector.partition(":")
    if kind == "slv":
        return slv(int(rest))
    if kind == "planted":
        n, d, seed = (int(v) for v in rest.split(","))
        return planted_lines_field(n, d, seed)
    if kind == "random":
        n, d, seed = (int(v) for v in rest.split(","))
        field = random_field(n, d, seed)
        return CorpusEntry(selector, field, ())
    if kind == "hamiltonian":
        ring = PolyRing(("x", "y"))
        return hamiltonian(parse_polynomial(rest, ring))
    if kind == "pencil":
        f_text, _, g_text = rest.partition(":")
        ring = PolyRing(("x", "y"))
        return pencil_field(parse_polynomial(f_text, ring),
                            parse_polynomial(g_text, ring))
    raise ValueError(f"unknown corpus selector {selector!r}")


def _resolve_field(args) -> tuple:
    """(VectorField with mode applied, ring) from --field / --field-corpus."""
    mode_flag = getattr(args, "mode", "auto")
    if getattr(args, "field_corpus", None):
        entry = _corpus_entry(args.field_corpus)
        field = entry.field
        if getattr(args, "vars", None):
            ring = _split_vars(args.vars)
            if ring != field.ring:
                raise ValueError(
                    f"--vars {args.vars!r} does not match corpus variables "
                    f"{','.join(field.ring.names)!r}")
        if mode_flag != "auto" and mode_flag != field.mode:
            field = VectorField(field.components, mode_flag)
        return field, field.ring
    if not getattr(args, "field", None):
        raise ValueError("one of --field / --field-corpus is required")
    if not getattr(args, "vars", None):
        raise ValueError("--vars is required with --field")
    ring = _split_vars(args.vars)
    comps = parse_vector_field(args.field, ring)
    if mode_flag == "auto":
        # default to a projective reading only when it can present a
        # foliation (3+ variables) and the components allow it
        degs = {c.degree() for c in comps if not c.is_zero()}
        homog = (ring.nvars >= 3
                 and len(degs) == 1
                 and all(c.is_homogeneous() for c in comps)
                 and not all(c.is_zero() for c in comps))
        mode = HOMOGENEOUS if homog else AFFINE
    else:
        mode = mode_flag
    return VectorField(tuple(comps), mode), ring


def _max_dim() -> Optional[int]:
    raw = os.environ.get("EXTATICA_MAX_DIM")
    return int(raw) if raw else None


def _frac_str(value) -> Optional[str]:
    return None if value is None else str(Fraction(value))


def _emit(payload: dict) -> int:
    sys.stdout.write(json.dumps(payload) + "\n")
    return 0


# ---------------------------------------------------------------------------
# command handlers
# ---------------------------------------------------------------------------

def _cmd_parse(args) -> int:
    ring = _split_vars(args.vars)
    poly = parse_polynomial(args.text, ring)
    return _emit({
        "command": "parse",
        "vars": ",".join(ring.names),
        "input": args.text,
        "canonical": str(poly),
    })


def _cmd_extactic(args) -> int:
    field, ring = _resolve_field(args)
    descriptor = HOMOGENEOUS if field.mode == HOMOGENEOUS else AFFINE
    system = monomial_system(ring.nvars, args.k, descriptor,
                             names=ring.names)
    report = extactic(field, system, engine=args.engine, max_dim=_max_dim(),
                      jobs=args.jobs)
    return _emit({
        "command": "extactic",
        "vars": ",".join(ring.names),
        "field": str(field),
        "mode": field.mode,
        "k": args.k,
        "m": report.dimension,
        "engine": report.engine,
        "extactic": str(report.extactic),
        "degree": None if report.identically_zero else int(report.degree),
        "degree_bound": report.degree_bound,
        "identically_zero": report.identically_zero,
    })


def _cmd_invariant_check(args) -> int:
    field, ring = _resolve_field(args)
    curve = parse_polynomial(args.curve, ring)
    cof = check_invariance(field, curve)
    return _emit({
        "command": "invariant-check",
        "field": str(field),
        "curve": str(curve),
        "invariant": cof is not None,
        "cofactor": None if cof is None else str(cof.polynomial),
    })


def _cmd_first_integral(args) -> int:
    field, ring = _resolve_field(args)
    descriptor = HOMOGENEOUS if field.mode == HOMOGENEOUS else AFFINE
    system = monomial_system(ring.nvars, args.k, descriptor,
                             names=ring.names)
    report = extactic(field, system, engine=args.engine, max_dim=_max_dim(),
                      jobs=args.jobs)
    payload = {
        "command": "first-integral",
        "status": None,
        "numerator": None,
        "denominator": None,
        "rank": None,
    }
    if not report.identically_zero:
        payload["status"] = "extactic-nonzero"
        return _emit(payload)
    try:
        fi = extract_first_integral(field, system, max_dim=_max_dim(),
                                    engine=args.engine)
    except (ExtractionFailedError, ExtacticNotZeroError):
        payload["status"] = "failed"
        return _emit(payload)
    payload.update({
        "status": "found",
        "numerator": str(fi.numerator),
        "denominator": str(fi.denominator),
        "rank": fi.rank,
    })
    return _emit(payload)


def _bound_payload(formula, lhs, rhs, threshold, verdict) -> dict:
    return {
        "command": "bound",
        "formula": formula,
        "lhs": _frac_str(lhs),
        "rhs": _frac_str(rhs),
        "threshold": _frac_str(threshold),
        "verdict": verdict,
    }


def _cmd_bound(args) -> int:
    formula = args.formula
    if formula == "theorem1":
        inp = BoundInput(deg_D=args.deg_d, h0=args.h0,
                         n_invariant=args.count, deg_foliation=args.deg_f,
                         deg_variety=args.deg_x)
        rep = invariant_count_check(inp)
        threshold = None
        if args.count > args.h0:
            threshold = poincare_degree_bound(inp)
        return _emit(_bound_payload(formula, rep.lhs, rep.rhs, threshold,
                                    rep.verdict))
    if formula == "poin":
        inp = BoundInput(deg_D=args.deg_d, h0=args.h0,
                         n_invariant=args.count, deg_foliation=args.deg_f,
                         deg_variety=args.deg_x)
        bound = poincare_degree_bound(inp)
        verdict = CONSISTENT if Fraction(args.deg_d) <= bound else FORCES
        return _emit(_bound_payload(formula, Fraction(args.deg_d), bound,
                                    bound, verdict))
    if formula == "pn":
        threshold = pn_threshold(args.d, args.k, args.n, args.count)
        verdict = CONSISTENT if Fraction(args.k) <= threshold else FORCES
        return _emit(_bound_payload(formula, Fraction(args.k), threshold,
                                    threshold, verdict))
    if formula == "gen":
        genus = Fraction(args.genus)
        rhs = genus_rhs(args.d, args.k, args.count)
        lhs = 2 - 2 * genus
        threshold = genus_threshold(args.d, args.k, args.count)
        verdict = CONSISTENT if lhs <= rhs else FORCES
        return _emit(_bound_payload(formula, lhs, rhs, threshold, verdict))
    if formula == "cor":
        inp = BoundInput(deg_D=args.deg_d, h0=args.h0,
                         n_invariant=args.count, deg_foliation=args.deg_f,
                         deg_variety=args.deg_x, h1=args.h1,
                         h0_k_minus_d=args.h0_k_minus_d, k_self=args.k_self,
                         k_dot_d=args.k_dot_d, chi_top=args.chi,
                         genus=Fraction(args.genus))
        rep = surface_bound(inp)
        return _emit(_bound_payload(formula, rep.lhs, rep.rhs, None,
                                    rep.verdict))
    if formula == "abelian":
        bound = abelian_bound(args.dn, args.n, args.count, args.deg_f,
                              args.deg_x)
        if args.deg_d is None:
            return _emit(_bound_payload(formula, None, bound, bound,
                                        CONSISTENT))
        verdict = CONSISTENT if Fraction(args.deg_d) <= bound else FORCES
        return _emit(_bound_payload(formula, Fraction(args.deg_d), bound,
                                    bound, verdict))
    raise ValueError(f"unknown formula {formula!r}")


def _cmd_corpus(args) -> int:
    entry = _corpus_entry(args.selector)
    return _emit({
        "command": "corpus",
        "name": entry.name,
        "vars": ",".join(entry.field.ring.names),
        "mode": entry.field.mode,
        "field": str(entry.field),
        "facts": [
            {"kind": f.kind, "statement": f.statement, "checked": f.checked}
            for f in entry.facts
        ],
    })


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_field_arguments(sub):
    sub.add_argument("--vars", help="comma-separated variable names")
    sub.add_argument("--field", help="comma-separated component expressions")
    sub.add_argument("--field-corpus",
                     help="corpus selector, e.g. slv:1 or planted:2,1,5")
    sub.add_argument("--mode", choices=["auto", AFFINE, HOMOGENEOUS],
                     default="auto")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="extatica",
        description="exact extactic/invariant-curve/first-integral engine")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("parse", help="echo the canonical form")
    p.add_argument("--vars", required=True)
    p.add_argument("text")
    p.set_defaults(handler=_cmd_parse)

    p = subs.add_parser("extactic", help="extactic polynomial of a field")
    _add_field_arguments(p)
    p.add_argument("--k", type=int, required=True,
                   help="degree of the monomial linear system")
    p.add_argument("--engine",
                   choices=["auto", "fraction-free", "modular"],
                   default="auto")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(handler=_cmd_extactic)

    p = subs.add_parser("invariant-check",
                        help="certify an invariant curve and its cofactor")
    _add_field_arguments(p)
    p.add_argument("--curve", required=True)
    p.set_defaults(handler=_cmd_invariant_check)

    p = subs.add_parser("first-integral",
                        help="extract a verified rational first integral")
    _add_field_arguments(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--engine",
                   choices=["auto", "fraction-free", "modular"],
                   default="auto")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(handler=_cmd_first_integral)

    p = subs.add_parser("bound", help="evaluate a degree/genus inequality")
    bound_subs = p.add_subparsers(dest="formula", required=True)
    for name in ("theorem1", "poin"):
        b = bound_subs.add_parser(name)
        b.add_argument("--deg-d", type=int, required=True)
        b.add_argument("--h0", type=int, required=True)
        b.add_argument("--count", type=int, required=True,
                       help="number of invariant divisors in the system")
        b.add_argument("--deg-f", type=int, required=True)
        b.add_argument("--deg-x", type=int, default=1)
        b.set_defaults(handler=_cmd_bound)
    b = bound_subs.add_parser("pn")
    b.add_argument("--d", type=int, required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--count", type=int, required=True)
    b.set_defaults(handler=_cmd_bound)
    b = bound_subs.add_parser("gen")
    b.add_argument("--d", type=int, required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--count", type=int, required=True)
    b.add_argument("--genus", required=True)
    b.set_defaults(handler=_cmd_bound)
    b = bound_subs.add_parser("cor")
    b.add_argument("--deg-d", type=int, required=True)
    b.add_argument("--h0", type=int, required=True)
    b.add_argument("--count", type=int, required=True)
    b.add_argument("--deg-f", type=int, required=True)
    b.add_argument("--deg-x", type=int, default=1)
    b.add_argument("--h1", type=int, required=True)
    b.add_argument("--h0-k-minus-d", type=int, required=True)
    b.add_argument("--k-self", type=int, required=True)
    b.add_argument("--k-dot-d", type=int, required=True)
    b.add_argument("--chi", type=int, required=True)
    b.add_argument("--genus", required=True)
    b.set_defaults(handler=_cmd_bound)
    b = bound_subs.add_parser("abelian")
    b.add_argument("--dn", type=int, required=True,
                   help="top self-intersection number of the divisor")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--count", type=int, required=True)
    b.add_argument("--deg-f", type=int, required=True)
    b.add_argument("--deg-x", type=int, required=True)
    b.add_argument("--deg-d", type=int)
    b.set_defaults(handler=_cmd_bound)

    p = subs.add_parser("corpus", help="print a corpus entry with its facts")
    p.add_argument("selector",
                   help="slv:L | planted:n,d,seed | random:n,d,seed | "
                        "hamiltonian:EXPR | pencil:EXPR:EXPR")
    p.set_defaults(handler=_cmd_corpus)
    return parser


def _fail(message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": message}) + "\n")
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except DimensionGuardError as exc:
        return _fail(str(exc), 4)
    except HypothesisNotMetError as exc:
        return _fail(str(exc), 3)
    except (ParseError, MissingInputError, ContextError, ValueError,
            ZeroDivisionError) as exc:
        return _fail(str(exc), 2)


if __name__ == "__main__":
    sys.exit(main())
