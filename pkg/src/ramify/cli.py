"""Command-line front end.

Literals
--------
groups    ``zlex:2``, ``zp:2``, ``quad:2``
elements  ``lex(1,-5)``, ``q(3/4)``, ``quad(1,1)``, bare rationals for
          rank-one groups
surds     ``surd(a,b,d)`` meaning a + b*sqrt(d)
cuts      ``whole``, ``ge q(1)``, ``gt q(1)``, ``frontier(1,-5)``,
          ``frontier_ge(1,0)`` (parenthesized forms like ``ge(q(1))``
          are accepted on input)
series    sums of products of ``t(<element>)``, ``x[<element>]``, unit
          names, and integers, e.g. ``u*t(-4) + x[q(3/4)]*t(q(1/2))``

Every literal the tool prints re-parses to an equal value.  Exit codes:
0 success, 2 malformed input (the diagnostic names the offending token),
1 a theorem-level check failed.
"""

from __future__ import annotations

import argparse
import functools
import os
import random
import sys
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .cuts import Cut, Surd, frontier_cut, open_cut, principal_cut, whole_cut
from .defect_lab import (
    DefectModel,
    DeltaBoundError,
    VARIANT_CLOSED,
    VARIANT_OPEN,
    VARIANT_OPEN_IRRATIONAL,
    break_witness,
    build_defect_model,
    conductor_limit_check,
    twin_pair,
    verify_delta_bounds,
)
from .ordered_group import (
    GroupDescriptor,
    GroupElement,
    HullElement,
    KIND_INT_LEX,
    KIND_P_INVERTED,
    KIND_QUADRATIC,
    compare,
    element,
    hull_element,
    int_lex,
    int_scale,
    p_inverted,
    quadratic,
)
from .sampling import (
    random_group_cut,
    random_hull_ideal,
    random_positive_element,
    random_principal_hull_ideal,
)
from .separation import GapDatum, connectivity_threshold, separation_bound
from .series_field import (
    CoeffField,
    FieldElement,
    SeriesElement,
    constant_series,
    norm,
    t_term,
    trace,
    variable_series,
)
from .swan import (
    EqualCharSymbolic,
    KummerSymbolic,
    RswSymbol,
    SwanData,
    UndeterminedError,
    ValueClass,
    break_of,
    classify_equal_char,
    classify_kummer_symbolic,
    galois_image,
    plan_log_smooth,
)


class InputError(Exception):
    """Malformed user input; maps to exit code 2."""


class CheckFailure(Exception):
    """A verification that must hold failed; maps to exit code 1."""


# -- tokenizer -------------------------------------------------------------------


class _Tokens:
    SYMBOLS = "()[],:+*^"

    def __init__(self, text: str):
        self.text = text
        self.items: List[str] = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch in self.SYMBOLS:
                self.items.append(ch)
                i += 1
                continue
            if ch == "-" or ch.isdigit():
                j = i + 1
                while j < len(text) and (text[j].isdigit() or text[j] == "/"):
                    j += 1
                self.items.append(text[i:j])
                i = j
                continue
            if ch.isalpha() or ch == "_":
                j = i + 1
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.items.append(text[i:j])
                i = j
                continue
            raise InputError(f"unexpected character {ch!r} in {text!r}")
        self.pos = 0

    def peek(self) -> Optional[str]:
        return self.items[self.pos] if self.pos < len(self.items) else None

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise InputError(f"unexpected end of input in {self.text!r}")
        self.pos += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.next()
        if got != tok:
            raise InputError(f"expected {tok!r} but found {got!r} in {self.text!r}")

    def done(self) -> None:
        if self.pos != len(self.items):
            raise InputError(f"trailing input {self.items[self.pos]!r} in {self.text!r}")


def _parse_fraction(tok: str, context: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"expected a rational number but found {tok!r} in {context!r}")


def parse_group(text: str) -> GroupDescriptor:
    toks = _Tokens(text)
    kind = toks.next()
    toks.expect(":")
    param_tok = toks.next()
    toks.done()
    try:
        param = int(param_tok)
    except ValueError:
        raise InputError(f"expected an integer group parameter, found {param_tok!r}")
    try:
        if kind == KIND_INT_LEX:
            return int_lex(param)
        if kind == KIND_P_INVERTED:
            return p_inverted(param)
        if kind == KIND_QUADRATIC:
            return quadratic(param)
    except ValueError as e:
        raise InputError(str(e))
    raise InputError(f"unknown group kind {kind!r} (use zlex:n, zp:p, quad:d)")


def _parse_fraction_list(toks: _Tokens) -> List[Fraction]:
    toks.expect("(")
    vals = [_parse_fraction(toks.next(), toks.text)]
    while toks.peek() == ",":
        toks.next()
        vals.append(_parse_fraction(toks.next(), toks.text))
    toks.expect(")")
    return vals


def _parse_element_tokens(toks: _Tokens, descriptor: GroupDescriptor, hull: bool):
    """element := lex(...) | q(...) | quad(a,b) | bare rational"""
    build = hull_element if hull else element
    tok = toks.peek()
    if tok is None:
        raise InputError(f"expected an element in {toks.text!r}")
    try:
        if tok == "lex":
            toks.next()
            vals = _parse_fraction_list(toks)
            if descriptor.kind != KIND_INT_LEX:
                raise InputError(f"lex(...) element does not live in {descriptor}")
            return build(descriptor, tuple(vals))
        if tok == "q":
            toks.next()
            vals = _parse_fraction_list(toks)
            if len(vals) != 1:
                raise InputError("q(...) takes a single rational")
            if descriptor.kind != KIND_P_INVERTED:
                raise InputError(f"q(...) element does not live in {descriptor}")
            return build(descriptor, vals[0])
        if tok == "quad":
            toks.next()
            vals = _parse_fraction_list(toks)
            if len(vals) != 2:
                raise InputError("quad(a,b) takes two rationals")
            if descriptor.kind != KIND_QUADRATIC:
                raise InputError(f"quad(...) element does not live in {descriptor}")
            return build(descriptor, (vals[0], vals[1]))
        # bare rational shorthand for scalar groups
        value = _parse_fraction(toks.next(), toks.text)
        if descriptor.kind == KIND_INT_LEX and descriptor.param == 1:
            return build(descriptor, (value,))
        if descriptor.kind == KIND_P_INVERTED:
            return build(descriptor, value)
        if descriptor.kind == KIND_QUADRATIC:
            return build(descriptor, (value, Fraction(0)))
        raise InputError(
            f"bare value {tok!r} is ambiguous over {descriptor}; use lex(...)"
        )
    except ValueError as e:
        raise InputError(f"{e} (while reading an element of {descriptor})")


def parse_element(text: str, descriptor: GroupDescriptor, hull: bool = False):
    toks = _Tokens(text)
    out = _parse_element_tokens(toks, descriptor, hull)
    toks.done()
    return out


def _parse_surd_tokens(toks: _Tokens) -> Surd:
    toks.expect("surd")
    vals = _parse_fraction_list(toks)
    if len(vals) != 3:
        raise InputError("surd(a,b,d) takes three arguments")
    if vals[2].denominator != 1:
        raise InputError("the radicand of surd(a,b,d) is an integer")
    try:
        return Surd(vals[0], vals[1], int(vals[2]))
    except ValueError as e:
        raise InputError(str(e))


def parse_bound(text: str, descriptor: GroupDescriptor, hull: bool):
    toks = _Tokens(text)
    if toks.peek() == "surd":
        out = _parse_surd_tokens(toks)
    else:
        out = _parse_element_tokens(toks, descriptor, hull)
    toks.done()
    return out


def parse_cut(text: str, descriptor: GroupDescriptor, hull: bool = False) -> Cut:
    toks = _Tokens(text)
    head = toks.next()
    if head == "whole":
        toks.done()
        return whole_cut(descriptor, over_hull=hull)
    if head in ("ge", "gt"):
        # `ge q(1)` and `ge(q(1))` are both fine; a bare bound never starts
        # with "(" so the next token decides
        wrapped = toks.peek() == "("
        if wrapped:
            toks.next()
        bound = (
            _parse_surd_tokens(toks)
            if toks.peek() == "surd"
            else _parse_element_tokens(toks, descriptor, hull)
        )
        if wrapped:
            toks.expect(")")
        toks.done()
        try:
            if head == "ge":
                if isinstance(bound, Surd):
                    raise InputError("a principal cut needs an element bound, not a surd")
                return principal_cut(bound)
            return open_cut(descriptor, bound, over_hull=hull)
        except ValueError as e:
            raise InputError(str(e))
    if head in ("frontier", "frontier_ge"):
        vals = _parse_fraction_list(toks)
        toks.done()
        if descriptor.kind != KIND_INT_LEX:
            raise InputError(f"frontier cuts live over lex groups, not {descriptor}")
        try:
            if head == "frontier":
                return frontier_cut(descriptor, tuple(vals), over_hull=hull)
            return frontier_cut(descriptor, tuple(vals), over_hull=hull, inclusive=True)
        except ValueError as e:
            raise InputError(str(e))
    raise InputError(f"unknown cut form {head!r} (use whole, ge, gt, frontier, frontier_ge)")


# -- series parsing ---------------------------------------------------------------


def _collect_series_names(text: str) -> Tuple[List[str], int]:
    toks = _Tokens(text)
    names = []
    tags = 0
    while toks.peek() is not None:
        tok = toks.next()
        if tok == "x" and toks.peek() == "[":
            tags += 1
        elif tok.isidentifier() and tok not in ("t", "x", "lex", "q", "quad", "surd"):
            if tok not in names:
                names.append(tok)
    return names, tags


def parse_series(text: str, descriptor: GroupDescriptor, p: int) -> Tuple[FieldElement, CoeffField]:
    """Parse a series literal; the coefficient field is built from the
    tagged values and unit names appearing in the text."""
    unit_names, _ = _collect_series_names(text)

    # first pass just collects the tag values so the field can exist
    tag_values: List[GroupElement] = []

    def scan_tags(toks: _Tokens) -> None:
        while toks.peek() is not None:
            tok = toks.next()
            if tok == "x" and toks.peek() == "[":
                toks.next()
                g = _parse_element_tokens(toks, descriptor, hull=False)
                toks.expect("]")
                if g not in tag_values:
                    tag_values.append(g)

    scan_tags(_Tokens(text))
    tag_values.sort(key=_element_sort_key, reverse=True)
    field = CoeffField(p, tags=tuple(tag_values), units=tuple(sorted(unit_names)))

    toks = _Tokens(text)
    result = _parse_series_sum(toks, field, descriptor)
    toks.done()
    return FieldElement(result), field


_element_sort_key = functools.cmp_to_key(compare)


def _parse_series_sum(toks: _Tokens, field: CoeffField, descriptor: GroupDescriptor) -> SeriesElement:
    out = _parse_series_term(toks, field, descriptor)
    while toks.peek() == "+":
        toks.next()
        out = out + _parse_series_term(toks, field, descriptor)
    return out


def _parse_series_term(toks: _Tokens, field: CoeffField, descriptor: GroupDescriptor) -> SeriesElement:
    out = _parse_series_factor(toks, field, descriptor)
    while toks.peek() == "*":
        toks.next()
        out = out * _parse_series_factor(toks, field, descriptor)
    return out


def _parse_series_factor(toks: _Tokens, field: CoeffField, descriptor: GroupDescriptor) -> SeriesElement:
    tok = toks.peek()
    if tok is None:
        raise InputError(f"expected a series factor in {toks.text!r}")
    if tok == "(":
        toks.next()
        inner = _parse_series_sum(toks, field, descriptor)
        toks.expect(")")
        return _maybe_power(toks, inner)
    if tok == "t":
        toks.next()
        toks.expect("(")
        g = _parse_element_tokens(toks, descriptor, hull=False)
        toks.expect(")")
        return _maybe_power(toks, t_term(field, descriptor, g))
    if tok == "x":
        toks.next()
        toks.expect("[")
        g = _parse_element_tokens(toks, descriptor, hull=False)
        toks.expect("]")
        idx = None
        for i, tag in enumerate(field.tags):
            if tag == g:
                idx = i
        if idx is None:
            raise InputError(f"tag {format_element(g)} missing from the field")
        return _maybe_power(toks, variable_series(field, descriptor, field.gens[idx]))
    if tok.isidentifier() and tok not in ("lex", "q", "quad", "surd"):
        toks.next()
        try:
            gen = field.unit_gen(tok)
        except (KeyError, ValueError) as e:
            raise InputError(f"unknown unit name {tok!r}")
        return _maybe_power(toks, variable_series(field, descriptor, gen))
    value = _parse_fraction(toks.next(), toks.text)
    if value.denominator != 1:
        raise InputError(f"series coefficients are integers mod p, found {value}")
    return _maybe_power(toks, constant_series(field, descriptor, int(value)))


def _maybe_power(toks: _Tokens, base: SeriesElement) -> SeriesElement:
    if toks.peek() != "^":
        return base
    toks.next()
    tok = toks.next()
    try:
        n = int(tok)
    except ValueError:
        raise InputError(f"expected an integer exponent, found {tok!r}")
    if n < 0:
        raise InputError("negative exponents are not series")
    return base.power(n)


# -- serializers ------------------------------------------------------------------


def format_fraction(x: Fraction) -> str:
    return str(x)


def format_element(g: Union[GroupElement, HullElement]) -> str:
    d = g.descriptor
    if d.kind == KIND_INT_LEX:
        if d.param == 1:
            return format_fraction(Fraction(g.value[0]))
        return "lex(" + ",".join(format_fraction(Fraction(c)) for c in g.value) + ")"
    if d.kind == KIND_P_INVERTED:
        return f"q({format_fraction(g.value)})"
    a, b = g.value
    return f"quad({format_fraction(a)},{format_fraction(b)})"


def format_surd(s: Surd) -> str:
    return f"surd({format_fraction(s.a)},{format_fraction(s.b)},{s.d})"


def format_cut(cut: Cut) -> str:
    kind = cut.kind
    if kind == "whole":
        return "whole"
    d = cut.descriptor
    if d.kind == KIND_INT_LEX:
        b = cut.bound
        if kind in ("frontier", "frontier_ge"):
            body = ",".join(format_fraction(c) for c in b.prefix)
            return f"{kind}({body})"
        make = hull_element if cut.over_hull else element
        raw = tuple(b.prefix) if cut.over_hull else tuple(int(c) for c in b.prefix)
        g = make(d, raw if d.param > 1 else raw)
        return ("ge " if kind == "principal" else "gt ") + format_element(g)
    b = cut.bound.value
    head = "ge " if kind == "principal" else "gt "
    if d.kind == KIND_QUADRATIC and b.d in (0, d.param):
        make = hull_element if cut.over_hull else element
        return head + format_element(make(d, (b.a, b.b)))
    if b.is_rational:
        make = hull_element if cut.over_hull else element
        return head + format_element(make(d, b.a))
    return head + format_surd(b)


def format_rsw(rsw: Optional[RswSymbol]) -> str:
    if rsw is None:
        return "none"
    if not rsw.dlog_terms:
        return "0"
    parts = []
    for coeff, term in rsw.dlog_terms:
        body = f"dlog(t({format_element(term.gamma)}))" if isinstance(term, ValueClass) else f"dlog({term.name})"
        parts.append(body if coeff == 1 else f"{coeff}*{body}")
    return " + ".join(parts)


# -- report plumbing ---------------------------------------------------------------


class Report:
    def __init__(self):
        self.lines: List[str] = []

    def section(self, name: str) -> None:
        self.lines.append(f"[{name}]")

    def kv(self, key: str, value) -> None:
        if isinstance(value, bool):
            value = "true" if value else "false"
        self.lines.append(f"{key}: {value}")

    def raw(self, line: str) -> None:
        self.lines.append(line)

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _seed_from(args) -> int:
    env = os.environ.get("RAMIFY_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"RAMIFY_SEED must be an integer, found {env!r}")
    return args.seed


def _emit_swan(report: Report, data: SwanData, p: int) -> None:
    report.section("swan")
    report.kv("case", data.case if data.case else "none")
    report.kv("H", format_cut(data.conductor))
    report.kv("defect", data.defect)
    report.kv("e", "p" if data.e_pred == p else str(data.e_pred))
    report.kv("residue", data.residue_pred)
    report.kv("unramified", data.unramified)
    report.kv("rsw", format_rsw(data.rsw))


# -- subcommands --------------------------------------------------------------------


def _cmd_classify(args) -> Tuple[Report, int]:
    descriptor = parse_group(args.group)
    report = Report()
    if args.artin_schreier is not None:
        f, _ = parse_series(args.artin_schreier, descriptor, args.p)
        try:
            data = classify_equal_char(f)
        except UndeterminedError as e:
            report.section("swan")
            report.kv("status", "undetermined")
            report.kv("detail", str(e))
            return report, 0
        _emit_swan(report, data, args.p)
        return report, 0
    if args.case is not None:
        c = parse_element(args.c, descriptor) if args.c else None
        desc = EqualCharSymbolic(args.p, args.case, c=c, unit_name=args.unit, descriptor=descriptor)
        try:
            data = classify_equal_char(desc)
        except ValueError as e:
            raise InputError(str(e))
        _emit_swan(report, data, args.p)
        return report, 0
    if args.kummer is not None:
        if args.e0 is None:
            raise InputError("--kummer needs --e0, the value of zeta_p - 1")
        desc = KummerSymbolic(
            args.p,
            args.kummer,
            e0=parse_element(args.e0, descriptor),
            v_a=parse_element(args.va, descriptor) if args.va else None,
            v_b=parse_element(args.vb, descriptor) if args.vb else None,
            unit_name=args.unit,
        )
        try:
            data = classify_kummer_symbolic(desc)
        except ValueError as e:
            raise InputError(str(e))
        _emit_swan(report, data, args.p)
        if data.rsw is not None:
            moves = plan_log_smooth(data.rsw, args.p)
            report.section("plan")
            report.kv("moves", len(moves))
            for i, mv in enumerate(moves):
                report.kv(f"move{i}", f"adjoin degree-{mv.e} root at {format_element(mv.target)}")
        return report, 0
    raise InputError("classify needs one of --as, --case, --kummer")


def _cmd_eval(args) -> Tuple[Report, int]:
    descriptor = parse_group(args.group)
    H = parse_cut(args.conductor, descriptor, hull=False)
    I = parse_cut(args.ideal, descriptor, hull=True)
    try:
        image = galois_image(H, I)
    except ValueError as e:
        raise InputError(str(e))
    report = Report()
    report.section("eval")
    report.kv("H", format_cut(H))
    report.kv("I", format_cut(I))
    report.kv("image", image)
    return report, 0


def _cmd_breaks(args) -> Tuple[Report, int]:
    descriptor = parse_group(args.group)
    report = Report()
    report.section("break")
    if args.conductor is not None:
        H = parse_cut(args.conductor, descriptor, hull=False)
        try:
            br = break_of(H)
        except ValueError as e:
            raise InputError(str(e))
        report.kv("H", format_cut(H))
        report.kv("break", format_cut(br))
        report.kv("principal", br.kind == "principal")
        return report, 0
    if args.bound is None or args.variant is None:
        raise InputError("breaks needs either --H or both --bound and --variant")
    bound = parse_bound(args.bound, descriptor, hull=False)
    try:
        witness = break_witness(descriptor, args.p, bound, args.variant, depth=args.depth)
    except ValueError as e:
        raise InputError(str(e))
    report.kv("variant", witness.variant)
    report.kv("H", format_cut(witness.swan.conductor))
    report.kv("break", format_cut(witness.break_cut))
    report.kv("principal", witness.break_cut.kind == "principal")
    report.kv("defect", witness.swan.defect)
    return report, 0


def _cmd_construct_defect(args) -> Tuple[Report, int]:
    descriptor = parse_group(args.group)
    cut = parse_cut(args.cut, descriptor, hull=False)
    try:
        model = build_defect_model(descriptor, args.p, cut, depth=args.depth)
    except ValueError as e:
        raise InputError(str(e))
    report = Report()
    report.section("model")
    report.kv("group", str(descriptor))
    report.kv("p", args.p)
    report.kv("C", format_cut(model.conductor))
    report.kv("D", format_cut(model.root_set))
    report.kv("depth", model.depth)
    for i, e in enumerate(model.e_seq):
        report.kv(f"e{i}", format_element(e))
    report.kv("H", format_cut(model.swan.conductor))
    report.kv("defect", model.swan.defect)
    report.kv("break", format_cut(break_of(model.swan.conductor)))

    rng = random.Random(_seed_from(args))
    failures = 0
    try:
        delta_report = verify_delta_bounds(model, samples=args.samples, rng=rng)
    except DeltaBoundError as e:
        report.section("verify")
        report.kv("failures", 1)
        report.kv("detail", str(e))
        return report, 1
    report.section("verify")
    report.kv("samples", delta_report.samples)
    report.kv("monomials", delta_report.monomials_checked)
    report.kv("sigma_fixed", delta_report.sigma_fixed)
    report.kv("failures", failures)

    queries = _limit_queries(model, rng, count=50)
    limit = conductor_limit_check(model, queries)
    report.section("limit")
    report.kv("queries", len(queries))
    report.kv("witnessed", sum(1 for e in limit.entries if e.status == "witnessed"))
    report.kv("below_all", sum(1 for e in limit.entries if e.status == "below-all"))
    report.kv("unresolved", limit.unresolved)
    report.kv("ok", limit.ok)
    return report, 0 if limit.ok else 1


def _limit_queries(model: DefectModel, rng: random.Random, count: int) -> List[GroupElement]:
    qs = [int_scale(model.p, e) for e in model.e_seq]
    while len(qs) < count:
        qs.append(random_positive_element(rng, model.descriptor, span=6))
    return qs


def _cmd_demo_br10(args) -> Tuple[Report, int]:
    descriptor = parse_group(args.group)
    b = parse_element(args.b, descriptor)
    try:
        pair = twin_pair(descriptor, args.p, b, depth=args.depth)
    except ValueError as e:
        raise InputError(str(e))
    H1 = pair.ramified.swan.conductor
    H2 = pair.defect.swan.conductor
    rng = random.Random(_seed_from(args))
    report = Report()
    report.section("br10")
    report.kv("H1", format_cut(H1))
    report.kv("H2", format_cut(H2))
    rows = []
    agreements = 0
    for _ in range(args.samples):
        ideal = random_principal_hull_ideal(rng, descriptor)
        im1, im2 = galois_image(H1, ideal), galois_image(H2, ideal)
        rows.append((format_cut(ideal), im1, im2))
        if im1 == im2:
            agreements += 1
    report.kv("samples", args.samples)
    report.kv("agreements", agreements)
    if args.format == "plain":
        width = max(len(r[0]) for r in rows) if rows else 8
        report.raw(f"{'I'.ljust(width)}  image1   image2   agree")
        for name, im1, im2 in rows[: args.table_rows]:
            report.raw(f"{name.ljust(width)}  {im1.ljust(7)}  {im2.ljust(7)}  {'yes' if im1 == im2 else 'NO'}")
    div = pair.divergence
    im1, im2 = galois_image(H1, div), galois_image(H2, div)
    report.kv("divergence_at", format_cut(div))
    report.kv("image1_at_divergence", im1)
    report.kv("image2_at_divergence", im2)
    code = 0
    if agreements != args.samples or im1 == im2:
        code = 1
        report.kv("check", "FAILED")
    return report, code


def _cmd_separation(args) -> Tuple[Report, int]:
    descriptor = _group_for_separation(args)
    report = Report()
    report.section("separation")
    if args.gaps is not None:
        gaps = tuple(
            parse_element(g.strip(), descriptor, hull=args.hull) for g in args.gaps.split(",") if g.strip()
        )
        try:
            datum = GapDatum(args.degree, gaps)
            bound = separation_bound(datum)
        except ValueError as e:
            raise InputError(str(e))
        report.kv("degree", args.degree)
        report.kv("gaps", ",".join(format_element(g) for g in gaps))
        report.kv("bound", format_cut(bound))
        return report, 0
    if args.gap is None:
        raise InputError("separation needs --gap or --gaps")
    gap = parse_element(args.gap, descriptor, hull=args.hull)
    try:
        pair = connectivity_threshold(gap, args.p)
    except ValueError as e:
        raise InputError(str(e))
    report.kv("gap", format_element(gap))
    report.kv("p", args.p)
    report.kv("connected_at", format_cut(pair.connected_at))
    report.kv("separated_at", format_cut(pair.separated_at))
    return report, 0


def _group_for_separation(args) -> GroupDescriptor:
    if args.group is not None:
        return parse_group(args.group)
    text = args.gap if args.gap is not None else (args.gaps or "")
    if text.lstrip().startswith("q(") or text.lstrip().startswith("q ("):
        return p_inverted(args.p)
    if text.lstrip().startswith("lex"):
        raise InputError("lex gaps need an explicit --group zlex:n")
    if text.lstrip().startswith("quad"):
        raise InputError("quad gaps need an explicit --group quad:d")
    return int_lex(1)


# -- verification suites -------------------------------------------------------------


def _suite_claim2(args, report: Report) -> int:
    descriptor = parse_group(args.group) if args.group else p_inverted(args.p)
    cut = (
        parse_cut(args.cut, descriptor, hull=False)
        if args.cut
        else open_cut(descriptor, random_positive_element(random.Random(_seed_from(args) + 1), descriptor, span=6))
    )
    try:
        model = build_defect_model(descriptor, args.p, cut, depth=args.depth)
        delta_report = verify_delta_bounds(model, samples=args.samples, seed=_seed_from(args))
    except (ValueError, DeltaBoundError) as e:
        report.kv("failures", 1)
        report.kv("detail", str(e))
        return 1
    report.kv("group", str(descriptor))
    report.kv("C", format_cut(cut))
    report.kv("depth", args.depth)
    report.kv("samples", delta_report.samples)
    report.kv("monomials", delta_report.monomials_checked)
    report.kv("failures", 0)
    return 0


def _suite_limits(args, report: Report) -> int:
    descriptor = parse_group(args.group) if args.group else p_inverted(args.p)
    rng = random.Random(_seed_from(args))
    cut = (
        parse_cut(args.cut, descriptor, hull=False)
        if args.cut
        else open_cut(descriptor, random_positive_element(rng, descriptor, span=6))
    )
    failures = 0
    shallow = build_defect_model(descriptor, args.p, cut, depth=2)
    deep = build_defect_model(descriptor, args.p, cut, depth=4)
    queries = _limit_queries(deep, rng, count=50)
    rep_s = conductor_limit_check(shallow, queries)
    rep_d = conductor_limit_check(deep, queries)
    if not (rep_s.ok and rep_d.ok):
        failures += 1
    for es, ed in zip(rep_s.entries, rep_d.entries):
        if es.status == "witnessed" and ed.witness != es.witness:
            failures += 1
    if rep_d.unresolved > rep_s.unresolved:
        failures += 1
    report.kv("queries", len(queries))
    report.kv("unresolved_depth2", rep_s.unresolved)
    report.kv("unresolved_depth4", rep_d.unresolved)
    report.kv("failures", failures)
    return 0 if failures == 0 else 1


def _suite_theorem1(args, report: Report) -> int:
    rng = random.Random(_seed_from(args))
    groups = [int_lex(1), int_lex(2), int_lex(3), p_inverted(2), p_inverted(3), quadratic(2)]
    failures = 0
    trials = 0
    while trials < args.samples:
        descriptor = groups[rng.randrange(len(groups))]
        H = random_group_cut(rng, descriptor, allow_whole=False)
        br = break_of(H)
        ideals = [random_hull_ideal(rng, descriptor) for _ in range(6)] + [br]
        images = {}
        for ideal in ideals:
            im = galois_image(H, ideal)
            images[id(ideal)] = im
            if (im == "full") != br.subset(ideal):
                failures += 1
        # monotone pairs and intersection = subset-minimum
        for a in ideals:
            for b in ideals:
                if a.subset(b) and images[id(a)] == "full" and images[id(b)] != "full":
                    failures += 1
        meet = ideals[0]
        for ideal in ideals[1:]:
            if ideal.subset(meet):
                meet = ideal
        all_full = all(images[id(i)] == "full" for i in ideals)
        if (galois_image(H, meet) == "full") != all_full:
            failures += 1
        trials += len(ideals)
    report.kv("pairs", trials)
    report.kv("failures", failures)
    return 0 if failures == 0 else 1


def _suite_series(args, report: Report) -> int:
    rng = random.Random(_seed_from(args))
    descriptor = p_inverted(args.p)
    from .defect_lab import _random_model_series, build_defect_model as _bdm

    cut = open_cut(descriptor, element(descriptor, 1))
    model = _bdm(descriptor, args.p, cut, depth=3)
    failures = 0
    for _ in range(args.samples):
        f = _random_model_series(model, rng)
        g = _random_model_series(model, rng)
        if not f.is_zero() and not g.is_zero():
            if (f * g).valuation() != f.valuation() + g.valuation():
                failures += 1
            if model.sigma.apply(f).valuation() != f.valuation():
                failures += 1
        nf = norm(model.sigma, f)
        tf = trace(model.sigma, f)
        if not (model.sigma.apply(nf) == nf and model.sigma.apply(tf) == tf):
            failures += 1
    report.kv("samples", args.samples)
    report.kv("failures", failures)
    return 0 if failures == 0 else 1


_SUITES = {
    "claim2": _suite_claim2,
    "limits": _suite_limits,
    "theorem1": _suite_theorem1,
    "series": _suite_series,
}


def _cmd_verify(args) -> Tuple[Report, int]:
    report = Report()
    if args.suite == "all":
        code = 0
        for name, fn in _SUITES.items():
            report.section("verify")
            report.kv("suite", name)
            code = max(code, fn(args, report))
        return report, code
    if args.suite not in _SUITES:
        raise InputError(f"unknown suite {args.suite!r} (choose from {', '.join(_SUITES)}, all)")
    report.section("verify")
    report.kv("suite", args.suite)
    code = _SUITES[args.suite](args, report)
    return report, code


# -- argument wiring -----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramify",
        description="Exact ramification invariants of degree-p cyclic extensions.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(sp, p_required=True):
        sp.add_argument("--p", type=int, required=p_required, help="the residue characteristic")
        sp.add_argument("--seed", type=int, default=0, help="RNG seed (RAMIFY_SEED overrides)")
        sp.add_argument("--format", choices=("plain", "kv"), default="plain")

    sp = sub.add_parser("classify", help="conductor data of one extension")
    sp.add_argument("--group", required=True)
    sp.add_argument("--as", dest="artin_schreier", help="Artin-Schreier right-hand side, as a series literal")
    sp.add_argument("--case", choices=("i", "ii", "iii"), help="symbolic equal-characteristic case")
    sp.add_argument("--kummer", choices=("i", "ii", "iii", "iv", "v"), help="symbolic Kummer case")
    sp.add_argument("--c", help="conductor value for --case")
    sp.add_argument("--e0", help="value of zeta_p - 1 for --kummer")
    sp.add_argument("--va", help="value of a for Kummer case i")
    sp.add_argument("--vb", help="value of b for Kummer cases iii/iv")
    sp.add_argument("--unit", help="residue unit name for cases ii/iv")
    common(sp)

    sp = sub.add_parser("eval", help="image of the ramification group at a test ideal")
    sp.add_argument("--group", required=True)
    sp.add_argument("--H", dest="conductor", required=True, help="conductor cut over the group")
    sp.add_argument("--I", dest="ideal", required=True, help="test ideal over the hull")
    common(sp, p_required=False)

    sp = sub.add_parser("breaks", help="locate the ramification jump")
    sp.add_argument("--group", required=True)
    sp.add_argument("--H", dest="conductor", help="conductor cut (direct mode)")
    sp.add_argument("--bound", help="break bound (construction mode)")
    sp.add_argument("--variant", choices=(VARIANT_CLOSED, VARIANT_OPEN, VARIANT_OPEN_IRRATIONAL))
    sp.add_argument("--depth", type=int, default=4)
    common(sp, p_required=False)
    sp.set_defaults(p=2)

    sp = sub.add_parser("construct-defect", help="build and verify a defect model")
    sp.add_argument("--group", required=True)
    sp.add_argument("--cut", required=True, help="target conductor cut, e.g. 'gt(q(1))'")
    sp.add_argument("--depth", type=int, default=3)
    sp.add_argument("--samples", type=int, default=50)
    common(sp)

    sp = sub.add_parser("demo-br10", help="principal ideals cannot tell the twin pair apart")
    sp.add_argument("--group", required=True)
    sp.add_argument("--b", required=True, help="half-conductor value; H1 = ge at p*b, H2 = gt at p*b")
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--table-rows", type=int, default=12)
    sp.add_argument("--depth", type=int, default=3)
    common(sp)

    sp = sub.add_parser("separation", help="connectivity and separation thresholds")
    sp.add_argument("--group")
    sp.add_argument("--gap", help="generator gap value")
    sp.add_argument("--gaps", help="comma-separated gap values for the degree-n bound")
    sp.add_argument("--degree", type=int, default=2)
    sp.add_argument("--hull", action="store_true", help="read gaps as hull elements")
    common(sp)

    sp = sub.add_parser("verify", help="seeded verification suites")
    sp.add_argument("--suite", required=True, help=f"one of: {', '.join(_SUITES)}, all")
    sp.add_argument("--group")
    sp.add_argument("--cut")
    sp.add_argument("--depth", type=int, default=3)
    sp.add_argument("--samples", type=int, default=200)
    common(sp)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    handlers = {
        "classify": _cmd_classify,
        "eval": _cmd_eval,
        "breaks": _cmd_breaks,
        "construct-defect": _cmd_construct_defect,
        "demo-br10": _cmd_demo_br10,
        "separation": _cmd_separation,
        "verify": _cmd_verify,
    }
    try:
        report, code = handlers[args.subcommand](args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CheckFailure as e:
        print(f"check failed: {e}", file=sys.stderr)
        return 1
    sys.stdout.write(report.text())
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
