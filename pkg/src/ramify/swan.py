"""Conductor ideals of degree-p cyclic extensions and their consequences.

For a degree-p cyclic extension L/K of Henselian valued fields of residue
characteristic p, the wild ramification of L/K is measured by an ideal of
the base ring (a `Cut` over the value group) together with a symbolic
differential form, the refined Swan conductor.  This module computes both
from either of two inputs:

* a concrete Artin-Schreier datum f (equal characteristic, alpha^p - alpha
  = f), normalized by `artin_schreier_reduce`;
* a symbolic case descriptor (equal-characteristic or Kummer/mixed
  characteristic), which names the shape of the extension without a series
  model.

From the conductor cut everything else follows: `galois_image` evaluates
which upper ramification groups surject onto the Galois group, `break_of`
locates the unique jump, and `plan_log_smooth` proposes value-group
enlargements that kill the ramification detected by the conductor form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple, Union

from .cuts import Cut, open_cut, principal_cut, whole_cut
from .ordered_group import (
    GroupDescriptor,
    GroupElement,
    KIND_INT_LEX,
    KIND_P_INVERTED,
    KIND_QUADRATIC,
    divide_exact,
    element,
    int_scale,
    is_positive,
    neg,
    sign,
    zero,
)
from .series_field import (
    CoeffField,
    FieldElement,
    SeriesElement,
    is_pth_power,
    t_term,
)

RESIDUE_TRIVIAL = "trivial"
RESIDUE_INSEP = "insep-p"

FULL_IMAGE = "full"
TRIVIAL_IMAGE = "trivial"


class UndeterminedError(Exception):
    """Raised when a reduction exhausts its budget without a defect model
    explaining the non-termination."""


@dataclass(frozen=True)
class ValueClass:
    """dlog of a monomial of value gamma, as a symbol."""

    gamma: GroupElement


@dataclass(frozen=True)
class UnitSymbol:
    """dlog of a residue unit that is not a p-th power, as a symbol."""

    name: str


DlogTerm = Tuple[int, Union[ValueClass, UnitSymbol]]


@dataclass(frozen=True)
class RswSymbol:
    """Refined Swan conductor: where a generator of the conductor ideal is
    sent, expressed as an F_p-combination of dlog symbols."""

    conductor_generator: GroupElement
    dlog_terms: Tuple[DlogTerm, ...]


@dataclass(frozen=True)
class SwanData:
    """Everything the conductor detects about one extension."""

    conductor: Cut
    rsw: Optional[RswSymbol]
    defect: bool
    e_pred: int
    residue_pred: str
    unramified: bool
    case: Optional[str] = None


@dataclass(frozen=True)
class ArtinSchreierDatum:
    """alpha^p - alpha = f with f in the model field."""

    f: FieldElement

    @property
    def p(self) -> int:
        return self.f.field.p


@dataclass(frozen=True)
class EqualCharSymbolic:
    """Symbolic equal-characteristic descriptor.

    case "i":   v(f) = -c not p-divisible; optionally a unit factor.
    case "ii":  v(f) = -c p-divisible, leading residue not a p-th power.
    case "iii": f integral, residue outside the Artin-Schreier image.
    """

    p: int
    case: str
    c: Optional[GroupElement] = None
    unit_name: Optional[str] = None
    descriptor: Optional[GroupDescriptor] = None


@dataclass(frozen=True)
class KummerSymbolic:
    """Symbolic descriptor for L = K(a^(1/p)) with zeta_p in the base.

    e0 is the value of zeta_p - 1.  Cases follow the standard table:
    "i" value of a not p-divisible, "ii" residue of a not a p-th power,
    "iii"/"iv" a = 1 + b with 0 < v(b) < p*e0 (value class of b not a p-th
    power, resp. b = g^p * u), "v" a = 1 + (zeta_p - 1)^p * b with residue
    datum outside the Artin-Schreier image (unramified).
    """

    p: int
    case: str
    e0: GroupElement
    v_a: Optional[GroupElement] = None
    v_b: Optional[GroupElement] = None
    unit_name: Optional[str] = None


@dataclass(frozen=True)
class ReduceResult:
    status: str  # "reduced" or "exhausted"
    f: FieldElement
    case: Optional[str]
    iterations: int


def artin_schreier_reduce(f: Union[FieldElement, SeriesElement], max_iters: int = 64) -> ReduceResult:
    """Normalize an Artin-Schreier right-hand side by substitutions
    f -> f - (g^p - g).

    Each substitution removes a negative p-divisible leading term whose
    residue is a p-th power, and strictly raises the valuation.  The loop
    stops at a case-"i"/"ii"/"iii" normal form, or reports exhaustion
    (which over a dense group signals a defect extension).
    """
    if isinstance(f, SeriesElement):
        f = FieldElement(f)
    p = f.field.p
    for it in range(max_iters):
        if f.is_zero():
            return ReduceResult("reduced", f, "iii", it)
        v = f.valuation()
        if sign(v) >= 0:
            return ReduceResult("reduced", f, "iii", it)
        w = divide_exact(v, p)
        if w is None:
            return ReduceResult("reduced", f, "i", it)
        flag, root = is_pth_power(f.field, f.leading_coeff())
        if not flag:
            return ReduceResult("reduced", f, "ii", it)
        g = FieldElement(
            t_term(f.field, f.descriptor, w, root.num),
            t_term(f.field, f.descriptor, zero(f.descriptor), root.den),
        )
        f = f - (g ** p - g)
    return ReduceResult("exhausted", f, None, max_iters)


def _poly_label(poly) -> str:
    out = []
    for exps, c in sorted(poly.terms()):
        factors = [str(int(c) % poly.ring.domain.mod)] if int(c) % poly.ring.domain.mod != 1 or not any(exps) else []
        for g, e in zip(poly.ring.gens, exps):
            if e == 1:
                factors.append(str(g))
            elif e > 1:
                factors.append(f"{g}^{e}")
        out.append("*".join(factors))
    return " + ".join(out) if out else "0"


def _coeff_label(field: CoeffField, coeff) -> str:
    if _poly_is_constant(coeff.den):
        return _poly_label(coeff.num)
    return f"({_poly_label(coeff.num)})/({_poly_label(coeff.den)})"


def _poly_is_constant(poly) -> bool:
    return all(not any(e) for e, _ in poly.terms())


def _is_constant_coeff(coeff) -> bool:
    return _poly_is_constant(coeff.num) and _poly_is_constant(coeff.den)


def classify_equal_char(
    datum: Union[ArtinSchreierDatum, FieldElement, SeriesElement, ReduceResult, EqualCharSymbolic],
    provenance=None,
) -> SwanData:
    """Conductor data of alpha^p - alpha = f.

    Accepts a concrete datum (reduced on the fly), a finished
    ``ReduceResult`` or a symbolic case descriptor.  An exhausted reduction
    is only accepted when a defect-model provenance explains it; otherwise
    it raises ``UndeterminedError``.
    """
    if isinstance(datum, EqualCharSymbolic):
        return _classify_equal_char_symbolic(datum)
    if isinstance(datum, ArtinSchreierDatum):
        datum = datum.f
    if isinstance(datum, (FieldElement, SeriesElement)):
        datum = artin_schreier_reduce(datum)
    if not isinstance(datum, ReduceResult):
        raise TypeError(f"cannot classify {type(datum).__name__}")

    if datum.status == "exhausted":
        if provenance is None:
            raise UndeterminedError(
                "reduction exhausted its budget with no defect model attached"
            )
        return SwanData(
            conductor=provenance.conductor,
            rsw=None,
            defect=True,
            e_pred=1,
            residue_pred=RESIDUE_TRIVIAL,
            unramified=False,
            case=None,
        )

    f = datum.f
    if datum.case == "iii":
        return SwanData(
            conductor=whole_cut(f.descriptor),
            rsw=None,
            defect=False,
            e_pred=1,
            residue_pred=RESIDUE_TRIVIAL,
            unramified=True,
            case="iii",
        )
    v = f.valuation()
    c = neg(v)
    lead = f.leading_coeff()
    unit_terms: Tuple[DlogTerm, ...] = ()
    if not _is_constant_coeff(lead):
        unit_terms = ((1, UnitSymbol(_coeff_label(f.field, lead))),)
    if datum.case == "i":
        rsw = RswSymbol(c, unit_terms + ((1, ValueClass(v)),))
        return SwanData(principal_cut(c), rsw, False, f.field.p, RESIDUE_TRIVIAL, False, "i")
    # case "ii": the value part of dlog(f) is p-divisible, hence invisible
    rsw = RswSymbol(c, unit_terms)
    return SwanData(principal_cut(c), rsw, False, 1, RESIDUE_INSEP, False, "ii")


def _classify_equal_char_symbolic(desc: EqualCharSymbolic) -> SwanData:
    if desc.case == "iii":
        descriptor = desc.descriptor if desc.descriptor is not None else (
            desc.c.descriptor if desc.c is not None else None
        )
        if descriptor is None:
            raise ValueError("case iii needs a group descriptor")
        return SwanData(whole_cut(descriptor), None, False, 1, RESIDUE_TRIVIAL, True, "iii")
    if desc.c is None or not is_positive(desc.c):
        raise ValueError(f"case {desc.case} needs a positive conductor value")
    c = desc.c
    unit_terms: Tuple[DlogTerm, ...] = ()
    if desc.unit_name:
        unit_terms = ((1, UnitSymbol(desc.unit_name)),)
    if desc.case == "i":
        if divide_exact(c, desc.p) is not None:
            raise ValueError(f"case i needs a non-p-divisible value, got {c.value}")
        rsw = RswSymbol(c, unit_terms + ((1, ValueClass(neg(c))),))
        return SwanData(principal_cut(c), rsw, False, desc.p, RESIDUE_TRIVIAL, False, "i")
    if desc.case == "ii":
        if divide_exact(c, desc.p) is None:
            raise ValueError(f"case ii needs a p-divisible value, got {c.value}")
        if not desc.unit_name:
            raise ValueError("case ii needs the residue unit's name")
        return SwanData(principal_cut(c), RswSymbol(c, unit_terms), False, 1, RESIDUE_INSEP, False, "ii")
    raise ValueError(f"unknown equal-characteristic case {desc.case!r}")


def classify_kummer_symbolic(desc: KummerSymbolic) -> SwanData:
    """Conductor data of L = K(a^(1/p)) from a symbolic case descriptor."""
    if not is_positive(desc.e0):
        raise ValueError("e0 = v(zeta_p - 1) must be positive")
    pe0 = int_scale(desc.p, desc.e0)
    if desc.case == "i":
        if desc.v_a is None or divide_exact(desc.v_a, desc.p) is not None:
            raise ValueError("case i needs v(a) outside p times the value group")
        rsw = RswSymbol(pe0, ((1, ValueClass(desc.v_a)),))
        return SwanData(principal_cut(pe0), rsw, False, desc.p, RESIDUE_TRIVIAL, False, "i")
    if desc.case == "ii":
        if not desc.unit_name:
            raise ValueError("case ii needs the residue unit's name")
        rsw = RswSymbol(pe0, ((1, UnitSymbol(desc.unit_name)),))
        return SwanData(principal_cut(pe0), rsw, False, 1, RESIDUE_INSEP, False, "ii")
    if desc.case in ("iii", "iv"):
        v_b = desc.v_b
        if v_b is None or not is_positive(v_b) or not is_positive(pe0 - v_b):
            raise ValueError("cases iii/iv need 0 < v(b) < p*v(zeta_p - 1)")
        gen = pe0 - v_b
        if desc.case == "iii":
            if divide_exact(v_b, desc.p) is not None:
                raise ValueError("case iii needs v(b) outside p times the value group")
            rsw = RswSymbol(gen, ((1, ValueClass(v_b)),))
            return SwanData(principal_cut(gen), rsw, False, desc.p, RESIDUE_TRIVIAL, False, "iii")
        if divide_exact(v_b, desc.p) is None:
            raise ValueError("case iv needs v(b) in p times the value group")
        if not desc.unit_name:
            raise ValueError("case iv needs the residue unit's name")
        rsw = RswSymbol(gen, ((1, UnitSymbol(desc.unit_name)),))
        return SwanData(principal_cut(gen), rsw, False, 1, RESIDUE_INSEP, False, "iv")
    if desc.case == "v":
        return SwanData(whole_cut(desc.e0.descriptor), None, False, 1, RESIDUE_TRIVIAL, True, "v")
    raise ValueError(f"unknown Kummer case {desc.case!r}")


# -- the conductor form in the value group ------------------------------------


def value_group_image(
    rsw: RswSymbol,
    p: int,
    in_p_multiples: Optional[Callable[[GroupElement], bool]] = None,
) -> Tuple[Tuple[int, GroupElement], ...]:
    """Image of the conductor form in k tensor Gamma: unit symbols vanish,
    p-fold classes vanish, equal classes combine mod p."""
    if in_p_multiples is None:
        in_p_multiples = lambda g: divide_exact(g, p) is not None
    combined = {}
    order = []
    for coeff, term in rsw.dlog_terms:
        if not isinstance(term, ValueClass):
            continue
        g = term.gamma
        if g not in combined:
            combined[g] = 0
            order.append(g)
        combined[g] = (combined[g] + coeff) % p
    out = []
    for g in order:
        if combined[g] % p == 0:
            continue
        if in_p_multiples(g):
            continue
        out.append((combined[g] % p, g))
    return tuple(out)


# -- ramification group evaluation ---------------------------------------------


def galois_image(conductor: Cut, ideal: Cut) -> str:
    """Image of the upper ramification group at a test ideal over the
    maximal immediate extension: full exactly when the ideal's trace on
    the base contains the conductor cut."""
    if conductor.over_hull:
        raise ValueError("the conductor cut lives over the group")
    if not ideal.over_hull:
        raise ValueError("test ideals live over the divisible hull")
    if ideal.descriptor != conductor.descriptor:
        raise ValueError("conductor and ideal live over different groups")
    if ideal.is_whole:
        raise ValueError("the unit ideal is not a test ideal")
    return FULL_IMAGE if conductor.subset(ideal.restrict_to_group()) else TRIVIAL_IMAGE


def break_of(conductor: Cut) -> Cut:
    """The unique jump of the ramification filtration: the least hull ideal
    whose trace contains the conductor cut."""
    if conductor.is_whole:
        raise ValueError("an unramified extension has no jump")
    return conductor.hull_closure()


def wild_inertia_check(data: SwanData) -> bool:
    """True when the group at the open ideal above zero is everything,
    which identifies it with the wild inertia subgroup; matches
    ``not data.unramified``."""
    maximal_test = open_cut(data.conductor.descriptor, zero(data.conductor.descriptor, hull=True), over_hull=True)
    return galois_image(data.conductor, maximal_test) == FULL_IMAGE


# -- base change and the log-smooth planner -----------------------------------


def base_change(conductor: Cut, target: GroupDescriptor) -> Cut:
    """Transport a conductor cut along a supported value-group extension.

    Supported embeddings: identity, int_lex(1) into a dense group, and
    rational inclusion of p_inverted into quadratic.  Conductor cuts only
    scale like ideals (generators map to generators), so the bound value is
    preserved.
    """
    src = conductor.descriptor
    if target == src:
        return conductor
    if src.kind == KIND_INT_LEX and src.param == 1 and target.kind in (KIND_P_INVERTED, KIND_QUADRATIC):
        kind = conductor.kind
        if kind == "whole":
            return whole_cut(target)
        value = conductor.bound.prefix[0]
        if kind == "principal":
            return principal_cut(element(target, value))
        return open_cut(target, element(target, value))
    if src.kind == KIND_P_INVERTED and target.kind == KIND_QUADRATIC:
        if conductor.kind == "whole":
            return whole_cut(target)
        b = conductor.bound
        if not b.value.is_rational:
            raise ValueError("irrational bounds do not embed rationally")
        lifted = element(target, (b.value.a, 0))
        return principal_cut(lifted) if b.inclusive else open_cut(target, lifted)
    raise ValueError(f"unsupported base change {src} -> {target}")


@dataclass(frozen=True)
class Type2Move:
    """Adjoin an e-th root of an element with the given value class."""

    e: int
    target: GroupElement


@dataclass(frozen=True)
class EnlargedGroup:
    """The value group after type-2 moves: Gamma plus the targets' e-th
    divisions.  Only membership in p times the enlarged group is ever
    needed, and that reduces to a finite search."""

    base: GroupDescriptor
    p: int
    targets: Tuple[GroupElement, ...]

    def in_p_multiples(self, gamma: GroupElement) -> bool:
        for combo in itertools.product(range(self.p), repeat=len(self.targets)):
            shifted = gamma
            for cj, tj in zip(combo, self.targets):
                shifted = shifted - int_scale(cj, tj)
            if divide_exact(shifted, self.p) is not None:
                return True
        return False


def plan_log_smooth(rsw: RswSymbol, p: int) -> Tuple[Type2Move, ...]:
    """One degree-p root adjunction per surviving value class of the
    conductor form.  After the moves every class becomes p-divisible, so
    the transported form vanishes and the extension stops being totally
    ramified."""
    return tuple(Type2Move(p, g) for _, g in value_group_image(rsw, p))


def transported_value_image(
    rsw: RswSymbol, p: int, moves: Sequence[Type2Move]
) -> Tuple[Tuple[int, GroupElement], ...]:
    """The conductor form's value classes after enlarging the group."""
    if not moves:
        return value_group_image(rsw, p)
    base = moves[0].target.descriptor
    enlarged = EnlargedGroup(base, p, tuple(m.target for m in moves))
    return value_group_image(rsw, p, enlarged.in_p_multiples)
