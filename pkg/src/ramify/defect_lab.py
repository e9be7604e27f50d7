"""Constructions with prescribed conductor cuts, including defect extensions.

Two builders cover the two shapes a conductor cut can take over a dense
value group:

* `build_principal_case` realizes a principal cut Principal(c) by a
  concrete Artin-Schreier datum (no defect);
* `build_defect_model` realizes a cut with no least element by an order-p
  automorphism sigma of a group-ring model.  No single Artin-Schreier
  datum can do this: the reduction loop keeps lowering the leading term
  forever.  The model instead truncates the limit at a chosen depth.

The model ring is F_p[x_0, ..., x_N] tensored with the group algebra of
Gamma, with sigma(x_i) = x_i + t^{e(i)} for a strictly decreasing sequence
e(0) > e(1) > ... > e(N) inside the p-th root set of the target cut.  The
checks `verify_delta_bounds` and `conductor_limit_check` confirm, sample
by sample, that sigma moves the ring exactly as slowly as the cut demands.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .cuts import Cut, Surd, open_cut, principal_cut
from .ordered_group import (
    GroupDescriptor,
    GroupElement,
    KIND_P_INVERTED,
    compare,
    divide_exact,
    element,
    int_scale,
    is_positive,
    neg,
    to_hull,
)
from .series_field import (
    CoeffField,
    FieldElement,
    SeriesElement,
    SigmaSpec,
    t_term,
)
from .swan import RESIDUE_TRIVIAL, SwanData, classify_equal_char


class DeltaBoundError(Exception):
    """A sampled element moved faster under sigma than the model allows."""


@dataclass(eq=False)
class DefectModel:
    """A truncated defect extension with conductor cut `conductor`."""

    descriptor: GroupDescriptor
    p: int
    conductor: Cut
    root_set: Cut
    depth: int
    e_seq: Tuple[GroupElement, ...]
    field: CoeffField
    sigma: SigmaSpec
    swan: SwanData


@dataclass(frozen=True)
class PrincipalCase:
    """A concrete datum realizing a principal conductor cut."""

    f: FieldElement
    swan: SwanData
    field: CoeffField


def build_principal_case(descriptor: GroupDescriptor, p: int, c: GroupElement) -> PrincipalCase:
    """Datum alpha^p - alpha = f with conductor cut Principal(c).

    Uses f = t^(-c) when c is not p-divisible, else f = u * t^(-c) with a
    fresh unit u whose residue is not a p-th power.
    """
    if c.descriptor != descriptor:
        raise ValueError("conductor value lives over a different group")
    if not is_positive(c):
        raise ValueError("conductor value must be positive")
    if divide_exact(c, p) is None:
        field = CoeffField(p)
        f = FieldElement(t_term(field, descriptor, neg(c)))
    else:
        field = CoeffField(p, units=("u",))
        f = FieldElement(t_term(field, descriptor, neg(c), field.unit_gen("u")))
    swan = classify_equal_char(f)
    if swan.conductor != principal_cut(c):
        raise RuntimeError("classification disagrees with the construction")
    return PrincipalCase(f, swan, field)


# -- grid sequences converging to the root-set bound ---------------------------


def _grid_base(descriptor: GroupDescriptor, p: int) -> int:
    if descriptor.kind == KIND_P_INVERTED:
        return descriptor.param
    return p


def _surd_floor(s: Surd) -> int:
    if s.is_rational:
        return s.a.numerator // s.a.denominator
    import math

    est = math.floor(float(s.a) + float(s.b) * math.sqrt(s.d))
    while s.cmp(Surd(Fraction(est))) < 0:
        est -= 1
    while s.cmp(Surd(Fraction(est + 1))) >= 0:
        est += 1
    return est


def _grid_candidate(bound: Surd, q: int, j: int) -> Fraction:
    """Least element of (1/q^j) * Z strictly above `bound`."""
    return Fraction(_surd_floor(bound.scale(q ** j)) + 1, q ** j)


def _grid_sequence(
    descriptor: GroupDescriptor, p: int, bound: Surd, depth: int
) -> Tuple[GroupElement, ...]:
    """Strictly decreasing e(0) > ... > e(depth), all strictly above
    `bound`, drawn from the q-power refinement grid of the group.

    The start index is the least grid level whose candidate already sits
    strictly below its predecessor's; stalls (levels that repeat the
    previous candidate) are skipped.
    """
    q = _grid_base(descriptor, p)
    k0 = 0
    while _grid_candidate(bound, q, k0 + 1) >= _grid_candidate(bound, q, k0):
        k0 += 1
        if k0 > 512:
            raise RuntimeError("no refinement below the bound; grid degenerate")
    values: List[Fraction] = [_grid_candidate(bound, q, k0)]
    j = k0
    while len(values) <= depth:
        j += 1
        cand = _grid_candidate(bound, q, j)
        if cand < values[-1]:
            values.append(cand)
    return tuple(element(descriptor, v) for v in values)


def build_defect_model(
    descriptor: GroupDescriptor, p: int, conductor: Cut, depth: int = 4
) -> DefectModel:
    """Order-p automorphism model whose conductor cut is `conductor`.

    The cut must be proper, have no least element, and pass the
    realizability test; in particular the group must be dense, which is
    what rules out cuts like the positive quadrant frontier over a lex
    product of two copies of the integers.
    """
    if conductor.over_hull:
        raise ValueError("the conductor cut lives over the group")
    if conductor.descriptor != descriptor:
        raise ValueError("cut lives over a different group")
    if conductor.is_whole:
        raise ValueError("the whole-group cut is the unramified case, not a defect")
    if conductor.min_element() is not None:
        raise ValueError("cut has a least element; use build_principal_case")
    if not conductor.is_realizable_conductor(p):
        raise ValueError("cut cannot occur as a conductor cut for this p")
    if not descriptor.is_dense:
        raise ValueError("defect extensions need a dense value group")
    root_set = conductor.pth_root_set(p)
    if depth < 1:
        raise ValueError("depth must be at least 1")
    e_seq = _grid_sequence(descriptor, p, root_set.bound.value, depth)
    for e in e_seq:
        if not root_set.contains(e) or not conductor.contains(int_scale(p, e)):
            raise RuntimeError("grid sequence escaped the root set")
    field = CoeffField(p, tags=e_seq)
    sigma = SigmaSpec(field, descriptor)
    swan = SwanData(
        conductor=conductor,
        rsw=None,
        defect=True,
        e_pred=1,
        residue_pred=RESIDUE_TRIVIAL,
        unramified=False,
        case=None,
    )
    return DefectModel(descriptor, p, conductor, root_set, depth, e_seq, field, sigma, swan)


# -- sampled verification -------------------------------------------------------


def _random_gamma(model: DefectModel, rng: random.Random) -> GroupElement:
    q = _grid_base(model.descriptor, model.p)
    j = rng.randint(0, model.depth + 3)
    a = Fraction(rng.randint(-8, 8), q ** j)
    if model.descriptor.kind == KIND_P_INVERTED:
        return element(model.descriptor, a)
    b = Fraction(rng.randint(-2, 2), q ** rng.randint(0, 2))
    return element(model.descriptor, (a, b))


def _random_poly(field: CoeffField, rng: random.Random):
    n = len(field.tags)
    poly = field.ring.zero
    for _ in range(rng.randint(1, 2)):
        exps = [0] * len(field.ring.gens)
        for i in rng.sample(range(n), rng.randint(1, min(2, n))):
            exps[i] = rng.randint(1, 2)
        poly += field.ring.from_dict({tuple(exps): field.ring.domain(rng.randint(1, field.p - 1) if field.p > 2 else 1)})
    return poly


def _random_model_series(model: DefectModel, rng: random.Random) -> SeriesElement:
    terms = {}
    for _ in range(rng.randint(1, 3)):
        gamma = _random_gamma(model, rng)
        poly = _random_poly(model.field, rng)
        terms[gamma] = terms.get(gamma, model.field.ring.zero) + poly
    return SeriesElement(model.field, model.descriptor, terms)


def _min_occurring_tag(model: DefectModel, s: SeriesElement) -> Optional[GroupElement]:
    best: Optional[GroupElement] = None
    ntags = len(model.field.tags)
    for _, poly in s.terms():
        for exps, _ in poly.terms():
            for i in range(ntags):
                if exps[i]:
                    tag = model.field.tags[i]
                    if best is None or compare(tag, best) < 0:
                        best = tag
    return best


@dataclass(frozen=True)
class DeltaReport:
    samples: int
    monomials_checked: int
    sigma_fixed: int


def verify_delta_bounds(
    model: DefectModel, samples: int = 200, seed: int = 0, rng: Optional[random.Random] = None
) -> DeltaReport:
    """Check, on random ring elements f, that sigma(f) - f is as small as
    the model promises.

    Per monomial m: every term of sigma(m) - m has value at least
    v(m) + min tag occurring in m.  Per element f: v(sigma(f) - f) is at
    least v(f) + min tag occurring in f.  Violations raise
    ``DeltaBoundError``; they would mean sigma is not an automorphism of
    the claimed shape.
    """
    if rng is None:
        rng = random.Random(seed)
    checked = 0
    fixed = 0
    for _ in range(samples):
        f = _random_model_series(model, rng)
        if f.is_zero():
            continue
        for gamma, poly in f.terms():
            for exps, coeff in poly.terms():
                mono = SeriesElement(
                    model.field,
                    model.descriptor,
                    {gamma: model.field.ring.from_dict({exps: coeff})},
                )
                tag = _min_occurring_tag(model, mono)
                if tag is None:
                    if not model.sigma.delta(mono).is_zero():
                        raise DeltaBoundError("sigma moved a tag-free monomial")
                    continue
                floor = gamma + tag
                delta = model.sigma.delta(mono)
                for gp in delta.support():
                    if compare(gp, floor) < 0:
                        raise DeltaBoundError(
                            f"monomial at value {gamma.value} moved by {gp.value}, "
                            f"below the floor {floor.value}"
                        )
                checked += 1
        delta_f = model.sigma.delta(f)
        if delta_f.is_zero():
            fixed += 1
            continue
        tag = _min_occurring_tag(model, f)
        if tag is None:
            raise DeltaBoundError("sigma moved an element with no tagged variable")
        if compare(delta_f.valuation(), f.valuation() + tag) < 0:
            raise DeltaBoundError(
                f"element with value {f.valuation().value} moved by "
                f"{delta_f.valuation().value}"
            )
    return DeltaReport(samples, checked, fixed)


# -- the conductor cut as a limit ----------------------------------------------

STATUS_WITNESSED = "witnessed"
STATUS_BELOW_ALL = "below-all"
STATUS_UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class LimitEntry:
    gamma: GroupElement
    member: bool
    status: str
    witness: Optional[int]


@dataclass(frozen=True)
class LimitReport:
    ok: bool
    entries: Tuple[LimitEntry, ...]

    @property
    def unresolved(self) -> int:
        return sum(1 for e in self.entries if e.status == STATUS_UNRESOLVED)


def conductor_limit_check(model: DefectModel, queries: Sequence[GroupElement]) -> LimitReport:
    """Compare cut membership against the thresholds p*e(i).

    A member of the cut should dominate some threshold (the witness, taken
    with least index so that deepening the model never changes it); a
    non-member must sit below every threshold.  A member that dominates no
    threshold yet is unresolved, not wrong: a deeper model resolves it.
    """
    thresholds = [int_scale(model.p, e) for e in model.e_seq]
    entries = []
    ok = True
    for gamma in queries:
        member = model.conductor.contains(gamma)
        witness = None
        for i, th in enumerate(thresholds):
            if compare(gamma, th) >= 0:
                witness = i
                break
        if member:
            status = STATUS_WITNESSED if witness is not None else STATUS_UNRESOLVED
        else:
            if witness is not None:
                status = "inconsistent"
                ok = False
            else:
                status = STATUS_BELOW_ALL
        entries.append(LimitEntry(gamma, member, status, witness))
    return LimitReport(ok, tuple(entries))


# -- twin constructions ---------------------------------------------------------


@dataclass(eq=False)
class TwinPair:
    """Same principal-ideal trace, different conductor cuts.

    The ramified side has conductor Principal(p*b); the defect side has
    the open cut above p*b.  Every principal hull ideal evaluates the two
    identically; the open hull ideal at p*b tells them apart.
    """

    ramified: PrincipalCase
    defect: DefectModel
    divergence: Cut


def twin_pair(descriptor: GroupDescriptor, p: int, b: GroupElement, depth: int = 4) -> TwinPair:
    if not is_positive(b):
        raise ValueError("b must be positive")
    pb = int_scale(p, b)
    ramified = build_principal_case(descriptor, p, pb)
    defect = build_defect_model(descriptor, p, open_cut(descriptor, pb), depth)
    divergence = open_cut(descriptor, to_hull(pb), over_hull=True)
    return TwinPair(ramified, defect, divergence)


# -- one-stop break witnesses ---------------------------------------------------

VARIANT_CLOSED = "closed"
VARIANT_OPEN = "open"
VARIANT_OPEN_IRRATIONAL = "open-irrational"


@dataclass(eq=False)
class BreakWitness:
    variant: str
    swan: SwanData
    break_cut: Cut
    source: Union[PrincipalCase, DefectModel]


def break_witness(
    descriptor: GroupDescriptor,
    p: int,
    bound: Union[GroupElement, Surd],
    variant: str = VARIANT_CLOSED,
    depth: int = 4,
) -> BreakWitness:
    """A construction whose ramification jump sits exactly at `bound`.

    closed: principal datum, jump at the closed hull ideal at `bound`.
    open: defect model, jump at the open hull ideal at `bound`.
    open-irrational: defect model over an irrational bound given as a Surd.
    """
    from .swan import break_of

    if variant == VARIANT_CLOSED:
        if not isinstance(bound, GroupElement):
            raise ValueError("closed variant needs a group element")
        case = build_principal_case(descriptor, p, bound)
        return BreakWitness(variant, case.swan, break_of(case.swan.conductor), case)
    if variant == VARIANT_OPEN:
        if not isinstance(bound, GroupElement):
            raise ValueError("open variant needs a group element")
        cut = open_cut(descriptor, bound)
    elif variant == VARIANT_OPEN_IRRATIONAL:
        if not isinstance(bound, Surd) or bound.is_rational:
            raise ValueError("open-irrational variant needs an irrational Surd")
        cut = open_cut(descriptor, bound)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    model = build_defect_model(descriptor, p, cut, depth)
    return BreakWitness(variant, model.swan, break_of(model.swan.conductor), model)
