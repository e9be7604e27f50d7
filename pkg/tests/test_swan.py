from fractions import Fraction
from types import SimpleNamespace

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from ramify.cuts import open_cut, principal_cut, whole_cut
from ramify.ordered_group import element, hull_element, int_lex, p_inverted, quadratic
from ramify.series_field import CoeffField, FieldElement, t_term, variable_series
from ramify.swan import (
    ArtinSchreierDatum,
    EnlargedGroup,
    EqualCharSymbolic,
    FULL_IMAGE,
    KummerSymbolic,
    RESIDUE_INSEP,
    RESIDUE_TRIVIAL,
    RswSymbol,
    TRIVIAL_IMAGE,
    Type2Move,
    UndeterminedError,
    UnitSymbol,
    ValueClass,
    artin_schreier_reduce,
    base_change,
    break_of,
    classify_equal_char,
    classify_kummer_symbolic,
    galois_image,
    plan_log_smooth,
    transported_value_image,
    value_group_image,
    wild_inertia_check,
)

from .strategies import descriptors, group_cuts, hull_ideals

Z1 = int_lex(1)
Z2 = int_lex(2)
ZP2 = p_inverted(2)
QD2 = quadratic(2)

F2 = CoeffField(2, units=("u",))
F3 = CoeffField(3, units=("u",))


def tpow(field, descriptor, n, coeff=1):
    return FieldElement(t_term(field, descriptor, element(descriptor, n), coeff))


# -- normalization ------------------------------------------------------------------


def test_reduce_strips_pth_power_lead():
    f = tpow(F2, Z1, -4) + tpow(F2, Z1, -3)
    res = artin_schreier_reduce(f)
    assert res.status == "reduced"
    assert res.case == "i"
    assert res.iterations == 1
    assert res.f.valuation() == element(Z1, -3)


def test_reduce_terminal_cases():
    assert artin_schreier_reduce(tpow(F2, Z1, -3)).case == "i"
    u = FieldElement(variable_series(F2, Z1, F2.unit_gen("u")))
    assert artin_schreier_reduce(u * tpow(F2, Z1, -2)).case == "ii"
    assert artin_schreier_reduce(tpow(F2, Z1, 2)).case == "iii"
    assert artin_schreier_reduce(tpow(F2, Z1, 0)).case == "iii"
    zero_f = tpow(F2, Z1, 1) - tpow(F2, Z1, 1)
    assert artin_schreier_reduce(zero_f).case == "iii"


def test_reduce_exhausts_over_dense_group():
    f2 = CoeffField(2)
    f = FieldElement(t_term(f2, ZP2, element(ZP2, -1)))
    res = artin_schreier_reduce(f)
    assert res.status == "exhausted"
    assert res.iterations == 64
    # valuation has been pushed up to -1/2^64 without reaching 0
    assert res.f.valuation() == element(ZP2, Fraction(-1, 2 ** 64))


# -- equal characteristic classification ---------------------------------------------


def test_classify_case_i_concrete():
    data = classify_equal_char(ArtinSchreierDatum(tpow(F2, Z1, -3)))
    assert data.case == "i"
    assert data.conductor == principal_cut(element(Z1, 3))
    assert data.rsw == RswSymbol(element(Z1, 3), ((1, ValueClass(element(Z1, -3))),))
    assert not data.defect
    assert data.e_pred == 2
    assert data.residue_pred == RESIDUE_TRIVIAL
    assert not data.unramified


def test_classify_case_i_with_unit_lead():
    u = FieldElement(variable_series(F2, Z1, F2.unit_gen("u")))
    data = classify_equal_char(u * tpow(F2, Z1, -3))
    assert data.case == "i"
    assert data.rsw.dlog_terms == (
        (1, UnitSymbol("u")),
        (1, ValueClass(element(Z1, -3))),
    )


def test_classify_case_ii_concrete():
    u = FieldElement(variable_series(F2, Z1, F2.unit_gen("u")))
    data = classify_equal_char(u * tpow(F2, Z1, -2))
    assert data.case == "ii"
    assert data.conductor == principal_cut(element(Z1, 2))
    # the value part of dlog is p-divisible, so only the unit symbol remains
    assert data.rsw.dlog_terms == ((1, UnitSymbol("u")),)
    assert data.e_pred == 1
    assert data.residue_pred == RESIDUE_INSEP


def test_classify_case_iii_concrete():
    data = classify_equal_char(tpow(F2, Z1, 1))
    assert data.case == "iii"
    assert data.conductor == whole_cut(Z1)
    assert data.rsw is None
    assert data.unramified
    assert data.e_pred == 1


def test_classify_symbolic_agrees_with_concrete():
    sym = classify_equal_char(EqualCharSymbolic(p=2, case="i", c=element(Z1, 3)))
    con = classify_equal_char(tpow(F2, Z1, -3))
    assert sym.conductor == con.conductor
    assert sym.rsw == con.rsw
    assert (sym.e_pred, sym.residue_pred, sym.defect, sym.unramified) == (
        con.e_pred,
        con.residue_pred,
        con.defect,
        con.unramified,
    )
    sym2 = classify_equal_char(
        EqualCharSymbolic(p=2, case="ii", c=element(Z1, 2), unit_name="u")
    )
    u = FieldElement(variable_series(F2, Z1, F2.unit_gen("u")))
    con2 = classify_equal_char(u * tpow(F2, Z1, -2))
    assert sym2.conductor == con2.conductor
    assert sym2.rsw == con2.rsw
    sym3 = classify_equal_char(EqualCharSymbolic(p=2, case="iii", descriptor=Z1))
    assert sym3.conductor == whole_cut(Z1) and sym3.unramified


def test_classify_symbolic_validation():
    with pytest.raises(ValueError):
        classify_equal_char(EqualCharSymbolic(p=2, case="i", c=element(Z1, 4)))
    with pytest.raises(ValueError):
        classify_equal_char(EqualCharSymbolic(p=2, case="ii", c=element(Z1, 3), unit_name="u"))
    with pytest.raises(ValueError):
        classify_equal_char(EqualCharSymbolic(p=2, case="ii", c=element(Z1, 2)))
    with pytest.raises(ValueError):
        classify_equal_char(EqualCharSymbolic(p=2, case="i", c=element(Z1, -3)))
    with pytest.raises(ValueError):
        classify_equal_char(EqualCharSymbolic(p=2, case="iii"))
    with pytest.raises(ValueError):
        classify_equal_char(EqualCharSymbolic(p=2, case="vi", c=element(Z1, 3)))
    with pytest.raises(TypeError):
        classify_equal_char("t(-3)")


@given(st.integers(min_value=1, max_value=9), st.data())
@settings(deadline=None)
def test_classification_invariant_under_reduction_moves(c, data):
    # adding g^p - g never changes the conductor data
    f = tpow(F2, Z1, -c)
    if c % 2 == 0:
        f = FieldElement(variable_series(F2, Z1, F2.unit_gen("u"))) * f
    w = data.draw(st.integers(min_value=-3, max_value=3))
    gc = data.draw(st.integers(min_value=0, max_value=1))
    g = tpow(F2, Z1, w) + tpow(F2, Z1, 0, gc)
    base = classify_equal_char(f)
    moved = classify_equal_char(f + (g ** 2 - g))
    assert moved.conductor == base.conductor
    assert moved.case == base.case
    assert (moved.e_pred, moved.residue_pred, moved.defect, moved.unramified) == (
        base.e_pred,
        base.residue_pred,
        base.defect,
        base.unramified,
    )
    assert moved.rsw.conductor_generator == base.rsw.conductor_generator


def test_exhausted_needs_provenance():
    f2 = CoeffField(2)
    f = FieldElement(t_term(f2, ZP2, element(ZP2, -1)))
    with pytest.raises(UndeterminedError):
        classify_equal_char(f)
    cut = open_cut(ZP2, element(ZP2, 1))
    data = classify_equal_char(f, provenance=SimpleNamespace(conductor=cut))
    assert data.defect
    assert data.conductor == cut
    assert data.rsw is None
    assert data.e_pred == 1 and data.residue_pred == RESIDUE_TRIVIAL
    assert not data.unramified


# -- Kummer classification ------------------------------------------------------------


def test_kummer_golden_table():
    d1 = classify_kummer_symbolic(KummerSymbolic(p=2, case="i", e0=element(Z1, 1), v_a=element(Z1, 3)))
    assert d1.conductor == principal_cut(element(Z1, 2))
    assert d1.rsw == RswSymbol(element(Z1, 2), ((1, ValueClass(element(Z1, 3))),))
    assert d1.e_pred == 2 and not d1.defect and not d1.unramified

    d2 = classify_kummer_symbolic(KummerSymbolic(p=3, case="ii", e0=element(Z1, 1), unit_name="u"))
    assert d2.conductor == principal_cut(element(Z1, 3))
    assert d2.rsw.dlog_terms == ((1, UnitSymbol("u")),)
    assert d2.e_pred == 1 and d2.residue_pred == RESIDUE_INSEP

    d3 = classify_kummer_symbolic(KummerSymbolic(p=2, case="iii", e0=element(Z1, 2), v_b=element(Z1, 3)))
    assert d3.conductor == principal_cut(element(Z1, 1))
    assert d3.rsw == RswSymbol(element(Z1, 1), ((1, ValueClass(element(Z1, 3))),))
    assert d3.e_pred == 2

    d4 = classify_kummer_symbolic(
        KummerSymbolic(p=3, case="iv", e0=element(Z1, 2), v_b=element(Z1, 3), unit_name="u")
    )
    assert d4.conductor == principal_cut(element(Z1, 3))
    assert d4.rsw.dlog_terms == ((1, UnitSymbol("u")),)
    assert d4.e_pred == 1 and d4.residue_pred == RESIDUE_INSEP

    d5 = classify_kummer_symbolic(KummerSymbolic(p=2, case="v", e0=element(Z1, 1)))
    assert d5.conductor == whole_cut(Z1)
    assert d5.unramified and d5.rsw is None


def test_kummer_validation():
    e0 = element(Z1, 2)
    with pytest.raises(ValueError):
        classify_kummer_symbolic(KummerSymbolic(p=2, case="i", e0=e0, v_a=element(Z1, 4)))
    with pytest.raises(ValueError):
        classify_kummer_symbolic(KummerSymbolic(p=2, case="ii", e0=e0))
    with pytest.raises(ValueError):
        classify_kummer_symbolic(KummerSymbolic(p=2, case="iii", e0=e0, v_b=element(Z1, 4)))
    with pytest.raises(ValueError):
        classify_kummer_symbolic(KummerSymbolic(p=3, case="iv", e0=e0, v_b=element(Z1, 4), unit_name="u"))
    # v(b) must stay below p*e0
    with pytest.raises(ValueError):
        classify_kummer_symbolic(KummerSymbolic(p=2, case="iii", e0=e0, v_b=element(Z1, 5)))
    with pytest.raises(ValueError):
        classify_kummer_symbolic(KummerSymbolic(p=2, case="iii", e0=e0, v_b=element(Z1, -1)))
    with pytest.raises(ValueError):
        classify_kummer_symbolic(KummerSymbolic(p=2, case="i", e0=element(Z1, 0), v_a=element(Z1, 3)))
    with pytest.raises(ValueError):
        classify_kummer_symbolic(KummerSymbolic(p=2, case="x", e0=e0))


# -- the conductor form in the value group --------------------------------------------


def test_value_group_image_rules():
    g3, g2 = element(Z1, -3), element(Z1, -2)
    # unit symbols vanish
    rsw = RswSymbol(element(Z1, 3), ((1, UnitSymbol("u")), (1, ValueClass(g3))))
    assert value_group_image(rsw, 2) == ((1, g3),)
    # equal classes combine mod p
    rsw = RswSymbol(element(Z1, 3), ((1, ValueClass(g3)), (1, ValueClass(g3))))
    assert value_group_image(rsw, 2) == ()
    g4 = element(Z1, -4)
    rsw = RswSymbol(element(Z1, 4), ((1, ValueClass(g4)), (1, ValueClass(g4))))
    assert value_group_image(rsw, 3) == ((2, g4),)
    # p-divisible classes vanish
    rsw = RswSymbol(element(Z1, 2), ((1, ValueClass(g2)),))
    assert value_group_image(rsw, 2) == ()
    assert value_group_image(rsw, 3) == ((1, g2),)
    # a custom membership test overrides divisibility in the base group
    rsw = RswSymbol(element(Z1, 3), ((1, ValueClass(g3)),))
    assert value_group_image(rsw, 2, in_p_multiples=lambda g: True) == ()


# -- ramification group evaluation ----------------------------------------------------


def test_galois_image_at_and_above_break():
    data = classify_equal_char(tpow(F2, Z1, -3))
    brk = break_of(data.conductor)
    assert galois_image(data.conductor, brk) == FULL_IMAGE
    assert galois_image(data.conductor, principal_cut(hull_element(Z1, 3))) == FULL_IMAGE
    above = open_cut(Z1, hull_element(Z1, 3), over_hull=True)
    assert galois_image(data.conductor, above) == TRIVIAL_IMAGE
    below = principal_cut(hull_element(Z1, Fraction(5, 2)))
    assert galois_image(data.conductor, below) == FULL_IMAGE


def test_galois_image_validation():
    conductor = principal_cut(element(Z1, 3))
    with pytest.raises(ValueError):
        galois_image(conductor, whole_cut(Z1, over_hull=True))
    with pytest.raises(ValueError):
        galois_image(conductor, principal_cut(element(Z1, 3)))  # not a hull ideal
    with pytest.raises(ValueError):
        galois_image(conductor, principal_cut(hull_element(ZP2, 3)))
    with pytest.raises(ValueError):
        galois_image(principal_cut(hull_element(Z1, 3)), principal_cut(hull_element(Z1, 3)))


@given(st.data())
@settings(deadline=None)
def test_single_jump(data):
    d = data.draw(descriptors)
    conductor = data.draw(group_cuts(d, allow_whole=False))
    ideal = data.draw(hull_ideals(d))
    image = galois_image(conductor, ideal)
    assert (image == FULL_IMAGE) == break_of(conductor).subset(ideal)


@given(st.data())
@settings(deadline=None)
def test_image_monotone_in_the_ideal(data):
    d = data.draw(descriptors)
    conductor = data.draw(group_cuts(d, allow_whole=False))
    i1 = data.draw(hull_ideals(d))
    i2 = data.draw(hull_ideals(d))
    if not i1.subset(i2):
        i1, i2 = i2, i1
    # a full image at a deep ideal persists at every shallower one
    if galois_image(conductor, i1) == FULL_IMAGE:
        assert galois_image(conductor, i2) == FULL_IMAGE


def test_break_of_whole_rejected():
    with pytest.raises(ValueError):
        break_of(whole_cut(Z1))


def test_wild_inertia_matches_ramification():
    for data in [
        classify_equal_char(tpow(F2, Z1, -3)),
        classify_equal_char(EqualCharSymbolic(p=2, case="ii", c=element(Z1, 2), unit_name="u")),
        classify_equal_char(tpow(F2, Z1, 1)),
        classify_kummer_symbolic(KummerSymbolic(p=2, case="v", e0=element(Z1, 1))),
    ]:
        assert wild_inertia_check(data) == (not data.unramified)


# -- base change ------------------------------------------------------------------------


def test_base_change_golden():
    h = principal_cut(element(Z1, 3))
    assert base_change(h, Z1) is h
    moved = base_change(h, ZP2)
    assert moved == principal_cut(element(ZP2, 3))
    assert moved.contains(element(ZP2, Fraction(7, 2)))
    assert not moved.contains(element(ZP2, Fraction(5, 2)))
    # over Z the cut {x > 2} is {x >= 3}; transport follows the normal form
    assert base_change(open_cut(Z1, element(Z1, 2)), ZP2) == principal_cut(element(ZP2, 3))
    assert base_change(whole_cut(Z1), QD2) == whole_cut(QD2)
    lifted = base_change(principal_cut(element(ZP2, Fraction(3, 2))), QD2)
    assert lifted == principal_cut(element(QD2, (Fraction(3, 2), 0)))


def test_base_change_unsupported():
    with pytest.raises(ValueError):
        base_change(principal_cut(element(Z2, (1, 0))), ZP2)
    with pytest.raises(ValueError):
        base_change(principal_cut(element(ZP2, 1)), Z1)
    from ramify.cuts import Surd

    irr = open_cut(ZP2, Surd(0, 1, 2))
    with pytest.raises(ValueError):
        base_change(irr, QD2)


def test_base_change_transports_break():
    h = principal_cut(element(Z1, 3))
    moved = break_of(base_change(h, ZP2))
    assert moved == principal_cut(hull_element(ZP2, 3))


# -- the log-smooth planner ---------------------------------------------------------------


def test_planner_kills_case_i():
    data = classify_equal_char(tpow(F2, Z1, -3))
    moves = plan_log_smooth(data.rsw, 2)
    assert moves == (Type2Move(2, element(Z1, -3)),)
    assert transported_value_image(data.rsw, 2, moves) == ()


def test_planner_empty_for_case_ii():
    data = classify_equal_char(
        EqualCharSymbolic(p=2, case="ii", c=element(Z1, 2), unit_name="u")
    )
    assert value_group_image(data.rsw, 2) == ()
    assert plan_log_smooth(data.rsw, 2) == ()


def test_planner_kummer_case_iii():
    data = classify_kummer_symbolic(
        KummerSymbolic(p=2, case="iii", e0=element(Z1, 2), v_b=element(Z1, 3))
    )
    moves = plan_log_smooth(data.rsw, 2)
    assert moves == (Type2Move(2, element(Z1, 3)),)
    assert transported_value_image(data.rsw, 2, moves) == ()


def test_enlarged_group_membership():
    # adjoining 3/2 makes 2Gamma' = 2Z + 3Z = Z
    g = EnlargedGroup(Z1, 2, (element(Z1, 3),))
    assert g.in_p_multiples(element(Z1, 1))
    assert g.in_p_multiples(element(Z1, 3))
    # adjoining 2/2 = 1 changes nothing: 2Gamma' = 2Z
    g2 = EnlargedGroup(Z1, 2, (element(Z1, 2),))
    assert not g2.in_p_multiples(element(Z1, 1))
    assert g2.in_p_multiples(element(Z1, 4))
    assert transported_value_image(
        RswSymbol(element(Z1, 3), ((1, ValueClass(element(Z1, -3))),)), 2, ()
    ) == ((1, element(Z1, -3)),)
