import random
from fractions import Fraction

import pytest

from ramify.cuts import Surd, frontier_cut, open_cut, principal_cut, whole_cut
from ramify.defect_lab import (
    BreakWitness,
    DeltaBoundError,
    STATUS_BELOW_ALL,
    STATUS_UNRESOLVED,
    STATUS_WITNESSED,
    VARIANT_CLOSED,
    VARIANT_OPEN,
    VARIANT_OPEN_IRRATIONAL,
    break_witness,
    build_defect_model,
    build_principal_case,
    conductor_limit_check,
    twin_pair,
    verify_delta_bounds,
)
from ramify.ordered_group import (
    divide_exact,
    element,
    hull_element,
    int_lex,
    int_scale,
    p_inverted,
    quadratic,
)
from ramify.series_field import t_term, variable_series
from ramify.swan import FULL_IMAGE, TRIVIAL_IMAGE, break_of, galois_image

Z1 = int_lex(1)
Z2 = int_lex(2)
ZP2 = p_inverted(2)
ZP3 = p_inverted(3)
QD2 = quadratic(2)


def canonical_model(depth=4):
    return build_defect_model(ZP2, 2, open_cut(ZP2, element(ZP2, 1)), depth)


# -- principal constructions -------------------------------------------------------


def test_principal_case_shapes():
    case = build_principal_case(ZP3, 2, element(ZP3, 3))
    assert case.swan.conductor == principal_cut(element(ZP3, 3))
    assert case.swan.case == "i"
    assert case.swan.e_pred == 2
    # in a p-divisible group the construction always goes through a unit
    case2 = build_principal_case(ZP2, 2, element(ZP2, 3))
    assert case2.swan.conductor == principal_cut(element(ZP2, 3))
    assert case2.swan.case == "ii"
    assert case2.swan.e_pred == 1
    with pytest.raises(ValueError):
        build_principal_case(ZP2, 2, element(ZP2, 0))
    with pytest.raises(ValueError):
        build_principal_case(ZP2, 2, element(Z1, 3))


# -- grid sequences -----------------------------------------------------------------


def test_grid_golden_dyadic():
    m = canonical_model()
    assert [e.value for e in m.e_seq] == [
        Fraction(1),
        Fraction(3, 4),
        Fraction(5, 8),
        Fraction(9, 16),
        Fraction(17, 32),
    ]
    assert m.depth == 4 and len(m.e_seq) == 5


def test_grid_golden_with_stalls():
    m = build_defect_model(ZP2, 2, open_cut(ZP2, Surd(Fraction(2, 3))), depth=3)
    assert [e.value for e in m.e_seq] == [
        Fraction(1),
        Fraction(1, 2),
        Fraction(3, 8),
        Fraction(11, 32),
    ]


def test_grid_golden_irrational():
    m = build_defect_model(ZP2, 2, open_cut(ZP2, Surd(0, 1, 2)), depth=4)
    assert [e.value for e in m.e_seq] == [
        Fraction(1),
        Fraction(3, 4),
        Fraction(23, 32),
        Fraction(91, 128),
        Fraction(363, 512),
    ]
    # every e(i) lies strictly above sqrt(2)/2
    for e in m.e_seq:
        assert Surd(e.value).cmp(Surd(0, Fraction(1, 2), 2)) > 0


def test_grid_base_follows_the_group():
    m = build_defect_model(ZP3, 3, open_cut(ZP3, element(ZP3, 1)), depth=3)
    assert [e.value for e in m.e_seq] == [
        Fraction(1),
        Fraction(2, 3),
        Fraction(4, 9),
        Fraction(10, 27),
    ]
    mq = build_defect_model(QD2, 2, open_cut(QD2, element(QD2, (1, 0))), depth=3)
    assert [e.value[0] for e in mq.e_seq] == [
        Fraction(1),
        Fraction(3, 4),
        Fraction(5, 8),
        Fraction(9, 16),
    ]
    assert all(e.value[1] == 0 for e in mq.e_seq)


# -- model construction -------------------------------------------------------------


def test_model_invariants():
    for m in [
        canonical_model(3),
        build_defect_model(ZP3, 3, open_cut(ZP3, element(ZP3, 2)), 3),
        build_defect_model(QD2, 2, open_cut(QD2, Surd(0, 1, 2)), 3),
    ]:
        for a, b in zip(m.e_seq, m.e_seq[1:]):
            assert b < a
        for e in m.e_seq:
            assert m.root_set.contains(e)
            assert m.conductor.contains(int_scale(m.p, e))
        assert m.field.tags == m.e_seq
        assert m.swan.defect and m.swan.conductor == m.conductor
        assert m.swan.rsw is None and m.swan.e_pred == 1


def test_build_refusals():
    with pytest.raises(ValueError, match="least element"):
        build_defect_model(ZP2, 2, principal_cut(element(ZP2, 2)))
    with pytest.raises(ValueError, match="cannot occur as a conductor cut"):
        build_defect_model(Z2, 2, frontier_cut(Z2, (0,)))
    with pytest.raises(ValueError, match="unramified"):
        build_defect_model(ZP2, 2, whole_cut(ZP2))
    with pytest.raises(ValueError, match="different group"):
        build_defect_model(ZP3, 2, open_cut(ZP2, element(ZP2, 1)))
    with pytest.raises(ValueError, match="over the group"):
        build_defect_model(ZP2, 2, open_cut(ZP2, hull_element(ZP2, 1), over_hull=True))
    with pytest.raises(ValueError, match="dense"):
        build_defect_model(Z2, 2, frontier_cut(Z2, (1,)))
    with pytest.raises(ValueError, match="depth"):
        build_defect_model(ZP2, 2, open_cut(ZP2, element(ZP2, 1)), depth=0)


# -- sampled verification -----------------------------------------------------------


def test_delta_bounds_hold_across_groups():
    for m in [
        canonical_model(3),
        build_defect_model(ZP3, 3, open_cut(ZP3, element(ZP3, 1)), 3),
        build_defect_model(QD2, 2, open_cut(QD2, element(QD2, (1, 0))), 3),
    ]:
        report = verify_delta_bounds(m, samples=60, seed=7)
        assert report.samples == 60
        assert report.monomials_checked > 0
        # tagged variables always move, so nothing sampled is sigma-fixed
        assert report.sigma_fixed == 0


def test_delta_bounds_deterministic_by_seed():
    m = canonical_model(3)
    a = verify_delta_bounds(m, samples=40, seed=3)
    b = verify_delta_bounds(m, samples=40, seed=3)
    assert a == b
    c = verify_delta_bounds(m, samples=40, rng=random.Random(3))
    assert a == c


def test_delta_bounds_catch_a_fast_automorphism():
    m = canonical_model(3)
    for i, tag in enumerate(m.field.tags):
        half = divide_exact(tag, 2)
        m.sigma._images[i] = variable_series(m.field, ZP2, m.field.gens[i]) + t_term(
            m.field, ZP2, half
        )
    with pytest.raises(DeltaBoundError, match="below the floor"):
        verify_delta_bounds(m, samples=50)


# -- the cut as a limit of thresholds -------------------------------------------------


def test_limit_check_taxonomy():
    m = canonical_model(4)  # thresholds 2, 3/2, 5/4, 9/8, 17/16
    q = lambda v: element(ZP2, v)
    report = conductor_limit_check(
        m,
        [
            q(3),
            q(2),
            q(Fraction(3, 2)),
            q(Fraction(9, 8)),
            q(Fraction(33, 32)),
            q(1),
            q(Fraction(1, 2)),
        ],
    )
    assert report.ok
    statuses = [(e.status, e.witness) for e in report.entries]
    assert statuses == [
        (STATUS_WITNESSED, 0),
        (STATUS_WITNESSED, 0),
        (STATUS_WITNESSED, 1),
        (STATUS_WITNESSED, 3),
        (STATUS_UNRESOLVED, None),
        (STATUS_BELOW_ALL, None),
        (STATUS_BELOW_ALL, None),
    ]
    assert report.unresolved == 1
    members = [e.member for e in report.entries]
    assert members == [True, True, True, True, True, False, False]


def test_limit_witnesses_persist_under_deepening():
    shallow = canonical_model(2)
    deep = canonical_model(5)
    queries = [
        element(ZP2, v)
        for v in [
            3,
            2,
            Fraction(3, 2),
            Fraction(5, 4),
            Fraction(9, 8),
            Fraction(17, 16),
            1,
            Fraction(1, 2),
        ]
    ]
    r1 = conductor_limit_check(shallow, queries)
    r2 = conductor_limit_check(deep, queries)
    assert r1.ok and r2.ok
    for e1, e2 in zip(r1.entries, r2.entries):
        assert e1.member == e2.member
        if e1.status == STATUS_WITNESSED:
            assert e2.status == STATUS_WITNESSED
            assert e2.witness == e1.witness
        if e1.status == STATUS_BELOW_ALL:
            assert e2.status == STATUS_BELOW_ALL
    # something unresolved at depth 2 resolves by depth 5
    assert r1.unresolved > r2.unresolved
    assert r2.unresolved == 0


# -- twins -----------------------------------------------------------------------------


def test_twin_pair_golden():
    tp = twin_pair(ZP2, 2, element(ZP2, 1), depth=3)
    pb = element(ZP2, 2)
    assert tp.ramified.swan.conductor == principal_cut(pb)
    assert tp.defect.conductor == open_cut(ZP2, pb)
    assert tp.divergence == open_cut(ZP2, hull_element(ZP2, 2), over_hull=True)
    h1, h2 = tp.ramified.swan.conductor, tp.defect.conductor
    # all principal hull ideals agree
    rng = random.Random(11)
    for _ in range(120):
        g = hull_element(ZP2, Fraction(rng.randint(1, 64), 2 ** rng.randint(0, 4)))
        ideal = principal_cut(g)
        assert galois_image(h1, ideal) == galois_image(h2, ideal)
    # the open ideal at p*b tells them apart
    assert galois_image(h1, tp.divergence) == TRIVIAL_IMAGE
    assert galois_image(h2, tp.divergence) == FULL_IMAGE
    with pytest.raises(ValueError):
        twin_pair(ZP2, 2, element(ZP2, 0))


# -- break witnesses -------------------------------------------------------------------


def test_break_witness_variants():
    w1 = break_witness(ZP2, 2, element(ZP2, 3), VARIANT_CLOSED)
    assert isinstance(w1, BreakWitness)
    assert w1.break_cut == principal_cut(hull_element(ZP2, 3))
    assert w1.break_cut.kind == "principal"
    assert not w1.swan.defect

    w2 = break_witness(ZP2, 2, element(ZP2, 3), VARIANT_OPEN, depth=3)
    assert w2.break_cut == open_cut(ZP2, hull_element(ZP2, 3), over_hull=True)
    assert w2.break_cut.kind != "principal"
    assert w2.swan.defect

    w3 = break_witness(ZP2, 2, Surd(0, 1, 2), VARIANT_OPEN_IRRATIONAL, depth=3)
    assert w3.break_cut.kind == "open"
    assert not w3.break_cut.bound.value.is_rational
    assert w3.swan.defect
    assert w3.break_cut == break_of(w3.source.conductor)


def test_break_witness_validation():
    with pytest.raises(ValueError):
        break_witness(ZP2, 2, Surd(0, 1, 2), VARIANT_CLOSED)
    with pytest.raises(ValueError):
        break_witness(ZP2, 2, element(ZP2, 3), VARIANT_OPEN_IRRATIONAL)
    with pytest.raises(ValueError):
        break_witness(ZP2, 2, Surd(Fraction(3, 2)), VARIANT_OPEN_IRRATIONAL)
    with pytest.raises(ValueError):
        break_witness(ZP2, 2, element(ZP2, 3), "closed-irrational")
