"""Hypothesis strategies for groups, elements, and cuts."""

from __future__ import annotations

from fractions import Fraction

import hypothesis.strategies as st

from ramify.cuts import Surd, frontier_cut, open_cut, principal_cut, whole_cut
from ramify.ordered_group import (
    KIND_INT_LEX,
    KIND_P_INVERTED,
    element,
    hull_element,
    int_lex,
    is_positive,
    p_inverted,
    quadratic,
)

ALL_DESCRIPTORS = [int_lex(1), int_lex(2), int_lex(3), p_inverted(2), p_inverted(3), quadratic(2)]
DENSE_DESCRIPTORS = [p_inverted(2), p_inverted(3), quadratic(2)]

descriptors = st.sampled_from(ALL_DESCRIPTORS)
dense_descriptors = st.sampled_from(DENSE_DESCRIPTORS)

_small_int = st.integers(min_value=-12, max_value=12)
_small_den = st.integers(min_value=1, max_value=6)


@st.composite
def fractions(draw, den_base=None):
    num = draw(_small_int)
    if den_base is None:
        return Fraction(num, draw(_small_den))
    return Fraction(num, den_base ** draw(st.integers(min_value=0, max_value=4)))


@st.composite
def elements(draw, descriptor=None, hull=False):
    d = draw(descriptors) if descriptor is None else descriptor
    if d.kind == KIND_INT_LEX:
        if hull:
            return hull_element(d, tuple(draw(fractions()) for _ in range(d.param)))
        return element(d, tuple(draw(_small_int) for _ in range(d.param)))
    if d.kind == KIND_P_INVERTED:
        raw = draw(fractions(d.param)) if not hull else draw(fractions())
        return (hull_element if hull else element)(d, raw)
    raw = (draw(fractions(2)), draw(fractions(3)))
    return (hull_element if hull else element)(d, raw)


@st.composite
def positive_elements(draw, descriptor=None, hull=False):
    x = draw(elements(descriptor, hull).filter(is_positive))
    return x


@st.composite
def element_pairs(draw, hull=False):
    d = draw(descriptors)
    return draw(elements(d, hull)), draw(elements(d, hull))


@st.composite
def element_triples(draw, hull=False):
    d = draw(descriptors)
    return tuple(draw(elements(d, hull)) for _ in range(3))


@st.composite
def group_cuts(draw, descriptor=None, allow_whole=True):
    d = draw(descriptors) if descriptor is None else descriptor
    choices = ["principal"]
    if allow_whole:
        choices.append("whole")
    if d.kind == KIND_INT_LEX and d.param > 1:
        choices += ["frontier", "frontier"]
    else:
        choices += ["open", "open"]
        if d.kind == KIND_P_INVERTED:
            choices.append("surd")
    kind = draw(st.sampled_from(choices))
    if kind == "whole":
        return whole_cut(d)
    if kind == "principal":
        return principal_cut(draw(positive_elements(d)))
    if kind == "open":
        return open_cut(d, draw(positive_elements(d)))
    if kind == "surd":
        a = draw(st.integers(min_value=0, max_value=5))
        b = draw(st.integers(min_value=1, max_value=4))
        return open_cut(d, Surd(Fraction(a, draw(_small_den)), Fraction(b, draw(_small_den)), 2))
    k = draw(st.integers(min_value=1, max_value=d.param - 1))
    first = draw(st.integers(min_value=0, max_value=4))
    rest = [
        draw(st.integers(min_value=0 if first == 0 else -4, max_value=4))
        for _ in range(k - 1)
    ]
    return frontier_cut(d, tuple([first] + rest))


@st.composite
def hull_ideals(draw, descriptor=None):
    d = draw(descriptors) if descriptor is None else descriptor
    choices = ["principal", "open"]
    if d.kind == KIND_INT_LEX and d.param > 1:
        choices.append("frontier")
    kind = draw(st.sampled_from(choices))
    if kind == "frontier":
        k = draw(st.integers(min_value=1, max_value=d.param - 1))
        first = Fraction(draw(st.integers(min_value=1, max_value=4)), draw(_small_den))
        rest = [draw(fractions()) for _ in range(k - 1)]
        return frontier_cut(d, tuple([first] + rest), over_hull=True)
    g = draw(positive_elements(d, hull=True))
    return principal_cut(g) if kind == "principal" else open_cut(d, g, over_hull=True)
