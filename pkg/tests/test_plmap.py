from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import plmaps, rationals
from lineact.plmap import (Dyadic, PLMap, compact_support, compose, fixed_points, fixed_set, invert,
                           power, sup_distance, support, translate_conjugate)

IDENT = PLMap.identity()


def test_constructor_rejects_bad_data():
    with pytest.raises(ValueError):
        PLMap([0], [(1, 0), (-1, 0)])
    with pytest.raises(ValueError):
        PLMap([0], [(1, 0), (2, 1)])
    with pytest.raises(ValueError):
        PLMap([1, 0], [(1, 0), (1, 0), (1, 0)])
    with pytest.raises(ValueError):
        PLMap([0], [(1, 0)])


def test_collinear_pieces_merge():
    f = PLMap([0, 1], [(2, 0), (2, 0), (1, 1)])
    assert f.breakpoints == (1,)
    assert PLMap([0], [(1, 0), (1, 0)]) == IDENT


def test_translation_conjugate_moves_breakpoints():
    f = PLMap.from_points([(0, 0), (1, Q(1, 2))], 1, 2)
    g = translate_conjugate(f, Q(1, 2))
    assert g.breakpoints == tuple(b + Q(1, 2) for b in f.breakpoints)
    for x in (Q(-3), Q(1, 3), Q(7, 5)):
        assert g(x + Q(1, 2)) == f(x) + Q(1, 2)


def test_fixed_set_of_compact_bump():
    f = PLMap.compact_support([(0, 0), (Q(1, 2), Q(3, 4)), (1, 1)])
    fs = fixed_set(f, (-1, 2))
    assert fs.components == ((-1, 0), (1, 2))
    assert fs.gaps == ((0, 1, 1),)
    assert compact_support(f) == [(0, 1)]
    assert support(f, (-1, 2)) == [(0, 1)]


def test_fixed_points_isolated_and_intervals():
    assert fixed_points(PLMap.affine(2)) == [0]
    assert fixed_points(PLMap.translation(1)) == []
    assert fixed_points(IDENT) is None
    f = PLMap.from_points([(0, 0), (1, 2)], Q(1, 2), Q(1, 2))
    assert fixed_points(f) == [0, 3]


def test_sup_distance_exact():
    assert sup_distance(PLMap.translation(Q(1, 3)), IDENT, (-5, 5)) == Q(1, 3)
    assert sup_distance(PLMap.affine(2), IDENT, (-1, 3)) == 3


def test_dyadic_neighbors():
    d = Dyadic.from_fraction(Q(3, 8))
    assert d.to_fraction() == Q(3, 8)
    assert d.left_neighbor(2) < Q(3, 8) < d.right_neighbor(2)
    with pytest.raises(ValueError):
        Dyadic.from_fraction(Q(1, 3))


def test_record_round_trip():
    f = PLMap.from_points([(0, 0), (Q(1, 3), Q(2, 7))], Q(1, 2), 3)
    assert PLMap.loads(f.dumps()) == f


@given(plmaps(), plmaps(), plmaps())
def test_associativity(f, g, h):
    assert compose(f, compose(g, h)) == compose(compose(f, g), h)


@given(plmaps())
def test_inverse_laws(f):
    assert compose(f, invert(f)) == IDENT
    assert compose(invert(f), f) == IDENT
    assert invert(invert(f)) == f


@given(plmaps(), rationals())
def test_composition_is_pointwise(f, x):
    g = translate_conjugate(f, Q(1, 3))
    assert compose(f, g)(x) == f(g(x))


@given(plmaps())
def test_normalization_idempotent(f):
    again = PLMap(f.breakpoints, f.pieces)
    assert again == f
    assert again.breakpoints == f.breakpoints and again.pieces == f.pieces


@given(plmaps(dyadic=True), plmaps(dyadic=True))
def test_dyadic_closure(f, g):
    if f.is_dyadic() and g.is_dyadic():
        assert compose(f, g).is_dyadic()
        assert invert(f).is_dyadic()


@given(plmaps(), st.integers(-3, 3), st.integers(-3, 3))
@settings(max_examples=40)
def test_power_additive(f, a, b):
    assert compose(power(f, a), power(f, b)) == power(f, a + b)


@given(plmaps(), rationals(), rationals())
def test_translate_conjugate_is_a_homomorphism(f, s, t):
    assert translate_conjugate(translate_conjugate(f, s), t) == translate_conjugate(f, s + t)
    assert translate_conjugate(f, s) == compose(PLMap.translation(s), compose(f, PLMap.translation(-s)))


@given(plmaps())
def test_fixed_set_gaps_have_constant_sign(f):
    fs = fixed_set(f, (-10, 10))
    for a, b, sign in fs.gaps:
        for x in [a + (b - a) * Q(k, 7) for k in range(1, 7)]:
            assert (f(x) > x) == (sign > 0)
            assert f(x) != x
    for a, b in fs.components:
        assert f(a) == a and f(b) == b
