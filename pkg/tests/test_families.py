from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lineact.families import (BrinNavasError, OmegaWord, UnsupportedError, base_g, base_h, brin_navas, bs_affine,
                              bs_default_endpoint, bs_path, default_brin_navas, dyadic_sequence, f2_family,
                              f_infinity, g_omega, shift_orbit_equal, sign_pattern)
from lineact.plmap import PLMap, compose, invert, is_power_of_two, sup_distance, translate_conjugate

I = (Q(-1, 4), Q(1, 4))


def sign_words(max_period=5):
    return st.integers(1, max_period).flatmap(
        lambda p: st.lists(st.sampled_from("+-"), min_size=p, max_size=p).map("".join))


def test_omega_parsing_and_shift():
    w = OmegaWord.periodic("+-")
    assert [w[n] for n in range(-2, 3)] == [1, -1, 1, -1, 1]
    assert w.shift(1)[0] == w[-1]
    with pytest.raises(ValueError):
        OmegaWord.periodic("+x")


def test_shift_orbit_oracle():
    assert shift_orbit_equal(OmegaWord.periodic("++-"), OmegaWord.periodic("-++"))
    assert shift_orbit_equal(OmegaWord.periodic("+-+-"), OmegaWord.periodic("-+"))
    assert not shift_orbit_equal(OmegaWord.periodic("++-"), OmegaWord.periodic("+--"))
    assert shift_orbit_equal(OmegaWord.finite([0, 3]), OmegaWord.finite([5, 8]))
    with pytest.raises(UnsupportedError):
        shift_orbit_equal(OmegaWord.periodic("+"), OmegaWord.finite([]))


def test_base_generators():
    g, h = base_g((-2, 2)), base_h((-2, 2))
    assert g(Q(1, 4)) == Q(3, 8)
    assert g(Q(1, 2)) == Q(1, 2) and h(Q(1, 4)) == Q(1, 4)
    assert sup_distance(h, translate_conjugate(base_g((-3, 3)), Q(1, 4)), (-2, 2)) == 0


def test_sign_pattern_reads_back_omega():
    om = OmegaWord.periodic("+--+-")
    g = g_omega(om, (-5, 5))
    assert sign_pattern(g, range(-10, 10)) == [om[n] for n in range(-10, 10)]


@given(sign_words(6))
@settings(max_examples=30)
def test_half_translation_shifts_omega(block):
    om = OmegaWord.periodic(block)
    window = (-6, 6)
    lhs = translate_conjugate(g_omega(om, (-7, 7)), Q(1, 2))
    rhs = g_omega(om.shift(1), (-7, 7))
    assert sup_distance(lhs, rhs, window) == 0


def test_f2_family_window_recorded():
    rep = f2_family(OmegaWord.periodic("+-"), (-1, 1))
    assert rep.window == (-1, 1)


@pytest.mark.parametrize("m,n", [(1, 2), (2, 3), (3, 5)])
def test_bs_relators(m, n):
    bs_affine(m, n)
    psi0, psi1 = bs_default_endpoint(m, n), PLMap.affine(Q(n, m))
    for s in (0, Q(1, 4), Q(1, 2), Q(3, 4), 1):
        rep = bs_path(m, n, s, psi0, psi1, (-6, 6))
        a = rep.images[0]
        for x in (Q(-3), Q(1, 3), Q(5, 2)):
            assert a(x + m) == a(x) + n


def test_bs_path_endpoint_checks():
    with pytest.raises(ValueError, match="endpoint"):
        bs_path(2, 3, 0, PLMap.affine(1), PLMap.affine(Q(3, 2)))
    with pytest.raises(ValueError):
        bs_path(2, 3, 2, PLMap.affine(Q(3, 2)), PLMap.affine(Q(3, 2)))


def test_bs_path_ends():
    psi0 = bs_default_endpoint(2, 3)
    rep0 = bs_path(2, 3, 0, psi0, PLMap.affine(Q(3, 2)), (-4, 4))
    rep1 = bs_path(2, 3, 1, psi0, PLMap.affine(Q(3, 2)), (-4, 4))
    assert rep1.images[0] == PLMap.affine(Q(3, 2))
    assert rep0.images[0](1) == psi0(1) == Q(3, 4)


def test_default_brin_navas():
    bn = default_brin_navas()
    w0, w1 = bn.w(0), bn.w(1)
    a, b = bn.support_of(0)
    c = compose(w1, compose(w0, invert(w1)))
    assert (w1(a), w1(b)) == (1, Q(5, 3))
    assert b <= w1(a)
    # supports of w0 and w1 w0 w1^-1 are disjoint so the two commute
    assert compose(w0, c) == compose(c, w0)
    assert [bn.support_of(k) for k in range(3)] == [(-1, 1), (-2, 2), (-4, 4)]


def test_brin_navas_rejects_bad_input():
    w0 = PLMap.compact_support([(-1, -1), (0, Q(1, 2)), (1, 1)])
    with pytest.raises(BrinNavasError):
        brin_navas(PLMap.affine(Q(1, 2)), w0)
    with pytest.raises(BrinNavasError):
        brin_navas(PLMap.affine(2), PLMap.translation(1))


@pytest.mark.parametrize("n", range(1, 11))
def test_dyadic_sequence_properties(n):
    f = dyadic_sequence(n)
    assert f.is_dyadic()
    assert all(is_power_of_two(s) for s, _ in f.pieces)
    # f - id is PL: positivity at interior breakpoints and the end slopes suffice
    inner = [b for b in f.breakpoints if I[0] < b < I[1]]
    assert all(f(b) > b for b in inner)
    assert f.piece_at(I[0] + Q(1, 10**6))[0] > 1 and f.piece_at(I[1] - Q(1, 10**6))[0] < 1
    assert f(0) < Q(1, 4 ** (n + 1))
    for m in range(1, n + 1):
        g = dyadic_sequence(m)
        r = Q(1, 4 ** (m + 1))
        for window in ((-1, -r), (r, 1)):
            assert sup_distance(f, g, window) == 0


def test_f_infinity_pointwise_limit():
    assert f_infinity(0) == 0
    assert f_infinity(Q(1, 3)) == Q(1, 3)
    t = Q(1, 100)
    assert f_infinity(t) == dyadic_sequence(8)(t)


def test_base_action_orbit_gaps_shrink():
    # empirical minimality evidence: orbit of 1/8 fills [-1/2, 1/2] ever more densely
    from lineact.rep import max_orbit_gap
    rep = f2_family(OmegaWord.periodic("+"), (-3, 3))
    gaps = [max_orbit_gap(rep, Q(1, 8), d, (Q(-1, 2), Q(1, 2))) for d in (4, 6, 8)]
    assert gaps == [Q(2, 9), Q(5, 108), Q(5, 972)]
