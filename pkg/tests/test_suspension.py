from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lineact.plmap import PLMap, compose, is_power_of_two, sup_distance, translate_conjugate
from lineact.rep import enumerate_words
from lineact.suspension import (DEFAULT_BASE, DEFAULT_WORDS, SUSPENSION_GROUP, ZERO, CantorPoint, OrbitError,
                                SuspensionPoint, SuspensionRep, chart_trace, element_f, flow, generators,
                                odometer_step, recurrence_experiment, rho, tau, thompson_generators_on_J)

Y = SuspensionPoint.make(DEFAULT_BASE, 0)


def v2(n: int) -> int:
    n = abs(n)
    k = 0
    while n % 2 == 0:
        n //= 2
        k += 1
    return k


def n0_oracle(W: int) -> int:
    # base (01)^inf is the 2-adic -2/3; the chart at offset k sits in C_n with
    # n = 1 + v2(3k - 2), and adding 2^N leaves it alone once N exceeds v2
    return 1 + max(v2(3 * k - 2) for k in range(-W, W + 1))


@st.composite
def cantor_points(draw):
    pre = draw(st.text("01", max_size=4))
    period = draw(st.text("01", min_size=1, max_size=4))
    return CantorPoint.from_digits(pre, period)


def test_cantor_parse_and_print():
    x = CantorPoint.parse("1(10)")
    assert str(x) == "1(10)" and x.digit(0) == 1 and x.digit(1) == 1 and x.digit(2) == 0
    assert str(CantorPoint.parse("(0101)")) == "(01)"
    assert x.cylinder_index() == 1
    assert CantorPoint.parse("001(0)").cylinder_index() == 3
    assert ZERO.cylinder_index() is None
    with pytest.raises(ValueError):
        CantorPoint.parse("101")


def test_odometer_carries():
    assert str(odometer_step(CantorPoint.parse("(01)"), 1)) == "1(10)"
    assert str(odometer_step(CantorPoint.parse("(1)"), 1)) == "(0)"


@given(cantor_points(), st.integers(-50, 50), st.integers(-50, 50))
def test_odometer_is_a_z_action(x, a, b):
    assert odometer_step(odometer_step(x, a), b) == odometer_step(x, a + b)


@given(cantor_points(), st.integers(-8, 8))
def test_odometer_prefix_is_binary_addition(x, k):
    n = 6
    lhs = odometer_step(x, k).prefix(n)
    low = sum(int(c) << i for i, c in enumerate(x.prefix(n)))
    want = (low + k) % (1 << n)
    assert lhs == "".join(str((want >> i) & 1) for i in range(n))


@given(cantor_points(), st.fractions(max_denominator=8).filter(lambda q: abs(q) < 20),
       st.fractions(max_denominator=8).filter(lambda q: abs(q) < 20))
def test_flow_quotient_rule(x, s, t):
    p = SuspensionPoint.make(x, 0)
    assert flow(flow(p, s), t) == flow(p, s + t)
    assert 0 <= flow(p, s).time < 1


def test_flow_example():
    p = flow(SuspensionPoint.make(ZERO, 0), Q(3, 2))
    assert str(p) == "pi(1(0), 1/2)"


def test_f_fixes_zero_flow_point():
    f = element_f()
    p = SuspensionPoint.make(ZERO, 0)
    assert f(p) == p


def test_tau_on_first_cylinder():
    f = element_f()
    assert tau(f, SuspensionPoint.make(CantorPoint.parse("01(0)"), 0)) == Q(1, 128)


def test_generator_inverses():
    for g in generators():
        for p in (Y, SuspensionPoint.make(CantorPoint.parse("1(001)"), Q(1, 3))):
            assert g.inverse()(g(p)) == p


def test_thompson_generators_have_power_of_two_slopes():
    A, B = thompson_generators_on_J()
    for g in (A, B):
        m = g.lift_map(DEFAULT_BASE, Q(-1), Q(2))
        assert all(is_power_of_two(s) for s, _ in m.pieces)


def test_intertwining_with_translation():
    rep = SuspensionRep(Y)
    c = Q(5, 4)
    moved = rep.conjugate(PLMap.translation(c))
    for name in ("f", "A", "B", "f A", "B f^-1"):
        w = SUSPENSION_GROUP.word(name)
        lhs = moved.image(w, (-2, 2))
        rhs = translate_conjugate(rep.image(w, (-2 - c, 2 - c)), c)
        assert sup_distance(lhs, rhs, (-2, 2)) == 0


def test_rho_is_a_homomorphism_on_window():
    rep = SuspensionRep(Y)
    win = (-2, 2)
    big = (-6, 6)
    for u in enumerate_words(3, 1):
        for v in enumerate_words(3, 1):
            lhs = rep.image(u * v, win)
            rhs = compose(rep.image(u, big), rep.image(v, big))
            assert sup_distance(lhs, rhs, win) == 0


def test_zero_orbit_rejected():
    with pytest.raises(OrbitError):
        SuspensionRep(SuspensionPoint.make(CantorPoint(Q(5)), 0))


def test_chart_trace():
    trace = chart_trace(Y, (-3, 3))
    assert [k for k, _, _ in trace] == list(range(-3, 4))
    assert [m for _, _, m in trace] == ["f_1", "f_4", "f_1", "f_2", "f_1", "f_3", "f_1"]


def test_recurrence_window_3():
    rep = recurrence_experiment(Y, DEFAULT_WORDS, (-3, 3), 8)
    assert [d for _, _, d in rep.rows] == [Q(63, 2048), Q(15, 2048), Q(15, 8192), Q(3, 8192), 0, 0, 0, 0]
    assert [t for _, t, _ in rep.rows] == [2 ** n for n in range(8)]
    assert rep.threshold == 4 == n0_oracle(3)


@pytest.mark.parametrize("W", [2, 5])
def test_threshold_matches_valuation_oracle(W):
    rep = recurrence_experiment(Y, DEFAULT_WORDS, (-W, W), 7)
    assert rep.threshold == n0_oracle(W)


def test_single_row_report():
    rep = recurrence_experiment(Y, DEFAULT_WORDS, (-3, 3), 1)
    assert len(rep.rows) == 1 and rep.threshold is None
    assert rep.lines()[-1] == "threshold not reached in range"
