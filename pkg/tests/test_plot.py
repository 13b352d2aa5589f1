from fractions import Fraction as Q

import pytest
from hypothesis import given

from conftest import plmaps
from lineact.families import OmegaWord, g_omega
from lineact.plmap import PLMap
from lineact.plot import (GraphItem, LeavesItem, PlotSpec, PointsItem, dec, parse_plot_spec, plot_spec_text,
                          render_svg)


def test_dec_rounding():
    assert dec(Q(1, 3)) == "0.333"
    assert dec(Q(-2, 3)) == "-0.667"
    assert dec(Q(-1, 3000)) == "0.000"
    assert dec(5) == "5.000"


def test_identity_is_diagonal():
    svg = render_svg(PlotSpec((0, 1), [GraphItem("id", PLMap.identity())]))
    assert '<polyline points="40.000,440.000 440.000,40.000" fill="none" stroke="#1f4e99"' in svg


def test_spec_invariants():
    with pytest.raises(ValueError):
        PlotSpec((1, 1), [])
    with pytest.raises(ValueError):
        render_svg(PlotSpec((0, 1), []))
    with pytest.raises(ValueError):
        parse_plot_spec("")
    with pytest.raises(ValueError):
        parse_plot_spec("plot/1\nwindow 0 1\nleaves x 0\n")


def test_shading_follows_sign():
    g = g_omega(OmegaWord.periodic("+-"), (-1, 1))
    svg = render_svg(PlotSpec((-1, 1), [GraphItem("g", g, shade=True)]))
    assert svg.count('fill-opacity="0.12"') == 4
    assert svg.count("#b3361b") >= 2


@given(plmaps())
def test_text_round_trip_and_determinism(f):
    spec = PlotSpec((-3, 3), [GraphItem("f", f), LeavesItem("L", [(Q(-1), Q(1)), (Q(0), Q(1, 2))]),
                              PointsItem("p", [Q(0), Q(1, 3)])])
    text = plot_spec_text(spec)
    again = parse_plot_spec(text)
    assert plot_spec_text(again) == text
    assert render_svg(again) == render_svg(spec)
