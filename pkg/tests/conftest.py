import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from lineact.plmap import PLMap
from lineact.rep import MarkedGroup, Representation, Word

F2 = MarkedGroup(("g", "h"))
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def _increasing(values):
    return sorted(set(values))


@st.composite
def rationals(draw, lo=-40, hi=40, dens=(1, 2, 3, 4, 8)):
    return Fraction(draw(st.integers(lo, hi)), draw(st.sampled_from(dens)))


@st.composite
def plmaps(draw, max_breaks=5, dyadic=False):
    dens = (1, 2, 4, 8) if dyadic else (1, 2, 3, 4, 8)
    xs = _increasing(draw(st.lists(rationals(dens=dens), min_size=1, max_size=max_breaks)))
    ys = _increasing(draw(st.lists(rationals(dens=dens), min_size=len(xs), max_size=len(xs) + 4)))
    assume_len = min(len(xs), len(ys))
    xs, ys = xs[:assume_len], ys[:assume_len]
    slopes = (Fraction(1, 2), Fraction(1), Fraction(2)) if dyadic else (Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2))
    ls, rs = draw(st.sampled_from(slopes)), draw(st.sampled_from(slopes))
    return PLMap.from_points(list(zip(xs, ys)), ls, rs)


def random_plmap(rng: random.Random, span=40, den=8) -> PLMap:
    k = rng.randint(2, 5)
    xs = _increasing(Fraction(rng.randint(-span, span), den) for _ in range(k))
    ys = _increasing(Fraction(rng.randint(-span, span), den) for _ in range(len(xs)))
    while len(ys) < len(xs):
        ys = _increasing(ys + [Fraction(rng.randint(-span, span), den)])
    return PLMap.from_points(list(zip(xs, ys)), Fraction(rng.randint(1, 4), 2), Fraction(rng.randint(1, 4), 2))


def random_f2_rep(rng: random.Random) -> Representation:
    while True:
        rep = Representation(F2, [random_plmap(rng), random_plmap(rng)])
        if any(f(0) != 0 for f in rep.images):
            return rep


@st.composite
def words(draw, ngens=2, max_len=6):
    letters = draw(st.lists(st.integers(0, 2 * ngens - 1), max_size=max_len))
    return Word.from_letters(letters)


@pytest.fixture
def rng():
    return random.Random(20240601)
