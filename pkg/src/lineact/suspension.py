"""Exact computation in the suspension of the binary odometer.

Points of the Cantor set are eventually periodic binary sequences
(little-endian), stored through their 2-adic value: a rational with odd
denominator.  The odometer is then ``x -> x + 1``, and ``x`` lies on the
orbit of ``0^inf`` exactly when its value is an integer.

A point of the suspension is ``pi(x, t)`` with ``t`` in ``[0, 1)`` and
``pi(x, t + 1) = pi(odometer(x), t)``.  Every element considered here
moves points along flow lines, so it is described by a lifted map
``u -> lift(x, u)`` on each line; ``rho_y(g)`` is that lift read in the
time coordinate of ``y``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .families import dyadic_sequence, f_infinity
from .plmap import PLMap, compose, invert, to_q, translate_conjugate
from .rep import MarkedGroup, Word, rep_distance

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)
I_RADIUS = QUARTER  # f lives on C_n x (-1/4, 1/4)
J_LO, J_HI = Fraction(1, 16), Fraction(15, 16)


class OrbitError(ValueError):
    """Base point lies on the flow line of the fixed point of ``f``."""


# ---------------------------------------------------------------------------
# Cantor points


def _expand(r: Fraction) -> tuple[str, str]:
    seen: dict[Fraction, int] = {}
    digits = []
    while r not in seen:
        seen[r] = len(digits)
        d = r.numerator % 2
        digits.append(str(d))
        r = (r - d) / 2
    i = seen[r]
    return "".join(digits[:i]), "".join(digits[i:])


class CantorPoint:
    """Eventually periodic little-endian binary sequence ``pre + period^inf``.

    The canonical form has minimal period and shortest preword.
    """

    __slots__ = ("value", "pre", "period")

    def __init__(self, value: Fraction):
        value = to_q(value)
        if value.denominator % 2 == 0:
            raise ValueError("2-adic value needs an odd denominator")
        self.value = value
        self.pre, self.period = _expand(value)

    @classmethod
    def from_digits(cls, pre: str, period: str) -> "CantorPoint":
        if not period or set(pre + period) - {"0", "1"}:
            raise ValueError("digits must be 0/1 and the period nonempty")
        head = sum(int(c) << i for i, c in enumerate(pre))
        block = sum(int(c) << i for i, c in enumerate(period))
        return cls(Fraction(head) + Fraction(block << len(pre), 1 - (1 << len(period))))

    @classmethod
    def parse(cls, text: str) -> "CantorPoint":
        """``"1(01)"`` means ``1`` then ``01`` repeated."""
        text = text.strip()
        if "(" not in text or not text.endswith(")"):
            raise ValueError(f"expected pre(period), got {text!r}")
        pre, period = text[:-1].split("(")
        return cls.from_digits(pre, period)

    def digit(self, i: int) -> int:
        if i < len(self.pre):
            return int(self.pre[i])
        return int(self.period[(i - len(self.pre)) % len(self.period)])

    def prefix(self, n: int) -> str:
        return "".join(str(self.digit(i)) for i in range(n))

    def first_one(self) -> int | None:
        if self.value == 0:
            return None
        i = 0
        while self.digit(i) == 0:
            i += 1
        return i

    def cylinder_index(self) -> int | None:
        """``n`` with ``x`` in ``C_n`` (prefix ``0^(n-1) 1``); None for ``0^inf``."""
        p = self.first_one()
        return None if p is None else p + 1

    def on_zero_orbit(self) -> bool:
        return self.value.denominator == 1

    def __eq__(self, other):
        return isinstance(other, CantorPoint) and self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return f"{self.pre}({self.period})"

    def __repr__(self):
        return f"CantorPoint.parse({str(self)!r})"


ZERO = CantorPoint(Fraction(0))


def odometer_step(x: CantorPoint, k: int = 1) -> CantorPoint:
    """Binary addition of ``k`` with carry."""
    return CantorPoint(x.value + k)


@dataclass(frozen=True)
class SuspensionPoint:
    """``pi(base, time)`` kept with ``0 <= time < 1``."""

    base: CantorPoint
    time: Fraction

    @classmethod
    def make(cls, base: CantorPoint, time) -> "SuspensionPoint":
        time = to_q(time)
        n = math.floor(time)
        return cls(odometer_step(base, n) if n else base, time - n)

    def __str__(self):
        return f"pi({self.base}, {self.time})"


def flow(p: SuspensionPoint, t) -> SuspensionPoint:
    return SuspensionPoint.make(p.base, p.time + to_q(t))


# ---------------------------------------------------------------------------
# elements acting along flow lines


class Element:
    """An element of the suspension group, acting along flow lines."""

    name = "?"

    def lift(self, x: CantorPoint, u: Fraction) -> Fraction:
        raise NotImplementedError

    def lift_map(self, x: CantorPoint, lo: Fraction, hi: Fraction) -> PLMap:
        """``u -> lift(x, u)``, exact on ``[lo, hi]`` and identity far away."""
        raise NotImplementedError

    def inverse(self) -> "Element":
        raise NotImplementedError

    def __matmul__(self, other: "Element") -> "Element":
        return Composite([self, other])

    def __call__(self, p: SuspensionPoint) -> SuspensionPoint:
        return SuspensionPoint.make(p.base, self.lift(p.base, p.time))


class ChartElement(Element):
    """Element given by local maps on the charts ``base cylinder x interval``.

    ``centered`` charts are ``[k - 1/2, k + 1/2)`` around integers (used by
    ``f`` on ``I``); otherwise ``[k, k + 1)``.  ``local(xk)`` returns the PL
    map in chart coordinates for the base point ``xk`` sitting over chart
    ``k``, or None for the limit map ``f_inf``.  Local maps fix the ends of
    ``(lo, hi)`` and are the identity outside.
    """

    def __init__(self, name, lo, hi, centered, local, limit=None, inverted=False):
        self.name = name
        self.lo, self.hi = to_q(lo), to_q(hi)
        self.centered = centered
        self._local = local
        self._limit = limit
        self._inverted = inverted

    def chart(self, u: Fraction) -> int:
        return math.floor(u + HALF) if self.centered else math.floor(u)

    def local(self, xk: CantorPoint) -> PLMap | None:
        m = self._local(xk)
        if m is None:
            return None
        return invert(m) if self._inverted else m

    def lift(self, x: CantorPoint, u) -> Fraction:
        u = to_q(u)
        k = self.chart(u)
        v = u - k
        if not self.lo < v < self.hi:
            return u
        xk = odometer_step(x, k)
        m = self.local(xk)
        if m is None:
            if self._limit is None:
                raise OrbitError(f"no local map over {xk}")
            v2 = self._limit(v, self._inverted)
        else:
            v2 = m(v)
        return k + v2

    def lift_map(self, x: CantorPoint, lo, hi) -> PLMap:
        lo, hi = to_q(lo), to_q(hi)
        k0, k1 = self.chart(lo) - 1, self.chart(hi) + 1
        pts = []
        for k in range(k0, k1 + 1):
            xk = odometer_step(x, k)
            m = self.local(xk)
            if m is None:
                raise OrbitError(f"flow line of {x} meets the fixed point of {self.name} (chart {k}); "
                                 "the lift has infinitely many breakpoints")
            pts.append((k + self.lo, k + self.lo))
            pts += [(k + b, k + m(b)) for b in m.breakpoints if self.lo < b < self.hi]
            pts.append((k + self.hi, k + self.hi))
        # adjacent charts may share an endpoint
        dedup = []
        for p in pts:
            if not dedup or dedup[-1][0] != p[0]:
                dedup.append(p)
        return PLMap.compact_support(dedup)

    def inverse(self) -> "ChartElement":
        name = self.name[:-3] if self.name.endswith("^-1") else self.name + "^-1"
        return ChartElement(name, self.lo, self.hi, self.centered, self._local, self._limit, not self._inverted)

    def charts(self, depth: int = 4) -> list[tuple[str, int, PLMap | str]]:
        """``(cylinder prefix, shift, local map)`` rows; ``f`` lists its first ``depth`` cylinders."""
        if self._limit is None:
            m = self._local(ZERO)
            return [("", 0, invert(m) if self._inverted else m)]
        rows = []
        for n in range(1, depth + 1):
            xk = CantorPoint.from_digits("0" * (n - 1) + "1", "0")
            rows.append(("0" * (n - 1) + "1", 0, self.local(xk)))
        rows.append(("0" * depth, 0, "f_n for deeper cylinders, f_inf at 0^inf"))
        return rows


class Composite(Element):
    """``parts[0] o parts[1] o ...`` (rightmost acts first)."""

    def __init__(self, parts: Sequence[Element]):
        flat = []
        for p in parts:
            flat += p.parts if isinstance(p, Composite) else [p]
        self.parts = flat
        self.name = " ".join(p.name for p in flat) or "e"

    def lift(self, x, u):
        u = to_q(u)
        for p in reversed(self.parts):
            u = p.lift(x, u)
        return u

    def lift_map(self, x, lo, hi):
        out = PLMap()
        for p in self.parts:
            out = compose(out, p.lift_map(x, lo, hi))
        return out

    def inverse(self):
        return Composite([p.inverse() for p in reversed(self.parts)])


IDENTITY = Composite([])


def _f_local(xk: CantorPoint):
    n = xk.cylinder_index()
    return None if n is None else dyadic_sequence(n)


def _f_limit(v, inverted):
    if not inverted:
        return f_infinity(v)
    # f_inf^-1: invert the stabilized f_m at the point
    if v == 0:
        return Fraction(0)
    m = 1
    while True:
        fm = dyadic_sequence(m)
        w = invert(fm)(v)
        if abs(w) >= Fraction(1, 4 ** (m + 1)):
            return w
        m += 1


def element_f() -> ChartElement:
    """``f_n`` on ``C_n x I`` and ``f_inf`` over ``0^inf``; fixes ``pi(0^inf, 0)``."""
    return ChartElement("f", -I_RADIUS, I_RADIUS, True, _f_local, _f_limit)


def _rescale(points):
    # L(x) = 1/16 + 7/8 x sends [0, 1] onto [1/16, 15/16]
    L = lambda x: J_LO + Fraction(7, 8) * to_q(x)
    return PLMap.compact_support([(L(a), L(b)) for a, b in points])


_A_J = _rescale([(0, 0), (HALF, QUARTER), (Fraction(3, 4), HALF), (1, 1)])
_B_J = _rescale([(0, 0), (HALF, HALF), (Fraction(3, 4), Fraction(5, 8)), (Fraction(7, 8), Fraction(3, 4)), (1, 1)])


def thompson_generators_on_J() -> tuple[ChartElement, ChartElement]:
    """The two standard generators of Thompson's F, rescaled to ``J``, on all of ``X``."""
    return (ChartElement("A", J_LO, J_HI, False, lambda xk: _A_J),
            ChartElement("B", J_LO, J_HI, False, lambda xk: _B_J))


SUSPENSION_GROUP = MarkedGroup(("f", "A", "B"))


def generators() -> list[ChartElement]:
    return [element_f(), *thompson_generators_on_J()]


def word_element(w: Word, gens: Sequence[Element] | None = None) -> Element:
    gens = list(gens or generators())
    parts = []
    for g, e in w.syllables:
        parts += [gens[g] if e > 0 else gens[g].inverse()] * abs(e)
    return Composite(parts)


def tau(g: Element, p: SuspensionPoint) -> Fraction:
    """Displacement ``s`` with ``g(p) = flow(p, s)``."""
    return g.lift(p.base, p.time) - p.time


# ---------------------------------------------------------------------------
# orbit representations


def _check_base(y: SuspensionPoint):
    if y.base.on_zero_orbit():
        raise OrbitError(f"{y} lies on the flow line of pi(0^inf, 0)")


def rho(y: SuspensionPoint, g: Element, window) -> PLMap:
    """``s -> s + tau_g(flow(y, s))`` as a PL map, exact on ``window``."""
    _check_base(y)
    lo, hi = to_q(window[0]), to_q(window[1])
    t0 = y.time
    m = g.lift_map(y.base, lo + t0 - 1, hi + t0 + 1)
    # read in the time coordinate of y: s -> lift(t0 + s) - t0
    return translate_conjugate(m, -t0)


class SuspensionRep:
    """``rho_y`` for the group on ``f, A, B``, duck-typed like a Representation."""

    group = SUSPENSION_GROUP

    def __init__(self, y: SuspensionPoint):
        _check_base(y)
        self.y = y
        self._gens = generators()
        self._cache: dict = {}

    def image(self, w: Word, window) -> PLMap:
        key = (w, to_q(window[0]), to_q(window[1]))
        m = self._cache.get(key)
        if m is None:
            m = self._cache[key] = rho(self.y, word_element(w, self._gens), window)
        return m

    def conjugate(self, f: PLMap) -> "SuspensionRep":
        """Only translations ``T_c``: ``T_c rho_y T_-c = rho_{flow(y, -c)}``."""
        if not f.is_translation():
            raise ValueError("suspension representations are conjugated by translations only")
        return SuspensionRep(flow(self.y, -f.pieces[0][1]))


DEFAULT_WORDS = ("f", "A", "B", "f A", "B f")
DEFAULT_BASE = CantorPoint.from_digits("", "01")


@dataclass
class RecurrenceReport:
    rows: list[tuple[int, int, Fraction]]  # (n, t_n, distance)
    threshold: int | None

    def lines(self) -> list[str]:
        out = ["n t_n distance"]
        out += [f"{n} {t} {d}" for n, t, d in self.rows]
        if self.threshold is None:
            out.append("threshold not reached in range")
        else:
            out.append(f"N0 = {self.threshold}")
        return out


def recurrence_experiment(y: SuspensionPoint, words: Iterable = DEFAULT_WORDS, window=(-3, 3),
                          max_n: int = 8) -> RecurrenceReport:
    """Distances between ``rho_y`` and ``rho`` at ``flow(y, 2^n)`` for ``0 <= n < max_n``.

    ``N0`` is the first ``n`` from which every remaining distance is 0.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    ws = [w if isinstance(w, Word) else SUSPENSION_GROUP.word(w) for w in words]
    window = (to_q(window[0]), to_q(window[1]))
    base = SuspensionRep(y)
    rows = []
    for n in range(max_n):
        t = 2 ** n
        d = rep_distance(base, SuspensionRep(flow(y, t)), ws, window)
        rows.append((n, t, d))
    threshold = None
    for n, _, d in reversed(rows):
        if d != 0:
            break
        threshold = n
    return RecurrenceReport(rows, threshold)


def chart_trace(y: SuspensionPoint, window) -> list[tuple[int, str, str]]:
    """``(k, cylinder, local map id)`` for the ``f``-charts meeting the window along ``y``."""
    _check_base(y)
    lo, hi = to_q(window[0]) + y.time, to_q(window[1]) + y.time
    out = []
    for k in range(math.floor(lo + HALF), math.floor(hi + HALF) + 1):
        xk = odometer_step(y.base, k)
        n = xk.cylinder_index()
        out.append((k, "0" * (n - 1) + "1", f"f_{n}"))
    return out
