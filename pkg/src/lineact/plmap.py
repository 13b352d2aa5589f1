"""Exact piecewise-linear orientation-preserving homeomorphisms of the line.

All arithmetic is done with :class:`fractions.Fraction`; no floats enter the
core.  A :class:`PLMap` is stored in normal form (adjacent collinear pieces
merged), so structural equality is functional equality.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import kernels

Q = Fraction
FORMAT_TAG = "plmap/1"

try:
    Fraction(1, 1, _normalize=False)  # type: ignore[call-arg]
    _RAW_FRACTION = True
except TypeError:  # pragma: no cover - newer Pythons dropped the flag
    _RAW_FRACTION = False


def to_q(x) -> Fraction:
    """Coerce ints, ``"p/q"`` strings and Fractions to a Fraction.

    Floats are refused so that no binary rounding leaks into exact data.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a Fraction or 'p/q' string")
    return Fraction(x)


def q_from_pair(n: int, d: int) -> Fraction:
    """Fraction from a reduced ``(num, den)`` pair with ``den > 0``."""
    if _RAW_FRACTION:
        return Fraction(n, d, _normalize=False)  # type: ignore[call-arg]
    return Fraction(n, d)  # pragma: no cover


def q_pair(x: Fraction) -> tuple[int, int]:
    return (x.numerator, x.denominator)


def fmt_q(x: Fraction) -> str:
    return str(x)


class Dyadic:
    """A dyadic rational ``mantissa / 2**height`` in normalized form."""

    __slots__ = ("mantissa", "height")

    def __init__(self, mantissa: int, height: int = 0):
        if height < 0:
            raise ValueError("height must be a natural number")
        while height > 0 and mantissa % 2 == 0:
            mantissa //= 2
            height -= 1
        self.mantissa = mantissa
        self.height = height

    @classmethod
    def from_fraction(cls, x) -> "Dyadic":
        x = to_q(x)
        d = x.denominator
        if d & (d - 1):
            raise ValueError(f"{x} is not dyadic")
        return cls(x.numerator, d.bit_length() - 1)

    def to_fraction(self) -> Fraction:
        return Fraction(self.mantissa, 1 << self.height)

    def left_neighbor(self, k: int) -> Fraction:
        """Largest ``j / 2**k`` that is ``<= self``."""
        x = self.to_fraction()
        return Fraction((x * (1 << k)).__floor__(), 1 << k)

    def right_neighbor(self, k: int) -> Fraction:
        """Smallest ``j / 2**k`` that is ``>= self``."""
        x = self.to_fraction()
        return Fraction((x * (1 << k)).__ceil__(), 1 << k)

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.mantissa == other.mantissa and self.height == other.height
        return NotImplemented

    def __hash__(self):
        return hash((self.mantissa, self.height))

    def __repr__(self):
        return f"Dyadic({self.mantissa}, {self.height})"


def is_dyadic(x: Fraction) -> bool:
    d = x.denominator
    return d & (d - 1) == 0


def is_power_of_two(x: Fraction) -> bool:
    n, d = x.numerator, x.denominator
    return n > 0 and n & (n - 1) == 0 and d & (d - 1) == 0


@dataclass(frozen=True)
class FixedSet:
    """Exact fixed-point data of a PL map on a closed window.

    ``components`` are the maximal closed intervals ``(a, b)`` (``a == b`` for
    isolated points) where the map is the identity.  ``gaps`` are the open
    complementary intervals inside the window together with the sign of
    ``f - id`` there.
    """

    window: tuple[Fraction, Fraction]
    components: tuple[tuple[Fraction, Fraction], ...]
    gaps: tuple[tuple[Fraction, Fraction, int], ...]

    def points(self) -> list[Fraction]:
        return [a for a, b in self.components if a == b]

    def is_empty(self) -> bool:
        return not self.components


class PLMap:
    """Piecewise-linear increasing bijection of the line.

    ``breakpoints`` is a strictly increasing tuple; ``pieces[i]`` is the
    ``(slope, intercept)`` pair valid on ``[b[i-1], b[i]]`` with the two
    unbounded end pieces at index 0 and -1.
    """

    __slots__ = ("_bps", "_pieces", "_packed", "_hash")

    def __init__(self, breakpoints: Iterable = (), pieces: Iterable = ((1, 0),), *, check: bool = True):
        bps = [to_q(b) for b in breakpoints]
        pcs = [(to_q(s), to_q(c)) for s, c in pieces]
        if len(pcs) != len(bps) + 1:
            raise ValueError("need exactly one more piece than breakpoints")
        if check:
            for i in range(1, len(bps)):
                if not bps[i - 1] < bps[i]:
                    raise ValueError("breakpoints must be strictly increasing")
            for s, _ in pcs:
                if s <= 0:
                    raise ValueError(f"slope {s} is not positive")
            for i, b in enumerate(bps):
                (s0, c0), (s1, c1) = pcs[i], pcs[i + 1]
                if s0 * b + c0 != s1 * b + c1:
                    raise ValueError(f"discontinuity at breakpoint {b}")
        # merge collinear neighbours
        nb: list[Fraction] = []
        npcs = [pcs[0]]
        for b, p in zip(bps, pcs[1:]):
            if p == npcs[-1]:
                continue
            nb.append(b)
            npcs.append(p)
        self._bps = tuple(nb)
        self._pieces = tuple(npcs)
        self._packed = None
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def identity(cls) -> "PLMap":
        return cls()

    @classmethod
    def affine(cls, slope, intercept=0) -> "PLMap":
        return cls((), ((slope, intercept),))

    @classmethod
    def translation(cls, t) -> "PLMap":
        return cls((), ((1, t),))

    @classmethod
    def from_points(cls, points: Sequence, left_slope=1, right_slope=1) -> "PLMap":
        """Interpolate through ``points`` and extend with the given end slopes."""
        pts = [(to_q(x), to_q(y)) for x, y in points]
        if not pts:
            raise ValueError("need at least one point")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if not (x0 < x1 and y0 < y1):
                raise ValueError("points must be strictly increasing in both coordinates")
        ls, rs = to_q(left_slope), to_q(right_slope)
        x0, y0 = pts[0]
        pieces = [(ls, y0 - ls * x0)]
        for (xa, ya), (xb, yb) in zip(pts, pts[1:]):
            s = (yb - ya) / (xb - xa)
            pieces.append((s, ya - s * xa))
        xn, yn = pts[-1]
        pieces.append((rs, yn - rs * xn))
        return cls([x for x, _ in pts], pieces)

    @classmethod
    def compact_support(cls, points: Sequence) -> "PLMap":
        """Map through ``points`` whose first and last points are fixed; identity outside."""
        pts = [(to_q(x), to_q(y)) for x, y in points]
        if pts[0][0] != pts[0][1] or pts[-1][0] != pts[-1][1]:
            raise ValueError("first and last points must be fixed points")
        return cls.from_points(pts, 1, 1)

    # -- accessors --------------------------------------------------------
    @property
    def breakpoints(self) -> tuple[Fraction, ...]:
        return self._bps

    @property
    def pieces(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return self._pieces

    @property
    def packed(self) -> tuple:
        if self._packed is None:
            bps, pcs = self._bps, self._pieces
            self._packed = (
                tuple(b.numerator for b in bps),
                tuple(b.denominator for b in bps),
                tuple(s.numerator for s, _ in pcs),
                tuple(s.denominator for s, _ in pcs),
                tuple(c.numerator for _, c in pcs),
                tuple(c.denominator for _, c in pcs),
            )
        return self._packed

    def piece_at(self, x: Fraction) -> tuple[Fraction, Fraction]:
        return self._pieces[bisect.bisect_left(self._bps, x)]

    def is_identity(self) -> bool:
        return not self._bps and self._pieces[0] == (1, 0)

    def is_translation(self) -> bool:
        return not self._bps and self._pieces[0][0] == 1

    def is_dyadic(self) -> bool:
        """Thompson-type data: dyadic breakpoints and intercepts, power-of-two slopes."""
        return (all(is_dyadic(b) for b in self._bps)
                and all(is_power_of_two(s) and is_dyadic(c) for s, c in self._pieces))

    # -- evaluation -------------------------------------------------------
    def __call__(self, x) -> Fraction:
        x = to_q(x)
        s, c = self._pieces[bisect.bisect_left(self._bps, x)]
        return s * x + c

    def eval_pair(self, n: int, d: int) -> tuple[int, int]:
        return kernels.pl_eval(self.packed, n, d)

    # -- algebra ----------------------------------------------------------
    def __matmul__(self, other: "PLMap") -> "PLMap":
        return compose(self, other)

    def inverse(self) -> "PLMap":
        return invert(self)

    def __eq__(self, other):
        if not isinstance(other, PLMap):
            return NotImplemented
        return self._bps == other._bps and self._pieces == other._pieces

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._bps, self._pieces))
        return self._hash

    def __repr__(self):
        if not self._bps:
            s, c = self._pieces[0]
            return f"PLMap(x -> {s}*x + {c})"
        return f"PLMap(breaks={[str(b) for b in self._bps]})"

    # -- serialization ----------------------------------------------------
    def record_lines(self) -> list[str]:
        lines = [FORMAT_TAG, "breaks" + "".join(" " + fmt_q(b) for b in self._bps)]
        lines += [f"piece {fmt_q(s)} {fmt_q(c)}" for s, c in self._pieces]
        lines.append("end")
        return lines

    def dumps(self) -> str:
        return "\n".join(self.record_lines()) + "\n"

    @classmethod
    def loads(cls, text: str) -> "PLMap":
        it = iter(line for line in text.splitlines() if line.strip())
        return read_record(it)


def read_record(lines: Iterator[str]) -> PLMap:
    """Read one ``plmap/1`` record from an iterator of non-blank lines."""
    head = next(lines).strip()
    if head != FORMAT_TAG:
        raise ValueError(f"expected {FORMAT_TAG!r}, got {head!r}")
    parts = next(lines).split()
    if not parts or parts[0] != "breaks":
        raise ValueError("expected 'breaks' line")
    bps = [Fraction(p) for p in parts[1:]]
    pieces = []
    for line in lines:
        parts = line.split()
        if parts == ["end"]:
            return PLMap(bps, pieces)
        if len(parts) != 3 or parts[0] != "piece":
            raise ValueError(f"bad piece line {line!r}")
        pieces.append((Fraction(parts[1]), Fraction(parts[2])))
    raise ValueError("unterminated plmap record")


# ---------------------------------------------------------------------------
# operations


def evaluate(f: PLMap, x) -> Fraction:
    return f(x)


def compose(f: PLMap, g: PLMap) -> PLMap:
    """``f o g`` (``g`` applied first), normalized."""
    if not g._bps and not f._bps:
        (sf, cf), (sg, cg) = f._pieces[0], g._pieces[0]
        return PLMap((), ((sf * sg, sf * cg + cf),))
    ginv = invert(g)
    cuts = sorted(set(g._bps) | {ginv(b) for b in f._bps})
    pts = [(x, f(g(x))) for x in cuts]
    ls = f._pieces[0][0] * g._pieces[0][0]
    rs = f._pieces[-1][0] * g._pieces[-1][0]
    return PLMap.from_points(pts, ls, rs)


def invert(f: PLMap) -> PLMap:
    if not f._bps:
        s, c = f._pieces[0]
        return PLMap((), ((1 / s, -c / s),))
    pts = [(f(b), b) for b in f._bps]
    return PLMap.from_points(pts, 1 / f._pieces[0][0], 1 / f._pieces[-1][0])


def power(f: PLMap, k: int) -> PLMap:
    base = f if k >= 0 else invert(f)
    out = PLMap.identity()
    for _ in range(abs(k)):
        out = compose(base, out)
    return out


def translate_conjugate(f: PLMap, t) -> PLMap:
    """``T_t o f o T_{-t}``; breakpoints move by ``+t``."""
    t = to_q(t)
    return PLMap([b + t for b in f._bps],
                 [(s, c + t - s * t) for s, c in f._pieces], check=False)


def _window(window) -> tuple[Fraction, Fraction]:
    a, b = (to_q(w) for w in window)
    if a > b:
        raise ValueError("empty window")
    return a, b


def fixed_set(f: PLMap, window) -> FixedSet:
    lo, hi = _window(window)
    cuts = [lo] + [b for b in f._bps if lo < b < hi] + [hi]
    raw: list[tuple[Fraction, Fraction]] = []
    if lo == hi:
        if f(lo) == lo:
            raw.append((lo, lo))
    for a, b in zip(cuts, cuts[1:]):
        s, c = f.piece_at((a + b) / 2)
        if s == 1:
            if c == 0:
                raw.append((a, b))
        else:
            x = c / (1 - s)
            if a <= x <= b:
                raw.append((x, x))
    comps: list[list[Fraction]] = []
    for a, b in raw:
        if comps and a <= comps[-1][1]:
            comps[-1][1] = max(comps[-1][1], b)
        else:
            comps.append([a, b])
    gaps = []
    edge = lo
    bounds = [(a, b) for a, b in comps] + [(hi, hi)]
    for a, b in bounds:
        if edge < a:
            m = (edge + a) / 2
            gaps.append((edge, a, 1 if f(m) > m else -1))
        edge = max(edge, b)
    return FixedSet((lo, hi), tuple((a, b) for a, b in comps), tuple(gaps))


def sup_distance(f: PLMap, g: PLMap, window) -> Fraction:
    """Exact ``sup |f - g|`` on the closed window."""
    lo, hi = _window(window)
    pts = {lo, hi}
    pts.update(b for b in f._bps if lo < b < hi)
    pts.update(b for b in g._bps if lo < b < hi)
    return max(abs(f(x) - g(x)) for x in pts)


def support(f: PLMap, window) -> list[tuple[Fraction, Fraction]]:
    """Open components of ``{f != id}`` inside the window."""
    return [(a, b) for a, b, _ in fixed_set(f, window).gaps]


def span(f: PLMap) -> tuple[Fraction, Fraction] | None:
    """Hull of the breakpoints, or None for affine maps."""
    if not f._bps:
        return None
    return f._bps[0], f._bps[-1]


def compact_support(f: PLMap) -> list[tuple[Fraction, Fraction]]:
    """Support components of a map that is the identity near both ends."""
    if f._pieces[0] != (1, 0) or f._pieces[-1] != (1, 0):
        raise ValueError("map is not the identity outside a compact set")
    if not f._bps:
        return []
    return support(f, (f._bps[0], f._bps[-1]))


def fixed_points(f: PLMap) -> list[Fraction] | None:
    """All fixed points on the line, or None if the fixed set contains an interval."""
    cands = list(f._bps)
    for s, c in (f._pieces[0], f._pieces[-1]):
        if s != 1:
            cands.append(c / (1 - s))
        elif c == 0:
            return None
    lo, hi = (min(cands) - 1, max(cands) + 1) if cands else (Fraction(-1), Fraction(1))
    fs = fixed_set(f, (lo, hi))
    if any(a != b for a, b in fs.components):
        return None
    return [a for a, _ in fs.components]
