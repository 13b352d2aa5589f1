"""Dyadic dynamical realization of a preorder on an enumerated prefix.

Elements are inserted one at a time: a new maximum gets ``max + 1``, a new
minimum ``min - 1``, an element tied with a tabled one gets the same value,
and anything else the midpoint of its tabled neighbours.  Values are
therefore dyadic, and each insertion is recorded for later replay.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .plmap import Dyadic, PLMap
from .preorders import Enumeration, Preorder
from .rep import MarkedGroup, Representation, Word

TABLE_TAG = "iota/1"


class InconsistentOracle(ValueError):
    pass


@dataclass
class Insertion:
    index: int
    case: str  # "base", "tie", "max", "min" or "mid"
    left: int | None = None  # tabled neighbours used (indices)
    right: int | None = None


@dataclass
class RealizationTable:
    words: list[Word]
    values: list[Fraction]
    replay: list[Insertion] = field(default_factory=list)
    names: tuple[str, ...] = ()

    @property
    def N(self) -> int:
        return len(self.values)

    def export(self) -> str:
        lines = [TABLE_TAG, "generators " + " ".join(self.names)]
        for i, (w, v) in enumerate(zip(self.words, self.values)):
            lines.append(f"{i}\t{w.format(self.names)}\t{v}")
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, text: str) -> "RealizationTable":
        it = iter(text.splitlines())
        if next(it).strip() != TABLE_TAG:
            raise ValueError(f"expected {TABLE_TAG!r}")
        names = tuple(next(it).split()[1:])
        words, values = [], []
        for line in it:
            if not line.strip():
                continue
            i, w, v = line.split("\t")
            if int(i) != len(words):
                raise ValueError("rows out of order")
            words.append(Word.parse(w, names))
            values.append(Fraction(v))
        return cls(words, values, [], names)


def iota(pre: Preorder, enum: Enumeration, N: int, verify: bool = True) -> RealizationTable:
    """Order-preserving dyadic values for the first ``N`` enumerated elements.

    Classes are kept sorted, so each insertion needs a binary search of
    oracle calls rather than a scan.  With ``verify`` the finished table is
    checked against the oracle on every pair.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    words = enum.prefix(N)
    if len(words) < N:
        raise ValueError("enumeration too short")
    vals: list[Fraction] = [Fraction(0)]
    replay = [Insertion(0, "base")]
    cls_vals: list[Fraction] = [Fraction(0)]  # sorted distinct values
    cls_rep: list[int] = [0]  # one tabled index per class
    for n in range(1, N):
        g = words[n]
        lo, hi = 0, len(cls_vals)
        tie = None
        while lo < hi:
            mid = (lo + hi) // 2
            c = pre.compare(words[cls_rep[mid]], g)
            if c == 0:
                tie = mid
                break
            if c < 0:
                lo = mid + 1
            else:
                hi = mid
        if tie is not None:
            v = cls_vals[tie]
            replay.append(Insertion(n, "tie", cls_rep[tie], cls_rep[tie]))
        else:
            if lo == len(cls_vals):
                v = cls_vals[-1] + 1
                replay.append(Insertion(n, "max", cls_rep[-1], None))
            elif lo == 0:
                v = cls_vals[0] - 1
                replay.append(Insertion(n, "min", None, cls_rep[0]))
            else:
                v = (cls_vals[lo - 1] + cls_vals[lo]) / 2
                replay.append(Insertion(n, "mid", cls_rep[lo - 1], cls_rep[lo]))
            cls_vals.insert(lo, v)
            cls_rep.insert(lo, n)
        vals.append(v)
    table = RealizationTable(list(words), vals, replay, enum.group.names)
    if verify:
        verify_table(table, pre)
    return table


def verify_table(table: RealizationTable, pre: Preorder) -> None:
    """Raise :class:`InconsistentOracle` unless values order exactly as the oracle does."""
    w, v = table.words, table.values
    for i in range(len(w)):
        for j in range(i + 1, len(w)):
            c = pre.compare(w[i], w[j])
            d = (v[i] > v[j]) - (v[i] < v[j])
            if c != d:
                raise InconsistentOracle(
                    f"oracle says {c} for ({i}, {j}) but tabled values give {d}; "
                    "the comparison oracle is not a total preorder on this prefix")


def height(x: Fraction) -> int:
    return Dyadic.from_fraction(x).height


def check_dyadic_dichotomy(table: RealizationTable, max_height: int | None = None) -> list[str]:
    """Replay insertions; each new value of height ``n`` needs its height-``k``
    neighbours (``k < n``) already tabled.  Returns violations (empty = PASS)."""
    present: set[Fraction] = set()
    problems = []
    for ins in table.replay or [Insertion(i, "?") for i in range(table.N)]:
        x = table.values[ins.index]
        if x in present:
            continue
        d = Dyadic.from_fraction(x)
        top = d.height if max_height is None else min(d.height, max_height)
        for k in range(top):
            for side, y in (("left", d.left_neighbor(k)), ("right", d.right_neighbor(k))):
                if y not in present:
                    problems.append(f"value {x} (element {ins.index}): {side} neighbour {y} of height {k} not tabled")
        present.add(x)
    return problems


@dataclass
class Realized:
    """Generator maps interpolated from the table, exact on ``window``."""

    rep: Representation
    window: tuple[Fraction, Fraction]
    pairs: list[int]
    extrapolated: bool = True  # slope-1 ends beyond the tabled range


def realize_generators(table: RealizationTable, group: MarkedGroup, normalizer=None) -> Realized:
    """PL maps through the pairs ``(iota(g), iota(s g))`` available in the table."""
    from .preorders import free_normal_form
    norm = normalizer or free_normal_form
    pos = {norm(w): i for i, w in enumerate(table.words)}
    maps, counts = [], []
    for s in group.gens():
        pts: dict[Fraction, Fraction] = {}
        for i, g in enumerate(table.words):
            j = pos.get(norm(s * g))
            if j is None:
                continue
            x, y = table.values[i], table.values[j]
            if pts.setdefault(x, y) != y:
                raise InconsistentOracle(f"tied elements sent to different values by {s}")
        if len(pts) < 2:
            raise ValueError(f"insufficient data: generator {s.format(group.names)} has {len(pts)} tabled pairs")
        seq = sorted(pts.items())
        maps.append(PLMap.from_points(seq, 1, 1))
        counts.append(len(seq))
    window = (min(table.values), max(table.values))
    rep = Representation(group, maps, window=window, check=False)
    return Realized(rep, window, counts)
