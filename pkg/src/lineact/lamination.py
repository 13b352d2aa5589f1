"""Crossing intervals, prelaminations and depth-bounded wandering checks."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .plmap import PLMap, fixed_set, to_q
from .rep import Representation, Word, enumerate_words


@dataclass(frozen=True, order=True)
class LeafInterval:
    """Open bounded interval ``(a, b)``."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", to_q(self.a))
        object.__setattr__(self, "b", to_q(self.b))
        if not self.a < self.b:
            raise ValueError(f"empty interval ({self.a}, {self.b})")

    def image(self, f: PLMap) -> "LeafInterval":
        return LeafInterval(f(self.a), f(self.b))

    def contains(self, other: "LeafInterval") -> bool:
        return self.a <= other.a and other.b <= self.b

    def disjoint(self, other: "LeafInterval") -> bool:
        return self.b <= other.a or other.b <= self.a

    def __repr__(self):
        return f"({self.a}, {self.b})"


def interval(a, b) -> LeafInterval:
    return LeafInterval(to_q(a), to_q(b))


def crossed(I: LeafInterval, J: LeafInterval) -> bool:
    """Overlapping with neither containing the other."""
    return not I.disjoint(J) and not I.contains(J) and not J.contains(I)


def is_prelamination(intervals: Iterable[LeafInterval]):
    """``(True, None)`` or ``(False, (I, J))`` for the first crossing pair in sorted order."""
    items = sorted(set(intervals))
    for i, I in enumerate(items):
        for J in items[i + 1:]:
            if crossed(I, J):
                return False, (I, J)
    return True, None


def export_lamination(intervals: Iterable[LeafInterval]) -> list[tuple[Fraction, Fraction]]:
    return [(I.a, I.b) for I in sorted(set(intervals))]


@dataclass
class WanderingResult:
    passed: bool
    depth: int
    word: Word | None = None  # first violating word
    stabilizers: tuple[Word, ...] = ()

    def __bool__(self):
        return self.passed


def wandering_certificate(rep: Representation, I: LeafInterval, max_len: int) -> WanderingResult:
    """Every word up to ``max_len`` maps ``I`` onto itself or off itself.

    A pass only certifies the tested depth.
    """
    stab = []
    for w in enumerate_words(rep.group.rank, max_len):
        a, b = rep.act(w, I.a), rep.act(w, I.b)
        if a == I.a and b == I.b:
            if len(w):
                stab.append(w)
            continue
        if not (b <= I.a or a >= I.b):
            return WanderingResult(False, max_len, w)
    return WanderingResult(True, max_len, None, tuple(stab))


def _intersect(comps, other):
    out = []
    for a, b in comps:
        for c, d in other:
            lo, hi = max(a, c), min(b, d)
            if lo <= hi:
                out.append((lo, hi))
    return out


@dataclass
class IrreducibleResult:
    status: str  # "PASS", "FAIL", "no stabilizers found", "inconclusive: common fixed points"
    depth: int
    stabilizers: tuple[Word, ...] = ()
    common_fixed: tuple[tuple[Fraction, Fraction], ...] = ()
    word: Word | None = None

    @property
    def passed(self) -> bool:
        return self.status == "PASS"


def irreducible_wandering_check(rep: Representation, I: LeafInterval, max_len: int) -> IrreducibleResult:
    """Wandering check plus: the stabilizers found have no common fixed point inside ``I``."""
    cert = wandering_certificate(rep, I, max_len)
    if not cert.passed:
        return IrreducibleResult("FAIL", max_len, word=cert.word)
    if not cert.stabilizers:
        return IrreducibleResult("no stabilizers found", max_len)
    common = [(I.a, I.b)]
    for w in cert.stabilizers:
        fs = fixed_set(rep.image(w), (I.a, I.b))
        common = _intersect(common, fs.components)
        if not common:
            break
    inner = tuple((a, b) for a, b in common if a < I.b and b > I.a and not (a == b and a in (I.a, I.b)))
    if inner:
        return IrreducibleResult("inconclusive: common fixed points", max_len, cert.stabilizers, inner)
    return IrreducibleResult("PASS", max_len, cert.stabilizers)


def images_cross(rep: Representation, I: LeafInterval, max_len: int):
    """First word ``g`` with ``g.I`` crossing ``I``, or None."""
    for w in enumerate_words(rep.group.rank, max_len):
        J = LeafInterval(rep.act(w, I.a), rep.act(w, I.b))
        if crossed(I, J):
            return w
    return None


def support_intervals(f: PLMap, window) -> list[LeafInterval]:
    """Components of the open support of ``f`` inside ``window``."""
    fs = fixed_set(f, window)
    return [LeafInterval(a, b) for a, b, _ in fs.gaps]
