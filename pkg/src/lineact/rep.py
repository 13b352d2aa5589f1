"""Marked groups, words, and representations into PL homeomorphisms."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import kernels
from .plmap import (PLMap, compose, invert, q_from_pair, q_pair, read_record,
                    sup_distance, to_q, translate_conjugate)

REP_TAG = "rep/1"


class Word:
    """Freely reduced word, stored as syllables ``(generator index, exponent)``."""

    __slots__ = ("syllables",)

    def __init__(self, syllables: Iterable[tuple[int, int]] = ()):
        out: list[list[int]] = []
        for g, e in syllables:
            if e == 0:
                continue
            if out and out[-1][0] == g:
                out[-1][1] += e
                if out[-1][1] == 0:
                    out.pop()
            else:
                out.append([g, e])
        self.syllables = tuple((g, e) for g, e in out)

    @classmethod
    def gen(cls, i: int, e: int = 1) -> "Word":
        return cls(((i, e),))

    @classmethod
    def from_letters(cls, codes: Sequence[int]) -> "Word":
        """From letter codes: ``2*i`` is generator ``i``, ``2*i + 1`` its inverse."""
        return cls((c >> 1, -1 if c & 1 else 1) for c in codes)

    @classmethod
    def parse(cls, text: str, names: Sequence[str]) -> "Word":
        """Parse ``"a b^2 a^-1"``-style text; ``"e"`` or ``""`` is the identity."""
        text = text.replace(" ", "").replace("*", "")
        if text in ("", "e", "1"):
            return cls()
        alts = "|".join(re.escape(n) for n in sorted(names, key=len, reverse=True))
        pat = re.compile(rf"({alts})(?:\^\(?(-?\d+)\)?)?")
        pos, syl = 0, []
        while pos < len(text):
            m = pat.match(text, pos)
            if not m:
                raise ValueError(f"cannot parse word {text!r} at position {pos}")
            syl.append((list(names).index(m.group(1)), int(m.group(2) or 1)))
            pos = m.end()
        return cls(syl)

    def letters(self) -> list[int]:
        out = []
        for g, e in self.syllables:
            out.extend([2 * g + (1 if e < 0 else 0)] * abs(e))
        return out

    def inverse(self) -> "Word":
        return Word((g, -e) for g, e in reversed(self.syllables))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.syllables + other.syllables)

    def __len__(self):
        return sum(abs(e) for _, e in self.syllables)

    def __eq__(self, other):
        return isinstance(other, Word) and self.syllables == other.syllables

    def __hash__(self):
        return hash(self.syllables)

    def exponent_sums(self, ngens: int) -> tuple[int, ...]:
        sums = [0] * ngens
        for g, e in self.syllables:
            sums[g] += e
        return tuple(sums)

    def format(self, names: Sequence[str]) -> str:
        if not self.syllables:
            return "e"
        return " ".join(names[g] if e == 1 else f"{names[g]}^{e}" for g, e in self.syllables)

    def __repr__(self):
        return f"Word({list(self.syllables)})"


class MarkedGroup:
    def __init__(self, names: Sequence[str], relators: Iterable[Word] = ()):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        self.names = names
        self.relators = tuple(relators)
        for r in self.relators:
            for g, _ in r.syllables:
                if g >= len(names):
                    raise ValueError("relator uses an unknown generator")

    @classmethod
    def free(cls, *names: str) -> "MarkedGroup":
        return cls(names)

    @property
    def rank(self) -> int:
        return len(self.names)

    def word(self, text: str) -> Word:
        return Word.parse(text, self.names)

    def gens(self) -> list[Word]:
        return [Word.gen(i) for i in range(self.rank)]

    def __eq__(self, other):
        return (isinstance(other, MarkedGroup) and self.names == other.names
                and self.relators == other.relators)

    def __hash__(self):
        return hash((self.names, self.relators))

    def __repr__(self):
        rel = ", ".join(r.format(self.names) for r in self.relators)
        return f"<{', '.join(self.names)} | {rel}>"


def enumerate_words(ngens: int, maxlen: int) -> Iterator[Word]:
    """Reduced words by length, then lexicographically in letter order a, a^-1, b, ..."""
    level: list[tuple[int, ...]] = [()]
    yield Word()
    for _ in range(maxlen):
        nxt = []
        for c in range(2 * ngens):
            for w in level:
                if w and w[0] == c ^ 1:
                    continue
                nxt.append((c,) + w)
        for w in nxt:
            yield Word.from_letters(w)
        level = nxt


class RelatorError(ValueError):
    pass


class Representation:
    """Generators of a marked group sent to PL maps.

    ``window`` records where the images are exact, for families that can
    only be built on a bounded region; relators are then checked there.
    """

    def __init__(self, group: MarkedGroup, images: Sequence[PLMap], *, window=None, check: bool = True):
        if len(images) != group.rank:
            raise ValueError("one image per generator required")
        self.group = group
        self.images = tuple(images)
        self.window = None if window is None else (to_q(window[0]), to_q(window[1]))
        self._letters = None
        self._cache: dict[Word, PLMap] = {}
        if check:
            for r in group.relators:
                m = self.image(r)
                ok = m.is_identity() if self.window is None else sup_distance(m, PLMap(), self.window) == 0
                if not ok:
                    raise RelatorError(f"relator {r.format(group.names)} is not the identity")

    @property
    def letter_maps(self) -> list[PLMap]:
        if self._letters is None:
            out = []
            for f in self.images:
                out += [f, invert(f)]
            self._letters = out
        return self._letters

    def image(self, w: Word, window=None) -> PLMap:
        """Evaluate ``w`` (``window`` is accepted for duck-typing and ignored)."""
        m = self._cache.get(w)
        if m is None:
            m = PLMap()
            lm = self.letter_maps
            for g, e in w.syllables:
                if g >= self.group.rank:
                    raise IndexError(f"unknown generator index {g}")
                step = lm[2 * g + (1 if e < 0 else 0)]
                for _ in range(abs(e)):
                    m = compose(m, step)
            self._cache[w] = m
        return m

    def act(self, w: Word, x) -> Fraction:
        """``w.x`` by successive letter evaluation, without composing maps."""
        n, d = q_pair(to_q(x))
        lm = self.letter_maps
        for c in reversed(w.letters()):
            n, d = lm[c].eval_pair(n, d)
        return q_from_pair(n, d)

    def conjugate(self, f: PLMap) -> "Representation":
        return conjugate_rep(self, f)

    def __repr__(self):
        return f"Representation({self.group!r})"

    # -- serialization ----------------------------------------------------
    def dumps(self) -> str:
        lines = [REP_TAG, "generators " + " ".join(self.group.names)]
        for r in self.group.relators:
            lines.append("relator " + r.format(self.group.names))
        if self.window is not None:
            lines.append(f"window {self.window[0]} {self.window[1]}")
        for name, f in zip(self.group.names, self.images):
            lines.append(f"generator {name}")
            lines += f.record_lines()
        lines.append("endrep")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Representation":
        it = iter(line for line in text.splitlines() if line.strip())
        if next(it).strip() != REP_TAG:
            raise ValueError(f"expected {REP_TAG!r}")
        names: list[str] = []
        relator_text: list[str] = []
        window = None
        images: dict[str, PLMap] = {}
        for line in it:
            parts = line.split()
            key = parts[0]
            if key == "generators":
                names = parts[1:]
            elif key == "relator":
                relator_text.append(" ".join(parts[1:]))
            elif key == "window":
                window = (Fraction(parts[1]), Fraction(parts[2]))
            elif key == "generator":
                images[parts[1]] = read_record(it)
            elif key == "endrep":
                break
            else:
                raise ValueError(f"unexpected line {line!r}")
        group = MarkedGroup(names, [Word.parse(t, names) for t in relator_text])
        return cls(group, [images[n] for n in names], window=window)


def evaluate_word(rep: Representation, w: Word) -> PLMap:
    return rep.image(w)


def conjugate_rep(rep: Representation, f: PLMap) -> Representation:
    """``g -> f o rep(g) o f^-1`` for every generator."""
    if f.is_translation():
        images = [translate_conjugate(g, f.pieces[0][1]) for g in rep.images]
        window = None if rep.window is None else tuple(w + f.pieces[0][1] for w in rep.window)
    else:
        fi = invert(f)
        images = [compose(f, compose(g, fi)) for g in rep.images]
        window = None if rep.window is None else (f(rep.window[0]), f(rep.window[1]))
    return Representation(rep.group, images, window=window, check=False)


def _letter_packs(rep: Representation) -> list[tuple]:
    return [m.packed for m in rep.letter_maps]


def orbit(rep: Representation, x, max_len: int) -> list[Fraction]:
    """Sorted ``{w.x : |w| <= max_len}``."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    pts = kernels.orbit_closure(_letter_packs(rep), [q_pair(to_q(x))], max_len)
    return sorted(q_from_pair(n, d) for n, d in pts)


def max_orbit_gap(rep: Representation, x, max_len: int, window) -> Fraction:
    """Largest gap between consecutive orbit points in the window (window ends included)."""
    lo, hi = to_q(window[0]), to_q(window[1])
    pts = sorted({lo, hi} | {p for p in orbit(rep, x, max_len) if lo <= p <= hi})
    return max(b - a for a, b in zip(pts, pts[1:])) if len(pts) > 1 else Fraction(0)


def word_values(rep: Representation, points: Sequence, max_len: int) -> Iterator[tuple[Word, tuple[Fraction, ...]]]:
    """Words in length-lex order with the images of ``points``."""
    pts = [q_pair(to_q(p)) for p in points]
    ncodes = 2 * rep.group.rank
    levels = kernels.word_levels(_letter_packs(rep), [c ^ 1 for c in range(ncodes)], pts, max_len)
    for level in levels:
        for codes, vals in level:
            yield Word.from_letters(codes), tuple(q_from_pair(n, d) for n, d in vals)


def rep_distance(rep1, rep2, words: Iterable[Word], window) -> Fraction:
    """``max_w sup_{window} |rep1(w) - rep2(w)|``."""
    best = Fraction(0)
    for w in words:
        d = sup_distance(rep1.image(w, window), rep2.image(w, window), window)
        if d > best:
            best = d
    return best


def witness_irreducible(rep: Representation, window, max_len: int):
    """Words ``(g, h)`` with ``g.0 > right`` and ``h.0 < left``, or None."""
    lo, hi = to_q(window[0]), to_q(window[1])
    g = h = None
    for w, (v,) in word_values(rep, [0], max_len):
        if g is None and v > hi:
            g = w
        if h is None and v < lo:
            h = w
        if g is not None and h is not None:
            return g, h
    return None


def witness_proximal(rep: Representation, source, target, max_len: int):
    """First word mapping ``[p, q]`` strictly inside ``(r, s)``, or None."""
    p, q = source
    r, s = to_q(target[0]), to_q(target[1])
    for w, (a, b) in word_values(rep, [p, q], max_len):
        if r < a and b < s:
            return w
    return None
