"""Finite-scale analytic procedures.

Conrad homomorphisms of invariant step measures, the scaling cocycle of a
projectively invariant measure, the order-pairing search for pointed
semiconjugacies, and the almost-centralizing test.
"""
from __future__ import annotations

import bisect
import math
import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .plmap import PLMap, sup_distance, to_q
from .rep import Representation, Word, conjugate_rep, enumerate_words, rep_distance, word_values


class InvarianceError(ValueError):
    """A measure is not (projectively) invariant; carries the witness."""

    def __init__(self, msg, generator=None, interval=None):
        super().__init__(msg)
        self.generator = generator
        self.interval = interval


class StepMeasure:
    """Radon measure with a positive piecewise-constant density.

    ``density[i]`` holds on ``[b[i-1], b[i])`` with unbounded end pieces.
    """

    def __init__(self, breakpoints: Sequence = (), density: Sequence = (1,)):
        bps = [to_q(b) for b in breakpoints]
        dens = [to_q(d) for d in density]
        if len(dens) != len(bps) + 1:
            raise ValueError("need one more density value than breakpoints")
        if any(not a < b for a, b in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be increasing")
        if any(d <= 0 for d in dens):
            raise ValueError("densities must be positive")
        self.breakpoints = tuple(bps)
        self.density = tuple(dens)

    @classmethod
    def lebesgue(cls) -> "StepMeasure":
        return cls()

    def density_at(self, x) -> Fraction:
        return self.density[bisect.bisect_right(self.breakpoints, to_q(x))]

    def measure(self, a, b) -> Fraction:
        """``nu[a, b)`` for ``a <= b``."""
        a, b = to_q(a), to_q(b)
        if a > b:
            raise ValueError("need a <= b")
        total = Fraction(0)
        cuts = [a] + [p for p in self.breakpoints if a < p < b] + [b]
        for u, v in zip(cuts, cuts[1:]):
            total += (v - u) * self.density_at(u)
        return total

    def signed(self, x, y) -> Fraction:
        """``nu[x, y)`` if ``x <= y`` else ``-nu[y, x)``."""
        x, y = to_q(x), to_q(y)
        return self.measure(x, y) if x <= y else -self.measure(y, x)

    def __repr__(self):
        return f"StepMeasure({list(map(str, self.breakpoints))}, {list(map(str, self.density))})"


def _sample_points(f: PLMap, nu: StepMeasure, window) -> list[Fraction]:
    """One point in every cell where both ``f'`` and ``nu`` densities are constant."""
    fi_cuts = []
    inv = f.inverse()
    for p in nu.breakpoints:
        fi_cuts.append(inv(p))
    cuts = sorted(set(f.breakpoints) | set(nu.breakpoints) | set(fi_cuts))
    if window is not None:
        lo, hi = to_q(window[0]), to_q(window[1])
        cuts = sorted({lo, hi} | {c for c in cuts if lo < c < hi})
        return [(u + v) / 2 for u, v in zip(cuts, cuts[1:])]
    if not cuts:
        return [Fraction(0)]
    pts = [cuts[0] - 1, cuts[-1] + 1]
    pts += [(u + v) / 2 for u, v in zip(cuts, cuts[1:])]
    return sorted(pts)


def projective_factor(f: PLMap, nu: StepMeasure, window=None) -> Fraction:
    """The constant ``k`` with ``nu(f A) = k nu(A)``, checked exactly cell by cell.

    Raises :class:`InvarianceError` with the offending cell otherwise.
    """
    k = None
    for x in _sample_points(f, nu, window):
        slope = f.piece_at(x)[0]
        r = nu.density_at(f(x)) * slope / nu.density_at(x)
        if k is None:
            k = r
        elif r != k:
            raise InvarianceError(f"scaling factor {r} at {x} differs from {k}", interval=x)
    return Fraction(1) if k is None else k


def _window(rep, window):
    if window is not None:
        return (to_q(window[0]), to_q(window[1]))
    return rep.window


def scaling_cocycle(rep: Representation, nu: StepMeasure, w: Word, window=None) -> Fraction:
    """``kappa(w)`` with ``nu(w A) = kappa(w) nu(A)``.

    Every generator is checked to scale ``nu`` by a constant first.
    """
    win = _window(rep, window)
    kap = []
    for i, f in enumerate(rep.images):
        try:
            kap.append(projective_factor(f, nu, win))
        except InvarianceError as exc:
            raise InvarianceError(f"generator {rep.group.names[i]}: {exc}", rep.group.names[i], exc.interval) from None
    out = Fraction(1)
    for g, e in w.syllables:
        out *= kap[g] ** e
    return out


def check_invariant(rep: Representation, nu: StepMeasure, window=None) -> None:
    win = _window(rep, window)
    for i, f in enumerate(rep.images):
        name = rep.group.names[i]
        try:
            k = projective_factor(f, nu, win)
        except InvarianceError as exc:
            raise InvarianceError(f"generator {name}: {exc}", name, exc.interval) from None
        if k != 1:
            raise InvarianceError(f"generator {name} scales the measure by {k}", name, None)


def affine_tau(rep: Representation, nu: StepMeasure, w: Word) -> Fraction:
    """``nu[0, w.0)`` with sign; an affine cocycle over ``kappa``."""
    return nu.signed(0, rep.act(w, 0))


def conrad_tau(rep: Representation, nu: StepMeasure, w: Word, window=None,
               samples: Sequence = (Fraction(-1), Fraction(1, 3), Fraction(2))) -> Fraction:
    """Conrad homomorphism value ``nu[x, w.x)`` (signed), computed at ``x = 0``.

    The measure must be invariant under every generator; the value is
    re-computed at the ``samples`` and must not change.
    """
    check_invariant(rep, nu, window)
    t = nu.signed(0, rep.act(w, 0))
    for x in samples:
        tx = nu.signed(x, rep.act(w, x))
        if tx != t:
            raise InvarianceError(f"value at {x} is {tx}, at 0 it is {t}", None, x)
    return t


# ---------------------------------------------------------------------------
# semiconjugacy search


@dataclass
class ConjugacyWitness:
    """Either a monotone pairing table (``passed``) or a violating word pair.

    ``violation`` holds ``((u, i), (v, j))``: words with the index of the
    marked point they act on.  ``values`` is ``(u.x_i, v.x_j, u.y_i, v.y_j)``.
    """

    passed: bool
    table: list[tuple[Fraction, Fraction]] = field(default_factory=list)
    violation: tuple | None = None
    values: tuple | None = None
    basepoints: tuple = ()
    depth: int | None = None

    def __bool__(self):
        return self.passed


def _sort_keys(vals):
    # exact integer keys over a common denominator; Fraction comparison is slow
    den = math.lcm(*{v.denominator for v in vals}) if vals else 1
    if den.bit_length() > 2048:
        return vals
    return [v.numerator * (den // v.denominator) for v in vals]


class OrbitTable:
    """Images of marked points under all words up to a length, with dense ranks."""

    __slots__ = ("keys", "values", "ranks", "order")

    def __init__(self, rep, points: Sequence, depth: int):
        keys, vals = [], []
        for w, vs in word_values(rep, points, depth):
            for i, v in enumerate(vs):
                keys.append((w, i))
                vals.append(v)
        self.keys = keys
        self.values = vals
        self.order = sorted(range(len(vals)), key=_sort_keys(vals).__getitem__)
        ranks = [0] * len(vals)
        r, prev = -1, None
        for i in self.order:
            if vals[i] != prev:
                r += 1
                prev = vals[i]
            ranks[i] = r
        self.ranks = ranks


def _pairing(t1: OrbitTable, t2: OrbitTable, keep=None):
    """Walk ``t1`` in increasing order; ties must match ties, order must match order.

    Returns ``(None, table)`` or ``((i, j), None)`` for a violating pair.
    """
    r1, r2 = t1.ranks, t2.ranks
    table = []
    prev = None
    for i in t1.order:
        if keep is not None and not keep[i]:
            continue
        if prev is not None:
            if r1[i] == r1[prev]:
                if r2[i] != r2[prev]:
                    return (prev, i), None
                continue
            if not r2[prev] < r2[i]:
                return (prev, i), None
        table.append((t1.values[i], t2.values[i]))
        prev = i
    return None, table


def _as_pairs(basepoints):
    bp = list(basepoints)
    if len(bp) == 2 and not isinstance(bp[0], (tuple, list)):
        bp = [tuple(bp)]
    return [(to_q(x), to_q(y)) for x, y in bp]


def _witness(t1, t2, bad, table, pairs, depth):
    if bad is None:
        return ConjugacyWitness(True, table, basepoints=tuple(pairs), depth=depth)
    i, j = bad
    return ConjugacyWitness(False, violation=(t1.keys[i], t1.keys[j]),
                            values=(t1.values[i], t1.values[j], t2.values[i], t2.values[j]),
                            basepoints=tuple(pairs), depth=depth)


def semiconjugacy_search(rep1, rep2, depth: int, window=None, basepoints=(0, 0)) -> ConjugacyWitness:
    """Test whether ``w.x -> w.y`` over words ``|w| <= depth`` is order compatible.

    ``basepoints`` is one pair ``(x, y)`` or a list of such pairs (marked
    points that any candidate map must send ``x -> y``).  ``window``, if
    given, keeps only entries whose orbit points lie in it on both sides.
    A returned violation is a pair of words ordered differently (or tied
    on one side only) in the two actions, which rules out a non-decreasing
    equivariant map with those marked values.
    """
    if rep1.group.rank != rep2.group.rank:
        raise ValueError("representations of different marked groups")
    pairs = _as_pairs(basepoints)
    t1 = OrbitTable(rep1, [x for x, _ in pairs], depth)
    t2 = OrbitTable(rep2, [y for _, y in pairs], depth)
    keep = None
    if window is not None:
        lo, hi = to_q(window[0]), to_q(window[1])
        keep = [lo <= a <= hi and lo <= b <= hi for a, b in zip(t1.values, t2.values)]
    bad, table = _pairing(t1, t2, keep)
    return _witness(t1, t2, bad, table, pairs, depth)


# F2 sign-word family: marked points are fixed points of g or h on twelve
# consecutive segments, enough to separate any two periods up to 6
F2_MARKS = tuple(Fraction(j, 4) for j in range(-12, 13))


@functools.lru_cache(maxsize=512)
def _f2_table(omega, depth: int, marks: tuple) -> OrbitTable:
    from .families import f2_family
    rep = f2_family(omega, (min(marks) - depth, max(marks) + depth))
    return OrbitTable(rep, list(marks), depth)


def f2_semiconjugacy(omega1, omega2, depth: int = 6, marks: Sequence = F2_MARKS):
    """Decide conjugacy of two periodic sign-word actions of F2 at finite depth.

    A conjugacy preserves the fixed sets ``Z/2`` of ``g`` and ``1/4 + Z/2``
    of ``h`` in order, so one sending ``0`` to ``k/2`` sends every marked
    point ``m`` to ``m + k/2``.  For each ``k`` in one period of ``omega2``
    the marked pairing is tested with depth raised from 1 to ``depth``;
    the answer is ``(related, witnesses)`` with one witness per ``k`` tried.

    Conjugating by ``T_{k/2}`` turns the ``omega2`` action at ``m + k/2``
    into the ``shift(omega2, -k)`` action at ``m``, so tables are only
    built at the marks themselves.
    """
    from .families import UnsupportedError
    if omega1.kind != "periodic" or omega2.kind != "periodic":
        raise UnsupportedError("basepoint scan needs periodic words")
    marks = tuple(to_q(m) for m in marks)
    out = []
    for k in range(len(omega2.values)):
        off = Fraction(k, 2)
        moved = omega2.shift(-k)
        pairs = [(m, m + off) for m in marks]
        wit = None
        for d in range(1, depth + 1):
            t1 = _f2_table(omega1, d, marks)
            t2 = _f2_table(moved, d, marks)
            bad, table = _pairing(t1, t2)
            if table is not None:
                table = [(a, b + off) for a, b in table]
            wit = _witness(t1, t2, bad, table, pairs, d)
            if wit.values is not None:
                u1, v1, u2, v2 = wit.values
                wit.values = (u1, v1, u2 + off, v2 + off)
            if not wit.passed:
                break
        out.append(wit)
        if wit.passed:
            return True, out
    return False, out


# ---------------------------------------------------------------------------
# almost-centralizing test


@dataclass
class CentralizingReport:
    rows: list[tuple[int, Fraction, Fraction]]
    verdict: str
    threshold: int | None

    def lines(self) -> list[str]:
        out = [f"{k} {d} {e}" for k, d, e in self.rows]
        out.append(f"verdict: {self.verdict}")
        return out


def classify_rows(rows) -> tuple[str, int | None]:
    """Verdict from ``(k, d_k, e_k)`` rows.

    ``N0`` is the first row index from which every ``d`` is zero.  The
    pattern is a *witness* when ``e`` stays at or above ``e_{N0} > 0`` on
    that tail, *consistent* when ``e`` is zero or strictly decreasing there.
    """
    n0 = None
    for i in range(len(rows) - 1, -1, -1):
        if rows[i][1] != 0:
            break
        n0 = i
    if n0 is None:
        return "inconclusive: d_k does not vanish on a tail", None
    tail = [e for _, _, e in rows[n0:]]
    if all(e == 0 for e in tail) or all(a > b for a, b in zip(tail, tail[1:])):
        return "consistent: d_k -> 0 with e_k -> 0 over the tested range", n0
    if tail[0] > 0 and min(tail) >= tail[0]:
        return "witness: d_k -> 0 while e_k stays bounded away from 0", n0
    return "inconclusive: e_k neither decreasing nor bounded below", n0


def almost_centralizing_test(rep, maps: Sequence[PLMap], words: Sequence[Word], window,
                             indices: Sequence[int] | None = None) -> CentralizingReport:
    """Rows ``(k, d_k, e_k)`` with ``d_k = dist(f_k rep f_k^-1, rep)`` on the words and window.

    ``rep`` may be any object exposing ``image(word, window)`` and
    ``conjugate(f)``.
    """
    window = (to_q(window[0]), to_q(window[1]))
    idx = list(indices) if indices is not None else list(range(len(maps)))
    rows = []
    ident = PLMap()
    for k, f in zip(idx, maps):
        conj = rep.conjugate(f)
        d = rep_distance(conj, rep, words, window)
        e = sup_distance(f, ident, window)
        rows.append((k, d, e))
    verdict, n0 = classify_rows(rows)
    return CentralizingReport(rows, verdict, None if n0 is None else idx[n0])
