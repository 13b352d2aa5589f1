"""Concrete action families with exact PL data.

* the free-group family ``g_omega, h`` built from a circle pair,
* Baumslag-Solitar affine actions and PL paths between endpoint maps,
* the Brin-Navas pair ``f, w0`` and its tower ``w_k``,
* an explicit dyadic sequence ``f_n`` on ``(-1/4, 1/4)`` shrinking towards 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .plmap import (PLMap, compact_support, compose, fixed_points, invert,
                    power, to_q)
from .rep import MarkedGroup, Representation, Word

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

F2 = MarkedGroup(("g", "h"))


class UnsupportedError(ValueError):
    pass


# ---------------------------------------------------------------------------
# sign words


class OmegaWord:
    """A bi-infinite sign sequence, periodic or finitely supported.

    Periodic words are anchored so that ``w[n] == values[n % p]``.  Finite
    words store the exceptional positions; every other entry is ``+1``.
    """

    def __init__(self, kind: str, values):
        if kind == "periodic":
            vals = tuple(int(v) for v in values)
            if not vals or any(v not in (1, -1) for v in vals):
                raise ValueError("periodic word needs a nonempty block of +-1")
            self.values = vals
        elif kind == "finite":
            vals = {int(n): int(v) for n, v in dict(values).items()}
            if any(v not in (1, -1) for v in vals.values()):
                raise ValueError("entries must be +-1")
            self.values = tuple(sorted((n, v) for n, v in vals.items() if v == -1))
        else:
            raise ValueError(f"unknown kind {kind!r}")
        self.kind = kind

    @classmethod
    def periodic(cls, block: str | Sequence[int]) -> "OmegaWord":
        if isinstance(block, str):
            block = [1 if c == "+" else -1 if c == "-" else _bad(c) for c in block]
        return cls("periodic", block)

    @classmethod
    def finite(cls, minus_positions: Sequence[int]) -> "OmegaWord":
        return cls("finite", {n: -1 for n in minus_positions})

    @classmethod
    def constant(cls) -> "OmegaWord":
        return cls.periodic("+")

    def __getitem__(self, n: int) -> int:
        if self.kind == "periodic":
            return self.values[n % len(self.values)]
        return -1 if any(m == n for m, _ in self.values) else 1

    def shift(self, k: int = 1) -> "OmegaWord":
        """``(sigma^k w)[n] = w[n - k]``, the shift realized by ``T_{k/2}``."""
        if self.kind == "periodic":
            p = len(self.values)
            return OmegaWord("periodic", [self[n - k] for n in range(p)])
        return OmegaWord("finite", {n + k: v for n, v in self.values})

    def __eq__(self, other):
        if not isinstance(other, OmegaWord) or other.kind != self.kind:
            return NotImplemented
        if self.kind == "finite":
            return self.values == other.values
        p = math.lcm(len(self.values), len(other.values))
        return all(self[n] == other[n] for n in range(p))

    def __hash__(self):
        return hash((self.kind, _min_period(self.values) if self.kind == "periodic" else self.values))

    def __repr__(self):
        if self.kind == "periodic":
            return "OmegaWord.periodic(%r)" % "".join("+" if v > 0 else "-" for v in self.values)
        return f"OmegaWord.finite({[n for n, _ in self.values]})"


def _bad(c):
    raise ValueError(f"bad sign character {c!r}")


def _min_period(vals: tuple) -> tuple:
    p = len(vals)
    for d in range(1, p + 1):
        if p % d == 0 and vals == vals[:d] * (p // d):
            return vals[:d]
    return vals


def shift_orbit_equal(w1: OmegaWord, w2: OmegaWord) -> bool:
    """Exact shift-orbit equality for two periodic or two finite words."""
    if w1.kind != w2.kind:
        raise UnsupportedError("cannot compare a periodic word with a finite one")
    if w1.kind == "periodic":
        a, b = _min_period(w1.values), _min_period(w2.values)
        if len(a) != len(b):
            return False
        return any(a == b[k:] + b[:k] for k in range(len(b)))
    pa = [n for n, _ in w1.values]
    pb = [n for n, _ in w2.values]
    if len(pa) != len(pb):
        return False
    if not pa:
        return True
    d = pb[0] - pa[0]
    return all(y - x == d for x, y in zip(pa, pb))


# ---------------------------------------------------------------------------
# free group family

# g on [0, 1/2]: one breakpoint 1/4 -> 3/8, then g(x + 1/2) = g(x) + 1/2
_G_POINT = (QUARTER, Fraction(3, 8))


def _segment_points(n: int, sign: int, offset: Fraction) -> list[tuple[Fraction, Fraction]]:
    base = offset + n * HALF
    x, y = _G_POINT if sign > 0 else (_G_POINT[1], _G_POINT[0])
    return [(base, base), (base + x, base + y)]


def _periodic_lift(signs, lo: int, hi: int, offset: Fraction) -> PLMap:
    pts: list[tuple[Fraction, Fraction]] = []
    for n in range(lo, hi):
        pts += _segment_points(n, signs(n), offset)
    end = offset + hi * HALF
    pts.append((end, end))
    return PLMap.compact_support(pts)


def _segment_range(window, offset: Fraction) -> tuple[int, int]:
    lo, hi = to_q(window[0]), to_q(window[1])
    return math.floor((lo - offset) / HALF), math.ceil((hi - offset) / HALF)


def g_omega(omega: OmegaWord, window) -> PLMap:
    """``g^{omega_n}`` on each ``[n/2, (n+1)/2]`` meeting the window, identity beyond."""
    a, b = _segment_range(window, Fraction(0))
    return _periodic_lift(lambda n: omega[n], a, b, Fraction(0))


def base_g(window) -> PLMap:
    return g_omega(OmegaWord.constant(), window)


def base_h(window) -> PLMap:
    """``T_{1/4} g T_{-1/4}``, fixing ``1/4 + Z/2``."""
    a, b = _segment_range(window, QUARTER)
    return _periodic_lift(lambda n: 1, a, b, QUARTER)


def f2_family(omega: OmegaWord, window) -> Representation:
    """Representation of F2 on generators ``(g_omega, h)``, exact on ``window``.

    Outside the half-integer hull of the window the maps are the identity;
    the representation records ``window`` as its region of exactness.
    """
    window = (to_q(window[0]), to_q(window[1]))
    return Representation(F2, [g_omega(omega, window), base_h(window)], window=window)


def sign_pattern(f: PLMap, segments: range) -> list[int]:
    """Sign of ``f - id`` on each open half-integer segment (0 if it vanishes)."""
    out = []
    for n in segments:
        m = n * HALF + Fraction(1, 8)
        v = f(m) - m
        out.append((v > 0) - (v < 0))
    return out


# ---------------------------------------------------------------------------
# Baumslag-Solitar


def bs_group(m: int, n: int) -> MarkedGroup:
    """``<a, b | a b^m a^-1 = b^n>``."""
    return MarkedGroup(("a", "b"), [Word([(0, 1), (1, m), (0, -1), (1, -n)])])


def bs_affine(m: int, n: int) -> Representation:
    """``a: x -> (n/m) x``, ``b: x -> x + 1``."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    return Representation(bs_group(m, n), [PLMap.affine(Fraction(n, m)), PLMap.translation(1)])


def bs_default_endpoint(m: int, n: int) -> PLMap:
    """Shipped non-affine PL endpoint ``[0, m] -> [0, n]`` (passes through ``(m/2, n/4)``)."""
    return PLMap.from_points([(0, 0), (Fraction(m, 2), Fraction(n, 4)), (m, n)],
                             Fraction(n, m), Fraction(n, m))


def bs_path(m: int, n: int, s, psi0: PLMap, psi1: PLMap, window=(-10, 10)) -> Representation:
    """Generator ``a`` is the periodic extension of ``(1-s) psi0 + s psi1``.

    The endpoint maps are increasing bijections ``[0, m] -> [0, n]``; the
    extension obeys ``a(x + m) = a(x) + n`` on a hull around the window and is
    the affine ``x -> (n/m) x`` beyond it.
    """
    s = to_q(s)
    if not 0 <= s <= 1:
        raise ValueError("s must lie in [0, 1]")
    for name, psi in (("psi0", psi0), ("psi1", psi1)):
        if psi(0) != 0 or psi(m) != n:
            raise ValueError(f"endpoint incompatibility: {name} must send 0 -> 0 and {m} -> {n}")
    xs = sorted({Fraction(0), Fraction(m)} | {b for p in (psi0, psi1) for b in p.breakpoints if 0 < b < m})
    base = [(x, (1 - s) * psi0(x) + s * psi1(x)) for x in xs]
    lo, hi = to_q(window[0]), to_q(window[1])
    k0 = math.floor(lo / n) - 2
    k1 = math.floor(hi / n) + 3
    pts = []
    for k in range(k0, k1):
        pts += [(x + k * m, y + k * n) for x, y in base[:-1]]
    pts.append((k1 * m, k1 * n))
    a = PLMap.from_points(pts, Fraction(n, m), Fraction(n, m))
    return Representation(bs_group(m, n), [a, PLMap.translation(1)], window=(lo, hi))


# ---------------------------------------------------------------------------
# Brin-Navas


class BrinNavasError(ValueError):
    pass


@dataclass
class BrinNavas:
    f: PLMap
    w0: PLMap
    support: tuple[Fraction, Fraction]

    group = MarkedGroup(("f", "w0"))

    def w(self, k: int) -> PLMap:
        """``f^k w0 f^-k``."""
        fk = power(self.f, k)
        return compose(fk, compose(self.w0, invert(fk)))

    def rep(self) -> Representation:
        return Representation(self.group, [self.f, self.w0])

    def tower_rep(self, ks: Sequence[int]) -> Representation:
        """Representation of the free group on ``w_k`` for ``k`` in ``ks``."""
        group = MarkedGroup(tuple(f"w{k}" for k in ks))
        return Representation(group, [self.w(k) for k in ks])

    def support_of(self, k: int) -> tuple[Fraction, Fraction]:
        fk = power(self.f, k)
        return fk(self.support[0]), fk(self.support[1])


def brin_navas(f: PLMap, w0: PLMap) -> BrinNavas:
    try:
        comps = compact_support(w0)
    except ValueError as exc:
        raise BrinNavasError(f"w0 must have compact support: {exc}") from None
    if len(comps) != 1:
        raise BrinNavasError(f"support of w0 must be one open interval, got {comps}")
    x, y = comps[0]
    if not f(x) < x:
        raise BrinNavasError(f"need f(x) < x, got f({x}) = {f(x)}")
    if not y < f(y):
        raise BrinNavasError(f"need y < f(y), got f({y}) = {f(y)}")
    fixed = fixed_points(f)
    if fixed is None or len(fixed) != 1 or not x < fixed[0] < y:
        raise BrinNavasError(f"f must have exactly one fixed point, inside ({x}, {y}); got {fixed}")
    finv = invert(f)
    if w0(finv(x)) != finv(y):
        raise BrinNavasError(f"need w0(f^-1(x)) = f^-1(y): {w0(finv(x))} != {finv(y)}")
    bn = BrinNavas(f, w0, (x, y))
    # supports of w0 and w1 w0 w1^-1 must be disjoint
    w1 = bn.w(1)
    a, b = w1(x), w1(y)
    if not (b <= x or a >= y):
        raise BrinNavasError(f"supports ({x}, {y}) and ({a}, {b}) overlap")
    return bn


def default_brin_navas() -> BrinNavas:
    """``f(t) = 2t`` and ``w0`` through ``(-1,-1), (-1/2, 1/2), (1, 1)``."""
    f = PLMap.affine(2)
    w0 = PLMap.compact_support([(-1, -1), (-HALF, HALF), (1, 1)])
    return brin_navas(f, w0)


# ---------------------------------------------------------------------------
# dyadic sequence on I = (-1/4, 1/4)


def _a(k: int) -> Fraction:
    return Fraction(1, 4 ** k)


def dyadic_sequence(n: int) -> PLMap:
    """The ``n``-th map of a fixed PL dyadic sequence supported on ``[-1/4, 1/4]``.

    Interpolation points (``a_k = 4^-k``)::

        (-1/4, -1/4), (-7/32, -3/16), (-a_k, -a_k/2) for 2 <= k <= n+1,
        (0, a_{n+1}/2), (a_{n+1}/2, a_{n+1}), (a_k, 2 a_k) for n+1 >= k >= 2,
        (1/8, 3/16), (1/4, 1/4)

    Every slope is 1/2, 1 or 2.  ``f_n > id`` on the open interval, ``f_n``
    agrees with ``f_m`` off ``(-a_{m+1}, a_{m+1})`` and ``f_n(0) = a_{n+1}/2``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    left = [(-QUARTER, -QUARTER), (Fraction(-7, 32), Fraction(-3, 16))]
    left += [(-_a(k), -_a(k) / 2) for k in range(2, n + 2)]
    c = _a(n + 1)
    mid = [(Fraction(0), c / 2), (c / 2, c)]
    right = [(_a(k), 2 * _a(k)) for k in range(n + 1, 1, -1)]
    right += [(Fraction(1, 8), Fraction(3, 16)), (QUARTER, QUARTER)]
    return PLMap.compact_support(left + mid + right)


def f_infinity(t) -> Fraction:
    """Pointwise limit of the sequence: ``f_m(t)`` for any ``m`` with ``4^-(m+1) <= |t|``."""
    t = to_q(t)
    if t == 0:
        return Fraction(0)
    if abs(t) >= QUARTER:
        return t
    m = 1
    while _a(m + 1) > abs(t):
        m += 1
    return dyadic_sequence(m)(t)
