"""Left-preorders on finitely generated groups, queried on enumerated prefixes.

A preorder is a memoized comparison oracle returning -1, 0 or 1.  Ties
(residue cosets) are first-class everywhere.
"""
from __future__ import annotations

import random
from typing import Callable, Iterable, Sequence

from fractions import Fraction
from .rep import MarkedGroup, Representation, Word

Normalizer = Callable[[Word], object]


def free_normal_form(w: Word):
    return w.syllables


def abelian_normal_form(ngens: int) -> Normalizer:
    """Exponent sums: the normal form in a free abelian group."""
    return lambda w: w.exponent_sums(ngens)


class Enumeration:
    """A numbering ``g_0 = e, g_1, ...`` injective on normal forms.

    Words come in length-lex order and duplicates (same normal form) are
    skipped, so for free groups this is plain reduced-word order.
    """

    def __init__(self, group: MarkedGroup, normalizer: Normalizer | None = None, words: Iterable[Word] | None = None):
        self.group = group
        self.normalizer = normalizer or free_normal_form
        self.words: list[Word] = []
        self._index: dict = {}
        self._source = iter(words) if words is not None else self._all_words()

    def _all_words(self):
        k = 2 * self.group.rank
        level: list[tuple[int, ...]] = [()]
        yield Word()
        while True:
            level = [(c,) + w for c in range(k) for w in level if not (w and w[0] == c ^ 1)]
            for w in level:
                yield Word.from_letters(w)

    def extend(self, n: int) -> None:
        while len(self.words) < n:
            try:
                w = next(self._source)
            except StopIteration:
                raise ValueError(f"enumeration exhausted at {len(self.words)} elements") from None
            key = self.normalizer(w)
            if key in self._index:
                continue
            self._index[key] = len(self.words)
            self.words.append(w)

    def prefix(self, n: int) -> list[Word]:
        self.extend(n)
        return self.words[:n]

    def __getitem__(self, i: int) -> Word:
        self.extend(i + 1)
        return self.words[i]

    def index(self, w: Word) -> int | None:
        """Position of ``w`` among the elements enumerated so far."""
        return self._index.get(self.normalizer(w))


class Preorder:
    """Total left-invariant preorder given by ``compare(g, h) in {-1, 0, 1}``.

    Results are cached by normal form.  ``compare(g, h) < 0`` means ``g < h``.
    """

    def __init__(self, compare: Callable[[Word, Word], int], normalizer: Normalizer | None = None, name: str = ""):
        self._compare = compare
        self.normalizer = normalizer or free_normal_form
        self.name = name
        self._memo: dict = {}

    def compare(self, g: Word, h: Word) -> int:
        key = (self.normalizer(g), self.normalizer(h))
        r = self._memo.get(key)
        if r is None:
            r = self._compare(g, h)
            if r not in (-1, 0, 1):
                raise ValueError(f"comparison oracle returned {r!r}")
            self._memo[key] = r
            self._memo[(key[1], key[0])] = -r
        return r

    def le(self, g: Word, h: Word) -> bool:
        return self.compare(g, h) <= 0

    def lt(self, g: Word, h: Word) -> bool:
        return self.compare(g, h) < 0

    def equiv(self, g: Word, h: Word) -> bool:
        return self.compare(g, h) == 0

    def is_positive(self, g: Word) -> bool:
        return self.compare(Word(), g) < 0

    def in_residue(self, g: Word) -> bool:
        return self.compare(Word(), g) == 0

    def transcript(self, words: Sequence[Word]) -> list[tuple[int, int, str]]:
        """All ``(i, j, verdict)`` with ``i < j`` over the given numbering."""
        sym = {-1: "<", 0: "=", 1: ">"}
        return [(i, j, sym[self.compare(words[i], words[j])])
                for i in range(len(words)) for j in range(i + 1, len(words))]

    def sanity_check(self, words: Sequence[Word], samples: int = 200, seed: int = 0) -> list[str]:
        """Spot-check totality, transitivity and left invariance; return problems found."""
        rng = random.Random(seed)
        problems = []
        n = len(words)
        if n and all(self.compare(words[0], w) == 0 for w in words):
            problems.append("preorder is trivial on the prefix")
        for _ in range(samples):
            g, h, k = (words[rng.randrange(n)] for _ in range(3))
            c = self.compare(g, h)
            if self.compare(h, g) != -c:
                problems.append(f"antisymmetry fails for {g}, {h}")
            if self.compare(k * g, k * h) != c:
                problems.append(f"left invariance fails for k={k}, g={g}, h={h}")
            if c <= 0 and self.compare(h, k) <= 0 and self.compare(g, k) > 0:
                problems.append(f"transitivity fails for {g}, {h}, {k}")
        return problems


def replay_transcript(rows: Iterable[tuple[int, int, str]], words: Sequence[Word],
                      normalizer: Normalizer | None = None) -> Preorder:
    """Preorder answering from a stored transcript only (no oracle)."""
    norm = normalizer or free_normal_form
    pos = {norm(w): i for i, w in enumerate(words)}
    table: dict[tuple[int, int], int] = {}
    val = {"<": -1, "=": 0, ">": 1}
    for i, j, v in rows:
        table[(i, j)] = val[v]
        table[(j, i)] = -val[v]

    def cmp(g, h):
        i, j = pos.get(norm(g)), pos.get(norm(h))
        if i is None or j is None:
            raise KeyError("element outside the transcript")
        return 0 if i == j else table[(i, j)]

    return Preorder(cmp, norm, "transcript")


def induced_preorder(rep: Representation) -> Preorder:
    """``g <= h`` iff ``g.0 <= h.0`` in the action."""
    if all(f(0) == 0 for f in rep.images):
        raise ValueError("trivial preorder: every generator fixes 0")
    cache: dict[Word, Fraction] = {}

    def value(w):
        v = cache.get(w)
        if v is None:
            v = cache[w] = rep.act(w, 0)
        return v

    def cmp(g, h):
        a, b = value(g), value(h)
        return (a > b) - (a < b)

    return Preorder(cmp, name="induced")


def lexicographic_preorder(ngens: int, priority: Sequence[int], collapse: int = 0) -> Preorder:
    """Order on ``Z^n`` comparing exponent sums in ``priority`` order.

    The last ``collapse`` coordinates of ``priority`` are ignored, giving a
    preorder whose residue is the subgroup they span.
    """
    keys = list(priority)[: len(priority) - collapse]
    norm = abelian_normal_form(ngens)

    def cmp(g, h):
        a, b = norm(g), norm(h)
        for i in keys:
            if a[i] != b[i]:
                return -1 if a[i] < b[i] else 1
        return 0

    return Preorder(cmp, norm, f"lex{tuple(priority)}")


def is_convex(member: Callable[[Word], bool], pre: Preorder, words: Sequence[Word]):
    """``(True, None)`` if no ``e <= g <= h`` with ``h`` in ``H`` and ``g`` outside; else ``(False, (g, h))``."""
    e = Word()
    if not member(e):
        raise ValueError("subgroup oracle must contain the identity")
    for h in words:
        if not member(h) or pre.compare(e, h) > 0:
            continue
        for g in words:
            if member(g):
                continue
            if pre.compare(e, g) <= 0 and pre.compare(g, h) <= 0:
                return False, (g, h)
    return True, None


class NoMinimalModel(ValueError):
    pass


def minimal_model(pre: Preorder, member: Callable[[Word], bool], group: MarkedGroup,
                  words: Sequence[Word] = ()) -> Preorder:
    """Preorder with positive cone ``P \\ H`` and residue ``H``.

    ``member`` decides the supplied maximal convex subgroup ``H``.  If every
    generator lies in ``H`` then ``H`` is the whole group and there is no
    minimal model.  When ``words`` are given, convexity of ``H`` and left
    invariance of the result are re-checked on them.
    """
    if all(member(s) for s in group.gens()):
        raise NoMinimalModel("H is the whole group: no minimal model at this truncation")
    if words:
        ok, bad = is_convex(member, pre, words)
        if not ok:
            raise ValueError(f"supplied subgroup is not convex: witness {bad}")

    def cmp(g, h):
        if member(g.inverse() * h):
            return 0
        return pre.compare(g, h)

    out = Preorder(cmp, pre.normalizer, f"min({pre.name})")
    if words:
        problems = out.sanity_check(list(words), samples=100)
        problems = [p for p in problems if "trivial" not in p]
        if problems:
            raise ValueError(f"minimal model fails checks: {problems[:3]}")
    return out
