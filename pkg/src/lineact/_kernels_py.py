"""Pure-Python reference versions of the hot kernels.

Rationals travel as ``(num, den)`` pairs of Python ints with ``den > 0`` and
``gcd(num, den) == 1``.  A packed PL map is the tuple

    (bnum, bden, snum, sden, cnum, cden)

where ``b*`` are the breakpoints and ``s*``/``c*`` the slope and intercept of
each piece (one more piece than breakpoints).  The compiled module
``_kernels`` exposes exactly the same functions.
"""
from math import gcd


def pl_eval(packed, xn, xd):
    bnum, bden, snum, sden, cnum, cden = packed
    lo, hi = 0, len(bnum)
    # first breakpoint >= x
    while lo < hi:
        mid = (lo + hi) >> 1
        if bnum[mid] * xd < xn * bden[mid]:
            lo = mid + 1
        else:
            hi = mid
    sn, sd, cn, cd = snum[lo], sden[lo], cnum[lo], cden[lo]
    num = sn * xn * cd + cn * sd * xd
    den = sd * xd * cd
    g = gcd(num, den)
    return num // g, den // g


def pl_eval_many(packed, points):
    return [pl_eval(packed, n, d) for n, d in points]


def orbit_closure(letters, start, maxlen):
    """Points reachable from ``start`` by at most ``maxlen`` letter applications."""
    seen = set(start)
    frontier = list(start)
    for _ in range(maxlen):
        nxt = []
        for n, d in frontier:
            for packed in letters:
                p = pl_eval(packed, n, d)
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
        if not nxt:
            break
        frontier = nxt
    return seen


def word_levels(letters, inverse, points, maxlen):
    """Length-lex enumeration of freely reduced words with their values.

    ``letters`` are packed maps, ``inverse[i]`` the index of the inverse
    letter.  Returns a list of levels; level ``k`` is a list of
    ``(word, values)`` where ``word`` is a tuple of letter indices (leftmost
    letter applied last) and ``values`` the images of ``points``.
    """
    levels = [[((), tuple(points))]]
    nletters = len(letters)
    for _ in range(maxlen):
        prev = levels[-1]
        cur = []
        for i in range(nletters):
            packed = letters[i]
            inv = inverse[i]
            for word, vals in prev:
                if word and word[0] == inv:
                    continue
                cur.append(((i,) + word, tuple(pl_eval(packed, n, d) for n, d in vals)))
        levels.append(cur)
    return levels
