# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the kernels in ``_kernels_py``.

Arithmetic stays on Python ints (arbitrary precision); the gain comes from
typed loop indices, direct tuple access and skipping interpreter dispatch.
"""
from math import gcd as _gcd


cpdef tuple pl_eval(tuple packed, object xn, object xd):
    cdef tuple bnum = <tuple>packed[0]
    cdef tuple bden = <tuple>packed[1]
    cdef Py_ssize_t lo = 0, hi = len(bnum), mid
    cdef object num, den, g, sn, sd, cn, cd
    while lo < hi:
        mid = (lo + hi) >> 1
        if bnum[mid] * xd < xn * bden[mid]:
            lo = mid + 1
        else:
            hi = mid
    sn = (<tuple>packed[2])[lo]
    sd = (<tuple>packed[3])[lo]
    cn = (<tuple>packed[4])[lo]
    cd = (<tuple>packed[5])[lo]
    num = sn * xn * cd + cn * sd * xd
    den = sd * xd * cd
    g = _gcd(num, den)
    return (num // g, den // g)


cpdef list pl_eval_many(tuple packed, list points):
    cdef list out = []
    cdef tuple p
    for p in points:
        out.append(pl_eval(packed, p[0], p[1]))
    return out


cpdef set orbit_closure(list letters, list start, Py_ssize_t maxlen):
    cdef set seen = set(start)
    cdef list frontier = list(start)
    cdef list nxt
    cdef tuple pt, q, packed
    cdef Py_ssize_t step
    for step in range(maxlen):
        nxt = []
        for pt in frontier:
            for packed in letters:
                q = pl_eval(packed, pt[0], pt[1])
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        if not nxt:
            break
        frontier = nxt
    return seen


cpdef list word_levels(list letters, list inverse, list points, Py_ssize_t maxlen):
    cdef list levels = [[((), tuple(points))]]
    cdef Py_ssize_t nletters = len(letters), i, inv, step, k, nv
    cdef list prev, cur
    cdef tuple word, vals, packed, newvals, pt
    for step in range(maxlen):
        prev = <list>levels[len(levels) - 1]
        cur = []
        for i in range(nletters):
            packed = <tuple>letters[i]
            inv = inverse[i]
            for item in prev:
                word = <tuple>(<tuple>item)[0]
                if len(word) and word[0] == inv:
                    continue
                vals = <tuple>(<tuple>item)[1]
                nv = len(vals)
                newvals = tuple([pl_eval(packed, (<tuple>vals[k])[0], (<tuple>vals[k])[1]) for k in range(nv)])
                cur.append(((i,) + word, newvals))
        levels.append(cur)
    return levels
