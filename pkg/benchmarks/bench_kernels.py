"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--seed 7]

Both backends get identical inputs; their outputs are checked equal before
timings are reported.
"""
import argparse
import random
import time
from fractions import Fraction

from lineact import _kernels_py
from lineact.plmap import PLMap, q_pair

try:
    from lineact import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None


def random_map(rng):
    xs = sorted({Fraction(rng.randint(-40, 40), 8) for _ in range(rng.randint(2, 6))})
    ys = sorted({Fraction(rng.randint(-40, 40), 8) for _ in range(len(xs))})
    while len(ys) < len(xs):
        ys = sorted(set(ys) | {Fraction(rng.randint(-40, 40), 8)})
    return PLMap.from_points(list(zip(xs, ys)), Fraction(rng.randint(1, 4), 2), Fraction(rng.randint(1, 4), 2))


def workloads(rng):
    f, g = random_map(rng), random_map(rng)
    packs = [f.packed, f.inverse().packed, g.packed, g.inverse().packed]
    pts = [q_pair(Fraction(rng.randint(-500, 500), rng.randint(1, 64))) for _ in range(50_000)]
    inv = [1, 0, 3, 2]
    return {
        "pl_eval_many (50k points)": lambda k: k.pl_eval_many(packs[0], pts),
        "orbit_closure (depth 7)": lambda k: k.orbit_closure(packs, [(0, 1), (1, 3)], 7),
        "word_levels (depth 7, 3 points)": lambda k: list(k.word_levels(packs, inv, [(0, 1), (1, 3), (-2, 5)], 7)),
    }


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    print(f"{'kernel':34s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, job in workloads(rng).items():
        tp, out_p = best_of(lambda: job(_kernels_py), args.repeat)
        if _kernels_c is None:
            print(f"{name:34s} {tp:10.4f} {'n/a':>10s} {'n/a':>8s}")
            continue
        tc, out_c = best_of(lambda: job(_kernels_c), args.repeat)
        norm = (lambda o: sorted(o)) if isinstance(out_p, (set, frozenset)) else (lambda o: o)
        if norm(out_p) != norm(out_c):
            raise SystemExit(f"backend outputs differ for {name}")
        print(f"{name:34s} {tp:10.4f} {tc:10.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
