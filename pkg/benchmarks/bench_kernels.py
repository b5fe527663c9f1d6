"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--quick]

Both backends receive identical inputs; outputs are compared before timing
is reported.
"""

import argparse
import math
import sys
import time

import numpy as np

from qplane import _pykernels
from qplane.census import _xy, canon_table, dist_table, sub_table
from qplane.plane import generate

try:
    from qplane import _ckernels
except ImportError:
    _ckernels = None


def cases(quick):
    q = 11 if quick else 19
    n = math.ceil(1.3 * q**1.75)
    E = generate(f"random:size={n}", q, seed=1)
    idx = np.asarray(E.indices(), dtype=np.int64)
    xs, ys = _xy(E)
    rng = np.random.default_rng(0)
    pmask = (rng.random(q**3) < 1.0 / q**2).astype(np.uint8)
    T = generate("random:size=20", 7, seed=2)
    tidx = np.asarray(T.indices(), dtype=np.int64)
    return [
        (f"triangle_marks q={q} |E|={n}", "triangle_marks",
         (idx, sub_table(q, 2), canon_table(q), dist_table(q), q, False)),
        (f"pair_count q={q} |E|={n}", "pair_count", (xs, ys, q, 1)),
        (f"uncovered_targets q={q} |E|={n}", "uncovered_targets", (xs, ys, pmask, q)),
        ("difference_cover q=7 |E|=20 n=3", "difference_cover", (tidx, sub_table(7, 2), 49, 3)),
    ]


def timed(fn, args, repeat):
    best = math.inf
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t)
    return best, out


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller inputs")
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`")
        return 1
    print(f"{'kernel':<40}{'cython (s)':>12}{'python (s)':>12}{'speedup':>10}")
    for label, name, kargs in cases(args.quick):
        tc, oc = timed(getattr(_ckernels, name), kargs, args.repeat)
        tp, op = timed(getattr(_pykernels, name), kargs, 1)
        if not same(oc, op):
            print(f"{label}: backends disagree")
            return 1
        print(f"{label:<40}{tc:>12.4f}{tp:>12.4f}{tp / tc:>9.0f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
