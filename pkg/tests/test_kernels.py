import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from qplane import _pykernels as py
from qplane import kernels
from qplane.census import _xy, canon_table, dist_table, sub_table
from qplane.plane import generate

ck = pytest.importorskip("qplane._ckernels", reason="compiled extension not built")


@pytest.mark.parametrize("q,n,seed,degenerate", [(5, 12, 0, False), (7, 20, 1, True), (11, 30, 2, False)])
def test_triangle_marks_agree(q, n, seed, degenerate):
    E = generate(f"random:size={n}", q, seed=seed)
    idx = np.asarray(E.indices(), dtype=np.int64)
    args = (idx, sub_table(q, 2), canon_table(q), dist_table(q), q, degenerate)
    for a, b in zip(ck.triangle_marks(*args), py.triangle_marks(*args)):
        assert a.dtype == b.dtype and np.array_equal(a, b)


@pytest.mark.parametrize("q,ell", [(7, 1), (11, 3), (19, 5)])
def test_pair_count_agree(q, ell):
    xs, ys = _xy(generate(f"random:size={3 * q}", q, seed=q))
    assert ck.pair_count(xs, ys, q, ell) == py.pair_count(xs, ys, q, ell)


@pytest.mark.parametrize("q", [7, 11])
def test_uncovered_targets_agree(q):
    rng = np.random.default_rng(q)
    pmask = (rng.random(q**3) < 0.01).astype(np.uint8)
    xs, ys = _xy(generate(f"random:size={q}", q, seed=1))
    assert np.array_equal(ck.uncovered_targets(xs, ys, pmask, q), py.uncovered_targets(xs, ys, pmask, q))


@pytest.mark.parametrize("q,d,n", [(5, 2, 2), (5, 2, 3), (3, 1, 3), (3, 2, 4)])
def test_difference_cover_agree(q, d, n):
    E = generate("random:size=6", q, d=d, seed=n) if q**d >= 6 else generate("all", q, d=d)
    idx = np.asarray(E.indices(), dtype=np.int64)
    assert ck.difference_cover(idx, sub_table(q, d), q**d, n) == py.difference_cover(idx, sub_table(q, d), q**d, n)


def test_default_backend_is_compiled():
    if os.environ.get("QPLANE_PURE", "") in ("", "0"):
        assert kernels.BACKEND == "cython"


def test_pure_env_forces_fallback():
    code = "from qplane import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, QPLANE_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_benchmark_quick(capsys):
    bench_dir = Path(__file__).resolve().parent.parent / "benchmarks"
    sys.path.insert(0, str(bench_dir))
    try:
        import bench_kernels
    finally:
        sys.path.remove(str(bench_dir))
    assert bench_kernels.main(["--quick", "--repeat", "1"]) == 0
    assert "speedup" in capsys.readouterr().out
