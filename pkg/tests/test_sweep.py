import os
import random
import subprocess
import sys

import pytest

from circlelagrange import _sweep_py, sweep
from circlelagrange.romik import berggren_triples

needs_compiled = pytest.mark.skipif(not sweep.COMPILED_AVAILABLE, reason="compiled kernel not built")


def test_split_frontier_covers_every_triple_once():
    cmax = 5000
    shallow, roots = sweep.split_frontier(cmax, depth=3)
    seen = list(shallow)
    stack = list(roots)
    while stack:
        t = stack.pop()
        seen.append(t)
        stack.extend(ch for ch in sweep._children(t) if ch[2] <= cmax)
    assert len(seen) == len(set(seen))
    assert set(seen) == {t.vec() for t in berggren_triples(cmax)}


def test_python_kernel_counts_triples():
    best, count, _ = sweep.sweep(0.6, 0.8, 1, 1000, kernel=_sweep_py)
    assert count == sum(1 for _ in berggren_triples(1000))
    assert best == float("inf")  # (3,4,5) itself


@needs_compiled
@pytest.mark.parametrize("seed", range(5))
def test_kernels_agree(seed):
    rng = random.Random(seed)
    theta = rng.uniform(0.01, 1.56)
    from math import cos, sin
    alpha, beta = cos(theta), sin(theta)
    cmin = rng.randint(1, 500)
    args = (alpha, beta, cmin, 20000)
    a = sweep.sweep(*args, kernel=sweep.KERNELS["python"])
    b = sweep.sweep(*args, kernel=sweep.KERNELS["compiled"])
    assert a[1] == b[1]
    assert a[0] == b[0]
    assert a[2] == b[2]


@pytest.mark.parametrize("threads", [1, 2, 3, 8])
def test_thread_count_does_not_change_results(threads):
    ref = sweep.sweep(0.3, 0.95393920141694565, 10, 30000, threads=1)
    assert sweep.sweep(0.3, 0.95393920141694565, 10, 30000, threads=threads) == ref


def test_kernel_selection():
    assert sweep.kernel_name(_sweep_py) == "python"
    expected = "compiled" if sweep.COMPILED_AVAILABLE else "python"
    assert sweep.kernel_name() == expected


def test_pure_python_switch():
    env = dict(os.environ, CIRCLELAGRANGE_PURE="1")
    proc = subprocess.run([sys.executable, "-c", "from circlelagrange import sweep; print(sweep.kernel_name())"],
                          capture_output=True, text=True, env=env, check=True)
    assert proc.stdout.strip() == "python"


@needs_compiled
def test_compiled_kernel_refuses_huge_heights():
    with pytest.raises(OverflowError):
        sweep.KERNELS["compiled"].sweep(0.6, 0.8, 1, 10 ** 30, [(3, 4, 5)], 1e-7, True)
