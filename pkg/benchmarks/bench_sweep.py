"""Time the compiled and pure-Python height sweeps on the same inputs.

    python3 benchmarks/bench_sweep.py [--max-height N] [--repeat R]
"""

import argparse
import time
from math import cos, sin

from circlelagrange import sweep


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-height", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    alpha, beta = cos(0.7), sin(0.7)
    rows = []
    for name, kernel in sweep.KERNELS.items():
        t, (best, count, _) = best_of(
            lambda k=kernel: sweep.sweep(alpha, beta, 1, args.max_height, kernel=k), args.repeat)
        rows.append((name, t, count, best))
    print(f"height sweep to c <= {args.max_height}, best of {args.repeat}")
    for name, t, count, best in rows:
        print(f"  {name:9s} {t:9.4f} s  {count} triples  {count / t:12.0f} triples/s  best {best:.12g}")
    if len(rows) == 2:
        print(f"  speedup   {rows[0][1] / rows[1][1]:.1f}x")
        if rows[0][2:] != rows[1][2:]:
            raise SystemExit("kernels disagree")
    else:
        print("  compiled kernel not built; only the fallback was timed")


if __name__ == "__main__":
    main()
