"""Berggren height sweep with a compiled kernel when available.

The compiled ``_sweep`` extension is used if it imports; otherwise the
pure-Python ``_sweep_py`` runs.  Setting ``CIRCLELAGRANGE_PURE=1`` forces
the fallback.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

from . import _sweep_py

try:
    from . import _sweep as _compiled
except ImportError:  # no compiler at install time
    _compiled = None

COMPILED_AVAILABLE = _compiled is not None

if COMPILED_AVAILABLE and not os.environ.get("CIRCLELAGRANGE_PURE"):
    DEFAULT_KERNEL = _compiled
else:
    DEFAULT_KERNEL = _sweep_py

KERNELS = {"python": _sweep_py}
if COMPILED_AVAILABLE:
    KERNELS["compiled"] = _compiled

ROOTS = ((3, 4, 5), (4, 3, 5))
SEEDS = ((1, 0, 1), (0, 1, 1))


def kernel_name(kernel=None) -> str:
    k = kernel or DEFAULT_KERNEL
    return "compiled" if k is _compiled else "python"


def _children(t):
    a, b, c = t
    return ((-a + 2 * b + 2 * c, -2 * a + b + 2 * c, -2 * a + 2 * b + 3 * c),
            (a + 2 * b + 2 * c, 2 * a + b + 2 * c, 2 * a + 2 * b + 3 * c),
            (a - 2 * b + 2 * c, 2 * a - b + 2 * c, 2 * a - 2 * b + 3 * c))


def split_frontier(cmax: int, depth: int = 3):
    """Nodes above ``depth`` (scored singly) and subtree roots at ``depth``."""
    shallow = [s for s in SEEDS if s[2] <= cmax]
    layer = [r for r in ROOTS if r[2] <= cmax]
    for _ in range(depth):
        shallow.extend(layer)
        layer = [ch for t in layer for ch in _children(t) if ch[2] <= cmax]
    return shallow, layer


def sweep(alpha: float, beta: float, cmin: int, cmax: int, margin: float = 1e-7,
          threads: int = 1, kernel=None):
    """Float screen of every primitive triple with ``cmin <= c <= cmax``.

    Returns ``(best, count, candidates)``; the result does not depend on
    ``threads`` because candidates are merged against the global best and
    sorted.
    """
    k = kernel or DEFAULT_KERNEL
    shallow, roots = split_frontier(cmax)
    jobs = [(shallow, False)]
    threads = max(1, int(threads))
    chunks = [roots[i::threads] for i in range(threads)]
    jobs.extend((ch, True) for ch in chunks if ch)
    if threads == 1:
        results = [k.sweep(alpha, beta, cmin, cmax, r, margin, d) for r, d in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda job: k.sweep(alpha, beta, cmin, cmax, job[0], margin, job[1]),
                                    jobs))
    best = max(r[0] for r in results)
    count = sum(r[1] for r in results)
    keep = best * (1.0 - margin)
    cands = set()
    for _, _, cs in results:
        for a, b, c in cs:
            dx = c * alpha - a
            dy = c * beta - b
            d2 = dx * dx + dy * dy
            if d2 == 0.0 or 1.0 / d2 ** 0.5 >= keep:
                cands.add((a, b, c))
    return best, count, sorted(cands, key=lambda t: (t[2], t[0]))
