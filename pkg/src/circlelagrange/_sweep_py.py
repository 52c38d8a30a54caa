"""Pure-Python Berggren sweep; same interface as the compiled ``_sweep``."""

from math import inf, sqrt


def sweep(alpha, beta, cmin, cmax, roots, margin, descend=True):
    """Screen ``1/delta`` in double precision over Berggren subtrees.

    Visits every triple reachable from ``roots`` with ``c <= cmax`` (only the
    roots themselves when ``descend`` is false).  Triples with ``c >= cmin``
    are scored by ``1/sqrt((c alpha - a)^2 + (c beta - b)^2)``.  Returns
    ``(best, count, candidates)`` where candidates are the ``(a, b, c)`` whose
    score is within a relative ``margin`` of ``best``.
    """
    best = 0.0
    count = 0
    cands = []
    stack = [tuple(r) for r in roots if r[2] <= cmax]
    while stack:
        a, b, c = stack.pop()
        if c >= cmin:
            count += 1
            dx = c * alpha - a
            dy = c * beta - b
            d2 = dx * dx + dy * dy
            score = inf if d2 == 0.0 else 1.0 / sqrt(d2)
            if score >= best * (1.0 - margin):
                cands.append((score, a, b, c))
                if score > best:
                    best = score
        if not descend:
            continue
        c1 = -2 * a + 2 * b + 3 * c
        if c1 <= cmax:
            stack.append((-a + 2 * b + 2 * c, -2 * a + b + 2 * c, c1))
        c2 = 2 * a + 2 * b + 3 * c
        if c2 <= cmax:
            stack.append((a + 2 * b + 2 * c, 2 * a + b + 2 * c, c2))
        c3 = 2 * a - 2 * b + 3 * c
        if c3 <= cmax:
            stack.append((a - 2 * b + 2 * c, 2 * a - b + 2 * c, c3))
    keep = best * (1.0 - margin)
    return best, count, [(a, b, c) for s, a, b, c in cands if s >= keep]
