"""Canonical (head, period) form shared by digit words and letter words."""


def primitive_root(seq):
    n = len(seq)
    for d in range(1, n + 1):
        if n % d == 0 and seq[:d] * (n // d) == seq:
            return seq[:d]
    return seq


def canonical(head, period):
    """Minimal period, then the shortest head (absorb trailing period copies)."""
    if period is None:
        return head, None
    if not period:
        raise ValueError("empty period")
    period = primitive_root(period)
    while head and head[-1] == period[-1]:
        head = head[:-1]
        period = period[-1:] + period[:-1]
    return head, period


def letter_at(head, period, i: int):
    if i < len(head):
        return head[i]
    if period is None:
        raise IndexError("finite word exhausted")
    return period[(i - len(head)) % len(period)]


def shifted(head, period, k: int):
    """Drop the first ``k`` letters."""
    if k <= len(head):
        return head[k:], period
    if period is None:
        raise IndexError("finite word exhausted")
    r = (k - len(head)) % len(period)
    return head[:0], period[r:] + period[:r]
