"""Independent checks of Lagrange values: brute-force sweeps, best approximants,
Perron's formula and admissibility of periodic digit sequences.

Numbers leave the exact layer only through certified interval evaluation
(mpmath's directed-rounding intervals at growing precision).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import isqrt

import mpmath
from mpmath.libmp import ComplexResult

from .exactnum import INF, SQRT2, Infinity, QuadTower, compare, endpoints, ivprec, tower_interval
from .romik import (CirclePoint, DigitWord, PythTriple, cylinder_bounds, delta_squared, digits_norm,
                    finite_norm_to_inf, point_from_digits, vee_digit)
from .sweep import kernel_name, sweep
from .words import InfWord, norm_of, parse_oriented, vee


# ---------------------------------------------------------------------------
# certified numerics


def _certify(build, dps: int, start_prec: int = 0):
    """Evaluate ``build(prec)`` (an mpmath interval) until its width certifies ``dps`` digits."""
    prec = max(start_prec, int(dps * 3.33) + 40)
    tol = mpmath.mpf(10) ** (-dps)
    for _ in range(40):
        try:
            lo, hi = endpoints(build(prec))
        except (ComplexResult, ZeroDivisionError):
            # the interval still straddles a singularity; widen the precision
            prec *= 2
            continue
        with mpmath.workprec(prec + 10):
            scale = max(abs(lo), abs(hi), mpmath.mpf(1) / 2 ** prec)
            if hi - lo <= tol * scale:
                with mpmath.workdps(dps + 5):
                    return (lo + hi) / 2
        prec *= 2
    raise ArithmeticError("interval evaluation failed to converge")


def inv_delta_direct(p: CirclePoint, z: PythTriple, dps: int = 50):
    """``1/(c |P - Z|)`` from coordinates, certified to ``dps`` digits."""
    a, b, c = z.vec()

    def build(prec):
        x = tower_interval(p.x, prec)
        y = tower_interval(p.y, prec)
        with ivprec(prec) as iv:
            dx = x * c - a
            dy = y * c - b
            return 1 / iv.sqrt(dx * dx + dy * dy)

    return _certify(build, dps, start_prec=2 * c.bit_length())


def inv_sqrt_certified(x: QuadTower, dps: int = 50):
    """``1/sqrt(x)`` for an exact positive tower value."""

    def build(prec):
        v = tower_interval(x, prec)
        with ivprec(prec) as iv:
            return 1 / iv.sqrt(v)

    return _certify(build, dps)


def value_certified(x, dps: int = 50):
    if isinstance(x, Infinity):
        return mpmath.inf
    return _certify(lambda prec: tower_interval(x, prec), dps)


# ---------------------------------------------------------------------------
# exact Lagrange values of periodic sequences


def _rotations(seq):
    return [seq[i:] + seq[:i] for i in range(len(seq))]


def section_values_digits(period) -> list[tuple[str, int, QuadTower]]:
    """``(||P|| + ||Q||)/sqrt2`` at every cut of the periodic sequence and its vee-image."""
    period = tuple(period)
    out = []
    for label, seq in (("T", period), ("T-vee", tuple(vee_digit(d) for d in period))):
        for i in range(len(seq)):
            right = seq[i:] + seq[:i]
            left = right[::-1]
            val = (digits_norm(DigitWord.periodic(left)) + digits_norm(DigitWord.periodic(right))) / SQRT2
            out.append((label, i, val))
    return out


def _max_value(vals):
    best = None
    for v in vals:
        if best is None or compare(v, best) > 0:
            best = v
    return best


def lagrange_of_digits(period) -> QuadTower:
    """Exact ``L(T)`` for the purely periodic two-sided digit sequence."""
    return _max_value(v for _, _, v in section_values_digits(period))


def oriented_sections(b: str) -> list[tuple[str, int, QuadTower]]:
    """``(||Pi(E-vee)|| + ||Pi(F)||)/sqrt2`` at every cut ``E*|F`` of B and of B-vee."""
    b = parse_oriented(b)
    out = []
    for label, seq in (("B", b), ("B-vee", vee(b))):
        for i in range(len(seq)):
            right = seq[i:] + seq[:i]
            e, f = InfWord.periodic(right[::-1]), InfWord.periodic(right)
            out.append((label, i, (norm_of(e.vee()) + norm_of(f)) / SQRT2))
    return out


def lagrange_of_word(b: str) -> QuadTower:
    """Exact ``L(B)`` for the periodic oriented word with period ``b``."""
    return _max_value(v for _, _, v in oriented_sections(b))


# ---------------------------------------------------------------------------
# estimates


@dataclass(frozen=True)
class EstimateReport:
    point: DigitWord
    method: str  # "height-sweep" or "cylinder-boundary"
    estimate: mpmath.mpf
    k_or_height: int
    target: QuadTower | None = None
    error: mpmath.mpf | None = None
    detail: dict = field(default_factory=dict)

    def to_json(self, digits: int = 30) -> dict:
        out = {
            "point": self.point.to_json(),
            "method": self.method,
            "estimate": mpmath.nstr(self.estimate, digits),
            "k_or_height": str(self.k_or_height),
            "target": None if self.target is None else self.target.to_json(),
            "target_decimal": None if self.target is None else mpmath.nstr(value_certified(self.target, digits), digits),
            "error": None if self.error is None else mpmath.nstr(self.error, 5),
        }
        out.update({k: v for k, v in self.detail.items()})
        return out


def _target(p: DigitWord):
    if p.period is None:
        return None
    return lagrange_of_digits(p.period)


def _with_target(p, method, est, k, detail, dps):
    tgt = _target(p)
    err = None
    if tgt is not None:
        with mpmath.workdps(dps):
            err = abs(est - value_certified(tgt, dps))
    return EstimateReport(p, method, est, k, tgt, err, detail)


def estimate_by_height(p: DigitWord, max_height: int, min_height: int | None = None,
                       threads: int = 1, kernel=None, dps: int = 50) -> EstimateReport:
    """Max of ``1/delta(P;Z)`` over rational Z with ``min_height <= Ht(Z) <= max_height``.

    ``min_height`` defaults to ``ceil(sqrt(max_height))``, the upper half of
    the height range on a logarithmic scale.  A double-precision sweep
    screens every triple; candidates near the top are re-evaluated with
    certified intervals.
    """
    if p.period is None:
        raise ValueError("point needs an eventually periodic expansion")
    if min_height is None:
        min_height = isqrt(max_height - 1) + 1 if max_height > 1 else 1
    pt = point_from_digits(p)
    alpha = float(value_certified(pt.x, 20))
    beta = float(value_certified(pt.y, 20))
    best_float, count, cands = sweep(alpha, beta, min_height, max_height, margin=1e-7,
                                     threads=threads, kernel=kernel)
    best, arg = None, None
    for a, b, c in cands:
        v = inv_delta_direct(pt, PythTriple(a, b, c), dps)
        if best is None or v > best:
            best, arg = v, (a, b, c)
    detail = {"min_height": str(min_height), "triples_scanned": str(count),
              "argmax": None if arg is None else {"a": str(arg[0]), "b": str(arg[1]), "c": str(arg[2])},
              "kernel": kernel_name(kernel)}
    return _with_target(p, "height-sweep", best if best is not None else mpmath.mpf(0),
                        max_height, detail, dps)


def boundary_inv_deltas(p: DigitWord, k_max: int, dps: int = 50) -> list[tuple[int, mpmath.mpf, mpmath.mpf]]:
    """``(k, 1/delta(P; Z_k^(0,1)(P)), 1/delta(Pv; Z_k^(0,1)(Pv)))`` for k = 0..k_max."""
    pt = point_from_digits(p)
    ptv = pt.vee()
    pv = p.vee()
    out = []
    for k in range(k_max + 1):
        z = cylinder_bounds(p.prefix(k))[1]
        zv = cylinder_bounds(pv.prefix(k))[1]
        out.append((k, inv_sqrt_certified(delta_squared(pt, z), dps),
                    inv_sqrt_certified(delta_squared(ptv, zv), dps)))
    return out


def estimate_by_cylinders(p: DigitWord, k_max: int, dps: int = 50) -> EstimateReport:
    """Best-approximant estimate: the max over the last full period of k <= k_max."""
    if p.period is None:
        raise ValueError("point needs an eventually periodic expansion")
    window = len(p.period)
    lo = max(len(p.head), k_max - window + 1, 0)
    rows = boundary_inv_deltas(p, k_max, dps)
    best = max(max(r[1], r[2]) for r in rows if r[0] >= lo)
    return _with_target(p, "cylinder-boundary", best, k_max, {"window": [str(lo), str(k_max)]}, dps)


@dataclass(frozen=True)
class PerronResult:
    residual: mpmath.mpf
    epsilon: mpmath.mpf
    lhs: mpmath.mpf
    rhs: mpmath.mpf


def perron_check(p: DigitWord, k: int, dps: int = 50) -> PerronResult:
    """Compare ``delta(P; Z_k^(0,1))`` with ``sqrt2 eps_k/(||P'_k|| + ||P''_k||)``.

    ``P'_k`` is P shifted by k digits, ``P''_k = [d_k..d_1, 3^inf]`` and
    ``eps_k = sin(theta(P)/2)/sin(theta(Z_k)/2)`` with ``beta = cos(theta)``.
    """
    prefix = p.prefix(k)
    if all(d == 1 for d in prefix) or all(d == 3 for d in prefix):
        raise ValueError("prefix must contain two different digits")
    pt = point_from_digits(p)
    z = cylinder_bounds(prefix)[1]
    work = dps + 20
    inv = inv_delta_direct(pt, z, work)
    n1 = value_certified(digits_norm(p.shift(k)), work)
    n2 = value_certified(finite_norm_to_inf(prefix[::-1]), work)
    one_minus_beta = value_certified(1 - pt.y, work)
    with mpmath.workdps(work):
        lhs = 1 / inv
        eps = mpmath.sqrt(one_minus_beta / (1 - mpmath.mpf(z.b) / z.c))
        rhs = mpmath.sqrt(2) * eps / (n1 + n2)
        res = abs(lhs - rhs)
    return PerronResult(res, eps, lhs, rhs)


# ---------------------------------------------------------------------------
# admissibility


FORBIDDEN = (
    ("33", r"33"),
    ("11", r"11"),
    ("232", r"232"),
    ("212", r"212"),
    ("2(31)^k32", r"2(?:31)*32"),
    ("2(13)^k12", r"2(?:13)*12"),
    ("12^(2k+1)3", r"12(?:22)*3"),
    ("32^(2k+1)1", r"32(?:22)*1"),
    ("32^(2k)3", r"3(?:22)*3"),
    ("12^(2k)1", r"1(?:22)*1"),
)
_FORBIDDEN_RE = [(name, re.compile(pat)) for name, pat in FORBIDDEN]


@dataclass(frozen=True)
class Admissibility:
    status: str  # "strongly_admissible", "admissible" or "not_admissible"
    witness: dict | None = None
    L: QuadTower | None = None

    def to_json(self) -> dict:
        return {"status": self.status, "witness": self.witness,
                "L": None if self.L is None else self.L.to_json(),
                "L_decimal": None if self.L is None else mpmath.nstr(value_certified(self.L, 12), 12)}


def _window(period) -> tuple[str, int]:
    s = "".join(map(str, period))
    n = len(s)
    return s * (3 + (n + 4) // n), n


def forbidden_blocks(period) -> list[dict]:
    """Every forbidden block starting in one period, shortest match per family and start."""
    text, n = _window(period)
    out = []
    for i in range(n):
        for name, rx in _FORBIDDEN_RE:
            m = rx.match(text, i)
            if m:
                out.append({"kind": "block", "family": name, "position": i, "factor": m.group()})
    return out


def forbidden_witness(period) -> dict | None:
    """Earliest (then shortest) forbidden block in the two-sided periodic sequence.

    Interior letters of every family avoid at least one digit of a period
    that contains the block's end letters, so a block is at most one period
    plus two letters long and a few copies of the period suffice.
    """
    text, n = _window(period)
    best = None
    for i in range(n):
        for name, rx in _FORBIDDEN_RE:
            m = rx.match(text, i)
            if m and (best is None or (i, m.end() - i) < (best[0], best[1])):
                best = (i, m.end() - i, name, m.group())
        if best is not None:
            break
    if best is None:
        return None
    return {"kind": "block", "family": best[2], "position": best[0], "factor": best[3]}


def admissible_periodic(period) -> Admissibility:
    period = tuple(int(d) for d in period)
    if not period:
        raise ValueError("empty period")
    w = forbidden_witness(period)
    if w is not None:
        return Admissibility("not_admissible", w)
    variants = {"T": period, "T*": period[::-1],
                "T-vee": tuple(vee_digit(d) for d in period),
                "T*-vee": tuple(vee_digit(d) for d in period[::-1])}
    n = len(period)
    for label, seq in variants.items():
        for i in range(n):
            if (seq[i], seq[(i + 1) % n], seq[(i + 2) % n]) != (2, 3, 1):
                continue
            rot = seq[i:] + seq[:i]
            q = rot[3:] + rot[:3]
            left = rot[::-1]  # digits read leftwards from the 2
            if compare_ext(digits_norm(DigitWord.periodic(left)), digits_norm(DigitWord.periodic(q))) < 0:
                return Admissibility("not_admissible",
                                     {"kind": "section", "sequence": label, "position": i,
                                      "factor": "".join(map(str, rot[:3]))})
    L = lagrange_of_digits(period)
    sign = compare(L, 2)
    if sign < 0:
        return Admissibility("strongly_admissible", None, L)
    if sign == 0:
        return Admissibility("admissible", None, L)
    return Admissibility("not_admissible", {"kind": "value", "L": str(L)}, L)


def compare_ext(x, y) -> int:
    xi, yi = isinstance(x, Infinity), isinstance(y, Infinity)
    if xi or yi:
        return (xi and not yi) - (yi and not xi)
    return compare(x, y)


def section_value(left: DigitWord, right: DigitWord):
    """``(||left|| + ||right||)/sqrt2``; ``left`` lists digits leftwards from the cut."""
    a, b = digits_norm(left), digits_norm(right)
    if isinstance(a, Infinity) or isinstance(b, Infinity):
        return INF
    return (a + b) / SQRT2
