"""Romik's map on the quarter circle, digit expansions, Berggren trees, heights.

Points are :class:`CirclePoint` with tower coordinates.  Rational points
correspond to primitive Pythagorean triples ``(a, b, c)`` and are walked
through the Berggren matrices ``M1, M2, M3``.  The stereographic norm sends
the quarter circle to ``[0, inf]`` and conjugates the map to a piecewise
fractional-linear one.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence

from . import _periodic
from .exactnum import (INF, SQRT2, Infinity, Mat2, Mat3, QuadTower, lorentz_pairing)


class NotPrimitive(ValueError):
    pass


class NotPythagorean(ValueError):
    pass


M1 = Mat3([[-1, 2, 2], [-2, 1, 2], [-2, 2, 3]])
M2 = Mat3([[1, 2, 2], [2, 1, 2], [2, 2, 3]])
M3 = Mat3([[1, -2, 2], [2, -1, 2], [2, -2, 3]])
H = Mat3([[-1, -2, 2], [-2, -1, 2], [-2, -2, 3]])
U1 = Mat3([[1, 0, 0], [0, -1, 0], [0, 0, 1]])
U2 = Mat3([[-1, 0, 0], [0, -1, 0], [0, 0, 1]])
U3 = Mat3([[-1, 0, 0], [0, 1, 0], [0, 0, 1]])
SWAP = Mat3([[0, 1, 0], [1, 0, 0], [0, 0, 1]])

M = {1: M1, 2: M2, 3: M3}
U = {1: U1, 2: U2, 3: U3}
# M_d^{-1} = U_d H since M_d = H U_d and both factors are involutions
M_INV = {d: U[d] @ H for d in (1, 2, 3)}

N1 = Mat2(1, 0, SQRT2, 1)
N2 = Mat2(1, SQRT2, SQRT2, 1)
N3 = Mat2(1, SQRT2, 0, 1)
N = {1: N1, 2: N2, 3: N3}

DIGITS = (1, 2, 3)


def vee_digit(d: int) -> int:
    return 4 - d


# ---------------------------------------------------------------------------
# triples


@dataclass(frozen=True, order=True)
class PythTriple:
    a: int
    b: int
    c: int

    def __post_init__(self):
        a, b, c = self.a, self.b, self.c
        if min(a, b) < 0 or c < 1 or a * a + b * b != c * c:
            raise NotPythagorean(f"({a},{b},{c}) is not a Pythagorean triple")
        if gcd(gcd(a, b), c) != 1:
            raise NotPrimitive(f"({a},{b},{c}) is not primitive")

    def vec(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @property
    def height(self) -> int:
        return self.c

    def is_seed(self) -> bool:
        return self.vec() in ((1, 0, 1), (0, 1, 1))

    def swapped(self) -> "PythTriple":
        return PythTriple(self.b, self.a, self.c)

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "c": str(self.c)}

    @staticmethod
    def from_json(obj: dict) -> "PythTriple":
        return PythTriple(int(obj["a"]), int(obj["b"]), int(obj["c"]))


SEED_10 = PythTriple(1, 0, 1)
SEED_01 = PythTriple(0, 1, 1)
ROOT_345 = PythTriple(3, 4, 5)
ROOT_435 = PythTriple(4, 3, 5)


def apply_m(d: int, t: PythTriple) -> PythTriple:
    return PythTriple(*M[d].apply(t.vec()))


def berggren_children(t: PythTriple) -> tuple[PythTriple, PythTriple, PythTriple]:
    """Children ``M_d t`` for d = 1, 2, 3."""
    return apply_m(1, t), apply_m(2, t), apply_m(3, t)


def berggren_path(t: PythTriple) -> tuple[tuple[int, ...], PythTriple]:
    """Digits ``d1..dk`` and the root (seed or 3-4-5 root) with ``t = M_d1..M_dk root``."""
    v = t.vec()
    path = []
    stops = {(3, 4, 5), (4, 3, 5), (1, 0, 1), (0, 1, 1)}
    while v not in stops:
        a, b, c = v
        x = Fraction(a, c)
        d = 1 if x > Fraction(4, 5) else 2 if x > Fraction(3, 5) else 3
        path.append(d)
        v = M_INV[d].apply(v)
        if v[2] >= c or min(v) < 0:
            raise AssertionError(f"inverse step failed to descend at {t}")
    return tuple(path), PythTriple(*v)


def berggren_levels(root: PythTriple, depth: int) -> list[list[PythTriple]]:
    """Tree levels 0..depth below ``root`` in child order."""
    levels = [[root]]
    for _ in range(depth):
        levels.append([c for t in levels[-1] for c in berggren_children(t)])
    return levels


def berggren_triples(max_height: int, include_seeds: bool = True) -> Iterator[PythTriple]:
    """Every primitive triple with ``c <= max_height``, breadth first over both trees."""
    if include_seeds and max_height >= 1:
        yield SEED_10
        yield SEED_01
    queue = deque(t for t in (ROOT_345, ROOT_435) if t.c <= max_height)
    while queue:
        t = queue.popleft()
        yield t
        for ch in berggren_children(t):
            if ch.c <= max_height:
                queue.append(ch)


def cylinder_bounds(digits: Sequence[int]) -> tuple[PythTriple, PythTriple]:
    """Boundary triples ``M_d1..M_dk (1,0,1)`` and ``M_d1..M_dk (0,1,1)``."""
    u, v = SEED_10.vec(), SEED_01.vec()
    for d in reversed(tuple(digits)):
        u = M[d].apply(u)
        v = M[d].apply(v)
    return PythTriple(*u), PythTriple(*v)


# ---------------------------------------------------------------------------
# digit words


@dataclass(frozen=True)
class DigitWord:
    """Digits ``head`` followed by ``period`` repeated forever (or nothing)."""

    head: tuple[int, ...] = ()
    period: tuple[int, ...] | None = None

    def __post_init__(self):
        head = tuple(int(d) for d in self.head)
        period = None if self.period is None else tuple(int(d) for d in self.period)
        for d in head + (period or ()):
            if d not in DIGITS:
                raise ValueError(f"invalid digit {d}")
        head, period = _periodic.canonical(head, period)
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "period", period)

    @staticmethod
    def periodic(period: Sequence[int]) -> "DigitWord":
        return DigitWord((), tuple(period))

    @staticmethod
    def parse(text: str) -> "DigitWord":
        """Read ``"312132"``, ``"3,1,2"`` or ``"1,1,(3)"`` (parenthesized period)."""
        text = text.strip().replace(" ", "")
        if "(" in text:
            h, p = text.split("(", 1)
            p = p.rstrip(")")
            return DigitWord(_digits(h), _digits(p))
        return DigitWord.periodic(_digits(text))

    def is_finite(self) -> bool:
        return self.period is None

    def digit(self, i: int) -> int:
        return _periodic.letter_at(self.head, self.period, i)

    def prefix(self, n: int) -> tuple[int, ...]:
        return tuple(self.digit(i) for i in range(n))

    def shift(self, k: int) -> "DigitWord":
        h, p = _periodic.shifted(self.head, self.period, k)
        return DigitWord(h, p)

    def prepend(self, digits: Sequence[int]) -> "DigitWord":
        return DigitWord(tuple(digits) + self.head, self.period)

    def vee(self) -> "DigitWord":
        p = None if self.period is None else tuple(vee_digit(d) for d in self.period)
        return DigitWord(tuple(vee_digit(d) for d in self.head), p)

    def __str__(self):
        parts = [str(d) for d in self.head]
        if self.period is not None:
            parts.append("(" + "".join(map(str, self.period)) + ")^inf")
        return "[" + ",".join(parts) + "]"

    def to_json(self) -> dict:
        return {"head": "".join(map(str, self.head)),
                "period": None if self.period is None else "".join(map(str, self.period))}


def _digits(s: str) -> tuple[int, ...]:
    s = s.replace(",", "")
    return tuple(int(ch) for ch in s)


def expand_rational(t: PythTriple) -> tuple[DigitWord, ...]:
    """The digit expansions of a rational point (two of them, one for a seed)."""
    path, root = berggren_path(t)
    if root == SEED_10:
        return (DigitWord(path, (1,)),)
    if root == SEED_01:
        return (DigitWord(path, (3,)),)
    if root == ROOT_345:
        return DigitWord(path + (2,), (1,)), DigitWord(path + (3,), (1,))
    return DigitWord(path + (1,), (3,)), DigitWord(path + (2,), (3,))


# ---------------------------------------------------------------------------
# points


def _tower(v) -> QuadTower:
    return QuadTower.coerce(v)


@dataclass(frozen=True, eq=False)
class CirclePoint:
    x: QuadTower
    y: QuadTower

    def __post_init__(self):
        x, y = _tower(self.x), _tower(self.y)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        if x.sign() < 0 or y.sign() < 0 or x * x + y * y != 1:
            raise ValueError(f"({x}, {y}) is not on the quarter circle")

    @staticmethod
    def from_triple(t: PythTriple) -> "CirclePoint":
        return CirclePoint(Fraction(t.a, t.c), Fraction(t.b, t.c))

    def vee(self) -> "CirclePoint":
        return CirclePoint(self.y, self.x)

    def is_rational(self) -> bool:
        return self.x.is_rational() and self.y.is_rational()

    def to_triple(self) -> PythTriple:
        if not self.is_rational():
            raise ValueError("point is irrational")
        x, y = self.x.as_fraction(), self.y.as_fraction()
        c = x.denominator
        return PythTriple(x.numerator, int(y * c), c)

    def __eq__(self, o):
        if not isinstance(o, CirclePoint):
            return NotImplemented
        return self.x == o.x and self.y == o.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __str__(self):
        return f"({self.x}, {self.y})"

    def to_json(self) -> dict:
        return {"x": self.x.to_json(), "y": self.y.to_json()}


def romik_map(p: CirclePoint) -> CirclePoint:
    x, y = p.x, p.y
    den = 3 - 2 * x - 2 * y
    assert den.sign() > 0
    return CirclePoint(abs(2 - x - 2 * y) / den, abs(2 - 2 * x - y) / den)


_F45 = Fraction(4, 5)
_F35 = Fraction(3, 5)


def digit(p: CirclePoint) -> frozenset[int]:
    """Valid first digits of ``p``; two of them exactly at x = 4/5 or x = 3/5."""
    s4 = (p.x - _F45).sign()
    s3 = (p.x - _F35).sign()
    if s4 > 0:
        return frozenset({1})
    if s4 == 0:
        return frozenset({1, 2})
    if s3 > 0:
        return frozenset({2})
    if s3 == 0:
        return frozenset({2, 3})
    return frozenset({3})


def orbit_digits(p: CirclePoint, n: int) -> tuple[int, ...]:
    """First ``n`` digits of an irrational point by iterating the map."""
    out = []
    for _ in range(n):
        ds = digit(p)
        if len(ds) != 1:
            raise ValueError("orbit hit a rational boundary point")
        out.append(next(iter(ds)))
        p = romik_map(p)
    return tuple(out)


def delta_squared(p: CirclePoint, z: PythTriple) -> QuadTower:
    """``delta(P;Z)^2 = -2 c <p, z>`` with ``p = (alpha, beta, 1)``."""
    return -2 * z.c * lorentz_pairing((p.x, p.y, 1), z.vec())


def delta_squared_direct(p: CirclePoint, z: PythTriple) -> QuadTower:
    """``c^2 |P - Z|^2`` computed from coordinates."""
    dx = p.x * z.c - z.a
    dy = p.y * z.c - z.b
    return dx * dx + dy * dy


def delta(p: CirclePoint, z: PythTriple) -> QuadTower:
    """Exact ``delta(P;Z) = c |P - Z|``.

    The square is always exact; its root is a tower number when the square
    is rational, which covers every rational ``P``.  Otherwise compare
    squares with :func:`delta_squared`.
    """
    d2 = delta_squared(p, z)
    if not d2.is_rational():
        raise ValueError("delta is not a quadratic tower number here; use delta_squared")
    return QuadTower.sqrt_of(d2.as_fraction())


# ---------------------------------------------------------------------------
# stereographic picture


def stereo_norm(p: CirclePoint):
    """``(-alpha + beta + 1)/(sqrt2 alpha)``; INF at (0, 1)."""
    if not p.x:
        return INF
    return (1 - p.x + p.y) / (p.x * SQRT2)


def point_from_norm(t) -> CirclePoint:
    """Inverse of :func:`stereo_norm`."""
    if isinstance(t, Infinity):
        return CirclePoint(0, 1)
    c = _tower(t) * SQRT2 + 1
    c2 = c * c
    return CirclePoint(2 * c / (1 + c2), (c2 - 1) / (1 + c2))


_HALF_ROOT2 = SQRT2 / 2


def treal(t):
    """The conjugate map on ``[0, inf]``."""
    if isinstance(t, Infinity):
        return INF
    t = _tower(t)
    if t <= _HALF_ROOT2:
        den = 1 - t * SQRT2
        return INF if not den else t / den
    if t <= SQRT2:
        return (SQRT2 - t) / (t * SQRT2 - 1)
    return t - SQRT2


def nd_action(d: int, t):
    return N[d].act(t)


def nd_product(digits: Sequence[int]) -> Mat2:
    out = Mat2(1, 0, 0, 1)
    for d in digits:
        out = out @ N[d]
    return out


def attracting_fixed_point(m: Mat2):
    """``(p - qq + sqrt(Delta))/(2q)``: the norm of the purely periodic point of ``m``."""
    if not m.q:
        return INF
    delta = (m.p - m.qq) ** 2 + 4 * m.pp * m.q
    if not delta.is_rational():
        raise ValueError("discriminant outside Q")
    disc = delta.rat
    if disc.denominator != 1:
        raise ValueError("non-integral discriminant")
    inv = (2 * m.q).inverse()
    return QuadTower((m.p - m.qq) * inv, inv, disc.numerator)


def digits_norm(w: DigitWord):
    """Exact ``||[w]||`` for an eventually periodic digit word."""
    if w.period is None:
        raise ValueError("finite digit word has no point")
    t = attracting_fixed_point(nd_product(w.period))
    for d in reversed(w.head):
        t = N[d].act(t)
    return t


def finite_norm_to_inf(digits: Sequence[int]):
    """``||[d1..dk, 3^inf]||`` = p/q of the digit product."""
    return nd_product(digits).act(INF)


def point_from_digits(w: DigitWord) -> CirclePoint:
    return point_from_norm(digits_norm(w))
