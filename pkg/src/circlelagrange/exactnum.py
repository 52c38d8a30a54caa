"""Exact arithmetic in Q(sqrt 2) and in quadratic towers Q(sqrt 2)(sqrt d).

Rationals are plain :class:`fractions.Fraction` values.  ``ZRoot2`` holds
``rat + irr*sqrt(2)`` and ``QuadTower`` holds ``base + coeff*sqrt(disc)``
with ``base`` and ``coeff`` in Q(sqrt 2).  Everything is immutable.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache
from math import isqrt

import mpmath


class IncompatibleDiscriminants(ValueError):
    """Two towers carry radicals that do not live in a common quadratic extension."""


Number = "int | Fraction | ZRoot2 | QuadTower"


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


def as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"cannot read {v!r} as a rational")


# ---------------------------------------------------------------------------
# Q(sqrt 2)


class ZRoot2:
    """The number ``rat + irr*sqrt(2)`` with rational parts."""

    __slots__ = ("rat", "irr")

    def __init__(self, rat=0, irr=0):
        self.rat = as_fraction(rat)
        self.irr = as_fraction(irr)

    @staticmethod
    def coerce(v) -> "ZRoot2":
        if isinstance(v, ZRoot2):
            return v
        return ZRoot2(v)

    # ring operations
    def __add__(self, other):
        if isinstance(other, QuadTower):
            return NotImplemented
        o = ZRoot2.coerce(other)
        return ZRoot2(self.rat + o.rat, self.irr + o.irr)

    __radd__ = __add__

    def __neg__(self):
        return ZRoot2(-self.rat, -self.irr)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, QuadTower):
            return NotImplemented
        o = ZRoot2.coerce(other)
        return ZRoot2(self.rat - o.rat, self.irr - o.irr)

    def __rsub__(self, other):
        return ZRoot2.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, QuadTower):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return ZRoot2(self.rat * other, self.irr * other)
        o = ZRoot2.coerce(other)
        return ZRoot2(self.rat * o.rat + 2 * self.irr * o.irr,
                      self.rat * o.irr + self.irr * o.rat)

    __rmul__ = __mul__

    def conj(self) -> "ZRoot2":
        return ZRoot2(self.rat, -self.irr)

    def norm(self) -> Fraction:
        """Field norm ``rat^2 - 2 irr^2``."""
        return self.rat * self.rat - 2 * self.irr * self.irr

    def inverse(self) -> "ZRoot2":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("ZRoot2 division by zero")
        return ZRoot2(self.rat / n, -self.irr / n)

    def __truediv__(self, other):
        if isinstance(other, QuadTower):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("ZRoot2 division by zero")
            return ZRoot2(self.rat / other, self.irr / other)
        return self * ZRoot2.coerce(other).inverse()

    def __rtruediv__(self, other):
        return ZRoot2.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, sq = ZRoot2(1), self
        while n:
            if n & 1:
                out = out * sq
            sq = sq * sq
            n >>= 1
        return out

    # order
    def sign(self) -> int:
        a, b = _sgn(self.rat), _sgn(self.irr)
        if b == 0 or a == b:
            return a
        if a == 0:
            return b
        # opposite signs: compare rat^2 with 2 irr^2
        return a * _sgn(self.rat * self.rat - 2 * self.irr * self.irr)

    def __bool__(self):
        return bool(self.rat) or bool(self.irr)

    def __eq__(self, other):
        if isinstance(other, ZRoot2):
            return self.rat == other.rat and self.irr == other.irr
        if isinstance(other, (int, Fraction)):
            return self.irr == 0 and self.rat == other
        return NotImplemented

    def __hash__(self):
        if self.irr == 0:
            return hash(self.rat)
        return hash((self.rat, self.irr))

    def _cmp(self, other) -> int:
        if isinstance(other, QuadTower):
            return -other._cmp(self)
        if isinstance(other, Infinity):
            return -1
        return (self - ZRoot2.coerce(other)).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # inspection
    def is_rational(self) -> bool:
        return self.irr == 0

    def is_integer(self) -> bool:
        return self.irr == 0 and self.rat.denominator == 1

    def in_sqrt2_z(self) -> bool:
        """True when the value is an integer multiple of sqrt(2)."""
        return self.rat == 0 and self.irr.denominator == 1

    def __float__(self):
        return float(self.to_mpf(30))

    def to_mpf(self, dps: int = 50):
        with mpmath.workdps(dps + 10):
            v = mpmath.mpf(self.rat.numerator) / self.rat.denominator
            v += mpmath.mpf(self.irr.numerator) / self.irr.denominator * mpmath.sqrt(2)
            return +v

    def __repr__(self):
        return f"ZRoot2({self.rat}, {self.irr})"

    def __str__(self):
        return _render_linear(self.rat, self.irr, "sqrt(2)")

    def to_json(self) -> dict:
        return {"rat": fraction_to_json(self.rat), "irr": fraction_to_json(self.irr)}

    @staticmethod
    def from_json(obj: dict) -> "ZRoot2":
        return ZRoot2(fraction_from_json(obj["rat"]), fraction_from_json(obj["irr"]))


SQRT2 = ZRoot2(0, 1)
ZERO2 = ZRoot2(0)
ONE2 = ZRoot2(1)


def fraction_to_json(r: Fraction) -> dict:
    return {"num": str(r.numerator), "den": str(r.denominator)}


def fraction_from_json(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def _render_linear(a: Fraction, b: Fraction, radical: str) -> str:
    if b == 0:
        return str(a)
    if b == 1:
        rad = radical
    elif b == -1:
        rad = "-" + radical
    else:
        rad = f"{b}*{radical}"
    if a == 0:
        return rad
    return f"{a}{'' if rad.startswith('-') else '+'}{rad}"


# ---------------------------------------------------------------------------
# square parts


@lru_cache(maxsize=8192)
def square_split(n: int) -> tuple[int, int]:
    """Return ``(s, k)`` with ``n == s*s*k`` and ``k`` squarefree.

    Small primes go by trial division.  Once the cofactor is below the cube
    of the trial bound it has at most two prime factors and is either a
    square or squarefree; otherwise it is handed to sympy's factorint.
    """
    if n < 0:
        raise ValueError("negative discriminant")
    if n == 0:
        return 0, 0
    s, k = 1, 1
    p = 2
    while p <= _TRIAL_BOUND and p * p * p <= n:
        if n % p == 0:
            while n % (p * p) == 0:
                s *= p
                n //= p * p
            if n % p == 0:
                k *= p
                n //= p
        p += 1 if p == 2 else 2
    if p * p * p <= n:
        from sympy import factorint

        for q, e in factorint(n).items():
            q, e = int(q), int(e)  # sympy hands back gmpy2 integers when available
            s *= q ** (e // 2)
            k *= q ** (e % 2)
        return s, k
    r = isqrt(n)
    if r * r == n:
        s *= r
    else:
        k *= n
    return s, k


_TRIAL_BOUND = 10 ** 4


# ---------------------------------------------------------------------------
# towers


class Infinity:
    """The point at infinity of the projective line; a singleton."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return isinstance(other, Infinity)

    def __hash__(self):
        return hash("circlelagrange.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, Infinity)

    def __gt__(self, other):
        return not isinstance(other, Infinity)

    def __ge__(self, other):
        return True


INF = Infinity()


class QuadTower:
    """The number ``base + coeff*sqrt(disc)`` with ``base, coeff`` in Q(sqrt 2).

    ``disc`` is squarefree and at least 3, or ``disc == 0`` and ``coeff == 0``
    when the value lies in Q(sqrt 2).  A radical ``sqrt(2m)`` equals
    ``sqrt(2)*sqrt(m)``, so towers with ``disc`` m and 2m combine freely.
    """

    __slots__ = ("base", "coeff", "disc")

    def __init__(self, base=0, coeff=0, disc: int = 0):
        base = ZRoot2.coerce(base)
        coeff = ZRoot2.coerce(coeff)
        disc = int(disc)
        if disc < 0:
            raise ValueError("negative discriminant")
        s, k = square_split(disc)
        if s == 0 or not coeff:
            coeff, k = ZERO2, 0
        else:
            coeff = coeff * s
            if k == 1:
                base, coeff, k = base + coeff, ZERO2, 0
            elif k == 2:
                base, coeff, k = base + coeff * SQRT2, ZERO2, 0
        self.base, self.coeff, self.disc = base, coeff, k

    @classmethod
    def _make(cls, base: ZRoot2, coeff: ZRoot2, disc: int) -> "QuadTower":
        out = object.__new__(cls)
        if not coeff:
            coeff, disc = ZERO2, 0
        out.base, out.coeff, out.disc = base, coeff, disc
        return out

    @staticmethod
    def coerce(v) -> "QuadTower":
        if isinstance(v, QuadTower):
            return v
        return QuadTower._make(ZRoot2.coerce(v), ZERO2, 0)

    @staticmethod
    def sqrt_of(r) -> "QuadTower":
        """Square root of a nonnegative rational, as a tower."""
        r = as_fraction(r)
        if r < 0:
            raise ValueError("square root of a negative rational")
        # sqrt(n/d) = sqrt(n*d)/d
        return QuadTower(0, Fraction(1, r.denominator), r.numerator * r.denominator)

    def odd_form(self) -> tuple[ZRoot2, ZRoot2, int]:
        """Canonical triple with an odd discriminant (used for hashing and equality)."""
        if self.disc % 2 == 0 and self.disc:
            return self.base, self.coeff * SQRT2, self.disc // 2
        return self.base, self.coeff, self.disc

    def is_rational(self) -> bool:
        return self.disc == 0 and self.base.irr == 0

    def in_base_field(self) -> bool:
        return self.disc == 0

    def as_zroot2(self) -> ZRoot2:
        if self.disc:
            raise ValueError("value is not in Q(sqrt 2)")
        return self.base

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("value is not rational")
        return self.base.rat

    # -- alignment
    @staticmethod
    def _align(x: "QuadTower", y: "QuadTower"):
        dx, dy = x.disc, y.disc
        if dx == dy or dy == 0:
            return x.base, x.coeff, y.base, y.coeff, dx
        if dx == 0:
            return x.base, x.coeff, y.base, y.coeff, dy
        if dx == 2 * dy:
            # c sqrt(m) = (c sqrt(2)/2) sqrt(2m)
            return x.base, x.coeff, y.base, y.coeff * SQRT2 / 2, dx
        if dy == 2 * dx:
            return x.base, x.coeff * SQRT2 / 2, y.base, y.coeff, dy
        raise IncompatibleDiscriminants(f"sqrt({dx}) and sqrt({dy})")

    def compatible(self, other) -> bool:
        o = QuadTower.coerce(other)
        a, b = self.disc, o.disc
        return a == 0 or b == 0 or a == b or a == 2 * b or b == 2 * a

    # -- field operations
    def __add__(self, other):
        if isinstance(other, Infinity):
            return NotImplemented
        o = QuadTower.coerce(other)
        xb, xc, yb, yc, d = QuadTower._align(self, o)
        return QuadTower._make(xb + yb, xc + yc, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadTower._make(-self.base, -self.coeff, self.disc)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, Infinity):
            return NotImplemented
        return self + (-QuadTower.coerce(other))

    def __rsub__(self, other):
        return QuadTower.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ZRoot2)):
            return QuadTower._make(self.base * other, self.coeff * other, self.disc)
        if not isinstance(other, QuadTower):
            return NotImplemented
        xb, xc, yb, yc, d = QuadTower._align(self, other)
        return QuadTower._make(xb * yb + xc * yc * d, xb * yc + xc * yb, d)

    __rmul__ = __mul__

    def conj(self) -> "QuadTower":
        """Galois conjugate over Q(sqrt 2): ``sqrt(disc) -> -sqrt(disc)``."""
        return QuadTower._make(self.base, -self.coeff, self.disc)

    def rel_norm(self) -> ZRoot2:
        """Relative norm ``base^2 - coeff^2 disc`` down to Q(sqrt 2)."""
        return self.base * self.base - self.coeff * self.coeff * self.disc

    def inverse(self) -> "QuadTower":
        n = self.rel_norm()
        if not n:
            raise ZeroDivisionError("QuadTower division by zero")
        ni = n.inverse()
        return QuadTower._make(self.base * ni, -self.coeff * ni, self.disc)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, ZRoot2)):
            inv = ZRoot2.coerce(other).inverse()
            return QuadTower._make(self.base * inv, self.coeff * inv, self.disc)
        if not isinstance(other, QuadTower):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QuadTower.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, sq = QuadTower.coerce(1), self
        while n:
            if n & 1:
                out = out * sq
            sq = sq * sq
            n >>= 1
        return out

    # -- order
    def sign(self) -> int:
        return tower_sign(self)

    def __bool__(self):
        return bool(self.base) or bool(self.coeff)

    def _cmp(self, other) -> int:
        if isinstance(other, Infinity):
            return -1
        return compare(self, other)

    def __eq__(self, other):
        if isinstance(other, Infinity):
            return False
        if not isinstance(other, (int, Fraction, ZRoot2, QuadTower)):
            return NotImplemented
        return self._cmp(other) == 0

    def __hash__(self):
        b, c, d = self.odd_form()
        if d == 0:
            return hash(b)
        return hash((b, c, d))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- numerics
    def to_interval(self, prec: int):
        """Rigorous mpmath interval enclosure at ``prec`` bits."""
        return tower_interval(self, prec)

    def to_mpf(self, dps: int = 50):
        return certified_mpf(self, dps)

    def __float__(self):
        return float(certified_mpf(self, 20))

    def __repr__(self):
        return f"QuadTower({self.base!r}, {self.coeff!r}, {self.disc})"

    def __str__(self):
        if self.disc == 0:
            return str(self.base)
        b = "" if not self.base else f"({self.base}) + "
        c, d = self.coeff, self.disc
        if c.rat == 0:
            c, d = ZRoot2(c.irr), 2 * d
        if c == 1:
            return f"{b}sqrt({d})"
        if c.irr == 0:
            return f"{b}{c}*sqrt({d})"
        return f"{b}({c})*sqrt({d})"

    def to_json(self) -> dict:
        out = self.base.to_json()
        out = {"base": out, "coeff": self.coeff.to_json(), "disc": str(self.disc)}
        return out

    @staticmethod
    def from_json(obj: dict) -> "QuadTower":
        return QuadTower(ZRoot2.from_json(obj["base"]), ZRoot2.from_json(obj["coeff"]),
                         int(obj["disc"]))


def tower_sign(x: QuadTower) -> int:
    """Exact sign of ``x`` by isolating the radical and squaring."""
    if isinstance(x, (int, Fraction)):
        return _sgn(x)
    if isinstance(x, ZRoot2):
        return x.sign()
    sb = x.base.sign()
    sc = x.coeff.sign()
    if sc == 0 or sb == sc:
        return sb
    if sb == 0:
        return sc
    # base and coeff*sqrt(d) have opposite signs; the larger square wins
    diff = (x.base * x.base - x.coeff * x.coeff * x.disc).sign()
    return sb * diff


_IV_LOCK = threading.RLock()


@contextmanager
def ivprec(prec: int):
    """Run interval code at ``prec`` bits; the mpmath interval context is global."""
    iv = mpmath.iv
    with _IV_LOCK:
        old = iv.prec
        iv.prec = prec
        try:
            yield iv
        finally:
            iv.prec = old


def endpoints(v):
    """Lower and upper endpoints of an mpmath interval as plain mpf values."""
    lo, hi = v._mpi_
    return mpmath.mp.make_mpf(lo), mpmath.mp.make_mpf(hi)


def tower_interval(x, prec: int):
    with ivprec(prec) as iv:
        def fr(r: Fraction):
            return iv.mpf(r.numerator) / iv.mpf(r.denominator)

        def zr(z: ZRoot2):
            return fr(z.rat) + fr(z.irr) * iv.sqrt(2)

        if isinstance(x, (int, Fraction)):
            return fr(as_fraction(x))
        if isinstance(x, ZRoot2):
            return zr(x)
        out = zr(x.base)
        if x.disc:
            out = out + zr(x.coeff) * iv.sqrt(x.disc)
        return out


def certified_mpf(x, dps: int):
    """Value of ``x`` to ``dps`` correct significant digits (interval-checked)."""
    if isinstance(x, QuadTower) and not x:
        return mpmath.mpf(0)
    prec = int(dps * 3.33) + 32
    tol = mpmath.mpf(10) ** (-dps)
    while True:
        a, b = endpoints(tower_interval(x, prec))
        with mpmath.workprec(prec):
            mid = (a + b) / 2
            width = b - a
            scale = max(abs(a), abs(b))
            if width <= tol * scale or (scale == 0):
                with mpmath.workdps(dps):
                    return +mid
        prec *= 2


def compare(x, y) -> int:
    """Exact three-way comparison of two finite numbers or towers.

    Compatible towers compare algebraically.  For radicals from unrelated
    extensions, equality forces both radical parts to vanish, and otherwise
    the difference is nonzero, so interval refinement terminates.
    """
    xq, yq = QuadTower.coerce(x), QuadTower.coerce(y)
    try:
        return tower_sign(xq - yq)
    except IncompatibleDiscriminants:
        pass
    prec = 128
    while True:
        with ivprec(prec):
            lo, hi = endpoints(tower_interval(xq, prec) - tower_interval(yq, prec))
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        prec *= 2


# ---------------------------------------------------------------------------
# matrices


class Mat2:
    """2x2 matrix ``[[p, pp], [q, qq]]`` over Q(sqrt 2)."""

    __slots__ = ("p", "pp", "q", "qq")

    def __init__(self, p, pp, q, qq):
        self.p = ZRoot2.coerce(p)
        self.pp = ZRoot2.coerce(pp)
        self.q = ZRoot2.coerce(q)
        self.qq = ZRoot2.coerce(qq)

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.p * o.p + self.pp * o.q, self.p * o.pp + self.pp * o.qq,
                    self.q * o.p + self.qq * o.q, self.q * o.pp + self.qq * o.qq)

    __mul__ = __matmul__

    def trace(self) -> ZRoot2:
        return self.p + self.qq

    def det(self) -> ZRoot2:
        return self.p * self.qq - self.pp * self.q

    def inverse(self) -> "Mat2":
        d = self.det()
        if not d:
            raise ZeroDivisionError("singular matrix")
        return Mat2(self.qq / d, -self.pp / d, -self.q / d, self.p / d)

    def act(self, t):
        """Fractional-linear action ``(p t + pp)/(q t + qq)`` on towers and INF."""
        if isinstance(t, Infinity):
            if not self.q:
                return INF
            return QuadTower.coerce(self.p / self.q)
        t = QuadTower.coerce(t)
        den = t * self.q + self.qq
        if not den:
            return INF
        return (t * self.p + self.pp) / den

    def rows(self) -> tuple[tuple[ZRoot2, ZRoot2], tuple[ZRoot2, ZRoot2]]:
        return (self.p, self.pp), (self.q, self.qq)

    def __eq__(self, o):
        if not isinstance(o, Mat2):
            return NotImplemented
        return self.rows() == o.rows()

    def __hash__(self):
        return hash(self.rows())

    def __repr__(self):
        return f"Mat2([[{self.p}, {self.pp}], [{self.q}, {self.qq}]])"

    def to_json(self) -> list:
        return [[e.to_json() for e in r] for r in self.rows()]


IDENTITY2 = Mat2(1, 0, 0, 1)
J = Mat2(0, 1, 1, 0)


def mat2_mul(a: Mat2, b: Mat2) -> Mat2:
    return a @ b


def mat2_trace(a: Mat2) -> ZRoot2:
    return a.trace()


def mat2_det(a: Mat2) -> ZRoot2:
    return a.det()


class Mat3:
    """3x3 matrix with integer entries."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(int(v) for v in r) for r in rows)
        if len(self.rows) != 3 or any(len(r) != 3 for r in self.rows):
            raise ValueError("Mat3 needs three rows of three entries")

    def __matmul__(self, o):
        if isinstance(o, Mat3):
            cols = list(zip(*o.rows))
            return Mat3([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])
        return self.apply(o)

    def apply(self, v):
        """Matrix times a column vector of any ring elements."""
        x, y, z = v
        return tuple(r[0] * x + r[1] * y + r[2] * z for r in self.rows)

    def __eq__(self, o):
        if not isinstance(o, Mat3):
            return NotImplemented
        return self.rows == o.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Mat3({[list(r) for r in self.rows]})"


IDENTITY3 = Mat3([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def lorentz_pairing(x, y):
    """The pairing ``x1 y1 + x2 y2 - x3 y3``."""
    return x[0] * y[0] + x[1] * y[1] - x[2] * y[2]
