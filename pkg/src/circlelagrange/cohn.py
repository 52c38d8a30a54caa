"""Cohn matrices over Z[sqrt 2], Markoff numbers of words and exact Lagrange values."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .exactnum import SQRT2, J, Mat2, QuadTower, ZRoot2, square_split
from .romik import N1, N2, N3, CirclePoint, DigitWord, attracting_fixed_point, nd_product, point_from_norm
from .words import ChristoffelWord, check_ab, is_even, jmath, minimal_period, pi_subst


class EmptyWord(ValueError):
    pass


class NonIntegralTrace(ArithmeticError):
    pass


A = N3 @ N1
A_VEE = N1 @ N3
B = N2 @ J
_LETTER = {"a": A, "b": B}


@dataclass(frozen=True)
class CohnMatrix:
    m: Mat2
    source: str


def _word(w) -> str:
    w = w.word if isinstance(w, ChristoffelWord) else w
    if not w:
        raise EmptyWord("empty word")
    return check_ab(w)


def cohn_matrix(w) -> CohnMatrix:
    w = _word(w)
    out = Mat2(1, 0, 0, 1)
    for ch in w:
        out = out @ _LETTER[ch]
    return CohnMatrix(out, w)


def digit_matrix(w) -> Mat2:
    """Product of the digit matrices along ``Pi(jmath(w))``."""
    return nd_product(pi_subst(jmath(_word(w))))


def markoff_number(w) -> int:
    """``Tr N(w)/4`` for even w, ``Tr N(w)/(2 sqrt2)`` for odd w."""
    w = _word(w)
    tr = cohn_matrix(w).m.trace()
    m = tr / 4 if is_even(w) else tr / (2 * SQRT2)
    if not m.is_integer() or m.rat <= 0:
        raise NonIntegralTrace(f"trace {tr} of N({w}) gives {m}")
    return int(m.rat)


def q_trace_identity_check(w) -> bool:
    """Lower-left entry of N(w) equals ``Tr N(w)/(2 sqrt2)``."""
    m = cohn_matrix(w).m
    return m.q == m.trace() / (2 * SQRT2)


# ---------------------------------------------------------------------------
# spectrum entries


def sqrt_text(r: Fraction) -> str:
    """``sqrt(r)`` as ``u*sqrt(k)/v`` with k squarefree."""
    n, d = r.numerator, r.denominator
    s, k = square_split(n * d)
    coef = Fraction(s, d)
    if k == 1:
        return str(coef)
    u, v = coef.numerator, coef.denominator
    head = "" if u == 1 else f"{u}*"
    tail = "" if v == 1 else f"/{v}"
    return f"{head}sqrt({k}){tail}"


def sqrt_decimal(r: Fraction, places: int = 9) -> str:
    """``sqrt(r)`` rounded half-even to ``places`` decimals, exactly.

    The integer square root of ``r * 10^(2(places+1))`` fixes the guard digit;
    a tie needs the root to terminate there, which the remainder check decides.
    """
    if r < 0:
        raise ValueError("negative radicand")
    scale = 10 ** (places + 1)
    n, d = r.numerator * scale * scale, r.denominator
    root = isqrt(n // d)
    exact = root * root * d == n
    q, guard = divmod(root, 10)
    if guard > 5 or (guard == 5 and not exact) or (guard == 5 and exact and q % 2 == 1):
        q += 1
    if places == 0:
        return str(q)
    digits = str(q).rjust(places + 1, "0")
    return f"{digits[:-places]}.{digits[-places:]}"


@dataclass(frozen=True)
class SpectrumEntry:
    L_squared: Fraction
    markoff_number: int
    kind: str  # "x" for even words, "y" for odd
    word: str
    period: DigitWord

    @property
    def parity(self) -> str:
        return "even" if self.kind == "x" else "odd"

    @property
    def q(self) -> ZRoot2:
        """Lower-left Cohn entry: sqrt2*m for even words, m for odd."""
        return self.markoff_number * SQRT2 if self.kind == "x" else ZRoot2(self.markoff_number)

    def L_text(self) -> str:
        return sqrt_text(self.L_squared)

    def L_decimal(self, places: int = 9) -> str:
        return sqrt_decimal(self.L_squared, places)

    def L_tower(self) -> QuadTower:
        return QuadTower.sqrt_of(self.L_squared)

    def period_text(self) -> str:
        return "".join(map(str, self.period.period))

    def to_json(self, places: int = 9) -> dict:
        return {
            "word": self.word,
            "parity": self.parity,
            "kind": self.kind,
            "markoff_number": str(self.markoff_number),
            "q": self.q.to_json(),
            "L_squared": {"num": str(self.L_squared.numerator), "den": str(self.L_squared.denominator)},
            "L_text": self.L_text(),
            "L_decimal": self.L_decimal(places),
            "minimal_period": self.period_text(),
        }


def spectrum_entry(w: str, m: int) -> SpectrumEntry:
    if is_even(w):
        return SpectrumEntry(4 - Fraction(1, m * m), m, "x", w, minimal_period(w))
    return SpectrumEntry(4 - Fraction(2, m * m), m, "y", w, minimal_period(w))


def lagrange_of_christoffel(w) -> SpectrumEntry:
    """Exact Lagrange value of the point attached to a lower Christoffel word."""
    w = _word(w)
    cm = cohn_matrix(w).m
    m = markoff_number(w)
    expected_q = m * SQRT2 if is_even(w) else ZRoot2(m)
    if len(w) >= 2 and cm.q != expected_q:
        raise AssertionError(f"q of N({w}) is {cm.q}, expected {expected_q}")
    return spectrum_entry(w, m)


def lagrange_periodic(period) -> QuadTower:
    """``sqrt(Tr^2 - 4 det)/(sqrt2 q)`` for the digit product of one period."""
    digits = period.period if isinstance(period, DigitWord) else tuple(period)
    if not digits:
        raise ValueError("empty period")
    m = nd_product(digits)
    delta = m.trace() ** 2 - 4 * m.det()
    if not delta.is_integer():
        raise ValueError("discriminant outside Z")
    return QuadTower(0, 1, int(delta.rat)) / (SQRT2 * m.q)


def fixed_point_coordinates(period) -> CirclePoint:
    digits = period.period if isinstance(period, DigitWord) else tuple(period)
    return point_from_norm(attracting_fixed_point(nd_product(digits)))
