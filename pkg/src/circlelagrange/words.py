"""Christoffel words, the orientation map, the digit substitution and word orders.

Words are plain strings.  Letter words use ``a`` and ``b``; oriented words
add ``A`` for the flipped letter a-vee.  Infinite words are eventually
periodic and stored as :class:`InfWord` (head, period).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator

from . import _periodic
from .exactnum import SQRT2, Infinity, compare
from .romik import DigitWord, digits_norm


class NotCoprime(ValueError):
    pass


class TrivialWord(ValueError):
    pass


AB = frozenset("ab")
ORIENTED = frozenset("abA")
_VEE = str.maketrans("aA", "Aa")
_PI = {"a": (3, 1), "b": (2,), "A": (1, 3)}


def parse_oriented(text: str) -> str:
    """Accept ``a∨``, ``a^`` or ``A`` for the flipped letter."""
    w = text.strip().replace("a∨", "A").replace("a^", "A")
    if not set(w) <= ORIENTED:
        raise ValueError(f"not an oriented word: {text!r}")
    return w


def check_ab(w: str) -> str:
    if not set(w) <= AB:
        raise ValueError(f"not a word over a, b: {w!r}")
    return w


def is_even(w: str) -> bool:
    return w.count("b") % 2 == 0


def parity(w: str) -> str:
    return "even" if is_even(w) else "odd"


def vee(w: str) -> str:
    return w.translate(_VEE)


def star(w: str) -> str:
    """Reversal."""
    return w[::-1]


def forget(w: str) -> str:
    """Drop orientation marks."""
    return w.replace("A", "a")


def conjugates(w: str) -> list[str]:
    """Rotations ``w[i:] + w[:i]`` for i = 0..|w|-1."""
    return [w[i:] + w[:i] for i in range(len(w))]


# ---------------------------------------------------------------------------
# Christoffel words


@dataclass(frozen=True)
class ChristoffelWord:
    word: str
    t: int
    s: int
    upper: bool = False

    @property
    def is_trivial(self) -> bool:
        return len(self.word) < 2

    @property
    def is_even(self) -> bool:
        return is_even(self.word)

    def __str__(self):
        return self.word

    def __len__(self):
        return len(self.word)


def christoffel(t: int, s: int, kind: str = "lower") -> ChristoffelWord:
    """Lattice-path word from (0,0) to (s,t); ``b`` is a vertical step."""
    if t < 0 or s < 0 or (t, s) == (0, 0) or gcd(t, s) != 1:
        raise NotCoprime(f"slope {t}/{s} is not a coprime pair")
    n = t + s
    lower = "".join("b" if ((k + 1) * t) // n > (k * t) // n else "a" for k in range(n))
    if kind == "lower":
        return ChristoffelWord(lower, t, s)
    if kind == "upper":
        return ChristoffelWord(lower[::-1], t, s, upper=True)
    raise ValueError(f"unknown kind {kind!r}")


def slope_of(w: str) -> tuple[int, int]:
    return w.count("b"), w.count("a")


def as_christoffel(w: str) -> ChristoffelWord:
    """Wrap a lower Christoffel word given as a string (checked)."""
    check_ab(w)
    t, s = slope_of(w)
    cw = christoffel(t, s)
    if cw.word != w:
        raise ValueError(f"{w!r} is not a lower Christoffel word")
    return cw


def _descend(t: int, s: int):
    """Walk the Christoffel tree toward slope t/s; yield (u, v) at each node."""
    u, v = ("a", 0, 1), ("b", 1, 0)
    while True:
        mt, ms = u[1] + v[1], u[2] + v[2]
        yield u, v
        if (mt, ms) == (t, s):
            return
        w = (u[0] + v[0], mt, ms)
        if t * ms < mt * s:
            v = w
        else:
            u = w


def christoffel_by_mediants(t: int, s: int) -> str:
    if (t, s) == (0, 1):
        return "a"
    if (t, s) == (1, 0):
        return "b"
    if gcd(t, s) != 1:
        raise NotCoprime(f"slope {t}/{s} is not a coprime pair")
    for u, v in _descend(t, s):
        pass
    return u[0] + v[0]


def standard_factorization(w: ChristoffelWord) -> tuple[ChristoffelWord, ChristoffelWord]:
    if w.is_trivial:
        raise TrivialWord(f"{w.word!r} has no standard factorization")
    if w.upper:
        raise ValueError("standard factorization needs a lower Christoffel word")
    for u, v in _descend(w.t, w.s):
        pass
    if u[0] + v[0] != w.word:
        raise AssertionError("mediant descent disagrees with the lattice path")
    return ChristoffelWord(u[0], u[1], u[2]), ChristoffelWord(v[0], v[1], v[2])


def christoffel_tree(depth: int) -> list[list[tuple[str, str]]]:
    """Levels of the Christoffel tree: node ``(u, v)`` has children ``(u, uv)`` and ``(uv, v)``."""
    levels = [[("a", "b")]]
    for _ in range(depth):
        nxt = []
        for u, v in levels[-1]:
            nxt.append((u, u + v))
            nxt.append((u + v, v))
        levels.append(nxt)
    return levels


def lower_christoffel_words(max_len: int, trivial: bool = False) -> Iterator[ChristoffelWord]:
    """All lower Christoffel words with t + s <= max_len, by length then slope."""
    if trivial:
        yield christoffel(1, 0)
        yield christoffel(0, 1)
    for n in range(2, max_len + 1):
        for t in range(1, n):
            if gcd(t, n) == 1:
                yield christoffel(t, n - t)


# ---------------------------------------------------------------------------
# orientation and substitution


def jmath(w: str) -> str:
    """Flip each ``a`` preceded by an odd number of ``b``'s."""
    out = []
    odd = False
    for ch in check_ab(w):
        if ch == "b":
            odd = not odd
            out.append("b")
        else:
            out.append("A" if odd else "a")
    return "".join(out)


def pi_subst(w: str) -> tuple[int, ...]:
    out: list[int] = []
    for ch in w:
        out.extend(_PI[ch])
    return tuple(out)


@dataclass(frozen=True)
class InfWord:
    """Eventually periodic one-sided infinite word over a, b, A."""

    head: str
    period: str

    def __post_init__(self):
        h, p = _periodic.canonical(self.head, self.period)
        object.__setattr__(self, "head", h)
        object.__setattr__(self, "period", p)

    @staticmethod
    def periodic(p: str) -> "InfWord":
        return InfWord("", p)

    def letter(self, i: int) -> str:
        return _periodic.letter_at(self.head, self.period, i)

    def prefix(self, n: int) -> str:
        return "".join(self.letter(i) for i in range(n))

    def vee(self) -> "InfWord":
        return InfWord(vee(self.head), vee(self.period))

    def forget(self) -> "InfWord":
        return InfWord(forget(self.head), forget(self.period))

    def prepend(self, w: str) -> "InfWord":
        return InfWord(w + self.head, self.period)

    def is_ab(self) -> bool:
        return "A" not in self.head and "A" not in self.period

    def __str__(self):
        return f"{self.head}({self.period})^inf"


def jmath_inf(e: InfWord) -> InfWord:
    """Orientation map on an eventually periodic letter word."""
    check_ab(e.head + e.period)
    jp = jmath(e.period)
    if not is_even(e.period):
        jp = jp + vee(jp)
    tail = InfWord("", jp)
    if not is_even(e.head):
        tail = tail.vee()
    return InfWord(jmath(e.head) + tail.head, tail.period)


def pi_inf(e: InfWord) -> DigitWord:
    return DigitWord(pi_subst(e.head), pi_subst(e.period))


def E_of(w: str) -> InfWord:
    """``jmath(w^inf)``."""
    return jmath_inf(InfWord.periodic(w))


def minimal_period(w) -> DigitWord:
    """Digit period of the point attached to a Christoffel word (even: jmath(w), odd: jmath(w) jmath(w)-vee)."""
    w = w.word if isinstance(w, ChristoffelWord) else check_ab(w)
    j = jmath(w)
    full = j if is_even(w) else j + vee(j)
    return DigitWord.periodic(pi_subst(full))


# ---------------------------------------------------------------------------
# forbidden factors


def check_oriented(w: str, cyclic: bool = False) -> tuple[bool, tuple[int, str] | None]:
    """Scan for ``ab^{2k}A, Ab^{2k}a, ab^{2k+1}a, Ab^{2k+1}A``.

    Returns ``(True, None)`` or ``(False, (position, factor))`` for the first
    offending factor.  With ``cyclic`` the word is read as a period.
    """
    n = len(w)
    text = w + w if cyclic else w
    starts = range(n) if cyclic else range(len(text))
    for i in starts:
        x = text[i]
        if x == "b":
            continue
        j = i + 1
        while j < len(text) and text[j] == "b":
            j += 1
        if j >= len(text) or (cyclic and j - i > n):
            continue
        k = j - i - 1
        y = text[j]
        if (x == y) == (k % 2 == 1):
            return False, (i, text[i:j + 1])
    return True, None


def is_oriented(w: str, cyclic: bool = False) -> bool:
    return check_oriented(w, cyclic)[0]


# ---------------------------------------------------------------------------
# orders


def norm_of(e: InfWord):
    return digits_norm(pi_inf(e))


def _cmp_ext(x, y) -> int:
    xi, yi = isinstance(x, Infinity), isinstance(y, Infinity)
    if xi or yi:
        return (xi and not yi) - (yi and not xi)
    return compare(x, y)


def word_compare(e1: InfWord, e2: InfWord, kind: str = "auto") -> int:
    """-1, 0, 1 for e1 before, equal to, after e2.

    Letter words compare lexicographically with a before b; oriented words
    compare by the reversed order of the norms of their digit images.
    """
    if kind == "auto":
        kind = "ab" if e1.is_ab() and e2.is_ab() else "oriented"
    if kind == "ab":
        n = max(len(e1.head), len(e2.head)) + len(e1.period) + len(e2.period)
        a, b = e1.prefix(n), e2.prefix(n)
        return (a > b) - (a < b)
    if kind == "oriented":
        if e1 == e2:
            return 0
        return -_cmp_ext(norm_of(e1), norm_of(e2))
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# sections of B(w)


@dataclass(frozen=True)
class Section:
    """``left* | right``: ``left`` is read leftwards from the bar."""

    conjugate: str
    left: InfWord
    right: InfWord
    source: str  # "B" or "B-vee"

    def vee(self) -> "Section":
        other = "B" if self.source == "B-vee" else "B-vee"
        return Section(self.conjugate, self.left.vee(), self.right.vee(), other)

    def value(self):
        """``(||Pi(left-vee)|| + ||Pi(right)||)/sqrt2``."""
        return (norm_of(self.left.vee()) + norm_of(self.right)) / SQRT2

    def __str__(self):
        left = self.left.period[::-1] + self.left.head[::-1]
        return f"...{left}|{self.right.head}{self.right.period}..."


def build_Bw_sections(w) -> list[Section]:
    """All sections of B(w) and of its vee-image, one pair per conjugate of w.

    For ``w = w1 w2`` with conjugate ``w' = w2 w1`` the section of B(w) is
    ``E(w'*)*|E(w')`` when ``w1`` is even and its vee-image when odd.
    """
    w = w.word if isinstance(w, ChristoffelWord) else check_ab(w)
    if not w:
        raise ValueError("empty word")
    out = []
    for i in range(len(w)):
        wp = w[i:] + w[:i]
        sec = Section(wp, E_of(star(wp)), E_of(wp), "B")
        if not is_even(w[:i]):
            sec = sec.vee()
        for cand in (sec, sec.vee()):
            if all((cand.left, cand.right) != (o.left, o.right) for o in out):
                out.append(cand)
    return out
