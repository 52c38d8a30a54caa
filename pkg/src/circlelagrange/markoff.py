"""The Markoff tree of ``2x^2 + y1^2 + y2^2 = 4 x y1 y2`` and the spectrum below 2.

Tree nodes carry the pair ``(u, v)`` of lower Christoffel words whose
product ``w = uv`` introduces the node's new number.  The numbers
themselves are produced by Vieta moves on the equation alone, so the
correspondence with Cohn traces stays an independent check.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction

from .cohn import SpectrumEntry, markoff_number, spectrum_entry
from .words import ChristoffelWord, TrivialWord, is_even, standard_factorization


class InvalidTriple(ValueError):
    pass


def is_markoff(x: int, y1: int, y2: int) -> bool:
    return min(x, y1, y2) > 0 and 2 * x * x + y1 * y1 + y2 * y2 == 4 * x * y1 * y2


@dataclass(frozen=True, eq=False)
class MarkoffTriple:
    """``(x; y1, y2)``; the two y's are unordered."""

    x: int
    y1: int
    y2: int

    def __post_init__(self):
        if not is_markoff(self.x, self.y1, self.y2):
            raise InvalidTriple(f"({self.x};{self.y1},{self.y2}) is not a Markoff triple")

    def key(self) -> tuple[int, int, int]:
        return self.x, max(self.y1, self.y2), min(self.y1, self.y2)

    def __eq__(self, o):
        if not isinstance(o, MarkoffTriple):
            return NotImplemented
        return self.key() == o.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, o):
        return self.key() < o.key()

    def is_singular(self) -> bool:
        return self.key() == (1, 1, 1)

    def __str__(self):
        return f"({self.x};{self.y1},{self.y2})"

    def to_json(self) -> dict:
        return {"x": str(self.x), "y1": str(self.y1), "y2": str(self.y2)}


SINGULAR = MarkoffTriple(1, 1, 1)
ROOT = MarkoffTriple(1, 3, 1)


def markoff_children(t: MarkoffTriple) -> tuple[MarkoffTriple, MarkoffTriple, MarkoffTriple]:
    """The three neighbours: replace x, replace y1, replace y2."""
    x, y1, y2 = t.x, t.y1, t.y2
    return (MarkoffTriple(2 * y1 * y2 - x, y1, y2),
            MarkoffTriple(x, 4 * x * y2 - y1, y2),
            MarkoffTriple(x, y1, 4 * x * y1 - y2))


def _ordered(x: int, ya: int, yb: int) -> MarkoffTriple:
    return MarkoffTriple(x, max(ya, yb), min(ya, yb))


def _replace(vals: dict[str, int], even: str, drop: str) -> int:
    """Other root of the equation in the slot ``drop``; ``even`` names the x slot."""
    others = [vals[k] for k in vals if k != drop]
    if drop == even:
        return 2 * others[0] * others[1] - vals[drop]
    x = vals[even]
    y_other = [vals[k] for k in vals if k not in (drop, even)][0]
    return 4 * x * y_other - vals[drop]


@dataclass(eq=False)
class MarkoffNode:
    triple: MarkoffTriple
    u: str
    v: str
    mu: int
    mv: int
    mw: int
    children: list["MarkoffNode"] = field(default_factory=list)

    @property
    def word(self) -> str:
        return self.u + self.v

    @property
    def new_value(self) -> int:
        return self.mw

    def spawn(self) -> tuple["MarkoffNode", "MarkoffNode"]:
        """The two children in the left-to-right order of the usual drawing.

        The child replacing x goes left when it is a child at all; when x is
        this node's new number, the child replacing the larger y goes left.
        """
        u, v, w = self.u, self.v, self.word
        vals = {"u": self.mu, "v": self.mv, "w": self.mw}
        even = next(k for k, s in (("u", u), ("v", v), ("w", w)) if is_even(s))
        top = max(vals.values())
        m_u = _replace(vals, even, "u")
        m_v = _replace(vals, even, "v")
        if m_u <= top or m_v <= top:
            raise AssertionError(f"Markoff numbers failed to grow below {self.triple}")
        kids = []
        # Christoffel children: (uv, v) drops m(u), (u, uv) drops m(v)
        for uu, vv, mu, mv, mw in ((w, v, self.mw, self.mv, m_u),
                                   (u, w, self.mu, self.mw, m_v)):
            ww = uu + vv
            trip = ((uu, mu), (vv, mv), (ww, mw))
            xs = [m for s, m in trip if is_even(s)]
            ys = [m for s, m in trip if not is_even(s)]
            kids.append(MarkoffNode(_ordered(xs[0], *ys), uu, vv, mu, mv, mw))
        if even == "v" or (even == "w" and self.mv > self.mu):
            kids.reverse()
        return kids[0], kids[1]


def root_node() -> MarkoffNode:
    return MarkoffNode(ROOT, "a", "b", 1, 1, 3)


def enumerate_markoff(depth: int) -> MarkoffNode:
    """Binary tree rooted at (1;3,1), ``depth`` levels below the root."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    root = root_node()
    layer = [root]
    for _ in range(depth):
        nxt = []
        for node in layer:
            node.children = list(node.spawn())
            nxt.extend(node.children)
        layer = nxt
    return root


def tree_levels(root: MarkoffNode) -> list[list[MarkoffNode]]:
    levels = [[root]]
    while True:
        nxt = [c for n in levels[-1] for c in n.children]
        if not nxt:
            return levels
        levels.append(nxt)


def tree_triples(root: MarkoffNode) -> list[MarkoffTriple]:
    return [n.triple for level in tree_levels(root) for n in level]


def markoff_sets(depth: int) -> tuple[list[int], list[int]]:
    """Sorted x values and max-y values over the singular triple and the tree to ``depth``."""
    triples = [SINGULAR] + tree_triples(enumerate_markoff(depth))
    xs = sorted({t.x for t in triples})
    ys = sorted({max(t.y1, t.y2) for t in triples})
    return xs, ys


def triple_from_christoffel(w) -> MarkoffTriple:
    """``(m(u), m(v), m(w))`` for the standard factorization ``w = uv``."""
    if not isinstance(w, ChristoffelWord):
        from .words import as_christoffel
        w = as_christoffel(w)
    if w.is_trivial:
        raise TrivialWord(f"{w.word!r} is trivial")
    u, v = standard_factorization(w)
    words = (u.word, v.word, w.word)
    ms = [markoff_number(s) for s in words]
    xs = [m for s, m in zip(words, ms) if is_even(s)]
    ys = [m for s, m in zip(words, ms) if not is_even(s)]
    if len(xs) != 1:
        raise AssertionError(f"standard factorization of {w.word} has {len(xs)} even words")
    return _ordered(xs[0], *ys)


def _lower_bound(m: int) -> Fraction:
    # smallest L^2 any number >= m can produce (y-type is the smaller)
    return 4 - Fraction(2, m * m)


def spectrum_below_2(n: int) -> list[SpectrumEntry]:
    """The ``n`` smallest Lagrange values below 2, in increasing order.

    Best-first search: every number in a subtree is at least the subtree
    root's new number, so ``4 - 2/m^2`` bounds all values still unexplored,
    and an entry is released once it lies below every open bound.
    """
    if n < 1:
        raise ValueError("n must be positive")
    ready: list[tuple[Fraction, str, int]] = []
    for e in (spectrum_entry("b", 1), spectrum_entry("a", 1)):
        heapq.heappush(ready, (e.L_squared, e.word, e.markoff_number))
    frontier: list[tuple[Fraction, int, MarkoffNode]] = []
    tick = 0
    heapq.heappush(frontier, (_lower_bound(3), tick, root_node()))
    out: list[SpectrumEntry] = []
    seen: set[tuple[str, int]] = set()
    while len(out) < n:
        bound = frontier[0][0]
        while ready and ready[0][0] <= bound and len(out) < n:
            l2, word, m = heapq.heappop(ready)
            kind = "x" if is_even(word) else "y"
            if (kind, m) in seen:
                continue
            seen.add((kind, m))
            out.append(spectrum_entry(word, m))
        if len(out) >= n:
            break
        _, _, node = heapq.heappop(frontier)
        e = spectrum_entry(node.word, node.new_value)
        heapq.heappush(ready, (e.L_squared, e.word, e.markoff_number))
        for child in node.spawn():
            tick += 1
            heapq.heappush(frontier, (_lower_bound(child.new_value), tick, child))
    return out
