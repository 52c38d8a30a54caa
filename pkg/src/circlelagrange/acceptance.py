"""The acceptance suite, shared by ``circlelagrange verify`` and the test suite.

Each check returns ``(passed, detail)``; ``run_criterion`` adds timing and
the runtime budget where one applies.
"""

from __future__ import annotations

import random
import re
import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import mpmath

from .cohn import cohn_matrix, fixed_point_coordinates, q_trace_identity_check
from .exactnum import QuadTower, compare, lorentz_pairing
from .markoff import (MarkoffTriple, enumerate_markoff, is_markoff, spectrum_below_2, tree_levels,
                      tree_triples, triple_from_christoffel)
from .oracle import (FORBIDDEN, admissible_periodic, estimate_by_cylinders, estimate_by_height,
                     forbidden_blocks, perron_check, value_certified)
from .romik import (H, M, ROOT_345, ROOT_435, U, CirclePoint, DigitWord, PythTriple, berggren_levels,
                    berggren_triples, cylinder_bounds, delta_squared, point_from_digits, romik_map, stereo_norm, treal)
from .words import as_christoffel, christoffel_tree, lower_christoffel_words, standard_factorization

# the first ten spectrum values: word, minimal period, kind, Markoff number, L^2, printed decimals
FIRST_TEN = (
    ("b", "2", "y", 1, Fraction(2), "1.414213562"),
    ("a", "31", "x", 1, Fraction(3), "1.732050808"),
    ("ab", "312132", "y", 3, Fraction(34, 9), "1.943650632"),
    ("abb", "3122", "x", 5, Fraction(99, 25), "1.989974874"),
    ("aab", "3131213132", "y", 11, Fraction(482, 121), "1.995863491"),
    ("abbb", "3122213222", "y", 17, Fraction(1154, 289), "1.998269147"),
    ("aaab", "31313121313132", "y", 41, Fraction(6722, 1681), "1.999702536"),
    ("abbbb", "312222", "x", 29, Fraction(3363, 841), "1.999702713"),
    ("ababb", "31213221323122", "y", 59, Fraction(13922, 3481), "1.999856358"),
    ("aabab", "31312132", "x", 65, Fraction(16899, 4225), "1.999940828"),
)

# the Markoff tree drawing, level by level, left to right: (x, y1, y2)
MARKOFF_DEPTH3 = (
    ((1, 3, 1),),
    ((5, 3, 1), (1, 11, 3)),
    ((5, 17, 1), (5, 3, 59), (65, 11, 3), (1, 41, 11)),
    ((29, 17, 1), (5, 17, 339), (349, 3, 59), (5, 1177, 59),
     (65, 769, 3), (65, 2857, 11), (901, 41, 11), (1, 41, 153)),
)

# the two Berggren trees, levels 1 and 2 in M1, M2, M3 order
BERGGREN_LEVELS = {
    (3, 4, 5): (((15, 8, 17), (21, 20, 29), (5, 12, 13)),
                ((35, 12, 37), (65, 72, 97), (33, 56, 65),
                 (77, 36, 85), (119, 120, 169), (39, 80, 89),
                 (45, 28, 53), (55, 48, 73), (7, 24, 25))),
    (4, 3, 5): (((12, 5, 13), (20, 21, 29), (8, 15, 17)),
                ((24, 7, 25), (48, 55, 73), (28, 45, 53),
                 (80, 39, 89), (120, 119, 169), (36, 77, 85),
                 (56, 33, 65), (72, 65, 97), (12, 35, 37))),
}


def first_ten_points() -> list[DigitWord]:
    return [DigitWord.periodic(tuple(int(c) for c in row[1])) for row in FIRST_TEN]


def _decimal_ulps(a: str, b: str) -> int:
    return abs(int(a.replace(".", "")) - int(b.replace(".", "")))


def check_top10():
    rows = spectrum_below_2(10)
    bad = []
    for rank, (e, (word, period, kind, m, l2, dec)) in enumerate(zip(rows, FIRST_TEN), 1):
        got_period = "".join(map(str, e.period.period))
        if (e.L_squared, e.markoff_number, e.kind, got_period) != (l2, m, kind, period):
            bad.append(f"row {rank}: got {e.L_squared} {e.kind}={e.markoff_number} {got_period}")
        elif _decimal_ulps(e.L_decimal(9), dec) > 1:
            bad.append(f"row {rank}: decimal {e.L_decimal(9)} vs {dec}")
    if len(rows) != 10:
        bad.append(f"{len(rows)} rows")
    return not bad, "; ".join(bad) or "10 rows exact"


def check_coordinates():
    half = Fraction(1, 2)
    expected = (
        ("2", QuadTower.sqrt_of(half), QuadTower.sqrt_of(half)),
        ("31", QuadTower.coerce(half), QuadTower.sqrt_of(Fraction(3, 4))),
        ("312132", QuadTower.sqrt_of(Fraction(9, 34)), QuadTower.sqrt_of(Fraction(25, 34))),
    )
    bad = []
    for period, x, y in expected:
        p = fixed_point_coordinates(tuple(int(c) for c in period))
        if compare(p.x, x) != 0 or compare(p.y, y) != 0:
            bad.append(f"[{period}] -> {p}")
            continue
        with mpmath.workdps(30):
            for got, want in ((p.x, x), (p.y, y)):
                if abs(value_certified(got, 25) - value_certified(want, 25)) > mpmath.mpf(10) ** -20:
                    bad.append(f"[{period}] decimals")
    return not bad, "; ".join(bad) or "3 points exact"


def check_trees():
    levels = tree_levels(enumerate_markoff(3))
    got = tuple(tuple(n.triple for n in lv) for lv in levels)
    want = tuple(tuple(MarkoffTriple(*t) for t in lv) for lv in MARKOFF_DEPTH3)
    ok_m = got == want and all(
        (n.triple.x, n.triple.y1, n.triple.y2) in {(t[0], t[1], t[2]), (t[0], t[2], t[1])}
        for lv, wl in zip(levels, MARKOFF_DEPTH3) for n, t in zip(lv, wl))
    ok_b = True
    count = 0
    for root in (ROOT_345, ROOT_435):
        lv = berggren_levels(root, 2)
        want_b = BERGGREN_LEVELS[root.vec()]
        for k in (1, 2):
            got_b = tuple(t.vec() for t in lv[k])
            count += len(got_b)
            ok_b &= got_b == want_b[k - 1]
    detail = f"Markoff levels {'match' if ok_m else 'differ'} (15 triples); Berggren {count} triples {'match' if ok_b else 'differ'}"
    return ok_m and ok_b and count == 24, detail


def check_markoff_equation():
    triples = tree_triples(enumerate_markoff(12))
    bad = [t for t in triples if not is_markoff(t.x, t.y1, t.y2)]
    distinct = len(set(triples))
    return not bad and distinct == len(triples) == 2 ** 13 - 1, f"{len(triples)} triples, {distinct} distinct, {len(bad)} failures"


def _phi_sum(n: int) -> int:
    return sum(1 for m in range(2, n + 1) for t in range(1, m) if gcd(t, m) == 1)


def check_cohn_identities():
    words = list(lower_christoffel_words(30, trivial=True))
    trace_ok = all(q_trace_identity_check(w) for w in words)
    expected = _phi_sum(30) + 2
    fricke = 0
    fricke_ok = True
    for w in lower_christoffel_words(20):
        u, v = standard_factorization(w)
        tu, tv, tw = (cohn_matrix(x).m.trace() for x in (u, v, w))
        fricke_ok &= tu * tu + tv * tv + tw * tw == tu * tv * tw
        fricke += 1
    ok = trace_ok and fricke_ok and len(words) == expected
    return ok, (f"trace/q identity on {len(words)} words (t+s<=30, incl. a and b): {trace_ok}; "
                f"Fricke on {fricke} factorizations (t+s<=20): {fricke_ok}")


def check_correspondence():
    from_words = set()
    for level in christoffel_tree(8):
        for u, v in level:
            from_words.add(triple_from_christoffel(as_christoffel(u + v)))
    from_tree = set(tree_triples(enumerate_markoff(8)))
    return from_words == from_tree, f"{len(from_words)} vs {len(from_tree)} triples"


def random_triples(n: int, max_c: int, seed: int = 2024) -> list[PythTriple]:
    """Distinct primitive triples from Euclid's parametrization, both orientations."""
    rng = random.Random(seed)
    out = {}
    while len(out) < n:
        m = rng.randrange(2, isqrt(max_c) + 1)
        k = rng.randrange(1, m)
        if (m - k) % 2 == 0 or gcd(m, k) != 1 or m * m + k * k > max_c:
            continue
        a, b, c = m * m - k * k, 2 * m * k, m * m + k * k
        if rng.random() < 0.5:
            a, b = b, a
        out[(a, b, c)] = PythTriple(a, b, c)
    return list(out.values())


def check_conjugacy():
    triples = random_triples(1000, 10 ** 5)
    conj_ok = all(stereo_norm(romik_map(p)) == treal(stereo_norm(p))
                  for p in map(CirclePoint.from_triple, triples))
    rng = random.Random(7)
    pairing_ok = True
    for _ in range(200):
        x = [rng.randrange(-10 ** 6, 10 ** 6) for _ in range(3)]
        y = [rng.randrange(-10 ** 6, 10 ** 6) for _ in range(3)]
        for d in (1, 2, 3):
            pairing_ok &= lorentz_pairing(M[d].apply(x), M[d].apply(y)) == lorentz_pairing(x, y)
    factor_ok = all(M[d] == H @ U[d] for d in (1, 2, 3))
    return conj_ok and pairing_ok and factor_ok, (
        f"conjugacy on {len(triples)} triples: {conj_ok}; pairing: {pairing_ok}; M_d = H U_d: {factor_ok}")


def check_oracles(threads: int = 1):
    worst_c = worst_h = mpmath.mpf(0)
    bad = []
    for row, p in zip(FIRST_TEN, first_ten_points()):
        c = estimate_by_cylinders(p, 60)
        h = estimate_by_height(p, 10 ** 5, threads=threads)
        worst_c, worst_h = max(worst_c, c.error), max(worst_h, h.error)
        if c.error >= mpmath.mpf("1e-6"):
            bad.append(f"{row[0]} cylinders {mpmath.nstr(c.error, 3)}")
        if h.error >= mpmath.mpf("1e-3"):
            bad.append(f"{row[0]} height {mpmath.nstr(h.error, 3)}")
    detail = f"max cylinder error {mpmath.nstr(worst_c, 3)}, max height error {mpmath.nstr(worst_h, 3)}"
    return not bad, "; ".join(bad + [detail])


def check_perron():
    bad = []
    worst = mpmath.mpf(0)
    for text in ("(31)", "(3122)", "(312132)"):
        r = perron_check(DigitWord.parse(text), 40, dps=50)
        worst = max(worst, r.residual)
        if r.residual >= mpmath.mpf("1e-30") or abs(r.epsilon - 1) >= mpmath.mpf("1e-6"):
            bad.append(f"{text}: residual {mpmath.nstr(r.residual, 3)}, eps-1 {mpmath.nstr(r.epsilon - 1, 3)}")
    return not bad, "; ".join(bad) or f"max residual {mpmath.nstr(worst, 3)}"


def family_samples(kmax: int = 5) -> list[tuple[str, str]]:
    """One periodic sequence per forbidden family and exponent, padded with 2's where needed."""
    out = [("33", "33"), ("11", "11"), ("232", "232"), ("212", "212")]
    for k in range(kmax + 1):
        out.append(("2(31)^k32", "2" + "31" * k + "32"))
        out.append(("2(13)^k12", "2" + "13" * k + "12"))
        out.append(("12^(2k+1)3", "1" + "2" * (2 * k + 1) + "3"))
        out.append(("32^(2k+1)1", "3" + "2" * (2 * k + 1) + "1"))
        out.append(("32^(2k)3", "3" + "2" * (2 * k) + "3"))
        out.append(("12^(2k)1", "1" + "2" * (2 * k) + "1"))
    return out


def _witness_valid(period: str, w: dict) -> bool:
    if w is None or w.get("kind") != "block":
        return False
    pat = dict(FORBIDDEN)[w["family"]]
    n = len(period)
    text = period * (2 + len(w["factor"]) // n + 1)
    return re.fullmatch(pat, w["factor"]) is not None and text.startswith(w["factor"], w["position"])


def check_forbidden():
    bad = []
    n = 0
    for family, seq in family_samples(5):
        n += 1
        res = admissible_periodic(seq)
        found = {b["family"] for b in forbidden_blocks(seq)}
        if res.status != "not_admissible" or not _witness_valid(seq, res.witness) or family not in found:
            bad.append(f"{family} in {seq}: {res.status} {res.witness}")
    for row in FIRST_TEN:
        res = admissible_periodic(row[1])
        if res.status != "strongly_admissible" or compare(res.L, 2) >= 0 or compare(res.L * res.L, row[4]) != 0:
            bad.append(f"{row[0]}: {res.status}")
    return not bad, "; ".join(bad) or f"{n} forbidden samples rejected; 10 periods strongly admissible"


def check_best_approximants():
    p = DigitWord.parse("(3122)")
    pt = point_from_digits(p)
    bounds = [delta_squared(pt, z) for k in range(26) for z in cylinder_bounds(p.prefix(k))]
    undominated = []
    count = 0
    for z in berggren_triples(200):
        count += 1
        d = delta_squared(pt, z)
        if not any(compare(b, d) <= 0 for b in bounds):
            undominated.append(str(z))
    return not undominated, f"{count} triples, undominated: {undominated or 'none'}"


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    check: object
    budget: float | None = None


CRITERIA = (
    Criterion(1, "top-10 spectrum table", check_top10, 1.0),
    Criterion(2, "fixed point coordinates", check_coordinates),
    Criterion(3, "Markoff and Berggren trees", check_trees),
    Criterion(4, "Markoff equation to depth 12", check_markoff_equation, 5.0),
    Criterion(5, "Cohn trace and Fricke identities", check_cohn_identities),
    Criterion(6, "Christoffel-Markoff correspondence", check_correspondence),
    Criterion(7, "conjugacy and orthogonality", check_conjugacy),
    Criterion(8, "oracle agreement", check_oracles, 60.0),
    Criterion(9, "Perron residual", check_perron),
    Criterion(10, "forbidden blocks", check_forbidden),
    Criterion(11, "best approximants", check_best_approximants),
)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.number:2d} {self.title}: {self.detail} ({self.seconds:.2f}s)"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "detail": self.detail, "seconds": f"{self.seconds:.3f}"}


def run_criterion(c: Criterion, threads: int = 1) -> CriterionResult:
    start = time.perf_counter()
    try:
        passed, detail = c.check(threads) if c.number == 8 else c.check()
    except Exception as exc:  # a crash is a failure, reported with its message
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if c.budget is not None and elapsed >= c.budget:
        passed, detail = False, f"{detail}; over the {c.budget:g}s budget"
    return CriterionResult(c.number, c.title, bool(passed), detail, elapsed)


def run_all(threads: int = 1) -> list[CriterionResult]:
    return [run_criterion(c, threads) for c in CRITERIA]
