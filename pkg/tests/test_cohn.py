import itertools
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from circlelagrange.cohn import (A, A_VEE, B, EmptyWord, NonIntegralTrace, cohn_matrix, digit_matrix,
                                 fixed_point_coordinates, lagrange_of_christoffel, lagrange_periodic,
                                 markoff_number, q_trace_identity_check, sqrt_decimal, sqrt_text)
from circlelagrange.exactnum import SQRT2, Mat2, QuadTower, ZRoot2
from circlelagrange.romik import DigitWord, orbit_digits
from circlelagrange.words import christoffel, is_even, minimal_period, standard_factorization


def slopes(max_sum):
    for n in range(2, max_sum + 1):
        for t in range(1, n):
            if gcd(t, n) == 1:
                yield t, n - t


def christoffel_words(max_sum):
    return [christoffel(t, s).word for t, s in slopes(max_sum)]


def test_generators():
    assert A == Mat2(3, SQRT2, SQRT2, 1)
    assert B == Mat2(SQRT2, 1, 1, SQRT2)
    assert A_VEE == Mat2(1, SQRT2, SQRT2, 3)
    assert A.det() == 1 and B.det() == 1


def test_cohn_examples():
    assert cohn_matrix("a").m == A
    assert cohn_matrix("b").m == B
    assert cohn_matrix("ab").m == Mat2(4 * SQRT2, 5, 3, 2 * SQRT2)
    assert cohn_matrix("abb").m == Mat2(13, 9 * SQRT2, 5 * SQRT2, 7)
    with pytest.raises(EmptyWord):
        cohn_matrix("")


def test_digit_matrix_examples():
    assert digit_matrix("abb") == Mat2(13, 9 * SQRT2, 5 * SQRT2, 7)
    assert digit_matrix("ab") == Mat2(5, 4 * SQRT2, 2 * SQRT2, 3)
    assert digit_matrix("b") == Mat2(1, SQRT2, SQRT2, 1)


@pytest.mark.parametrize("w,m", [("a", 1), ("b", 1), ("ab", 3), ("abb", 5), ("aab", 11), ("abbb", 17),
                                 ("aabab", 65), ("ababb", 59)])
def test_markoff_number_examples(w, m):
    assert markoff_number(w) == m


def test_markoff_number_rejects_non_christoffel_words():
    # baab is a conjugate but the trace of a non-Cohn word need not be integral
    with pytest.raises(NonIntegralTrace):
        markoff_number("aabb")


def test_q_trace_identity_examples():
    assert q_trace_identity_check("ab")
    assert q_trace_identity_check("abb")
    assert not q_trace_identity_check("ba")


def test_determinant_and_parity_of_words():
    for n in range(1, 13):
        for t in itertools.product("ab", repeat=n):
            w = "".join(t)
            m = cohn_matrix(w).m
            assert m.det() == 1
            tr = m.trace()
            # even words have traces in Z, odd words in sqrt2 Z
            if is_even(w):
                assert tr.irr == 0
            else:
                assert tr.rat == 0


@pytest.mark.parametrize("t,s", list(slopes(16)))
def test_commutator_and_fricke(t, s):
    w = christoffel(t, s)
    u, v = standard_factorization(w)
    mu, mv = cohn_matrix(u.word).m, cohn_matrix(v.word).m
    mw = mu @ mv
    assert (mu @ mv @ mu.inverse() @ mv.inverse()).trace() == -2
    tu, tv, tw = mu.trace(), mv.trace(), mw.trace()
    assert tu * tu + tv * tv + tw * tw == tu * tv * tw


@pytest.mark.parametrize("t,s", list(slopes(20)))
def test_q_entry_and_trace_identity(t, s):
    w = christoffel(t, s).word
    m = markoff_number(w)
    cm = cohn_matrix(w).m
    assert cm.q == (m * SQRT2 if is_even(w) else ZRoot2(m))
    assert q_trace_identity_check(w)


@pytest.mark.parametrize("t,s", list(slopes(20)))
def test_two_routes_to_lagrange(t, s):
    w = christoffel(t, s).word
    entry = lagrange_of_christoffel(w)
    assert lagrange_periodic(minimal_period(w)) == entry.L_tower()


def test_lagrange_examples():
    assert lagrange_of_christoffel("b").L_text() == "sqrt(2)"
    assert lagrange_of_christoffel("a").L_text() == "sqrt(3)"
    assert lagrange_of_christoffel("aabab").L_text() == "sqrt(16899)/65"
    assert lagrange_periodic([2]) == SQRT2
    assert lagrange_periodic([3, 1]) == QuadTower.sqrt_of(3)
    assert lagrange_periodic(DigitWord.parse("312132")) == QuadTower.sqrt_of(34) / 3


def test_spectrum_entry_fields():
    e = lagrange_of_christoffel("abb")
    assert (e.kind, e.parity, e.markoff_number) == ("x", "even", 5)
    assert e.L_squared == 4 - Fraction(1, 25)
    assert e.period_text() == "3122"
    assert e.to_json()["L_text"] == "3*sqrt(11)/5"
    e = lagrange_of_christoffel("ab")
    assert e.kind == "y" and e.q == 3
    assert e.L_decimal() == "1.943650632"


def test_sqrt_text_and_decimal():
    assert sqrt_text(Fraction(34, 9)) == "sqrt(34)/3"
    assert sqrt_text(Fraction(99, 25)) == "3*sqrt(11)/5"
    assert sqrt_text(Fraction(4)) == "2"
    assert sqrt_decimal(Fraction(2), 9) == "1.414213562"
    assert sqrt_decimal(Fraction(1, 4), 3) == "0.500"
    assert sqrt_decimal(Fraction(9), 0) == "3"


@pytest.mark.parametrize("t,s", list(slopes(12)))
def test_fixed_point_coordinates(t, s):
    period = minimal_period(christoffel(t, s).word)
    p = fixed_point_coordinates(period)
    assert p.x * p.x + p.y * p.y == 1
    n = len(period.period)
    assert orbit_digits(p, max(20, n)) == period.prefix(max(20, n))


@given(st.lists(st.sampled_from([1, 2, 3]), min_size=1, max_size=6).filter(lambda p: set(p) not in ({1}, {3})))
def test_fixed_point_lies_on_circle(period):
    p = fixed_point_coordinates(period)
    assert p.x * p.x + p.y * p.y == 1
