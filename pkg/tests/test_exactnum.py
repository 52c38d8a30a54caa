import json
import random
import threading
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from circlelagrange.exactnum import (INF, IDENTITY2, IDENTITY3, SQRT2, IncompatibleDiscriminants, Mat2, QuadTower,
                                     ZRoot2, certified_mpf, compare, endpoints, lorentz_pairing, square_split,
                                     tower_interval, tower_sign)
from circlelagrange.romik import H, M, N1, N2, N3, U

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=40)
zroot2s = st.builds(ZRoot2, fractions, fractions)
discs = st.sampled_from([0, 3, 5, 6, 7, 10, 11, 13, 17, 34])
towers = st.builds(QuadTower, zroot2s, zroot2s, discs)


# ---------------------------------------------------------------------------
# Z[sqrt 2] / Q(sqrt 2)


@given(zroot2s, zroot2s, zroot2s)
def test_zroot2_commutative_ring(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(fractions, fractions)
def test_zroot2_norm(a, b):
    x = ZRoot2(a, b)
    assert x * x.conj() == ZRoot2(a * a - 2 * b * b)
    assert x.norm() == a * a - 2 * b * b


@given(zroot2s)
def test_zroot2_inverse(x):
    if x:
        assert x * x.inverse() == 1
        assert x / x == 1


@given(zroot2s, zroot2s)
def test_zroot2_order_matches_floats(a, b):
    fa, fb = float(a), float(b)
    if abs(fa - fb) > 1e-9:
        assert (a < b) == (fa < fb)


def test_zroot2_basics():
    assert SQRT2 * SQRT2 == 2
    assert hash(ZRoot2(Fraction(3, 4))) == hash(Fraction(3, 4))
    assert ZRoot2(1, 1) ** 2 == ZRoot2(3, 2)
    assert ZRoot2(1, 1) ** -1 == ZRoot2(-1, 1)
    assert (SQRT2 / 2).in_sqrt2_z() is False
    assert (3 * SQRT2).in_sqrt2_z()
    assert ZRoot2(4).is_integer()


@given(zroot2s)
def test_zroot2_json_round_trip(x):
    assert ZRoot2.from_json(json.loads(json.dumps(x.to_json()))) == x


# ---------------------------------------------------------------------------
# towers


@pytest.mark.parametrize("n,expected", [(4896, (12, 34)), (12, (2, 3)), (1, (1, 1)), (49, (7, 1)),
                                        (2 * 3 * 5 * 7, (1, 210)), (10 ** 12, (10 ** 6, 1)),
                                        (999983 ** 2 * 6, (999983, 6))])
def test_square_split(n, expected):
    assert square_split(n) == expected


@given(st.integers(1, 10 ** 6))
def test_square_split_property(n):
    s, k = square_split(n)
    assert s * s * k == n
    assert all(k % (p * p) for p in range(2, int(k ** 0.5) + 2))


def test_normalization_scales_coefficient():
    t = QuadTower(0, 1, 4896)
    assert (t.coeff, t.disc) == (ZRoot2(12), 34)
    assert QuadTower(1, 1, 4).disc == 0 and QuadTower(1, 1, 4).base == 3
    assert QuadTower(0, 1, 8) == 2 * SQRT2


@given(towers)
def test_normalization_idempotent(t):
    again = QuadTower(t.base, t.coeff, t.disc)
    assert (again.base, again.coeff, again.disc) == (t.base, t.coeff, t.disc)


def test_fixed_point_sum_example():
    s3 = QuadTower.sqrt_of(3)
    x = (1 + s3) / SQRT2
    y = (-1 + s3) / SQRT2
    assert x + y == QuadTower.sqrt_of(6)
    assert tower_sign(x - y) == 1
    assert x - y == SQRT2


def test_sign_examples():
    assert tower_sign(QuadTower(0, 0, 34)) == 0
    assert tower_sign(SQRT2 - 1 / SQRT2) == 1
    assert tower_sign(QuadTower(3, -1, 10)) == -1
    assert tower_sign(QuadTower(-3, 1, 10)) == 1


@given(towers, towers)
def test_tower_field_axioms(a, b):
    if not a.compatible(b):
        with pytest.raises(IncompatibleDiscriminants):
            a + b
        return
    assert a + b == b + a
    assert a * b == b * a
    if b:
        assert (a / b) * b == a


@given(towers)
def test_conjugate_and_relative_norm(t):
    assert t * t.conj() == QuadTower.coerce(t.rel_norm())
    if t:
        assert t * t.inverse() == 1


def test_tower_sign_agrees_with_intervals():
    rng = random.Random(12345)
    checked = 0
    for _ in range(10 ** 4):
        def rz():
            return ZRoot2(Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 1000)),
                          Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 1000)))
        t = QuadTower(rz(), rz(), rng.choice([3, 5, 7, 11, 13, 34, 577, 1154]))
        lo, hi = endpoints(tower_interval(t, 170))  # >= 50 digits
        if lo > 0:
            assert tower_sign(t) == 1
        elif hi < 0:
            assert tower_sign(t) == -1
        else:
            assert tower_sign(t) == 0
        checked += 1
    assert checked == 10 ** 4


def test_near_cancellation_sign():
    # 99^2 - 2*70^2 = 1: 99 - 70 sqrt2 is tiny but positive
    assert ZRoot2(99, -70).sign() == 1
    assert tower_sign(QuadTower(ZRoot2(0, 18), -1, 161)) == 1  # 18 sqrt2 = sqrt648 > sqrt161


def test_compare_incompatible_towers():
    a = QuadTower.sqrt_of(3)
    b = QuadTower.sqrt_of(5)
    assert compare(a, b) == -1
    assert compare(b, a) == 1
    assert compare(a, QuadTower(0, 1, 12) / 2) == 0
    assert compare(a * a, b - b + 3) == 0
    assert compare(QuadTower.sqrt_of(Fraction(34, 9)), 2) == -1


@given(towers)
def test_tower_json_round_trip(t):
    back = QuadTower.from_json(json.loads(json.dumps(t.to_json())))
    assert back == t
    assert hash(back) == hash(t)


def test_certified_mpf():
    v = certified_mpf(QuadTower.sqrt_of(2), 40)
    with mpmath.workdps(45):
        assert abs(v - mpmath.sqrt(2)) < mpmath.mpf(10) ** -39


def test_interval_precision_is_thread_safe():
    errors = []

    def work(seed):
        rng = random.Random(seed)
        for _ in range(200):
            t = QuadTower(rng.randint(-50, 50), rng.randint(1, 50), 7)
            prec = 60 + 40 * seed
            lo, hi = endpoints(tower_interval(t, prec))
            ref_lo, ref_hi = endpoints(tower_interval(t, 400))
            # the reference must sit inside, and the width must reflect this thread's precision
            with mpmath.workprec(500):
                if not (lo <= ref_lo and ref_hi <= hi) or hi - lo > 200 * mpmath.mpf(2) ** (8 - prec):
                    errors.append(t)

    threads = [threading.Thread(target=work, args=(s,)) for s in range(4)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert not errors


def test_infinity_is_a_singleton_and_largest():
    assert type(INF)() is INF
    assert INF > 10 ** 100 and not INF < 5


# ---------------------------------------------------------------------------
# matrices


def test_lorentz_examples():
    assert lorentz_pairing((1, 0, 1), (1, 0, 1)) == 0
    assert lorentz_pairing((3, 4, 5), (3, 4, 5)) == 0
    assert lorentz_pairing((3, 4, 5), (1, 0, 1)) == -2


vec3 = st.tuples(fractions, fractions, fractions)


@given(vec3, vec3)
def test_lorentz_invariance(x, y):
    for m in list(M.values()) + list(U.values()) + [H]:
        assert lorentz_pairing(m.apply(x), m.apply(y)) == lorentz_pairing(x, y)


def test_berggren_factorization():
    for d in (1, 2, 3):
        assert M[d] == H @ U[d]
        assert U[d] @ U[d] == IDENTITY3
    assert H @ H == IDENTITY3


def test_mat2_examples():
    assert N2 @ N2.inverse() == IDENTITY2
    assert N2.det() == -1
    assert (N3 @ N1).trace() == 4
    assert N3 @ N1 == Mat2(3, SQRT2, SQRT2, 1)


def test_mat2_action_at_infinity():
    assert N3.act(INF) is INF
    assert N1.act(INF) == 1 / SQRT2
    assert Mat2(1, 0, 1, 0).act(0) is INF


def test_square_split_beyond_trial_division():
    p, q = 1000003, 998244353
    assert square_split(p * p * q * 6) == (p, 6 * q)
    assert square_split((p * q) ** 2 * 1000033) == (p * q, 1000033)
