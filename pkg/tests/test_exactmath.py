import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sepcert.exactmath import (
    as_fraction,
    ceil_log_three_halves,
    ceil_scaled_power,
    depth_bound,
    floor_log2_power,
    floor_scaled_power,
    integer_root_ceil,
    center_radius_bound,
    power_le,
)


def test_depth_bound_examples():
    assert depth_bound(1, 2) == 8
    assert depth_bound(2, 4) == 26
    assert depth_bound(1, 1) == 4


@given(st.integers(1, 40), st.integers(1, 60))
def test_depth_bound_matches_bit_length(ell, n):
    M = 2 * min(ell, n) * n * n
    assert depth_bound(ell, n) == 2 + (M ** (2 * ell)).bit_length() - 1


def test_depth_bound_large_exponent_stays_exact():
    # exponent large enough to leave the squaring path
    ell, n = 5000, 1000
    M = 2 * min(ell, n) * n * n
    assert depth_bound(ell, n) == 2 + (M ** (2 * ell)).bit_length() - 1


@given(st.integers(2, 10**6), st.integers(1, 300))
def test_floor_log2_power(base, e):
    assert floor_log2_power(base, e) == (base**e).bit_length() - 1


def test_floor_log2_power_exact_powers_of_two():
    assert floor_log2_power(8, 3) == 9
    assert floor_log2_power(1024, 1000) == 10000


def test_center_radius_bound():
    # floor(2 + ell0 * log2(r*n))
    assert center_radius_bound(2, 20, 20) == 2 + ((400**2).bit_length() - 1)
    assert center_radius_bound(1, 1, 1) == 2


def test_ceil_log_three_halves():
    assert ceil_log_three_halves(1) == 0
    assert ceil_log_three_halves(2) == 2
    assert ceil_log_three_halves(4) == 4
    assert ceil_log_three_halves(10) == 6  # 3^6 = 729 >= 640, 3^5 = 243 < 320


@given(st.integers(1, 10**5))
def test_ceil_log_three_halves_definition(n):
    i = ceil_log_three_halves(n)
    assert 3**i >= n * 2**i
    assert i == 0 or 3 ** (i - 1) < n * 2 ** (i - 1)


@given(st.fractions(min_value=0, max_value=1000, max_denominator=50), st.integers(0, 50), st.fractions(min_value=0, max_value=3, max_denominator=8))
def test_power_le_agrees_with_floats_away_from_ties(x, base, e):
    exact = power_le(x, base, e)
    approx = float(base) ** float(e)
    if abs(float(x) - approx) > 1e-6 * max(1.0, approx):
        assert exact == (float(x) <= approx)


def test_scaled_powers():
    assert floor_scaled_power(1, 9, Fraction(1, 2)) == 3
    assert floor_scaled_power(1, 8, Fraction(1, 2)) == 2
    assert ceil_scaled_power(1, 8, Fraction(1, 2)) == 3
    assert ceil_scaled_power(1, 9, Fraction(1, 2)) == 3
    assert floor_scaled_power(3, 16, Fraction(1, 2), cap=5) == 5
    assert floor_scaled_power(Fraction(1, 2), 4, 2) == 8


@given(st.integers(1, 5000), st.integers(1, 6))
def test_integer_root_ceil(m, k):
    r = integer_root_ceil(m, Fraction(1, k))
    assert r**k >= m
    assert r == 1 or (r - 1) ** k < m


def test_as_fraction():
    assert as_fraction("3/4") == Fraction(3, 4)
    assert as_fraction(0.5) == Fraction(1, 2)
    assert as_fraction(2) == 2
    with pytest.raises(ZeroDivisionError):
        as_fraction("2/0")


def test_floats_never_decide_depth_near_integers():
    # 2*ell*log2(M) is an integer exactly when M is a power of two
    for ell in range(1, 30):
        n = 1
        assert depth_bound(ell, n) == 2 + 2 * ell * int(math.log2(2 * min(ell, n) * n * n))
