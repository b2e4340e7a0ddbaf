"""Exact integer/rational evaluation of the logarithmic and power bounds.

Every bound that feeds a branch decision (BFS depth limits, model sizes,
separator orders) is computed here without trusting floating point: floats
only produce a first guess, which is then corrected by big-integer
comparisons.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

__all__ = [
    "as_fraction",
    "floor_log2_power",
    "depth_bound",
    "center_radius_bound",
    "ceil_log_three_halves",
    "power_le",
    "floor_scaled_power",
    "ceil_scaled_power",
    "integer_root_ceil",
]


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions, decimal strings and ``"p/q"`` strings exactly.

    Floats are accepted through their decimal repr, so ``0.5`` becomes 1/2
    rather than a binary approximation.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        text = x.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            if int(den) == 0:
                raise ZeroDivisionError(f"zero denominator in {x!r}")
            return Fraction(int(num), int(den))
        return Fraction(text)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def floor_log2_power(base: int, exponent: int) -> int:
    """Return floor(exponent * log2(base)) exactly, for integers base, exponent >= 1.

    For integers, floor(e*log2 b) = bitlen(b**e) - 1. The float estimate is
    used directly when it is at least 1e-6 away from an integer; otherwise
    the power is materialised.
    """
    if base < 1 or exponent < 0:
        raise ValueError("need base >= 1 and exponent >= 0")
    if base == 1 or exponent == 0:
        return 0
    if base & (base - 1) == 0:
        return exponent * (base.bit_length() - 1)
    estimate = exponent * math.log2(base)
    nearest = round(estimate)
    if abs(estimate - nearest) > 1e-6:
        return math.floor(estimate)
    return (base ** exponent).bit_length() - 1


def depth_bound(ell: int, n: int) -> int:
    """floor(2 + 2*ell*log2(2*min(ell, n)*n^2)): the model depth for (ell, n)."""
    if ell < 1 or n < 1:
        raise ValueError("ell and n must be positive")
    return 2 + floor_log2_power(2 * min(ell, n) * n * n, 2 * ell)


def center_radius_bound(ell0: int, r: int, n: int) -> int:
    """floor(2 + ell0*log2(r*n)): eccentricity allowed when no cheap layer exists."""
    if ell0 < 1 or r < 1 or n < 1:
        raise ValueError("ell0, r and n must be positive")
    return 2 + floor_log2_power(r * n, ell0)


def ceil_log_three_halves(n: int) -> int:
    """Smallest i >= 0 with (3/2)^i >= n, i.e. 3^i >= n * 2^i."""
    if n < 1:
        raise ValueError("n must be positive")
    i, three, two = 0, 1, 1
    while three < n * two:
        i += 1
        three *= 3
        two *= 2
    return i


def power_le(x, base: int, exponent) -> bool:
    """Exactly decide x <= base**exponent for rational x, integer base >= 0, rational exponent >= 0."""
    x = as_fraction(x)
    exponent = as_fraction(exponent)
    if exponent < 0:
        raise ValueError("negative exponent")
    if x <= 0:
        return True
    if base == 0:
        return exponent == 0 and x <= 1
    p, q = exponent.numerator, exponent.denominator
    # x <= base^(p/q)  <=>  x^q <= base^p  (both sides positive)
    return x.numerator ** q <= base ** p * x.denominator ** q


def floor_scaled_power(coef, base: int, exponent, cap: int | None = None) -> int:
    """floor(coef * base**exponent), exactly; clipped to ``cap`` when given."""
    coef = as_fraction(coef)
    exponent = as_fraction(exponent)
    if coef < 0:
        raise ValueError("negative coefficient")
    if coef == 0:
        return 0
    if cap is not None and power_le(Fraction(cap) / coef, base, exponent):
        return cap
    if base == 0:
        return 0 if exponent > 0 else math.floor(coef)
    log_est = math.log(coef.numerator) - math.log(coef.denominator) + float(exponent) * math.log(base)
    guess = max(0, math.floor(math.exp(min(log_est, 700.0))))

    def at_most(k: int) -> bool:
        return power_le(Fraction(k) / coef, base, exponent)

    while guess > 0 and not at_most(guess):
        guess -= 1
    while at_most(guess + 1):
        guess += 1
    return guess


def ceil_scaled_power(coef, base: int, exponent) -> int:
    """ceil(coef * base**exponent), exactly."""
    k = floor_scaled_power(coef, base, exponent)
    coef = as_fraction(coef)
    exponent = as_fraction(exponent)
    # value is an integer iff k >= value, i.e. not (k < value)
    if coef == 0:
        return 0
    k_frac = Fraction(k) / coef
    # k >= coef*base^e  <=>  (k/coef)^q >= base^p
    p, q = exponent.numerator, exponent.denominator
    if k_frac.numerator ** q >= base ** p * k_frac.denominator ** q:
        return k
    return k + 1


def integer_root_ceil(m: int, exponent) -> int:
    """ceil(m ** exponent) for a rational exponent, never below 1."""
    return max(1, ceil_scaled_power(1, m, exponent))
