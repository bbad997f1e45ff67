"""Exact integer helpers for square roots and cube roots of rationals."""
from __future__ import annotations

from fractions import Fraction
from math import isqrt

SQRT_SCALE = 10**6


def ceil_sqrt(n: int) -> int:
    """Return the smallest integer s with s * s >= n."""
    root = isqrt(n)
    return root if root * root == n else root + 1


def exact_cube_root(n: int) -> int | None:
    """Return the integer cube root of n, or None if n is not a perfect cube."""
    root = round(n ** (1 / 3))
    for candidate in (root - 1, root, root + 1):
        if candidate >= 0 and candidate**3 == n:
            return candidate
    return None


def sqrt_bounds(x: Fraction) -> tuple[Fraction, Fraction]:
    """Return rationals (low, high) with low <= sqrt(x) <= high.

    Both are exact when x is the square of a rational.
    """
    numerator_root = isqrt(x.numerator)
    denominator_root = isqrt(x.denominator)
    if numerator_root**2 == x.numerator and denominator_root**2 == x.denominator:
        exact = Fraction(numerator_root, denominator_root)
        return exact, exact
    low = Fraction(isqrt(x.numerator * SQRT_SCALE**2 // x.denominator), SQRT_SCALE)
    return low, low + Fraction(1, SQRT_SCALE)


def cover_constant(epsilon: Fraction) -> Fraction:
    """Upper bound for 1 / (sqrt(epsilon) * (1 - sqrt(epsilon))^2), the translate count constant of the dense cover."""
    low, high = sqrt_bounds(epsilon)
    return 1 / (low * (1 - high) ** 2)


class EpsilonRangeError(Exception):
    """Exception raised when an epsilon parameter is outside of its open interval."""


def check_epsilon(epsilon: Fraction, upper: Fraction | int = 1) -> Fraction:
    """Return epsilon as a Fraction after checking 0 < epsilon < upper.

    Raises:
        EpsilonRangeError: If epsilon is outside of (0, upper)
    """
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < upper:
        error_message = f"epsilon must lie in (0, {upper}), got {epsilon}"
        raise EpsilonRangeError(error_message)
    return epsilon


def within_sqrt(deficit: int | Fraction, factor: Fraction, scale: int | Fraction) -> bool:
    """Return whether deficit <= sqrt(factor) * scale for a nonnegative scale, without rounding."""
    return deficit <= 0 or deficit * deficit <= factor * scale * scale
