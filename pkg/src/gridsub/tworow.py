"""Recursions for subdivisions of two-row configurations P(m, n).

P(m, n) has m points on the line y = 1 and n points on y = 0, both rows
starting at x = 0. ``B`` counts bimonotone subdivisions, ``A`` all of them.

The degenerate entries P(1, 1) (a single segment) carry the value 1/2 so
that the recursions hold uniformly; every configuration with at least three
points gets an integer.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

HALF = Fraction(1, 2)


def _pow2(k: int) -> Fraction:
    return Fraction(2) ** k


@lru_cache(maxsize=None)
def _bimonotone(m: int, n: int) -> Fraction:
    if m < n:
        return Fraction(0)
    if n == 1:
        return _pow2(m - 2)
    if m == n:
        return 2 * _bimonotone(m, n - 1)
    return 2 * _bimonotone(m, n - 1) + 2 * _bimonotone(m - 1, n) - 2 * _bimonotone(m - 1, n - 1)


@lru_cache(maxsize=None)
def _all(m: int, n: int) -> Fraction:
    if n == 1:
        return _pow2(m - 2)
    if m == 1:
        return _pow2(n - 2)
    return 2 * _all(m, n - 1) + 2 * _all(m - 1, n) - 2 * _all(m - 1, n - 1)


def _check(m: int, n: int) -> None:
    if m < 1 or n < 1:
        raise ValueError(f"row sizes must be positive, got ({m}, {n})")


def _public(value: Fraction, m: int, n: int):
    if m + n >= 3:
        if value.denominator != 1:
            raise ArithmeticError(f"non-integral count {value} for P({m},{n})")
        return int(value)
    return value


def bimonotone_exact(m: int, n: int) -> Fraction:
    _check(m, n)
    return _bimonotone(m, n)


def all_exact(m: int, n: int) -> Fraction:
    _check(m, n)
    return _all(m, n)


def count_two_row_bimonotone(m: int, n: int):
    """B(m, n); an ``int`` except for the 1/2 placeholder at P(1, 1)."""
    _check(m, n)
    return _public(_bimonotone(m, n), m, n)


def count_two_row_all(m: int, n: int):
    """A(m, n); an ``int`` except for the 1/2 placeholder at P(1, 1)."""
    _check(m, n)
    return _public(_all(m, n), m, n)


def recursion_consistent(m: int, n: int, bimonotone: bool) -> bool:
    """Re-derive one table entry from its three predecessors."""
    f = _bimonotone if bimonotone else _all
    v = f(m, n)
    if bimonotone and m < n:
        return v == 0
    if n == 1:
        return v == _pow2(m - 2)
    if not bimonotone and m == 1:
        return v == _pow2(n - 2)
    if bimonotone and m == n:
        return v == 2 * f(m, n - 1)
    return v == 2 * f(m, n - 1) + 2 * f(m - 1, n) - 2 * f(m - 1, n - 1)
