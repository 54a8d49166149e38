"""Interval arithmetic with exact rational endpoints.

Intervals are plain (lo, hi) pairs of Fractions with lo <= hi.  Every
operation returns an enclosure of the exact image, so any sign decided
by an interval that excludes zero is certified.  No floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Tuple

Interval = Tuple[Fraction, Fraction]


def exact(x) -> Interval:
    x = Fraction(x)
    return (x, x)


def add(a: Interval, b: Interval) -> Interval:
    return (a[0] + b[0], a[1] + b[1])


def sub(a: Interval, b: Interval) -> Interval:
    return (a[0] - b[1], a[1] - b[0])


def neg(a: Interval) -> Interval:
    return (-a[1], -a[0])


def mul(a: Interval, b: Interval) -> Interval:
    vals = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(vals), max(vals))


def scale(a: Interval, c) -> Interval:
    c = Fraction(c)
    if c >= 0:
        return (a[0] * c, a[1] * c)
    return (a[1] * c, a[0] * c)


def divide(a: Interval, b: Interval) -> Interval:
    if contains_zero(b):
        raise ZeroDivisionError("interval division by an interval containing 0")
    vals = (a[0] / b[0], a[0] / b[1], a[1] / b[0], a[1] / b[1])
    return (min(vals), max(vals))


def power(a: Interval, k: int) -> Interval:
    out = exact(1)
    for _ in range(k):
        out = mul(out, a)
    return out


def width(a: Interval) -> Fraction:
    return a[1] - a[0]


def contains_zero(a: Interval) -> bool:
    return a[0] <= 0 <= a[1]


def sign(a: Interval):
    """+1 / -1 when certified, None when the interval straddles zero."""
    if a[0] > 0:
        return 1
    if a[1] < 0:
        return -1
    if a[0] == a[1] == 0:
        return 0
    return None


def disjoint(a: Interval, b: Interval) -> bool:
    return a[1] < b[0] or b[1] < a[0]


def eval_poly(coeffs, x: Interval) -> Interval:
    """Enclosure of a polynomial (constant term first) on an interval."""
    acc = exact(0)
    for c in reversed(coeffs):
        acc = add(mul(acc, x), exact(c))
    return acc


def det_interval(rows) -> Interval:
    """Determinant enclosure of a small square matrix of intervals,
    by cofactor expansion (fine for n <= 4)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return sub(mul(rows[0][0], rows[1][1]), mul(rows[0][1], rows[1][0]))
    total = exact(0)
    for j in range(n):
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = mul(rows[0][j], det_interval(minor))
        total = add(total, term) if j % 2 == 0 else sub(total, term)
    return total
