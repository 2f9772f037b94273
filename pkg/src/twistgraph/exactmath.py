"""Exact integer combinatorics used by every exact route.

Python ``int`` and :class:`fractions.Fraction` already give arbitrary
precision, so this module only adds the counting primitives on top.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, Sequence

__all__ = [
    "Fraction",
    "ScaleError",
    "factorial",
    "multinomial",
    "compositions",
    "count_compositions",
    "cyclic_nonadjacent_count",
    "exact_sqrt",
]


class ScaleError(ValueError):
    """Raised when a brute-force routine is asked for an instance above its guard."""


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    return math.factorial(n)


def multinomial(k: int, parts: Sequence[int]) -> int:
    """Return ``k! / prod(part!)``.

    Raises ``ValueError`` if ``parts`` contains a negative entry or does not
    sum to ``k``.
    """
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {tuple(parts)}")
    if sum(parts) != k:
        raise ValueError(f"parts {tuple(parts)} do not sum to {k}")
    result = 1
    remaining = k
    # product of binomials avoids the large intermediate k!
    for p in parts:
        result *= math.comb(remaining, p)
        remaining -= p
    return result


def compositions(n: int, sigma: int) -> Iterator[tuple[int, ...]]:
    """Yield every ordered ``n``-tuple of non-negative integers summing to ``sigma``.

    Order is lexicographically descending, so ``compositions(2, 2)`` yields
    ``(2, 0), (1, 1), (0, 2)``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if sigma < 0:
        return
    parts = [0] * n

    def rec(pos: int, left: int) -> Iterator[tuple[int, ...]]:
        if pos == n - 1:
            parts[pos] = left
            yield tuple(parts)
            return
        for v in range(left, -1, -1):
            parts[pos] = v
            yield from rec(pos + 1, left - v)

    yield from rec(0, sigma)


def count_compositions(n: int, sigma: int) -> int:
    return math.comb(sigma + n - 1, n - 1)


def cyclic_nonadjacent_count(n: int, sigma: int) -> int:
    """Number of binary cyclic ``n``-tuples with ``sigma`` ones, no two adjacent.

    Closed form ``n/(n - sigma) * C(n - sigma, sigma)``.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if sigma < 0 or sigma > n // 2:
        raise ValueError(f"sigma={sigma} outside [0, {n // 2}]")
    num = n * math.comb(n - sigma, sigma)
    q, rem = divmod(num, n - sigma)
    assert rem == 0
    return q


def exact_sqrt(x: Fraction) -> Fraction:
    """Square root of a non-negative rational that is a perfect square."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative argument")
    num = math.isqrt(x.numerator)
    den = math.isqrt(x.denominator)
    if num * num != x.numerator or den * den != x.denominator:
        raise ValueError(f"{x} is not the square of a rational")
    return Fraction(num, den)
