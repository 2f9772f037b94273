"""Closed-form replica negativity and Renyi entropy of the qubit states.

``exp[E_n] = sum_{p,sigma} A_{p,sigma} r1^{np+sigma} r0^{n(k-p)-2 sigma} rm1^sigma``
where ``A_{p,sigma}`` sums, over ordered compositions ``(k_1..k_n)`` of
``sigma``, the cyclic product of ``multinomial(k; p+k_j, k-p-k_j-k_{j+1}, k_{j+1})``
with ``k_{n+1} = k_1``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exactmath import multinomial
from .graphs import partition_k1_closed
from .poly3 import Polynomial3
from .ratios import RegionRatios, as_ratios

__all__ = [
    "RegionRatios",
    "coefficient_A",
    "coefficient_indices",
    "negativity_polynomial",
    "negativity_exp",
    "negativity",
    "renyi_exp",
    "renyi_polynomial",
    "renyi_entropy",
    "negativity_even_symmetric",
    "log_negativity_k1",
    "multi_group_negativity",
    "multi_group_negativity_exp",
    "multi_group_renyi",
    "multi_group_renyi_exp",
]


@lru_cache(maxsize=None)
def coefficient_A(k: int, n: int, p: int, sigma: int) -> int:
    """Coefficient ``A_{p,sigma}``; zero outside the non-vanishing range."""
    if k < 1 or n < 1:
        raise ValueError("k and n must be >= 1")
    if sigma < 0 or abs(p) > k:
        return 0

    total = 0
    parts = [0] * n

    # Build k_1..k_n left to right; factor j needs k_j and k_{j+1}, so it is
    # multiplied in when k_{j+1} is chosen.  Negative factorial arguments prune.
    def rec(j: int, left: int, acc: int) -> None:
        nonlocal total
        if j == n:
            if left:
                return
            kj, kn = parts[n - 1], parts[0]
            mid = k - p - kj - kn
            if mid < 0:
                return
            total += acc * multinomial(k, (p + kj, mid, kn))
            return
        lo = max(0, -p)
        hi = min(left, k - p - parts[j - 1] if j else k - p)
        if j == n - 1:
            lo = max(lo, left)
        for v in range(lo, hi + 1):
            parts[j] = v
            if j:
                kprev = parts[j - 1]
                f = multinomial(k, (p + kprev, k - p - kprev - v, v))
                rec(j + 1, left - v, acc * f)
            else:
                rec(1, left - v, acc)

    if n == 1:
        # the cyclic neighbour of k_1 is k_1 itself
        v = sigma
        if p + v < 0 or k - p - 2 * v < 0:
            return 0
        return multinomial(k, (p + v, k - p - 2 * v, v))
    rec(0, sigma, 1)
    return total


def coefficient_indices(k: int, n: int):
    """All ``(p, sigma)`` in the summation domain."""
    for p in range(-k, k + 1):
        for sigma in range(max(0, -n * p), (n * (k - p)) // 2 + 1):
            yield p, sigma


@lru_cache(maxsize=None)
def negativity_polynomial(k: int, n: int) -> Polynomial3:
    """Polynomial whose value at the region ratios is ``exp[E_n]``."""
    terms = {}
    for p, sigma in coefficient_indices(k, n):
        a = coefficient_A(k, n, p, sigma)
        if a:
            key = (n * p + sigma, n * (k - p) - 2 * sigma, sigma)
            terms[key] = terms.get(key, 0) + a
    return Polynomial3(terms)


def negativity_exp(k: int, n: int, r) -> Fraction | float:
    """``exp[E_n]``; exact for exact ratios."""
    r = as_ratios(r)
    poly = negativity_polynomial(k, n)
    if r.exact:
        return poly.evaluate(*r.as_tuple())
    return poly.evaluate_float(*r.as_floats())


def negativity(k: int, n: int, r) -> float:
    return math.log(negativity_exp(k, n, r))


def renyi_exp(k: int, n: int, r1, r0) -> Fraction | float:
    """``exp[(1-n) S_n] = sum_j (C(k,j) r1^j r0^{k-j})^n``."""
    exact = isinstance(r1, (int, Fraction)) and isinstance(r0, (int, Fraction))
    if exact:
        r1, r0 = Fraction(r1), Fraction(r0)
        if r1 + r0 != 1:
            raise ValueError("r1 + r0 must equal 1")
    elif abs(float(r1) + float(r0) - 1) > 1e-12:
        raise ValueError("r1 + r0 must equal 1")
    terms = [(math.comb(k, j) * r1**j * r0 ** (k - j)) ** n for j in range(k + 1)]
    return sum(terms) if exact else math.fsum(terms)


def renyi_polynomial(k: int, n: int) -> Polynomial3:
    """``sum_j (C(k,j) r1^j r0^{k-j})^n`` as a polynomial in ``r1, r0``."""
    return Polynomial3(
        {(n * j, n * (k - j), 0): math.comb(k, j) ** n for j in range(k + 1)}
    )


def renyi_entropy(k: int, n: int, r1, r0) -> float:
    if n == 1:
        raise ValueError("the Renyi index n = 1 is a limit, not supported here")
    return math.log(renyi_exp(k, n, r1, r0)) / (1 - n)


def negativity_even_symmetric(k: int, m: int, r):
    """``exp[E_{2m}]`` summed in the symmetric ``sigma -> sigma - m p`` form."""
    if m < 1:
        raise ValueError("m must be >= 1")
    r1, r0, rm1 = as_ratios(r).as_tuple()
    n = 2 * m
    total = 0
    for p in range(-k, k + 1):
        for s in range(abs(m * p), m * k + 1):
            a = coefficient_A(k, n, p, s - m * p)
            if a:
                total += a * r1 ** (s + m * p) * r0 ** (2 * (m * k - s)) * rm1 ** (s - m * p)
    return total


def log_negativity_k1(r) -> float:
    """Logarithmic negativity of the one-particle state, ``m -> 1/2`` continuation."""
    r1, r0, rm1 = as_ratios(r).as_floats()
    return math.log(r1 + rm1 + math.sqrt(r0 * r0 + 4 * r1 * rm1))


def replica_negativity_k1(n: float, r) -> float:
    """``E_n`` for one particle at real ``n`` via the four-eigenvalue form."""
    return math.log(partition_k1_closed(n, r))


def _check_groups(groups: Sequence[int]) -> None:
    if not groups or any(int(g) != g or g < 1 for g in groups):
        raise ValueError(f"momentum groups must be positive integers: {groups!r}")


def multi_group_negativity_exp(groups: Sequence[int], n: int, r):
    """Product over groups of ``exp[E_n]``; exact for exact ratios."""
    _check_groups(groups)
    out = 1
    for g in groups:
        out *= negativity_exp(g, n, r)
    return out


def multi_group_negativity(groups: Sequence[int], n: int, r) -> float:
    """Replica negativity increment of a state made of momentum groups.

    Groups of equal momenta contribute independently, so the increment is the
    sum of the single-group values.
    """
    _check_groups(groups)
    return math.fsum(negativity(g, n, r) for g in groups)


def multi_group_renyi_exp(groups: Sequence[int], n: int, r1, r0):
    _check_groups(groups)
    out = 1
    for g in groups:
        out *= renyi_exp(g, n, r1, r0)
    return out


def multi_group_renyi(groups: Sequence[int], n: int, r1, r0) -> float:
    _check_groups(groups)
    return math.fsum(renyi_entropy(g, n, r1, r0) for g in groups)
