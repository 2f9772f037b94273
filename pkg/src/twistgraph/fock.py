"""Bosons on an ``L``-site chain split into three regions.

Sites ``1..L1`` form region +1, the next ``L0`` sites region 0 and the last
``Lm1`` sites region -1.  Only the region sizes enter any result.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .exactmath import ScaleError, multinomial
from .qubit import QubitAmplitudes
from .ratios import RegionRatios

FOCK_GUARD = 100_000
WICK_GUARD = 8

REGION_SHIFT = (1, 0, -1)


@dataclass(frozen=True)
class RegionLayout:
    L1: int
    L0: int
    Lm1: int

    def __post_init__(self) -> None:
        if min(self.L1, self.L0, self.Lm1) < 0:
            raise ValueError("region sizes must be non-negative")
        if self.L < 1:
            raise ValueError("layout needs at least one site")

    @property
    def L(self) -> int:
        return self.L1 + self.L0 + self.Lm1

    @property
    def sizes(self) -> tuple[int, int, int]:
        return (self.L1, self.L0, self.Lm1)

    def ratios(self) -> RegionRatios:
        return RegionRatios(Fraction(self.L1, self.L), Fraction(self.L0, self.L), Fraction(self.Lm1, self.L))

    def region_of(self, site: int) -> int:
        """Region label (+1, 0, -1) of a 0-based site index."""
        if not 0 <= site < self.L:
            raise IndexError(site)
        if site < self.L1:
            return 1
        if site < self.L1 + self.L0:
            return 0
        return -1

    @classmethod
    def from_assignment(cls, labels: Sequence[int]) -> "RegionLayout":
        """Normalise an arbitrary per-site region labelling to contiguous blocks."""
        if any(lab not in REGION_SHIFT for lab in labels):
            raise ValueError("site labels must be in {1, 0, -1}")
        return cls(labels.count(1), labels.count(0), labels.count(-1))

    @classmethod
    def parse(cls, sites: int, split: str) -> "RegionLayout":
        parts = [int(x) for x in split.split(",")]
        if len(parts) != 3:
            raise ValueError(f"--split needs three sizes, got {split!r}")
        layout = cls(*parts)
        if layout.L != sites:
            raise ValueError(f"split {parts} does not add up to {sites} sites")
        return layout


def site_configurations(k: int, L: int) -> Iterator[tuple[int, ...]]:
    """Occupation tuples of ``k`` bosons on ``L`` sites."""
    for bars in itertools.combinations(range(k + L - 1), L - 1):
        prev = -1
        occ = []
        for b in bars:
            occ.append(b - prev - 1)
            prev = b
        occ.append(k + L - 1 - prev - 1)
        yield tuple(occ)


def build_fock_state(k: int, layout: RegionLayout) -> dict[tuple[int, ...], Fraction]:
    """Squared amplitudes of ``(sum_x a_x^dag)^k |0> / sqrt(k! L^k)``.

    Expanding the power gives ``k!/prod n_x!`` orderings per configuration and
    ``prod (a^dag)^{n_x}|0> = sqrt(prod n_x!) |n>``, so the squared amplitude
    is ``multinomial(k; n) / L^k``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    L = layout.L
    if math.comb(L + k - 1, k) > FOCK_GUARD:
        raise ScaleError(f"Fock basis of dimension {math.comb(L + k - 1, k)} exceeds {FOCK_GUARD}")
    denom = L**k
    return {occ: Fraction(multinomial(k, occ), denom) for occ in site_configurations(k, L)}


def fock_to_qubit(k: int, layout: RegionLayout) -> QubitAmplitudes:
    """Group the Fock state by per-region particle numbers ``(k1, k0, km1)``."""
    state = build_fock_state(k, layout)
    a, b = layout.L1, layout.L1 + layout.L0
    amp2: dict[tuple[int, int, int], Fraction] = {}
    for occ, v in state.items():
        key = (sum(occ[:a]), sum(occ[a:b]), sum(occ[b:]))
        amp2[key] = amp2.get(key, 0) + v
    return QubitAmplitudes(k, amp2)


def _pair_weights(n: int, layout: RegionLayout) -> list[list[int]]:
    """``w[m][p]`` = number of sites ``x`` contracting creation copy ``m`` with annihilation copy ``p``.

    A creation operator at site ``x`` on copy ``m`` is moved to copy
    ``m + shift(x)`` by the twists, so it contracts with copy ``p`` iff
    ``p = m + shift(x) mod n``.
    """
    w = [[0] * n for _ in range(n)]
    for x in range(layout.L):
        sh = layout.region_of(x)
        for m in range(n):
            w[m][(m + sh) % n] += 1
    return w


def wick_census(k: int, n: int, layout: RegionLayout) -> int:
    """Sum over all Wick pairings of the product of per-contraction site counts."""
    if k < 1 or n < 1:
        raise ValueError("k and n must be >= 1")
    if k * n > WICK_GUARD:
        raise ScaleError(f"Wick enumeration needs k*n <= {WICK_GUARD}, got {k * n}")
    w = _pair_weights(n, layout)
    creation_copy = [m for m in range(n) for _ in range(k)]
    annihilation_copy = [p for p in range(n) for _ in range(k)]
    total = 0
    for perm in itertools.permutations(range(k * n)):
        prod = 1
        for i, j in enumerate(perm):
            prod *= w[creation_copy[i]][annihilation_copy[j]]
            if not prod:
                break
        total += prod
    return total


def count_wick_pairings(k: int, n: int, layout: RegionLayout) -> int:
    """Number of pairings with at least one site realising every contraction."""
    if k * n > WICK_GUARD:
        raise ScaleError(f"Wick enumeration needs k*n <= {WICK_GUARD}, got {k * n}")
    w = _pair_weights(n, layout)
    cc = [m for m in range(n) for _ in range(k)]
    return sum(
        1
        for perm in itertools.permutations(range(k * n))
        if all(w[cc[i]][cc[j]] for i, j in enumerate(perm))
    )


def wick_oracle(k: int, n: int, layout: RegionLayout) -> Fraction:
    """``exp[E_n]`` from the brute-force Wick expansion on the lattice."""
    census = wick_census(k, n, layout)
    return Fraction(census, math.factorial(k) ** n * layout.L ** (k * n))
