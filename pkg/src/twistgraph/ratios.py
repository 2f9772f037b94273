"""Region ratios ``(r1, r0, rm1)``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence, Union

Number = Union[int, Fraction, float]

FLOAT_SUM_TOL = 1e-12


@dataclass(frozen=True)
class RegionRatios:
    """Volume fractions of the three regions.

    Components are Fractions when constructed from exact input (the sum is
    then checked exactly) and floats otherwise.
    """

    r1: Number
    r0: Number
    rm1: Number

    def __post_init__(self) -> None:
        vals = (self.r1, self.r0, self.rm1)
        exact = all(isinstance(v, (int, Fraction)) for v in vals)
        if exact:
            vals = tuple(Fraction(v) for v in vals)
        else:
            vals = tuple(float(v) for v in vals)
        for name, v in zip(("r1", "r0", "rm1"), vals):
            object.__setattr__(self, name, v)
        if any(v < 0 or v > 1 for v in vals):
            raise ValueError(f"ratios must lie in [0, 1]: {vals}")
        total = sum(vals)
        if exact and total != 1:
            raise ValueError(f"ratios must sum to 1, got {total}")
        if not exact and abs(total - 1.0) > FLOAT_SUM_TOL:
            raise ValueError(f"ratios must sum to 1, got {total}")

    @property
    def exact(self) -> bool:
        return isinstance(self.r1, Fraction)

    def as_tuple(self) -> tuple:
        return (self.r1, self.r0, self.rm1)

    def as_floats(self) -> tuple[float, float, float]:
        return (float(self.r1), float(self.r0), float(self.rm1))

    def swapped(self) -> "RegionRatios":
        return RegionRatios(self.rm1, self.r0, self.r1)

    @classmethod
    def two_region(cls, r1: Number, r0: Number) -> "RegionRatios":
        return cls(r1, r0, 0 if isinstance(r1, (int, Fraction)) else 0.0)

    @classmethod
    def parse(cls, text: str) -> "RegionRatios":
        """Parse ``"a/b,c/d,e/f"`` or decimal floats."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated ratios, got {text!r}")
        return cls(*(parse_number(p) for p in parts))


def parse_number(text: str) -> Number:
    """Exact Fraction for integers and ``a/b``; float for anything with a decimal point or exponent."""
    t = text.strip()
    if any(ch in t for ch in ".eE") and "/" not in t:
        return float(t)
    return Fraction(t)


def as_ratios(r: Any) -> RegionRatios:
    if isinstance(r, RegionRatios):
        return r
    if isinstance(r, str):
        return RegionRatios.parse(r)
    if isinstance(r, Sequence) and len(r) == 3:
        return RegionRatios(*r)
    raise TypeError(f"cannot interpret {r!r} as region ratios")
