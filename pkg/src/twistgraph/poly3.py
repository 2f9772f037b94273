"""Integer polynomials in the three region ratios ``r1``, ``r0``, ``rm1``.

A :class:`Polynomial3` is an immutable sparse map from exponent triples
``(e1, e0, em1)`` to non-zero integer coefficients.  Terms are kept in
descending lexicographic order of the exponent triple, which is also the
order used by the text and JSON forms.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from typing import Any, Iterable, Iterator, Mapping

Exponents = tuple[int, int, int]

VARIABLES = ("r1", "r0", "rm1")


class PolynomialParseError(ValueError):
    pass


class Polynomial3:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponents, int] | Iterable[tuple[Exponents, int]] = ()):
        acc: dict[Exponents, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != 3 or min(exps) < 0:
                raise ValueError(f"bad exponent triple {exps}")
            if not isinstance(c, int):
                if isinstance(c, Fraction) and c.denominator == 1:
                    c = c.numerator
                else:
                    raise TypeError(f"coefficients must be integers, got {c!r}")
            acc[exps] = acc.get(exps, 0) + c
        self._terms = tuple(sorted(((e, c) for e, c in acc.items() if c != 0), reverse=True))
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial3":
        return cls()

    @classmethod
    def constant(cls, c: int) -> "Polynomial3":
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, e1: int, e0: int, em1: int, c: int = 1) -> "Polynomial3":
        return cls({(e1, e0, em1): c})

    # -- container protocol -----------------------------------------------

    @property
    def terms(self) -> dict[Exponents, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponents, int]]:
        return iter(self._terms)

    def __iter__(self) -> Iterator[tuple[Exponents, int]]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, e1: int, e0: int, em1: int) -> int:
        return dict(self._terms).get((e1, e0, em1), 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Polynomial3.constant(other)
        if not isinstance(other, Polynomial3):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial3({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "Polynomial3 | int") -> "Polynomial3":
        if isinstance(other, int):
            other = Polynomial3.constant(other)
        if not isinstance(other, Polynomial3):
            return NotImplemented
        return Polynomial3(list(self._terms) + list(other._terms))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial3":
        return Polynomial3((e, -c) for e, c in self._terms)

    def __sub__(self, other: "Polynomial3 | int") -> "Polynomial3":
        if isinstance(other, int):
            other = Polynomial3.constant(other)
        return self + (-other)

    def __rsub__(self, other: int) -> "Polynomial3":
        return Polynomial3.constant(other) - self

    def __mul__(self, other: "Polynomial3 | int") -> "Polynomial3":
        if isinstance(other, int):
            return Polynomial3((e, c * other) for e, c in self._terms)
        if not isinstance(other, Polynomial3):
            return NotImplemented
        acc: dict[Exponents, int] = {}
        for (a1, a0, am), ca in self._terms:
            for (b1, b0, bm), cb in other._terms:
                key = (a1 + b1, a0 + b0, am + bm)
                acc[key] = acc.get(key, 0) + ca * cb
        return Polynomial3(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial3":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial3.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def exact_div(self, d: int) -> "Polynomial3":
        """Divide every coefficient by ``d``; raises if any division is inexact."""
        out = []
        for e, c in self._terms:
            q, rem = divmod(c, d)
            if rem:
                raise ValueError(f"coefficient {c} not divisible by {d}")
            out.append((e, q))
        return Polynomial3(out)

    # -- structure --------------------------------------------------------

    def degrees(self) -> set[int]:
        return {sum(e) for e, _ in self._terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def swap_shifts(self) -> "Polynomial3":
        """Exchange the roles of ``r1`` and ``rm1``."""
        return Polynomial3(((em1, e0, e1), c) for (e1, e0, em1), c in self._terms)

    def coefficient_sum(self) -> int:
        return sum(c for _, c in self._terms)

    def drop_rm1(self) -> "Polynomial3":
        """Restriction to ``rm1 = 0``."""
        return Polynomial3((e, c) for e, c in self._terms if e[2] == 0)

    # -- evaluation -------------------------------------------------------

    def evaluate(self, r1: Any, r0: Any, rm1: Any) -> Any:
        """Evaluate at the given point.

        Exact for ``int``/``Fraction`` inputs; works with floats too.
        """
        total = 0
        for (e1, e0, em1), c in self._terms:
            total += c * r1**e1 * r0**e0 * rm1**em1
        return total

    def __call__(self, r1: Any, r0: Any, rm1: Any) -> Any:
        return self.evaluate(r1, r0, rm1)

    def evaluate_float(self, r1: float, r0: float, rm1: float) -> float:
        return math.fsum(
            float(c) * float(r1) ** e1 * float(r0) ** e0 * float(rm1) ** em1
            for (e1, e0, em1), c in self._terms
        )

    # -- serialization ----------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "terms": [
                {"e1": e1, "e0": e0, "em1": em1, "c": str(c)}
                for (e1, e0, em1), c in self._terms
            ]
        }

    def to_json(self, **kwargs: Any) -> str:
        return json.dumps(self.to_json_obj(), **kwargs)

    @classmethod
    def from_json_obj(cls, obj: Any) -> "Polynomial3":
        if not isinstance(obj, dict) or not isinstance(obj.get("terms"), list):
            raise PolynomialParseError("expected an object with a 'terms' list")
        acc = []
        seen = set()
        for t in obj["terms"]:
            try:
                exps = (t["e1"], t["e0"], t["em1"])
                c = t["c"]
            except (KeyError, TypeError) as exc:
                raise PolynomialParseError(f"malformed term {t!r}") from exc
            if not all(isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in exps):
                raise PolynomialParseError(f"bad exponents in {t!r}")
            if not isinstance(c, str) or not re.fullmatch(r"-?\d+", c):
                raise PolynomialParseError(f"coefficient must be a decimal string: {t!r}")
            if exps in seen:
                raise PolynomialParseError(f"duplicate monomial {exps}")
            seen.add(exps)
            if int(c) == 0:
                raise PolynomialParseError(f"zero coefficient stored for {exps}")
            acc.append((exps, int(c)))
        return cls(acc)

    @classmethod
    def from_json(cls, text: str) -> "Polynomial3":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PolynomialParseError(str(exc)) from exc
        return cls.from_json_obj(obj)

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for i, ((e1, e0, em1), c) in enumerate(self._terms):
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(VARIABLES, (e1, e0, em1))
                if e
            ]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = " ".join(factors)
            else:
                body = f"{mag} " + " ".join(factors)
            if i == 0:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(("+ " if c > 0 else "- ") + body)
        return " ".join(pieces)

    @classmethod
    def parse_text(cls, text: str) -> "Polynomial3":
        """Parse the text form, accepting monomials and factors in any order."""
        s = text.strip()
        if not s:
            raise PolynomialParseError("empty polynomial text")
        if s == "0":
            return cls()
        # split on top-level +/- keeping the sign
        chunks = re.findall(r"[+-]?[^+-]+", s.replace(" ", "").replace("*", ""))
        if "".join(chunks) != s.replace(" ", "").replace("*", ""):
            raise PolynomialParseError(f"cannot parse {text!r}")
        acc = []
        factor_re = re.compile(r"(rm1|r1|r0)(?:\^(\d+))?")
        for chunk in chunks:
            sign = -1 if chunk.startswith("-") else 1
            body = chunk.lstrip("+-")
            m = re.match(r"\d+", body)
            coeff = int(m.group()) if m else 1
            rest = body[m.end():] if m else body
            exps = [0, 0, 0]
            pos = 0
            while pos < len(rest):
                fm = factor_re.match(rest, pos)
                if not fm:
                    raise PolynomialParseError(f"bad factor in {chunk!r}")
                exps[VARIABLES.index(fm.group(1))] += int(fm.group(2) or 1)
                pos = fm.end()
            if not m and not rest:
                raise PolynomialParseError(f"empty term in {text!r}")
            acc.append((tuple(exps), sign * coeff))
        return cls(acc)


R1 = Polynomial3.monomial(1, 0, 0)
R0 = Polynomial3.monomial(0, 1, 0)
RM1 = Polynomial3.monomial(0, 0, 1)
ONE = Polynomial3.constant(1)

__all__ = ["Polynomial3", "PolynomialParseError", "R1", "R0", "RM1", "ONE", "Exponents"]
