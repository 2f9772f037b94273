"""The graph family G_{k,n} and its partition function.

Vertices come in a left and a right set, each labelled by particle
``j in 1..k`` and copy ``m in 1..n``.  An edge joins left ``(j, m)`` to
right ``(j', m + shift mod n)`` with ``shift in {+1, 0, -1}``, and every
vertex carries exactly one edge.  An edge of shift ``l`` weighs ``r_l``;
for ``n = 2`` the +1 and -1 edge sets coincide and carry ``r1 + rm1``.

Three routes to the partition function live here:

* :func:`partition_function_raw` - explicit backtracking over matchings
  (small instances only);
* :func:`partition_function_from_matrices` - a sum over shift matrices,
  the per-copy edge counts, weighted by the number of matchings realising
  each one;
* :func:`partition_function_fast` - the same sum organised as a transfer
  matrix around the cycle of copies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Literal

from .exactmath import ScaleError, multinomial
from .poly3 import ONE, R0, R1, RM1, Polynomial3
from .ratios import as_ratios

SHIFTS = (1, 0, -1)
RAW_GUARD = 9


@dataclass(frozen=True, order=True)
class Vertex:
    side: Literal["l", "r"]
    particle: int
    copy: int


@dataclass(frozen=True)
class Edge:
    left: Vertex
    right: Vertex
    shift: int


@dataclass(frozen=True)
class Graph:
    k: int
    n: int
    edges: tuple[Edge, ...]

    def shift_counts(self) -> tuple[int, int, int]:
        """``(N_1, N_0, N_-1)``; for ``n = 2`` cross edges are all counted as shift +1."""
        counts = {1: 0, 0: 0, -1: 0}
        for e in self.edges:
            counts[e.shift] += 1
        return counts[1], counts[0], counts[-1]

    def weight(self) -> Polynomial3:
        n1, n0, nm1 = self.shift_counts()
        if self.n == 2:
            return R0**n0 * (R1 + RM1) ** (n1 + nm1)
        return Polynomial3.monomial(n1, n0, nm1)

    def shift_matrix(self) -> "ShiftMatrix":
        rows = [[0, 0, 0] for _ in range(self.n)]
        for e in self.edges:
            rows[e.left.copy - 1][SHIFTS.index(e.shift)] += 1
        return ShiftMatrix(self.k, self.n, tuple(tuple(r) for r in rows))

    def is_valid(self) -> bool:
        if len(self.edges) != self.k * self.n:
            return False
        lefts = {e.left for e in self.edges}
        rights = {e.right for e in self.edges}
        if len(lefts) != self.k * self.n or len(rights) != self.k * self.n:
            return False
        for e in self.edges:
            if e.left.side != "l" or e.right.side != "r":
                return False
            if (e.left.copy - 1 + e.shift) % self.n != e.right.copy - 1:
                return False
        return True

    def to_json_obj(self) -> dict:
        return {
            "edges": [
                {
                    "left": [e.left.particle, e.left.copy],
                    "right": [e.right.particle, e.right.copy],
                    "shift": e.shift,
                }
                for e in self.edges
            ]
        }


@dataclass(frozen=True)
class ShiftMatrix:
    """``rows[m] = (s[m][+1], s[m][0], s[m][-1])`` for copies ``m = 0..n-1``."""

    k: int
    n: int
    rows: tuple[tuple[int, int, int], ...]

    def is_feasible(self) -> bool:
        k, n, s = self.k, self.n, self.rows
        if len(s) != n or any(min(row) < 0 or sum(row) != k for row in s):
            return False
        if n == 2 and any(row[2] for row in s):
            return False
        for p in range(n):
            if s[(p - 1) % n][0] + s[p][1] + s[(p + 1) % n][2] != k:
                return False
        return True

    def shift_totals(self) -> tuple[int, int, int]:
        return tuple(sum(row[i] for row in self.rows) for i in range(3))

    def multiplicity(self) -> int:
        """Number of graphs with this shift matrix."""
        m = math.factorial(self.k) ** self.n
        for row in self.rows:
            m *= multinomial(self.k, row)
        return m

    def weight(self) -> Polynomial3:
        a, b, c = self.shift_totals()
        if self.n == 2:
            return R0**b * (R1 + RM1) ** (a + c)
        return Polynomial3.monomial(a, b, c)


def _check_kn(k: int, n: int) -> None:
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 2:
        raise ValueError("graphs are defined for n >= 2 (n = 1 is handled by closedform)")


def _allowed_shifts(n: int) -> tuple[int, ...]:
    # n = 2: E_1 and E_-1 are the same edge set
    return (1, 0) if n == 2 else SHIFTS


def enumerate_graphs_raw(k: int, n: int) -> Iterator[Graph]:
    """Yield every graph of G_{k,n} once, by backtracking over left vertices.

    Left vertices are visited in (copy, particle) order and shifts are tried
    in the order +1, 0, -1.  Only for ``k*n <= 9``.
    """
    _check_kn(k, n)
    if k * n > RAW_GUARD:
        raise ScaleError(f"raw enumeration needs k*n <= {RAW_GUARD}, got k*n = {k * n}")
    shifts = _allowed_shifts(n)
    lefts = [Vertex("l", j, m) for m in range(1, n + 1) for j in range(1, k + 1)]
    used = [[False] * (k + 1) for _ in range(n + 1)]
    chosen: list[Edge] = []

    def rec(i: int) -> Iterator[Graph]:
        if i == len(lefts):
            yield Graph(k, n, tuple(chosen))
            return
        lv = lefts[i]
        for sh in shifts:
            rc = (lv.copy - 1 + sh) % n + 1
            for j in range(1, k + 1):
                if used[rc][j]:
                    continue
                used[rc][j] = True
                chosen.append(Edge(lv, Vertex("r", j, rc), sh))
                yield from rec(i + 1)
                chosen.pop()
                used[rc][j] = False

    yield from rec(0)


def count_graphs_raw(k: int, n: int) -> int:
    return sum(1 for _ in enumerate_graphs_raw(k, n))


def _raw_shift_histogram(k: int, n: int) -> dict[tuple[int, int, int], int]:
    # same backtracking as enumerate_graphs_raw, without building Graph objects
    _check_kn(k, n)
    if k * n > RAW_GUARD:
        raise ScaleError(f"raw enumeration needs k*n <= {RAW_GUARD}, got k*n = {k * n}")
    shifts = [(sh, SHIFTS.index(sh)) for sh in _allowed_shifts(n)]
    lefts = [m for m in range(n) for _ in range(k)]
    used = [[False] * k for _ in range(n)]
    counts = [0, 0, 0]
    hist: dict[tuple[int, int, int], int] = {}
    total = len(lefts)

    def rec(i: int) -> None:
        if i == total:
            key = (counts[0], counts[1], counts[2])
            hist[key] = hist.get(key, 0) + 1
            return
        m = lefts[i]
        for sh, idx in shifts:
            row = used[(m + sh) % n]
            for j in range(k):
                if row[j]:
                    continue
                row[j] = True
                counts[idx] += 1
                rec(i + 1)
                counts[idx] -= 1
                row[j] = False

    rec(0)
    return hist


def partition_function_raw(k: int, n: int) -> Polynomial3:
    """Partition function of G_{k,n} summed over the raw matchings."""
    counts = _raw_shift_histogram(k, n)
    total = Polynomial3()
    for (n1, n0, nm1), c in counts.items():
        if n == 2:
            total = total + (R0**n0 * (R1 + RM1) ** (n1 + nm1)) * c
        else:
            total = total + Polynomial3.monomial(n1, n0, nm1, c)
    return total


@lru_cache(maxsize=None)
def _rows(k: int, n: int) -> tuple[tuple[int, int, int], ...]:
    if n == 2:
        return tuple((a, k - a, 0) for a in range(k, -1, -1))
    return tuple(
        (a, b, k - a - b) for a in range(k, -1, -1) for b in range(k - a, -1, -1)
    )


def enumerate_shift_matrices(k: int, n: int) -> Iterator[ShiftMatrix]:
    """Yield every feasible shift matrix for (k, n).

    A matrix is feasible when each copy sends out ``k`` edges and each copy
    receives ``k``: ``s[p-1][+1] + s[p][0] + s[p+1][-1] = k`` cyclically.
    For ``n = 2`` only the shifts 0 and +1 (the merged cross edge) occur.
    """
    _check_kn(k, n)
    rows = _rows(k, n)
    chosen: list[tuple[int, int, int]] = []

    def incoming_ok(p: int) -> bool:
        return chosen[(p - 1) % n][0] + chosen[p][1] + chosen[(p + 1) % n][2] == k

    def rec(m: int) -> Iterator[ShiftMatrix]:
        if m == n:
            # constraints touching the wrap-around
            if incoming_ok(n - 1) and incoming_ok(0):
                yield ShiftMatrix(k, n, tuple(chosen))
            return
        for row in rows:
            chosen.append(row)
            # once row m is placed, copy m-1 has all its incoming edges fixed
            if m < 2 or incoming_ok(m - 1):
                yield from rec(m + 1)
            chosen.pop()

    yield from rec(0)


def partition_function_from_matrices(k: int, n: int) -> Polynomial3:
    """Sum of multiplicity times weight over the enumerated shift matrices."""
    acc: dict[tuple[int, int, int], int] = {}
    for sm in enumerate_shift_matrices(k, n):
        key = sm.shift_totals()
        acc[key] = acc.get(key, 0) + sm.multiplicity()
    total = Polynomial3()
    for (a, b, c), mult in acc.items():
        if n == 2:
            total = total + R0**b * (R1 + RM1) ** (a + c) * mult
        else:
            total = total + Polynomial3.monomial(a, b, c, mult)
    return total


def _row_weight_table(k: int, n: int) -> dict[tuple[int, int, int], int]:
    return {row: multinomial(k, row) for row in _rows(k, n)}


def partition_function_fast(k: int, n: int) -> Polynomial3:
    """Partition function of G_{k,n} via a transfer matrix around the copy cycle.

    Rows ``s[0], s[1], ...`` are placed in order.  Placing row ``m`` fixes
    the incoming count of copy ``m-1``, so the only state carried forward is
    ``(s[m-1][+1], s[m][0], s[m])`` plus the rows needed to close the cycle.
    Each path accumulates ``prod_m multinomial(k; s[m])`` as coefficient and
    the shift totals as exponents; the ``(k!)^n`` right-vertex factor is
    applied once at the end.
    """
    _check_kn(k, n)
    rows = _rows(k, n)
    wt = _row_weight_table(k, n)

    # state after placing rows 0..m:
    #   (row0, row1, a_{m-1}, row_m) -> {(A, B, C): coeff}
    # row0/row1 are kept so the wrap-around constraints can be checked.
    states: dict[tuple, dict[tuple[int, int, int], int]] = {}
    for r0 in rows:
        for r1 in rows:
            key = (r0, r1, r0[0], r1)
            tot = (r0[0] + r1[0], r0[1] + r1[1], r0[2] + r1[2])
            states.setdefault(key, {})
            states[key][tot] = states[key].get(tot, 0) + wt[r0] * wt[r1]

    for m in range(2, n):
        nxt: dict[tuple, dict[tuple[int, int, int], int]] = {}
        for (f0, f1, a_prev, cur), poly in states.items():
            # incoming of copy m-1: a_{m-2} + b_{m-1} + c_m = k
            need_c = k - a_prev - cur[1]
            if need_c < 0:
                continue
            for row in rows:
                if row[2] != need_c:
                    continue
                key = (f0, f1, cur[0], row)
                tgt = nxt.setdefault(key, {})
                w = wt[row]
                for (A, B, C), coeff in poly.items():
                    kk = (A + row[0], B + row[1], C + row[2])
                    tgt[kk] = tgt.get(kk, 0) + coeff * w
        states = nxt

    acc: dict[tuple[int, int, int], int] = {}
    for (f0, f1, a_prev, last), poly in states.items():
        # copy n-1 receives from n-2 (+1), itself (0) and copy 0 (-1)
        if a_prev + last[1] + f0[2] != k:
            continue
        # copy 0 receives from n-1, itself and copy 1
        if last[0] + f0[1] + f1[2] != k:
            continue
        for kk, coeff in poly.items():
            acc[kk] = acc.get(kk, 0) + coeff

    scale = math.factorial(k) ** n
    total = Polynomial3()
    for (a, b, c), coeff in acc.items():
        if n == 2:
            total = total + R0**b * (R1 + RM1) ** (a + c) * (coeff * scale)
        else:
            total = total + Polynomial3.monomial(a, b, c, coeff * scale)
    return total


def restricted_partition_k1(n: int) -> Polynomial3:
    """Open-chain (k = 1) partition function by the two-term recursion.

    ``p~_n = r0 p~_{n-1} + r1 rm1 p~_{n-2}`` with ``p~_0 = 1``, ``p~_1 = r0``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    prev2, prev1 = ONE, R0
    if n == 0:
        return prev2
    for _ in range(n - 1):
        prev2, prev1 = prev1, R0 * prev1 + R1 * RM1 * prev2
    return prev1


def _surd_power_parts(n: int) -> tuple[Polynomial3, Polynomial3]:
    """Split ``(r0 + sqrt(D))^n = P + Q sqrt(D)`` with ``D = r0^2 + 4 r1 rm1``."""
    disc = R0 * R0 + R1 * RM1 * 4
    P = Polynomial3()
    Q = Polynomial3()
    for j in range(n + 1):
        term = R0 ** (n - j) * disc ** (j // 2) * math.comb(n, j)
        if j % 2 == 0:
            P = P + term
        else:
            Q = Q + term
    return P, Q


def restricted_partition_k1_closed(n: int) -> Polynomial3:
    """Closed form of the restricted partition function, expanded exactly.

    ``((r0 + sqrt D)^{n+1} - (r0 - sqrt D)^{n+1}) / (2^{n+1} sqrt D)``: the
    odd powers of ``sqrt D`` survive, leaving ``2 Q / 2^{n+1}``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    _, Q = _surd_power_parts(n + 1)
    return Q.exact_div(2**n)


def partition_k1_polynomial_closed(n: int) -> Polynomial3:
    """``r1^n + rm1^n + lambda_+^n + lambda_-^n`` expanded as an exact polynomial."""
    if n < 1:
        raise ValueError("n must be >= 1")
    P, _ = _surd_power_parts(n)
    return R1**n + RM1**n + P.exact_div(2 ** (n - 1))


def partition_k1_from_restricted(n: int) -> Polynomial3:
    """``p_{1,n} = r1^n + rm1^n + p~_n + r1 rm1 p~_{n-2}``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return R1**n + RM1**n + restricted_partition_k1(n) + R1 * RM1 * restricted_partition_k1(n - 2)


def k1_eigenvalues(r1: float, r0: float, rm1: float) -> tuple[float, float, float, float]:
    """The four non-zero partial-transpose eigenvalues for one particle."""
    root = math.sqrt(r0 * r0 + 4 * r1 * rm1)
    return (r1, rm1, (r0 + root) / 2, (r0 - root) / 2)


def partition_k1_closed(n: float, r) -> float:
    """Four-eigenvalue closed form of ``p_{1,n}`` at real ratios.

    For integer ``n`` this is the polynomial value.  For other ``n`` the
    negative branch is continued through its even powers, i.e. ``|.|^n``.
    """
    r1, r0, rm1 = as_ratios(r).as_floats()
    lam = k1_eigenvalues(r1, r0, rm1)
    if float(n).is_integer():
        ni = int(n)
        return math.fsum(x**ni for x in lam)
    return math.fsum(abs(x) ** n for x in lam)
