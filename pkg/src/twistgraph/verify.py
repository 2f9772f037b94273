"""Reproduction checks behind ``twistgraph verify``.

Each check records what was expected and what was computed; a report is a
list of :class:`Check` objects that the CLI dumps as JSON.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable

from . import closedform, fock, graphs, qubit
from .poly3 import R0, R1, RM1, Polynomial3
from .ratios import RegionRatios

SCOPES = ("paper-values", "closed-vs-graph", "cross-routes", "recursion", "renyi", "twist", "fock", "groups", "all")

# Reference polynomials for (k, n) = (1, 3), (1, 4) and, divided by (k!)^n, (2, 3).
REFERENCE_P13 = "r0^3 + 3 r1 rm1 r0 + r1^3 + rm1^3"
REFERENCE_P14 = "r1^4 + rm1^4 + r0^4 + 4 r0^2 r1 rm1 + 2 r1^2 rm1^2"


def reference_k2n3() -> Polynomial3:
    """The two-particle, three-copy polynomial; homogeneity fixes the ``r1^2 rm1^2`` term's partner as ``r0^2``."""
    return (
        R0**6
        + R1 * RM1 * R0 * (R1**3 + RM1**3 + R0**3) * 12
        + (R1**3 * R0**3 + RM1**3 * R0**3 + R1**3 * RM1**3) * 8
        + R1**2 * RM1**2 * R0**2 * 27
        + R1**6
        + RM1**6
    )


def reference_partition(k: int, n: int) -> Polynomial3:
    if (k, n) == (1, 3):
        return Polynomial3.parse_text(REFERENCE_P13)
    if (k, n) == (1, 4):
        return Polynomial3.parse_text(REFERENCE_P14)
    if (k, n) == (2, 3):
        return reference_k2n3() * 8
    raise KeyError((k, n))


# Fixed grid of exact ratio triples used by the cross-route checks.
RATIO_GRID: tuple[RegionRatios, ...] = tuple(
    RegionRatios(Fraction(a), Fraction(b), Fraction(c))
    for a, b, c in [
        ("1/3", "1/3", "1/3"),
        ("1/2", "1/4", "1/4"),
        ("1/4", "1/2", "1/4"),
        ("1/2", "1/3", "1/6"),
        ("1/6", "1/3", "1/2"),
        ("1", "0", "0"),
        ("0", "1", "0"),
        ("0", "0", "1"),
        ("1/2", "0", "1/2"),
        ("1/2", "1/2", "0"),
        ("0", "1/2", "1/2"),
        ("1/5", "2/5", "2/5"),
        ("3/5", "1/5", "1/5"),
        ("1/7", "2/7", "4/7"),
        ("3/8", "1/8", "1/2"),
        ("2/9", "4/9", "1/3"),
        ("1/10", "7/10", "1/5"),
        ("5/12", "1/4", "1/3"),
        ("3/4", "1/8", "1/8"),
        ("2/11", "5/11", "4/11"),
    ]
)


def layout_for(r: RegionRatios) -> fock.RegionLayout:
    L = math.lcm(r.r1.denominator, r.r0.denominator, r.rm1.denominator)
    return fock.RegionLayout(int(r.r1 * L), int(r.r0 * L), int(r.rm1 * L))


def random_triples(count: int, seed: int = 20240117) -> list[tuple[float, float, float]]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        a, b = sorted((rng.random(), rng.random()))
        out.append((a, b - a, 1.0 - b))
    return out


@dataclass
class Check:
    scope: str
    name: str
    expected: Any
    actual: Any
    ok: bool
    detail: str = ""

    def to_json_obj(self) -> dict:
        return {
            "scope": self.scope,
            "name": self.name,
            "expected": _jsonable(self.expected),
            "actual": _jsonable(self.actual),
            "ok": self.ok,
            **({"detail": self.detail} if self.detail else {}),
        }


def _jsonable(v: Any) -> Any:
    if isinstance(v, Polynomial3):
        return v.to_json_obj()
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, int) and not isinstance(v, bool):
        return str(v)
    return v


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    def add(self, scope: str, name: str, expected: Any, actual: Any, ok: bool | None = None, detail: str = "") -> None:
        if ok is None:
            ok = expected == actual
        self.checks.append(Check(scope, name, expected, actual, bool(ok), detail))

    def close(self, scope: str, name: str, expected: float, actual: float, tol: float) -> None:
        self.add(scope, name, expected, actual, abs(float(expected) - float(actual)) <= tol, f"tol={tol:g}")

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json_obj(self) -> dict:
        return {
            "schema": "twistgraph/1",
            "ok": self.ok,
            "passed": sum(c.ok for c in self.checks),
            "failed": sum(not c.ok for c in self.checks),
            "checks": [c.to_json_obj() for c in self.checks],
        }


def check_reference_values(rep: Report) -> None:
    s = "paper-values"
    for k, n in ((1, 3), (1, 4), (2, 3)):
        want = reference_partition(k, n)
        rep.add(s, f"partition_raw({k},{n})", want, graphs.partition_function_raw(k, n))
        rep.add(s, f"partition_fast({k},{n})", want, graphs.partition_function_fast(k, n))
    for n in range(1, 13):
        for sig in range(n // 2 + 1):
            want = n * math.comb(n - sig, sig) // (n - sig)
            rep.add(s, f"A[k=1,n={n},p=0,sigma={sig}]", want, closedform.coefficient_A(1, n, 0, sig))
    for n in range(3, 11):
        rep.add(s, f"A[k=2,n={n},p=0,sigma=2]", n * (8 * n - 15), closedform.coefficient_A(2, n, 0, 2))
        rep.add(s, f"A[k=2,n={n},p=0,sigma=3]", Fraction(4 * n * (8 * n * n - 45 * n + 67), 3),
                closedform.coefficient_A(2, n, 0, 3))
    for n in range(2, 11, 2):
        rep.add(s, f"A[k=2,n={n},p=0,sigma=n]", 2**n + 2, closedform.coefficient_A(2, n, 0, n))


def check_closed_vs_graph(rep: Report, kmax: int = 3, nmax: int = 6) -> None:
    s = "closed-vs-graph"
    for k in range(1, kmax + 1):
        for n in range(2, nmax + 1):
            rep.add(s, f"(k!)^n closed == fast ({k},{n})",
                    graphs.partition_function_fast(k, n),
                    closedform.negativity_polynomial(k, n) * math.factorial(k) ** n)


def check_cross_routes(rep: Report, grid: Iterable[RegionRatios] = RATIO_GRID) -> None:
    s = "cross-routes"
    for r in grid:
        tag = f"r=({r.r1},{r.r0},{r.rm1})"
        for k in (1, 2):
            for n in (1, 2, 3, 4):
                poly_val = closedform.negativity_exp(k, n, r)
                direct = qubit.negativity_direct_sum(k, n, r)
                rep.add(s, f"direct_sum k={k} n={n} {tag}", poly_val, direct)
                if n >= 2:
                    fast = graphs.partition_function_fast(k, n).evaluate(*r.as_tuple()) / math.factorial(k) ** n
                    rep.add(s, f"graph_fast k={k} n={n} {tag}", poly_val, fast)
                rep.close(s, f"density k={k} n={n} {tag}", poly_val, qubit.density_matrix_negativity(k, n, r), 1e-10)
                if k * n <= fock.WICK_GUARD:
                    rep.add(s, f"wick k={k} n={n} {tag}", poly_val, fock.wick_oracle(k, n, layout_for(r)))


def check_recursion(rep: Report, nmax: int = 12, samples: int = 100) -> None:
    s = "recursion"
    for n in range(0, nmax + 1):
        rep.add(s, f"restricted recursion == closed n={n}",
                graphs.restricted_partition_k1_closed(n), graphs.restricted_partition_k1(n))
    for n in range(2, nmax + 1):
        rep.add(s, f"p_1n decomposition n={n}",
                graphs.partition_function_fast(1, n), graphs.partition_k1_from_restricted(n))
        rep.add(s, f"p_1n eigenvalue form n={n}",
                graphs.partition_function_fast(1, n), graphs.partition_k1_polynomial_closed(n))
    worst_closed = 0.0
    worst_log = 0.0
    for t in random_triples(samples):
        for n in range(1, nmax + 1):
            poly = closedform.negativity_polynomial(1, n)
            worst_closed = max(worst_closed, abs(graphs.partition_k1_closed(n, t) - poly.evaluate_float(*t)))
        worst_log = max(worst_log, abs(closedform.log_negativity_k1(t) - qubit.log_negativity_from_spectrum(1, t)))
    rep.add(s, "partition_k1_closed vs polynomial (max abs err)", "<= 1e-12", worst_closed, worst_closed <= 1e-12)
    rep.add(s, "log_negativity_k1 vs spectrum (max abs err)", "<= 1e-12", worst_log, worst_log <= 1e-12)


def check_renyi(rep: Report, kmax: int = 4, nmax: int = 6) -> None:
    s = "renyi"
    r1_values = [Fraction(0), Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(2, 7), Fraction(5, 6)]
    for k in range(1, kmax + 1):
        for n in range(1, nmax + 1):
            for r1 in r1_values:
                r0 = 1 - r1
                want = closedform.renyi_exp(k, n, r1, r0)
                tag = f"k={k} n={n} r1={r1}"
                rep.add(s, f"renyi_direct {tag}", want, qubit.renyi_direct(k, n, r1, r0))
                rep.add(s, f"negativity poly rm1=0 {tag}", want,
                        closedform.negativity_polynomial(k, n).evaluate(r1, r0, 0))
                if n >= 2:
                    rep.add(s, f"graph partition rm1=0 {tag}", want,
                            graphs.partition_function_fast(k, n).evaluate(r1, r0, 0) / math.factorial(k) ** n)
                if qubit.direct_sum_admits(k, n):
                    rep.add(s, f"direct_sum rm1=0 {tag}", want,
                            qubit.negativity_direct_sum(k, n, (r1, r0, Fraction(0))))


def check_twist(rep: Report) -> None:
    s = "twist"
    for r in RATIO_GRID[:10]:
        for n in (1, 2, 3):
            rep.add(s, f"twist == direct n={n} r=({r.r1},{r.r0},{r.rm1})",
                    qubit.negativity_direct_sum(1, n, r), qubit.twist_operator_check(1, n, r))
    r = RATIO_GRID[3]
    for factor in (1, 0, -1):
        oks = [qubit.unitary_invariance_check(1, r, seed, n=n, factors=(factor,))
               for seed in range(10) for n in (2, 3)]
        rep.add(s, f"unitary invariance factor {factor}", True, all(oks))


def check_fock(rep: Report, Lmax: int = 8, kmax: int = 3) -> None:
    s = "fock"
    bad = 0
    total = 0
    for L in range(1, Lmax + 1):
        for L1 in range(L + 1):
            for L0 in range(L - L1 + 1):
                layout = fock.RegionLayout(L1, L0, L - L1 - L0)
                for k in range(1, kmax + 1):
                    total += 1
                    if fock.fock_to_qubit(k, layout).amp2 != qubit.build_qubit_state(k, layout.ratios()).amp2:
                        bad += 1
    rep.add(s, f"fock_to_qubit == build_qubit_state over {total} cases", 0, bad)


def check_groups(rep: Report) -> None:
    s = "groups"
    for r in RATIO_GRID[:5]:
        for n in (2, 3, 4):
            for k in (1, 2, 3):
                rep.add(s, f"single group k={k} n={n}", closedform.negativity_exp(k, n, r),
                        closedform.multi_group_negativity_exp([k], n, r))
            for g in (2, 3):
                rep.add(s, f"{g} one-particle groups n={n}", closedform.negativity_exp(1, n, r) ** g,
                        closedform.multi_group_negativity_exp([1] * g, n, r))


RUNNERS: dict[str, Callable[[Report], None]] = {
    "paper-values": check_reference_values,
    "closed-vs-graph": check_closed_vs_graph,
    "cross-routes": check_cross_routes,
    "recursion": check_recursion,
    "renyi": check_renyi,
    "twist": check_twist,
    "fock": check_fock,
    "groups": check_groups,
}


def run(scope: str = "all", grid: Iterable[RegionRatios] | None = None) -> Report:
    """Run one scope (or ``"all"``); ``grid`` replaces the cross-route ratio grid."""
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}; choose from {', '.join(SCOPES)}")
    rep = Report()
    for name, runner in RUNNERS.items():
        if scope not in ("all", name):
            continue
        if name == "cross-routes" and grid is not None:
            check_cross_routes(rep, grid)
        else:
            runner(rep)
    return rep
