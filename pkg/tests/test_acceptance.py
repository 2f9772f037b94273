"""The ten acceptance criteria, each at its stated tolerance and runtime budget.

A one-line PASS/FAIL verdict per criterion is printed in the terminal summary.
"""

import math
import random
import time
from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from twistgraph import closedform, fock, graphs, qubit
from twistgraph.poly3 import Polynomial3
from twistgraph.ratios import RegionRatios
from twistgraph.verify import RATIO_GRID, layout_for, reference_k2n3, random_triples

P13 = "r0^3 + 3 r1 rm1 r0 + r1^3 + rm1^3"
P14 = "r1^4 + rm1^4 + r0^4 + 4 r0^2 r1 rm1 + 2 r1^2 rm1^2"


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        return False

    def check(self):
        assert self.elapsed < self.seconds, f"took {self.elapsed:.2f} s, budget {self.seconds} s"


@pytest.mark.criterion(1)
def test_criterion_1_reference_polynomials():
    expected = {
        (1, 3): Polynomial3.parse_text(P13),
        (1, 4): Polynomial3.parse_text(P14),
        (2, 3): reference_k2n3() * 8,
    }
    with Budget(1.0) as b:
        got = {kn: (graphs.partition_function_raw(*kn), graphs.partition_function_fast(*kn)) for kn in expected}
    for kn, poly in expected.items():
        raw, fast = got[kn]
        assert raw == poly, kn
        assert fast == poly, kn
    b.check()


def _criterion_2_mismatches():
    bad = []
    for n in range(2, 13):
        for sigma in range(n // 2 + 1):
            want = Fraction(n, n - sigma) * math.comb(n - sigma, sigma)
            got = closedform.coefficient_A(1, n, 0, sigma)
            if got != want:
                bad.append(f"A[k=1,n={n},sigma={sigma}]={got} != {want}")
    for n in range(3, 11):
        got = closedform.coefficient_A(2, n, 0, 2)
        if got != n * (8 * n - 15):
            bad.append(f"A_0,2[n={n}]={got} != {n * (8 * n - 15)}")
        got = closedform.coefficient_A(2, n, 0, 3)
        want = Fraction(4 * n, 3) * (8 * n * n - 45 * n + 67)
        if got != want:
            bad.append(f"A_0,3[n={n}]={got} != {want}")
    for n in range(2, 11, 2):
        got = closedform.coefficient_A(2, n, 0, n)
        if got != 2**n + 2:
            bad.append(f"A_0,n[n={n}]={got} != {2**n + 2}")
    return bad


@pytest.mark.criterion(2)
def test_criterion_2_coefficients():
    with Budget(5.0) as b:
        bad = _criterion_2_mismatches()
    b.check()
    assert not bad, "; ".join(bad)


@pytest.mark.criterion(3)
def test_criterion_3_closed_form_vs_graphs():
    with Budget(60.0) as b:
        for k in (1, 2, 3):
            for n in range(2, 7):
                lhs = closedform.negativity_polynomial(k, n) * math.factorial(k) ** n
                assert lhs == graphs.partition_function_fast(k, n), (k, n)
    b.check()


@pytest.mark.criterion(4)
def test_criterion_4_four_routes():
    assert len(RATIO_GRID) == 20
    with Budget(120.0) as b:
        for k in (1, 2):
            for n in range(1, 5):
                poly = closedform.negativity_polynomial(k, n)
                graph_poly = graphs.partition_function_fast(k, n) if n >= 2 else None
                for r in RATIO_GRID:
                    exact = {
                        "polynomial": poly.evaluate(*r.as_tuple()),
                        "direct-sum": qubit.negativity_direct_sum(k, n, r),
                        "wick": fock.wick_oracle(k, n, layout_for(r)),
                    }
                    if graph_poly is not None:
                        exact["graph"] = graph_poly.evaluate(*r.as_tuple()) / math.factorial(k) ** n
                    assert len(set(exact.values())) == 1, (k, n, r, exact)
                    dens = qubit.density_matrix_negativity(k, n, r)
                    assert abs(dens - float(exact["polynomial"])) <= 1e-10, (k, n, r, dens)
    b.check()


@pytest.mark.criterion(5)
def test_criterion_5_one_particle_chain():
    triples = random_triples(100)
    with Budget(10.0) as b:
        for n in range(0, 13):
            assert graphs.restricted_partition_k1(n) == graphs.restricted_partition_k1_closed(n), n
        for n in range(2, 13):
            full = graphs.partition_function_fast(1, n)
            assert graphs.partition_k1_from_restricted(n) == full, n
        for r in triples:
            for n in range(2, 13):
                want = graphs.partition_function_fast(1, n).evaluate_float(*r)
                assert abs(graphs.partition_k1_closed(n, r) - want) <= 1e-12, (n, r)
            spec = qubit.log_negativity_from_spectrum(1, r)
            assert abs(closedform.log_negativity_k1(r) - spec) <= 1e-12, r
    b.check()


@pytest.mark.criterion(6)
def test_criterion_6_renyi_chain():
    r1_values = [Fraction(0), Fraction(1, 5), Fraction(1, 2), Fraction(2, 3), Fraction(1)]
    with Budget(10.0) as b:
        for k in range(1, 5):
            for n in range(1, 7):
                for r1 in r1_values:
                    r0 = 1 - r1
                    r = RegionRatios(r1, r0, Fraction(0))
                    vals = {
                        "renyi": closedform.renyi_exp(k, n, r1, r0),
                        "direct": qubit.renyi_direct(k, n, r1, r0),
                        "closed-negativity": closedform.negativity_exp(k, n, r),
                    }
                    if n >= 2:
                        vals["graph"] = graphs.partition_function_fast(k, n).evaluate(r1, r0, 0) / math.factorial(k) ** n
                    if qubit.direct_sum_admits(k, n):
                        vals["direct-sum"] = qubit.negativity_direct_sum(k, n, r)
                    assert len(set(vals.values())) == 1, (k, n, r1, vals)
    b.check()


@pytest.mark.criterion(7)
def test_criterion_7_twist_and_unitaries():
    grid = RATIO_GRID[:10]
    r = RATIO_GRID[1]
    with Budget(30.0) as b:
        for n in (1, 2, 3):
            for t in grid:
                assert qubit.twist_operator_check(1, n, t) == qubit.negativity_direct_sum(1, n, t), (n, t)
        for factor in (1, 0, -1):
            for seed in range(10):
                for n in (2, 3):
                    assert qubit.unitary_invariance_check(1, r, seed=seed, n=n, factors=(factor,), tol=1e-9)
    b.check()


@pytest.mark.criterion(8)
def test_criterion_8_fock_regrouping():
    with Budget(10.0) as b:
        for L in range(1, 9):
            for L1 in range(L + 1):
                for L0 in range(L - L1 + 1):
                    layout = fock.RegionLayout(L1, L0, L - L1 - L0)
                    for k in (1, 2, 3):
                        got = fock.fock_to_qubit(k, layout).amp2
                        assert got == qubit.build_qubit_state(k, layout.ratios()).amp2, (layout, k)
    b.check()


@lru_cache(maxsize=None)
def _graph_count(k, n):
    if k * n <= graphs.RAW_GUARD:
        return graphs.count_graphs_raw(k, n)
    return sum(m.multiplicity() for m in graphs.enumerate_shift_matrices(k, n))


@pytest.mark.criterion(9)
def test_criterion_9_structural_properties():
    cases = []

    @settings(max_examples=250, deadline=None, database=None)
    @given(
        k=st.integers(1, 4),
        n=st.integers(2, 6),
        cut=st.tuples(st.integers(0, 24), st.integers(0, 24)),
    )
    def check(k, n, cut):
        cases.append((k, n))
        p = graphs.partition_function_fast(k, n)
        q = closedform.negativity_polynomial(k, n)
        for poly in (p, q):
            assert poly.is_homogeneous(k * n)
            assert all(c > 0 for _, c in poly)
            assert poly.swap_shifts() == poly
        size = p.evaluate(1, 1, 0) if n == 2 else p.coefficient_sum()
        assert size == _graph_count(k, n)
        if n == 3:
            assert size == math.factorial(3 * k)
        lo, hi = sorted(cut)
        r = RegionRatios(Fraction(lo, 24), Fraction(hi - lo, 24), Fraction(24 - hi, 24))
        assert qubit.build_qubit_state(k, r).norm2() == 1

    with Budget(60.0) as b:
        check()
    b.check()
    assert len(cases) >= 200, len(cases)


@pytest.mark.criterion(10)
def test_criterion_10_momentum_groups():
    rng = random.Random(11)
    with Budget(10.0):
        for r in RATIO_GRID:
            if r.r1 * r.rm1 == 0 and r.r0 == 0:
                continue
            for n in range(2, 6):
                for k in (1, 2, 3):
                    assert closedform.multi_group_negativity([k], n, r) == closedform.negativity(k, n, r)
                    assert closedform.multi_group_negativity_exp([k], n, r) == closedform.negativity_exp(k, n, r)
                g = rng.randint(2, 5)
                assert closedform.multi_group_negativity([1] * g, n, r) == g * closedform.negativity(1, n, r)
                assert closedform.multi_group_negativity_exp([1] * g, n, r) == closedform.negativity_exp(1, n, r) ** g
