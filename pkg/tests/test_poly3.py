import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from twistgraph.poly3 import ONE, R0, R1, RM1, Polynomial3, PolynomialParseError

DATA = Path(__file__).parent / "data" / "v1"

exps = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
polys = st.dictionaries(exps, st.integers(-20, 20), max_size=6).map(Polynomial3)
rationals = st.fractions(min_value=-3, max_value=3, max_denominator=12)


def test_add_cancels_to_zero():
    z = R1 + (-1) * R1
    assert z == Polynomial3.zero()
    assert z.to_json_obj() == {"terms": []}
    assert len(z) == 0


def test_add_two_terms():
    p = R0**3 + 3 * R1 * R0 * RM1
    assert len(p) == 2
    assert p.coefficient(1, 1, 1) == 3


def test_assemble_p13_from_monomials():
    p = (
        Polynomial3.monomial(0, 3, 0)
        + Polynomial3.monomial(1, 1, 1, 3)
        + Polynomial3.monomial(3, 0, 0)
        + Polynomial3.monomial(0, 0, 3)
    )
    assert p == Polynomial3.parse_text("r0^3 + 3 r1 rm1 r0 + r1^3 + rm1^3")


def test_mul_examples():
    assert (R1 + RM1) ** 2 == R1**2 + 2 * R1 * RM1 + RM1**2
    assert (R1 + R0) * Polynomial3.zero() == Polynomial3.zero()
    # multinomial expansion oracle: 3!/(1!1!1!) = 6
    assert ((R1 + R0 + RM1) ** 3).coefficient(1, 1, 1) == 6


def test_eval_counts_graphs_and_normalisation():
    p13 = Polynomial3.parse_text("r0^3 + 3 r1 rm1 r0 + r1^3 + rm1^3")
    assert p13.evaluate(1, 1, 1) == 6
    r = (Fraction(2, 7), Fraction(1, 7), Fraction(4, 7))
    for k in range(1, 5):
        assert ((R1 + R0 + RM1) ** k).evaluate(*r) == 1


def test_eval_p14_quarter_half_quarter():
    p14 = Polynomial3.parse_text("r1^4 + rm1^4 + r0^4 + 4 r0^2 r1 rm1 + 2 r1^2 rm1^2")
    a, b = Fraction(1, 4), Fraction(1, 2)
    # direct substitution, written out term by term
    oracle = a**4 + a**4 + b**4 + 4 * b**2 * a * a + 2 * a**2 * a**2
    assert oracle == Fraction(9, 64)
    assert p14.evaluate(a, b, a) == oracle


def test_serialize_examples():
    assert Polynomial3.zero().to_json_obj() == {"terms": []}
    assert (R0**6).to_json_obj() == {"terms": [{"e1": 0, "e0": 6, "em1": 0, "c": "1"}]}


def test_canonical_order_descending():
    p = R0 + RM1 + R1 + R1 * R0
    keys = [e for e, _ in p]
    assert keys == sorted(keys, reverse=True)


def test_big_coefficients_are_strings():
    p = Polynomial3.monomial(1, 0, 0, 10**30)
    obj = p.to_json_obj()
    assert obj["terms"][0]["c"] == str(10**30)
    assert Polynomial3.from_json(json.dumps(obj)) == p


@pytest.mark.parametrize("name", ["partition_k1_n3", "partition_k1_n4", "partition_k2_n3"])
def test_golden_round_trip(name):
    text = (DATA / f"{name}.json").read_text()
    p = Polynomial3.from_json(text)
    assert Polynomial3.from_json(p.to_json()) == p
    assert p.to_json_obj() == json.loads(text)
    assert Polynomial3.parse_text(p.to_text()) == p


@pytest.mark.parametrize(
    "bad",
    [
        "[]",
        '{"terms": 3}',
        '{"terms": [{"e1": 1, "e0": 0}]}',
        '{"terms": [{"e1": 1, "e0": 0, "em1": 0, "c": 3}]}',
        '{"terms": [{"e1": -1, "e0": 0, "em1": 0, "c": "3"}]}',
        '{"terms": [{"e1": 1, "e0": 0, "em1": 0, "c": "0"}]}',
        '{"terms": [{"e1": 1, "e0": 0, "em1": 0, "c": "1"}, {"e1": 1, "e0": 0, "em1": 0, "c": "2"}]}',
        "not json",
    ],
)
def test_malformed_json_rejected(bad):
    with pytest.raises(PolynomialParseError):
        Polynomial3.from_json(bad)


@pytest.mark.parametrize("bad", ["", "r2", "3 x", "r1 +", "r1^"])
def test_malformed_text_rejected(bad):
    with pytest.raises(PolynomialParseError):
        Polynomial3.parse_text(bad)


def test_text_forms():
    assert Polynomial3.zero().to_text() == "0"
    assert ONE.to_text() == "1"
    assert (R1 - 2 * RM1).to_text() == "r1 - 2 rm1"
    assert Polynomial3.parse_text("2*r1*r0 + r0 r1") == 3 * R1 * R0


@given(polys)
def test_round_trips(p):
    assert Polynomial3.from_json(p.to_json()) == p
    assert Polynomial3.parse_text(p.to_text()) == p


@given(polys, polys, rationals, rationals, rationals)
def test_eval_is_ring_homomorphism(a, b, x, y, z):
    assert (a + b).evaluate(x, y, z) == a.evaluate(x, y, z) + b.evaluate(x, y, z)
    assert (a * b).evaluate(x, y, z) == a.evaluate(x, y, z) * b.evaluate(x, y, z)
    assert (a - b).evaluate(x, y, z) == a.evaluate(x, y, z) - b.evaluate(x, y, z)


@given(polys, polys)
def test_ring_axioms(a, b):
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == Polynomial3.zero()
    assert all(c != 0 for _, c in a)


def test_exact_div():
    assert (6 * R1 + 12 * R0).exact_div(6) == R1 + 2 * R0
    with pytest.raises(ValueError):
        (3 * R1).exact_div(2)


def test_swap_and_drop():
    p = 2 * R1**2 * R0 + RM1 * R0
    assert p.swap_shifts() == 2 * RM1**2 * R0 + R1 * R0
    assert p.drop_rm1() == 2 * R1**2 * R0
    assert p.coefficient_sum() == 3
    assert p.is_homogeneous(3) is False and (R1 * R0 + RM1**2).is_homogeneous(2)
