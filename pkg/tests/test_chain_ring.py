import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chainlcp.chain_ring import (FQU, ZPV, ChainRing, RingElement, default_modulus, is_irreducible, lift,
                                 make_ring, parse_ring, project, ring_add, ring_mul, ring_neg, unit_inverse,
                                 valuation)
from chainlcp.errors import InvalidRing, NonUnit, RingMismatch

SMALL_RINGS = ["Z4", "Z8", "Z9", "Z27", "Z25", "F2", "F3", "F4", "F2u2", "F2u3", "F3u2", "F4u2", "F9", "F8u2"]


def el(R, code):
    return RingElement(R, code)


def test_make_ring_examples():
    Z4 = make_ring("Zpv", 2, v=2)
    assert Z4.name == "Z4" and Z4.q == 2 and Z4.size == 4
    assert Z4.gamma.code == 2
    R = make_ring("FqU", 2, 1, 3)
    assert R.size == 8 and R.q == 2
    assert R.gamma.to_wire() == [[0], [1], [0]]


@pytest.mark.parametrize("args", [
    ("Zpv", 6, 1, 1),
    ("Zpv", 2, 2, 2),
    ("Zpv", 3, 1, 0),
    ("FqU", 2, 2, 1, (1, 0, 1)),  # x^2 + 1 = (x + 1)^2 over F2
    ("FqU", 2, 2, 1, (1, 1, 0)),  # not monic
    ("Foo", 2, 1, 1),
])
def test_make_ring_rejects(args):
    with pytest.raises(InvalidRing):
        make_ring(*args)


def test_parse_ring_names():
    assert parse_ring("Z4") == make_ring(ZPV, 2, 1, 2)
    assert parse_ring("F2u2") == make_ring(FQU, 2, 1, 2)
    assert parse_ring("F3[u]/(u^2)") == make_ring(FQU, 3, 1, 2)
    assert parse_ring("F4u2").modulus == (1, 1, 1)
    assert parse_ring("F2").is_field
    for bad in ["Z6", "F6", "Z1", "G4", ""]:
        with pytest.raises(InvalidRing):
            parse_ring(bad)


def test_default_modulus_is_irreducible():
    for p, m in [(2, 2), (2, 3), (3, 2), (5, 2), (2, 4)]:
        mod = default_modulus(p, m)
        assert len(mod) == m + 1 and mod[-1] == 1
        assert is_irreducible(mod, p)
    # x^2 + x + 1 is the only irreducible quadratic over F2
    assert default_modulus(2, 2) == (1, 1, 1)


def test_arithmetic_examples():
    Z4, Z9, R = parse_ring("Z4"), parse_ring("Z9"), parse_ring("F2u2")
    assert ring_mul(el(Z4, 3), el(Z4, 3)).code == 1
    assert ring_mul(el(Z9, 3), el(Z9, 3)).code == 0
    one_plus_u = el(R, R.from_wire([1, 1]))
    assert ring_mul(one_plus_u, one_plus_u).code == 1
    assert ring_neg(el(Z4, 1)).code == 3
    assert ring_add(el(Z4, 3), el(Z4, 2)).code == 1


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        ring_add(el(parse_ring("Z4"), 1), el(parse_ring("F2u2"), 1))


def test_unit_inverse_examples():
    Z4, R = parse_ring("Z4"), parse_ring("F2u2")
    assert unit_inverse(el(Z4, 3)).code == 3
    x = el(R, R.from_wire([1, 1]))
    # oracle: exhaust the four elements for y with x*y = 1
    assert [y for y in range(4) if R.mul(x.code, y) == 1] == [unit_inverse(x).code]
    with pytest.raises(NonUnit):
        unit_inverse(el(Z4, 2))


def test_valuation_examples():
    Z4, R = parse_ring("Z4"), parse_ring("F2u3")
    assert valuation(el(Z4, 2)) == 1
    assert valuation(el(Z4, 0)) == 2
    assert valuation(el(R, R.from_wire([0, 0, 1]))) == 2


def test_projection_and_lift_examples():
    Z4, R, R3 = parse_ring("Z4"), parse_ring("F2u2"), parse_ring("F2u3")
    assert project(el(Z4, 3)).code == 1
    assert project(el(Z4, 2)).code == 0
    assert project(el(R, R.from_wire([1, 1]))).code == 1
    F2 = Z4.residue_field
    assert lift(el(F2, 1), Z4).code == 1
    assert lift(el(F2, 0), Z4).code == 0
    assert lift(el(R3.residue_field, 1), R3).code == 1


@pytest.mark.parametrize("name", SMALL_RINGS)
def test_ring_axioms_exhaustive(name):
    R = parse_ring(name)
    if R.size > 81:
        pytest.skip("exhaustive checks limited to |R| <= 81")
    els = range(R.size)
    one = R.from_int(1)
    for a, b in itertools.product(els, repeat=2):
        assert R.add(a, b) == R.add(b, a)
        assert R.mul(a, b) == R.mul(b, a)
        assert R.project(R.add(a, b)) == R.residue_field.add(R.project(a), R.project(b))
        assert R.project(R.mul(a, b)) == R.residue_field.mul(R.project(a), R.project(b))
        assert R.valuation(R.mul(a, b)) == min(R.valuation(a) + R.valuation(b), R.v)
    for a, b, c in itertools.product(els, repeat=3):
        assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
        assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    for a in els:
        assert R.add(a, R.neg(a)) == 0
        assert R.mul(a, one) == a
    units = R.units()
    assert len(units) == R.p ** (R.m * R.v) - R.p ** (R.m * (R.v - 1))
    for a in units:
        inv = R.inverse(a)
        assert R.mul(a, inv) == one
        assert R.inverse(inv) == a
    assert sorted(R.project(a) for a in els) == sorted(list(range(R.q)) * (R.size // R.q))


@pytest.mark.parametrize("name", SMALL_RINGS)
def test_gamma_nilpotency(name):
    R = parse_ring(name)
    g = el(R, R.gamma_power(1))
    assert (g ** R.v).code == 0
    assert (g ** (R.v - 1)).code != 0


@pytest.mark.parametrize("name", ["Z4", "Z9", "F2u2", "F4u2", "F3u2", "F8u2"])
def test_vectorised_arithmetic_matches_scalar(name):
    R = parse_ring(name)
    a = np.arange(R.size, dtype=np.int64)
    A, B = np.meshgrid(a, a)
    mul = R.np_mul(A, B)
    add = R.np_add(A, B)
    for x, y in itertools.product(range(R.size), repeat=2):
        assert mul[y, x] == R.mul(x, y)
        assert add[y, x] == R.add(x, y)


def test_wire_round_trip_and_validation():
    R = parse_ring("F4u2")
    for a in range(R.size):
        assert R.from_wire(R.to_wire(a)) == a
    assert R.to_wire(R.gamma_power(1)) == [[0, 0], [1, 0]]
    Z4 = parse_ring("Z4")
    for bad in [4, -1, 1.5, True, [1]]:
        with pytest.raises(ValueError):
            Z4.from_wire(bad)
    with pytest.raises(ValueError):
        R.from_wire([[2, 0]])


def test_json_round_trip():
    for name in SMALL_RINGS:
        R = parse_ring(name)
        assert ChainRing.from_json(R.to_json()) == R


def test_format():
    R = parse_ring("F4u2")
    assert R.format(0) == "0"
    assert R.format(R.from_wire([[1, 1], [1, 0]])) == "1+a+u"
    assert parse_ring("F2u3").format(parse_ring("F2u3").from_wire([1, 0, 1])) == "1+u^2"


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["Z8", "Z9", "Z27", "F2u3", "F3u2", "F4u2", "F8u2"]), st.data())
def test_valuation_of_products(name, data):
    R = parse_ring(name)
    a = data.draw(st.integers(0, R.size - 1))
    b = data.draw(st.integers(0, R.size - 1))
    assert R.valuation(R.mul(a, b)) == min(R.valuation(a) + R.valuation(b), R.v)
    x = data.draw(st.integers(0, R.q - 1))
    assert R.project(R.lift(x)) == x
    i = data.draw(st.integers(0, R.v))
    t, r = R.split_gamma(a, i)
    assert R.add(r, R.mul(R.gamma_power(i), t)) == a
    assert (a % R.q**i == 0) == (R.valuation(a) >= i)
