import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from chainlcp.chain_ring import parse_ring
from chainlcp.errors import BudgetExceeded, RingMismatch
from chainlcp.finite_group import cyclic, parse_group, power_map
from chainlcp.group_algebra import GroupAlgebra, center_basis, ga_mul, ideal_from_generators, is_two_sided_ideal
from chainlcp.linear_code import LinearCode, brute_force_span


def alg(ring, group):
    return GroupAlgebra(parse_ring(ring), parse_group(group))


def naive_mul(A, x, y):
    """Convolution straight from the definition, one group pair at a time."""
    R, G = A.ring, A.group
    out = [0] * A.n
    for g, h in itertools.product(range(A.n), repeat=2):
        k = G.mul(g, h)
        out[k] = R.add(out[k], R.mul(x[g], y[h]))
    return tuple(out)


def test_multiplication_examples():
    A = alg("Z4", "C3")
    s = (1, 1, 1)
    assert ga_mul(A, s, s) == (3, 3, 3)
    g = A.basis(1)
    assert A.mul(g, g) == A.basis(2) and A.mul(g, A.basis(2)) == A.one()
    B = alg("F2", "S3")
    z = (0, 0, 0, 1, 1, 0)  # (123) + (132)
    assert B.mul(z, z) == z
    # (12)(23) = (123) with the right factor applied first
    assert B.mul(B.basis(2), B.basis(1)) == B.basis(3)


def test_ideal_examples():
    A = alg("Z4", "C3")
    I = ideal_from_generators(A, [(1, 1, 1)])
    assert I.cardinality == 4 and I.codeword_set() == {(a, a, a) for a in range(4)}
    assert is_two_sided_ideal(A, I)
    J = ideal_from_generators(A, [(1, 3, 0)])
    assert J.cardinality == 16
    assert is_two_sided_ideal(A, LinearCode.zero(A.ring, 3)) and is_two_sided_ideal(A, LinearCode.full(A.ring, 3))


def test_is_two_sided_examples():
    B = alg("F2", "S3")
    one_sided = B.right_ideal([(1, 0, 1, 0, 0, 0)])  # 1 + (12)
    assert B.is_right_ideal(one_sided)
    assert not B.is_left_ideal(one_sided) and not B.is_two_sided_ideal(one_sided)
    # oracle: span of {x g : g in G} equals the right ideal
    x = (1, 0, 1, 0, 0, 0)
    words = brute_force_span(B.ring, [B.right_translate(x, g) for g in range(6)], 6)
    assert words == one_sided.codeword_set()
    with pytest.raises(RingMismatch):
        B.is_two_sided_ideal(LinearCode(parse_ring("F3"), 6, []))


@pytest.mark.parametrize("group,count", [("C3", 3), ("S3", 3), ("Q8", 5), ("D4", 5), ("C2xC2", 4)])
def test_center_basis(group, count):
    A = alg("Z4", group)
    basis = center_basis(A)
    assert len(basis) == count
    for z in basis:
        assert all(A.mul(z, A.basis(g)) == A.mul(A.basis(g), z) for g in range(A.n))


def brute_central_idempotents(A):
    """All central idempotents by walking the whole of R[G]."""
    out = []
    for x in itertools.product(range(A.ring.size), repeat=A.n):
        if naive_mul(A, x, x) == x and all(naive_mul(A, x, A.basis(g)) == naive_mul(A, A.basis(g), x)
                                           for g in range(A.n)):
            out.append(x)
    return sorted(out)


def test_residue_idempotent_examples():
    A = alg("F2", "C3")
    found = A.residue_central_idempotents()
    assert set(found) == {(0, 0, 0), (1, 0, 0), (1, 1, 1), (0, 1, 1)}
    assert found == brute_central_idempotents(A)
    B = alg("F2", "S3")
    assert len(B.residue_central_idempotents()) == 4
    assert B.residue_central_idempotents() == brute_central_idempotents(B)
    assert len(alg("F3", "C3").residue_central_idempotents()) == 2
    with pytest.raises(BudgetExceeded):
        alg("F2", "Q8").residue_central_idempotents(budget=8)


@pytest.mark.parametrize("ring,group", [("Z4", "C2"), ("Z4", "C3"), ("F2u2", "C3"), ("Z9", "C2"),
                                        ("Z8", "C2"), ("Z4", "C2xC2")])
def test_lifted_idempotents_match_exhaustive_search(ring, group):
    A = alg(ring, group)
    lifted = sorted(e.element for e in A.central_idempotents())
    assert lifted == brute_central_idempotents(A)
    assert lifted == A.center_idempotents_by_search()


def test_hensel_lift_examples():
    A = alg("Z4", "C3")
    assert A.hensel_lift_idempotent((1, 1, 1)).element == (3, 3, 3)
    assert A.hensel_lift_idempotent((0, 1, 1)).element == (2, 1, 1)
    B = alg("Z4", "S3")
    e = B.hensel_lift_idempotent((0, 0, 0, 1, 1, 0)).element
    assert e == (2, 0, 0, 1, 1, 0)
    assert B.mul(e, e) == e and B.is_central(e)
    with pytest.raises(ValueError):
        A.hensel_lift_idempotent((1, 1, 0))


@pytest.mark.parametrize("ring,group", [("Z4", "S3"), ("Z8", "C3"), ("F2u3", "C2xC2"), ("Z27", "C2"),
                                        ("F3u2", "C4"), ("F4u2", "C3"), ("Z9", "S3")])
def test_lift_properties(ring, group):
    A = alg(ring, group)
    lifts = A.central_idempotents()
    res = A.residue
    for e in lifts:
        x = e.element
        assert A.is_idempotent(x) and A.is_central(x)
        assert A.project(x) == e.residue_image
        assert res.is_idempotent(e.residue_image)
        f = A.sub(A.one(), x)
        assert A.is_idempotent(f) and A.mul(x, f) == A.zero()
        # uniqueness: a perturbed central start lifts to the same idempotent
        start = A.add(A.lift(e.residue_image), A.scale(A.ring.gamma_power(1), (1,) * A.n))
        assert A.hensel_lift_idempotent(e.residue_image, start).element == x
    assert len({e.element for e in lifts}) == len(lifts)


@pytest.mark.parametrize("ring,group", [("Z4", "C3"), ("F2", "S3"), ("Z4", "C2xC2"), ("F2u2", "C2"),
                                        ("Z9", "C2"), ("F3", "C3")])
def test_ring_axioms_exhaustive(ring, group):
    A = alg(ring, group)
    if A.size > 1 << 12:
        pytest.skip("exhaustive only for |R[G]| <= 2^12")
    els = list(itertools.product(range(A.ring.size), repeat=A.n))
    for x in els:
        assert A.mul(A.one(), x) == x == A.mul(x, A.one())
    sample = els[:: max(1, len(els) // 24)]
    for x, y, z in itertools.product(sample, repeat=3):
        assert A.mul(A.mul(x, y), z) == A.mul(x, A.mul(y, z))
        assert A.mul(x, A.add(y, z)) == A.add(A.mul(x, y), A.mul(x, z))
    for x, y in itertools.product(sample, repeat=2):
        assert A.mul(x, y) == naive_mul(A, x, y)


ALGEBRAS = [("Z4", "S3"), ("Z8", "C3"), ("F2u2", "Q8"), ("F4u2", "C2"), ("Z9", "D4"), ("F3u2", "C4")]


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(ALGEBRAS), st.data())
def test_projection_is_a_homomorphism(names, data):
    A = alg(*names)
    el = st.lists(st.integers(0, A.ring.size - 1), min_size=A.n, max_size=A.n).map(tuple)
    x, y, z = data.draw(el), data.draw(el), data.draw(el)
    res = A.residue
    assert A.project(A.mul(x, y)) == res.mul(A.project(x), A.project(y))
    assert A.project(A.add(x, y)) == res.add(A.project(x), A.project(y))
    assert A.mul(A.mul(x, y), z) == A.mul(x, A.mul(y, z))
    assert A.mul(x, y) == naive_mul(A, x, y)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([("Z4", 5), ("Z8", 3), ("F2u2", 7), ("Z9", 4), ("F3u2", 5)]), st.data())
def test_power_map_transports_products(params, data):
    ring, n = params
    A = GroupAlgebra(parse_ring(ring), cyclic(n))
    k = data.draw(st.sampled_from([k for k in range(1, n) if math.gcd(k, n) == 1]))
    psi = power_map(A.group, k)
    el = st.lists(st.integers(0, A.ring.size - 1), min_size=n, max_size=n).map(tuple)
    x, y = data.draw(el), data.draw(el)
    assert A.apply_map(psi, A.mul(x, y)) == A.mul(A.apply_map(psi, x), A.apply_map(psi, y))
    for e in A.central_idempotents():
        assert A.is_idempotent(A.apply_map(psi, e.element))
