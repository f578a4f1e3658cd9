import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chainlcp.chain_ring import parse_ring
from chainlcp.errors import CapacityError, DimensionMismatch, RingMismatch, ZeroCode
from chainlcp.finite_group import CoordinatePermutation
from chainlcp.linear_code import (LinearCode, all_words, brute_force_dual, brute_force_min_weight,
                                  brute_force_span, cardinality, code_sum, codes_equal, colon_gamma, contains,
                                  dual, intersect, is_free, min_distance, normalize, permute_code,
                                  project_code)

Z4 = parse_ring("Z4")


def code(rows, ring=Z4, n=None):
    return LinearCode(ring, n if n is not None else len(rows[0]), rows)


def test_normalize_examples():
    rows = [(2, 1, 1), (1, 2, 1), (1, 1, 2)]
    nf = normalize(Z4, rows)
    assert nf.type_vector == (2, 0)
    assert len(brute_force_span(Z4, rows, 3)) == 16 == code(rows).cardinality
    assert normalize(Z4, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]).type_vector == (3, 0)
    C = code([(2, 2)])
    assert C.type_vector == (0, 1) and C.cardinality == 2
    assert brute_force_span(Z4, [(2, 2)], 2) == {(0, 0), (2, 2)}
    assert normalize(Z4, [], 3).type_vector == (0, 0)


def test_normal_form_shape():
    C = code([(2, 1, 1), (1, 2, 1), (1, 1, 2)])
    nf = C.normal
    assert nf.rows == ((1, 0, 3), (0, 1, 3))
    assert nf.pivots == (0, 1) and nf.valuations == (0, 0)
    assert normalize(Z4, nf.rows, 3) == nf


def test_cardinality_and_freeness_examples():
    rep = code([(1, 1, 1)])
    assert cardinality(rep) == 4 and is_free(rep)
    assert len(brute_force_span(Z4, [(1, 1, 1)], 3)) == 4
    assert cardinality(code([(2, 2)])) == 2 and not is_free(code([(2, 2)]))
    zero = LinearCode.zero(Z4, 3)
    assert cardinality(zero) == 1 and is_free(zero) and zero.rank == 0


def test_dual_examples():
    C = code([(1, 1, 1)])
    Cd = dual(C)
    oracle = {w for w in itertools.product(range(4), repeat=3) if sum(w) % 4 == 0}
    assert Cd.codeword_set() == oracle and Cd.cardinality == 16
    assert dual(LinearCode.full(Z4, 3)).is_zero()
    D = code([(2, 1, 1), (1, 2, 1)])
    assert D.dual().codeword_set() == brute_force_dual(Z4, D.rows, 3) == C.codeword_set()


def test_sum_and_intersection_examples():
    C, D = code([(1, 1, 1)]), code([(2, 1, 1), (1, 2, 1)])
    assert code_sum(C, D).cardinality == 64 and code_sum(C, D).is_full()
    assert intersect(C, C) == C
    assert intersect(C, D).is_zero()
    assert not (brute_force_span(Z4, C.rows, 3) & brute_force_span(Z4, D.rows, 3)) - {(0, 0, 0)}


def test_contains_examples():
    C = code([(1, 1, 1)])
    assert contains(C, (2, 2, 2))
    assert contains(C, (0, 0, 0)) and contains(code([(2, 2)]), (0, 0))
    assert not contains(C, (1, 0, 0))
    with pytest.raises(DimensionMismatch):
        contains(C, (1, 1))


def test_project_code_examples():
    C = code([(1, 1, 1)])
    P = project_code(C)
    assert P.ring == Z4.residue_field
    assert P.codeword_set() == {tuple(a % 2 for a in w) for w in C.codeword_set()} == {(0, 0, 0), (1, 1, 1)}
    assert project_code(LinearCode.zero(Z4, 3)).is_zero()
    assert project_code(code([(2, 2)])).is_zero()


def brute_colon(C, i):
    g = C.ring.gamma_power(i)
    words = C.codeword_set()
    return {w for w in itertools.product(range(C.ring.size), repeat=C.n)
            if tuple(C.ring.mul(g, a) for a in w) in words}


def test_colon_examples():
    C = code([(1, 1, 1)])
    K = colon_gamma(C, 1)
    assert K.codeword_set() == brute_colon(C, 1)
    assert K.cardinality == 16 and K == C + LinearCode.gamma_space(Z4, 3, 1)
    assert colon_gamma(C, 0) == C
    assert colon_gamma(C, 2).is_full()
    with pytest.raises(ValueError):
        colon_gamma(C, 3)


def test_min_distance_examples():
    C = code([(1, 1, 1)])
    assert min_distance(C) == 3 == brute_force_min_weight(C.codeword_set())
    assert min_distance(LinearCode.full(Z4, 3)) == 1
    with pytest.raises(ZeroCode):
        min_distance(LinearCode.zero(Z4, 3))
    for method in ("enumerate", "residue"):
        assert C.min_distance(method) == 3
    with pytest.raises(ValueError):
        code([(2, 2)]).min_distance("residue")


def test_min_distance_capacity():
    C = LinearCode.full(Z4, 13)
    with pytest.raises(CapacityError):
        C.min_distance("enumerate")
    assert C.min_distance("enumerate", cap=1 << 27) == 1


def test_permute_and_equality_examples():
    tau = CoordinatePermutation((0, 2, 1))
    assert permute_code(code([(1, 2, 3)]), tau) == code([(1, 3, 2)])
    assert permute_code(code([(1, 2, 3)]), CoordinatePermutation.identity(3)) == code([(1, 2, 3)])
    assert codes_equal(code([(1, 1, 1)]), code([(3, 3, 3)]))
    with pytest.raises(DimensionMismatch):
        permute_code(code([(1, 1)]), tau)


def test_mismatches():
    with pytest.raises(RingMismatch):
        code([(1, 1)]) + LinearCode(parse_ring("F2u2"), 2, [(1, 1)])
    with pytest.raises(DimensionMismatch):
        code([(1, 1)]) + code([(1, 1, 1)])
    with pytest.raises(DimensionMismatch):
        LinearCode(Z4, 3, [(1, 1)])
    with pytest.raises(ValueError):
        LinearCode(Z4, 2, [(4, 1)])


def test_code_file_round_trip():
    for ring, rows in [(Z4, [(2, 1, 1), (1, 2, 1)]), (parse_ring("F4u2"), [(5, 7, 13)]), (Z4, [])]:
        C = LinearCode(ring, 3, rows)
        back = LinearCode.from_json(json.loads(json.dumps(C.to_json())))
        assert back == C
    for bad in [{"n": 2, "generators": []}, {"ring": {"family": "Zpv", "p": 2, "v": 2}, "n": 2,
                                             "generators": [[1]]}, []]:
        with pytest.raises(ValueError):
            LinearCode.from_json(bad)


def test_weight_distribution():
    C = code([(1, 1, 1)])
    assert C.weight_distribution() == (1, 0, 0, 3)


# -- exhaustive cross-checks on every code of small length --------------------------------------

@pytest.mark.parametrize("name,n", [("Z4", 2), ("F2u2", 2), ("Z9", 2), ("Z8", 2), ("Z4", 3)])
def test_all_small_codes_against_oracles(name, n):
    R = parse_ring(name)
    words = [tuple(w) for w in all_words(R, n).tolist()]
    pairs = list(itertools.combinations(words, 2))
    gens = [[w] for w in words] + [list(p) for p in pairs[:: max(1, len(pairs) // 300)]]
    seen = {}
    for rows in gens:
        C = LinearCode(R, n, rows)
        span = brute_force_span(R, rows, n)
        assert C.codeword_set() == span
        assert C.cardinality == len(span)
        assert C.dual().codeword_set() == brute_force_dual(R, rows, n)
        key = frozenset(span)
        if key in seen:
            assert seen[key] == C.normal.rows  # equal spans give equal normal forms
        seen[key] = C.normal.rows
        if len(span) > 1:
            assert C.min_distance() == brute_force_min_weight(span)


# -- properties -----------------------------------------------------------------------------------

RINGS = ["Z4", "Z8", "Z9", "F2u2", "F2u3", "F3u2", "F4u2"]


@st.composite
def codes(draw, max_n=5):
    R = parse_ring(draw(st.sampled_from(RINGS)))
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(0, n + 1))
    rows = [[draw(st.integers(0, R.size - 1)) for _ in range(n)] for _ in range(k)]
    return LinearCode(R, n, rows)


@settings(max_examples=150, deadline=None)
@given(codes())
def test_duality_properties(C):
    R, n = C.ring, C.n
    assert C.dual().dual() == C
    assert C.dual().cardinality * C.cardinality == R.size**n
    assert C.cardinality == R.q ** sum((R.v - i) * k for i, k in enumerate(C.type_vector))
    assert all(r in C for r in C.rows)
    assert normalize(R, C.normal.rows, n) == C.normal
    if C.is_free():
        assert C.project().dual() == C.dual().project()
        assert C.dual().is_free()
        assert all(C.colon_gamma(i).project() == C.project() for i in range(R.v))
        assert all(C & LinearCode.gamma_space(R, n, i) == C.scale_gamma(i) for i in range(R.v + 1))


@settings(max_examples=100, deadline=None)
@given(codes(max_n=4), st.data())
def test_sum_intersection_membership(C, data):
    R, n = C.ring, C.n
    rows = [[data.draw(st.integers(0, R.size - 1)) for _ in range(n)] for _ in range(data.draw(st.integers(0, 3)))]
    D = LinearCode(R, n, rows)
    S, I = C + D, C & D
    assert C <= S and D <= S and I <= C and I <= D
    assert S.cardinality * I.cardinality == C.cardinality * D.cardinality
    w = data.draw(st.lists(st.integers(0, R.size - 1), min_size=n, max_size=n))
    assert (tuple(w) in I) == (tuple(w) in C and tuple(w) in D)


@settings(max_examples=100, deadline=None)
@given(codes(max_n=4))
def test_colon_chain_and_duality(C):
    R = C.ring
    chain = [C.colon_gamma(i) for i in range(R.v + 1)]
    assert all(a <= b for a, b in zip(chain, chain[1:]))
    assert chain[0] == C and chain[-1].is_full()
    for i in range(R.v):
        assert C.colon_gamma(R.v - 1 - i).project().dual() == C.dual().colon_gamma(i).project()


@settings(max_examples=60, deadline=None)
@given(codes(max_n=4))
def test_enumeration_is_exact(C):
    if C.cardinality > 4096:
        return
    words = C.codewords()
    assert len({tuple(w) for w in words.tolist()}) == C.cardinality
    if not C.is_zero():
        assert C.min_distance("enumerate") == brute_force_min_weight(words.tolist())
        assert np.count_nonzero(words, axis=1).min() == 0
