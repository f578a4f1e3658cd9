import random

import pytest

from chainlcp.chain_ring import parse_ring
from chainlcp.lcp import check_lcp
from chainlcp.linear_code import LinearCode
from chainlcp.propositions import (CHECK_NAMES, brute_force_colon, code_checks, pair_statement_checks,
                                   random_code, random_lcp_pair, run_suite, shell_partition_ok, word_keys)


@pytest.mark.parametrize("name", ["Z4", "Z9", "F2u3", "F4u2"])
def test_small_suite_passes(name):
    res = run_suite(parse_ring(name), trials=12, max_n=4)
    assert res.ok, res.failures
    data = res.to_json()
    assert set(data["checks"]) == set(CHECK_NAMES)
    assert sum(t["pass"] for t in data["checks"].values()) > 0
    assert data["failures"] == []


def test_suite_is_deterministic():
    R = parse_ring("Z8")
    assert run_suite(R, trials=6, max_n=3, seed=7).to_json() == run_suite(R, trials=6, max_n=3, seed=7).to_json()


def test_random_lcp_pair_is_lcp():
    rng = random.Random(1)
    for name in ["Z4", "F3u2", "Z27"]:
        R = parse_ring(name)
        for _ in range(10):
            C, D = random_lcp_pair(R, rng.randint(1, 4), rng)
            assert check_lcp(C, D)
            assert all(pair_statement_checks(C, D).values())


def test_random_code_produces_non_free_codes():
    rng = random.Random(3)
    R = parse_ring("Z8")
    assert any(not random_code(R, 3, rng).is_free() for _ in range(40))


def test_colon_oracle_example():
    R = parse_ring("Z4")
    C = LinearCode(R, 2, [(1, 1)])
    keys = brute_force_colon(C, 1)
    # gamma x in C iff 2x in {(a, a)} iff x_0 = x_1 mod 2
    expect = [a + 4 * b for a in range(4) for b in range(4) if (a - b) % 2 == 0]
    assert keys.tolist() == sorted(expect)
    assert keys.tolist() == word_keys(R, C.colon_gamma(1).codewords()).tolist()


def test_shell_partition():
    R = parse_ring("Z8")
    assert shell_partition_ok(LinearCode(R, 2, [(1, 3)]))
    assert shell_partition_ok(LinearCode.full(R, 2))


def test_broken_dual_is_reported(monkeypatch):
    """A sabotaged dual must show up as failed checks, not be absorbed."""
    R = parse_ring("Z4")
    C = LinearCode(R, 2, [(1, 1)])
    monkeypatch.setattr(LinearCode, "dual", lambda self: LinearCode.full(self.ring, self.n))
    checks = code_checks(C)
    assert checks["dual_involution"] is False and checks["dual_oracle"] is False
