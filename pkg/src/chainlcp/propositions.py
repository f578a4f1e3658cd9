"""Randomized structural checks on codes over one chain ring.

Each trial draws a random code (often non-free) and a random LCP pair
(split rows of a random invertible matrix), then checks the duality,
residue and coset statements that the LCP verifier relies on.  Small cases
are also compared against the brute-force oracles in :mod:`linear_code`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .chain_ring import ChainRing
from .lcp import EXHAUSTIVE_LIMIT, check_lcp, verify_generating_set
from .linear_code import (LinearCode, all_words, brute_force_dual, brute_force_min_weight,
                          brute_force_span, normalize)

DEFAULT_TRIALS = 200
DEFAULT_MAX_N = 6
ORACLE_SPACE_LIMIT = 1 << 16
COLON_DUALITY_MAX_N = 4
MAX_RECORDED_FAILURES = 5

CHECK_NAMES = (
    "normalize_span", "dual_involution", "dual_cardinality", "dual_oracle", "distance_oracle",
    "colon_duality", "colon_oracle", "lcp_free", "dual_lcp", "residue_lcp", "residue_dual",
    "dual_free", "colon_residue", "gamma_intersection", "distance_residue", "shell_partition",
    "generating_set",
)


@dataclass
class Tally:
    passed: int = 0
    failed: int = 0
    skipped: int = 0

    def to_json(self) -> dict[str, int]:
        return {"pass": self.passed, "fail": self.failed, "skip": self.skipped}


@dataclass
class SuiteResult:
    ring: ChainRing
    trials: int
    seed: int
    max_n: int
    tallies: dict[str, Tally] = field(default_factory=dict)
    failures: list[dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(t.failed == 0 for t in self.tallies.values())

    def to_json(self) -> dict[str, Any]:
        return {
            "ring": self.ring.name,
            "trials": self.trials,
            "seed": self.seed,
            "max_n": self.max_n,
            "ok": self.ok,
            "checks": {k: t.to_json() for k, t in self.tallies.items()},
            "failures": self.failures,
        }


def random_code(ring: ChainRing, n: int, rng: random.Random) -> LinearCode:
    """Random rows, each pushed into gamma^j R^n for a random j so that non-free codes are common."""
    rows = []
    for _ in range(rng.randint(0, n + 1)):
        g = ring.gamma_power(rng.randrange(ring.v))
        rows.append([ring.mul(g, rng.randrange(ring.size)) for _ in range(n)])
    return LinearCode(ring, n, rows)


def random_invertible(ring: ChainRing, n: int, rng: random.Random) -> list[list[int]]:
    while True:
        M = [[rng.randrange(ring.size) for _ in range(n)] for _ in range(n)]
        if LinearCode(ring, n, M).is_full():
            return M


def random_lcp_pair(ring: ChainRing, n: int, rng: random.Random) -> tuple[LinearCode, LinearCode]:
    M = random_invertible(ring, n, rng)
    k = rng.randint(0, n)
    return LinearCode(ring, n, M[:k]), LinearCode(ring, n, M[k:])


def word_keys(ring: ChainRing, words: np.ndarray) -> np.ndarray:
    """Sorted integer keys of a block of words (base-|R| digits)."""
    n = words.shape[1]
    return np.sort(words @ (ring.size ** np.arange(n, dtype=np.int64)))


def brute_force_colon(C: LinearCode, i: int) -> np.ndarray:
    """Keys of {x in R^n : gamma^i x in C}, by exhausting R^n."""
    ring, n = C.ring, C.n
    words = all_words(ring, n)
    scaled = ring.np_mul(words, ring.gamma_power(i)) if i < ring.v else np.zeros_like(words)
    weights = ring.size ** np.arange(n, dtype=np.int64)
    keep = np.isin(scaled @ weights, C.codewords() @ weights)
    return word_keys(ring, words[keep])


def shell_partition_ok(C: LinearCode) -> bool:
    """C = S u gamma S u ... u gamma^(v-1) S u {0}, disjointly, with S = C minus gamma C."""
    ring = C.ring
    words = C.codeword_set()
    shell = words - C.scale_gamma(1).codeword_set()
    seen = {(0,) * C.n}
    for j in range(ring.v):
        g = ring.gamma_power(j)
        layer = {tuple(ring.vscale(g, w)) for w in shell}
        if layer & seen:
            return False
        seen |= layer
    return seen == words


def _free_checks(C: LinearCode, exhaustive_limit: int) -> dict[str, bool | None]:
    ring = C.ring
    image = C.project()
    out: dict[str, bool | None] = {
        "residue_dual": image.dual() == C.dual().project(),
        "dual_free": C.dual().is_free(),
        "colon_residue": all(C.colon_gamma(i).project() == image for i in range(ring.v)),
        "gamma_intersection": all((C & LinearCode.gamma_space(ring, C.n, i)) == C.scale_gamma(i)
                                  for i in range(ring.v + 1)),
    }
    small = C.cardinality <= exhaustive_limit
    if small and not C.is_zero():
        out["distance_residue"] = (C.min_distance("residue")
                                   == brute_force_min_weight(C.codeword_set()))
    else:
        out["distance_residue"] = None
    out["shell_partition"] = shell_partition_ok(C) if small else None
    out["generating_set"] = verify_generating_set(C, exhaustive_limit) if small else None
    return out


def code_checks(C: LinearCode, exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> dict[str, bool | None]:
    """Statements that hold for every code; oracle checks only when R^n is small."""
    ring, n, v = C.ring, C.n, C.ring.v
    out: dict[str, bool | None] = {}
    Cd = C.dual()
    small_space = ring.size**n <= ORACLE_SPACE_LIMIT
    span = brute_force_span(ring, C.rows, n, limit=exhaustive_limit)
    rows_in = all(r in C for r in C.rows)
    fixed = normalize(ring, C.normal.rows, n) == C.normal
    if span is not None:
        out["normalize_span"] = rows_in and fixed and span == C.codeword_set()
    else:
        out["normalize_span"] = rows_in and fixed
    out["dual_involution"] = Cd.dual() == C
    out["dual_cardinality"] = Cd.cardinality * C.cardinality == ring.size**n
    out["dual_oracle"] = Cd.codeword_set() == brute_force_dual(ring, C.rows, n) if small_space else None
    if span is not None and len(span) > 1:
        out["distance_oracle"] = C.min_distance() == brute_force_min_weight(span)
    else:
        out["distance_oracle"] = None
    if n <= COLON_DUALITY_MAX_N:
        out["colon_duality"] = all(C.colon_gamma(v - 1 - i).project().dual() == Cd.colon_gamma(i).project()
                                   for i in range(v))
    else:
        out["colon_duality"] = None
    if small_space and n <= COLON_DUALITY_MAX_N:
        out["colon_oracle"] = all(np.array_equal(brute_force_colon(C, i),
                                                 word_keys(ring, C.colon_gamma(i).codewords()))
                                  for i in range(v + 1))
    else:
        out["colon_oracle"] = None
    return out


def pair_statement_checks(C: LinearCode, D: LinearCode) -> dict[str, bool | None]:
    """Statements about an LCP pair (C, D) of arbitrary linear codes."""
    return {
        "lcp_free": check_lcp(C, D) and C.is_free() and D.is_free(),
        "dual_lcp": check_lcp(C.dual(), D.dual()),
        "residue_lcp": check_lcp(C.project(), D.project()),
    }


def run_suite(ring: ChainRing, trials: int = DEFAULT_TRIALS, max_n: int = DEFAULT_MAX_N, seed: int = 0,
              exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> SuiteResult:
    rng = random.Random(f"{seed}:{ring.name}")
    result = SuiteResult(ring, trials, seed, max_n, {name: Tally() for name in CHECK_NAMES})

    def record(checks: dict[str, bool | None], trial: int, what: Callable[[], Any]) -> None:
        for name, ok in checks.items():
            t = result.tallies[name]
            if ok is None:
                t.skipped += 1
            elif ok:
                t.passed += 1
            else:
                t.failed += 1
                if len(result.failures) < MAX_RECORDED_FAILURES:
                    result.failures.append({"trial": trial, "check": name, "input": what()})

    def rows_of(*codes: LinearCode):
        return lambda: [[[ring.to_wire(a) for a in r] for r in X.rows] for X in codes]

    for trial in range(trials):
        n = rng.randint(1, max_n)
        C = random_code(ring, n, rng)
        record(code_checks(C, exhaustive_limit), trial, rows_of(C))
        if C.is_free():
            record(_free_checks(C, exhaustive_limit), trial, rows_of(C))
        P, Q = random_lcp_pair(ring, n, rng)
        record(pair_statement_checks(P, Q), trial, rows_of(P, Q))
        record(_free_checks(P, exhaustive_limit), trial, rows_of(P))
    return result
