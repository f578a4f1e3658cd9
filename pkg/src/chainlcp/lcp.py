"""Linear complementary pairs of group codes and their verification.

The main entry points are :func:`lcp_pairs_from_idempotents` (the census
through central idempotents), :func:`verify_equivalence` (does the
inversion permutation carry C onto the dual of D?), and the two
independent searches :func:`brute_force_lcp_census` and
:func:`one_sided_witness_search`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .errors import BudgetExceeded, DimensionMismatch, NotFree, RingMismatch, ZeroCode
from .finite_group import CoordinatePermutation, inversion_permutation
from .group_algebra import DEFAULT_IDEMPOTENT_BUDGET, CentralIdempotent, GroupAlgebra
from .linear_code import DEFAULT_WORD_CAP, Codeword, LinearCode, all_words

EXHAUSTIVE_LIMIT = 4096
DEFAULT_WITNESS_BUDGET = 10**5
CENSUS_LIMIT = 1 << 16


def check_lcp(C: LinearCode, D: LinearCode) -> bool:
    """C + D = R^n with C and D meeting only in 0."""
    if C.ring != D.ring:
        raise RingMismatch(f"{C.ring.name} vs {D.ring.name}")
    if C.n != D.n:
        raise DimensionMismatch(f"lengths {C.n} and {D.n}")
    if C.exponent + D.exponent != C.ring.v * C.n:
        return False
    return (C & D).is_zero()


@dataclass
class LcpPair:
    algebra: GroupAlgebra
    C: LinearCode
    D: LinearCode
    source_idempotent: CentralIdempotent | None = None

    @property
    def key(self) -> tuple:
        return (self.C.normal.rows, self.D.normal.rows)

    def is_trivial(self) -> bool:
        return self.C.is_zero() or self.D.is_zero()


def lcp_pairs_from_idempotents(A: GroupAlgebra, budget: int = DEFAULT_IDEMPOTENT_BUDGET) -> list[LcpPair]:
    """(eR[G], (1-e)R[G]) for every central idempotent e, ordered as the idempotents."""
    one = A.one()
    pairs = []
    for e in A.central_idempotents(budget):
        C = A.right_ideal([e.element])
        D = A.right_ideal([A.sub(one, e.element)])
        pairs.append(LcpPair(A, C, D, e))
    return pairs


# -- coset machinery ------------------------------------------------------------------

@dataclass
class CosetDecomposition:
    """Representatives of C / gamma C, one per word of the residue image."""

    code: LinearCode
    representatives: list[Codeword]
    gamma_code: LinearCode

    @property
    def t(self) -> int:
        return len(self.representatives)


def coset_decomposition(C: LinearCode, cap: int = 1 << 16) -> CosetDecomposition:
    """c_1 = 0, c_2, ..., c_t with pairwise distinct residue images covering the image of C.

    Representative for residue coefficients (l_1..l_k) is sum lift(l_j) r_j over
    the valuation-0 normal-form rows r_j, in lexicographic order of the l's.
    """
    if not C.is_free():
        raise NotFree(f"code of type {C.type_vector} is not free")
    ring = C.ring
    rows = np.array(C.normal.rows, dtype=np.int64).reshape(-1, C.n)
    k, q = len(rows), ring.q
    if q**k > cap:
        raise BudgetExceeded(f"{q}^{k} coset representatives exceed cap {cap}")
    coeffs = np.indices((q,) * k).reshape(k, -1).T if k else np.zeros((1, 0), dtype=np.int64)
    words = np.zeros((len(coeffs), C.n), dtype=np.int64)
    for j in range(k):
        words = ring.np_add(words, ring.np_mul(coeffs[:, j:j + 1], rows[j][None, :]))
    reps = [tuple(w) for w in words.tolist()]
    return CosetDecomposition(C, reps, C.scale_gamma(1))


def free_generating_set(C: LinearCode) -> list[Codeword]:
    """S = {c_2, ..., c_t}: every codeword is sum_j gamma^j s_j with s_j in S or 0."""
    return coset_decomposition(C).representatives[1:]


def gamma_layer_sums(C: LinearCode, S: Sequence[Codeword]) -> set[Codeword]:
    """All sums s_0 + gamma s_1 + ... + gamma^(v-1) s_(v-1) with s_j in S or 0."""
    ring, n = C.ring, C.n
    base = np.array([(0,) * n] + [tuple(s) for s in S], dtype=np.int64)
    sums = base
    for j in range(1, ring.v):
        layer = ring.np_mul(base, ring.gamma_power(j))
        sums = np.unique(ring.np_add(sums[:, None, :], layer[None, :, :]).reshape(-1, n), axis=0)
    return set(map(tuple, sums.tolist()))


def verify_generating_set(C: LinearCode, limit: int = EXHAUSTIVE_LIMIT) -> bool | None:
    """Exhaustive check that the gamma-layer sums of S give exactly C (None if |C| > limit)."""
    if C.cardinality > limit:
        return None
    return gamma_layer_sums(C, free_generating_set(C)) == C.codeword_set()


def coset_alignment(C: LinearCode, D_dual: LinearCode, tau: CoordinatePermutation) -> bool:
    """Match d_i by residue image of tau(c_i); require tau(c_i) - d_i in gamma R^n for all i."""
    if not (C.is_free() and D_dual.is_free()):
        return False
    ring, q = C.ring, C.ring.q
    reps_c = coset_decomposition(C).representatives
    reps_d = coset_decomposition(D_dual).representatives
    if len(reps_c) != len(reps_d):
        return False
    by_image = {tuple(a % q for a in d): d for d in reps_d}
    for c in reps_c:
        tc = tau.apply(c)
        d = by_image.get(tuple(a % q for a in tc))
        if d is None or any(a % q for a in ring.vsub(tc, d)):
            return False
    return True


# -- verification ---------------------------------------------------------------------------

def _exp_str(C: LinearCode) -> str:
    return f"{C.ring.q}^{C.exponent}"


@dataclass
class LcpReport:
    pair: LcpPair
    tau_image_equals_dual: bool
    d_C: int | None
    d_D_dual: int | None
    security_parameter: int | None
    cardinality_check: bool
    checks: dict[str, bool | None] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v is not False for v in self.checks.values())

    def to_json(self) -> dict[str, Any]:
        A = self.pair.algebra
        ring = A.ring
        e = self.pair.source_idempotent
        return {
            "ring": ring.to_json(),
            "group": A.group.to_json(),
            "idempotent": None if e is None else [ring.to_wire(a) for a in e.element],
            "residue_idempotent": None if e is None else [ring.residue_field.to_wire(a) for a in e.residue_image],
            "card_C": _exp_str(self.pair.C),
            "card_D": _exp_str(self.pair.D),
            "tau_equals_dual": self.tau_image_equals_dual,
            "d_C": self.d_C,
            "d_D_dual": self.d_D_dual,
            "security": self.security_parameter,
            "checks": dict(self.checks),
        }


def _gamma_intersection_ok(C: LinearCode) -> bool:
    ring = C.ring
    return all((C & LinearCode.gamma_space(ring, C.n, i)) == C.scale_gamma(i) for i in range(ring.v + 1))


def _colon_chain_ok(C: LinearCode) -> bool:
    image = C.project()
    return all(C.colon_gamma(i).project() == image for i in range(C.ring.v))


def pair_checks(pair: LcpPair, tau: CoordinatePermutation, exhaustive_limit: int = EXHAUSTIVE_LIMIT,
                distance_cap: int = DEFAULT_WORD_CAP) -> dict[str, bool | None]:
    """Every per-pair statement the verifier certifies, keyed by a short name.

    ``None`` marks a check that does not apply (too large, or a zero code).
    """
    A, C, D = pair.algebra, pair.C, pair.D
    Cd, Dd = C.dual(), D.dual()
    tC, tD = C.permute(tau), D.permute(tau)
    res = A.residue
    pC, pD = C.project(), D.project()
    checks: dict[str, bool | None] = {}
    checks["lcp"] = check_lcp(C, D)
    checks["two_sided"] = A.is_two_sided_ideal(C) and A.is_two_sided_ideal(D)
    checks["free"] = C.is_free() and D.is_free()
    checks["residue_lcp"] = (check_lcp(pC, pD) and res.is_two_sided_ideal(pC)
                             and res.is_two_sided_ideal(pD))
    checks["dual_lcp"] = check_lcp(Cd, Dd)
    checks["cardinality"] = Dd.cardinality == C.cardinality
    checks["residue_dual"] = (C.is_free() and D.is_free() and pC.dual() == Cd.project()
                              and pD.dual() == Dd.project())
    checks["colon_chain"] = _colon_chain_ok(C) and _colon_chain_ok(D)
    checks["gamma_intersection"] = _gamma_intersection_ok(C) and _gamma_intersection_ok(D)
    checks["tau_ideal"] = A.is_two_sided_ideal(tC) and A.is_two_sided_ideal(tD)
    checks["residue_tau"] = tC.project() == Dd.project()
    checks["coset_alignment"] = coset_alignment(C, Dd, tau)
    if C.cardinality <= exhaustive_limit and C.is_free():
        checks["generating_set"] = verify_generating_set(C, exhaustive_limit)
    else:
        checks["generating_set"] = None if C.is_free() else False
    checks["tau_equals_dual"] = tC == Dd
    return checks


def verify_equivalence(pair: LcpPair, tau: CoordinatePermutation | None = None,
                       distance_cap: int = DEFAULT_WORD_CAP,
                       exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> LcpReport:
    """Certify tau(C) = D^perp and compare minimum distances.

    Distances are computed by walking every codeword of C and of D^perp
    separately; for free codes the residue-image shortcut is cross-checked.
    Trivial pairs carry no distances.
    """
    A = pair.algebra
    if tau is None:
        tau = inversion_permutation(A.group)
    if tau.n != pair.C.n:
        raise DimensionMismatch(f"permutation on {tau.n} points for length {pair.C.n}")
    checks = pair_checks(pair, tau, exhaustive_limit, distance_cap)
    Dd = pair.D.dual()
    d_c = d_dd = sec = None
    if not pair.is_trivial():
        d_c = pair.C.min_distance("enumerate", distance_cap)
        d_dd = Dd.min_distance("enumerate", distance_cap)
        sec = min(d_c, d_dd)
        checks["distance_equal"] = d_c == d_dd
        checks["distance_residue"] = (pair.C.min_distance("residue", distance_cap) == d_c
                                      and Dd.min_distance("residue", distance_cap) == d_dd)
    return LcpReport(pair, bool(checks["tau_equals_dual"]), d_c, d_dd, sec,
                     bool(checks["cardinality"]), checks)


def security_parameter(pair: LcpPair, cap: int = DEFAULT_WORD_CAP) -> int:
    """min(d(C), d(D^perp)); ZeroCode if either is the zero code."""
    return min(pair.C.min_distance(cap=cap), pair.D.dual().min_distance(cap=cap))


# -- ideal enumeration ----------------------------------------------------------------------

def _orbit_representatives(A: GroupAlgebra, side: str, max_elements: int) -> list[Codeword]:
    """One nonzero element per orbit of x -> u g x h (two-sided) or x -> u x h (right).

    Such moves do not change the principal ideal generated by x.
    """
    ring, n, G = A.ring, A.n, A.group
    if A.size > max_elements:
        raise BudgetExceeded(f"|R[G]| = {A.size} exceeds enumeration limit {max_elements}")
    words = all_words(ring, n)
    weights = ring.size ** np.arange(n, dtype=np.int64)
    keys = words @ weights
    best = keys.copy()
    rights = [G.right_permutation(h) for h in range(n)]
    if side == "two":
        perms = [G.left_permutation(g).compose(r) for g in range(n) for r in rights]
    else:
        perms = rights
    units = ring.units()
    for perm in perms:
        moved = words[:, list(perm.inverse().image)]
        for u in units:
            np.minimum(best, ring.np_mul(moved, u) @ weights, out=best)
    reps = words[(keys == best) & (keys != 0)]
    return [tuple(w) for w in reps.tolist()]


def _enumerate_ideals(A: GroupAlgebra, side: str, limit: int, max_elements: int = CENSUS_LIMIT):
    """Ideals as sums of principal ideals, breadth first. Returns (ideals, complete)."""
    gen = A.ideal_from_generators if side == "two" else A.right_ideal
    principals: dict[tuple, LinearCode] = {}
    for x in _orbit_representatives(A, side, max_elements):
        P = gen([x])
        principals.setdefault(P.key, P)
    zero = LinearCode.zero(A.ring, A.n)
    found = {zero.key: zero}
    queue = [zero]
    plist = list(principals.values())
    while queue:
        I = queue.pop()
        for P in plist:
            if P <= I:
                continue
            J = I + P
            if J.key not in found:
                if len(found) >= limit:
                    return list(found.values()), False
                found[J.key] = J
                queue.append(J)
    ideals = sorted(found.values(), key=lambda C: (C.exponent, C.normal.rows))
    return ideals, True


def enumerate_ideals(A: GroupAlgebra, side: str = "two", limit: int = 10**6,
                     max_elements: int = CENSUS_LIMIT) -> list[LinearCode]:
    ideals, complete = _enumerate_ideals(A, side, limit, max_elements)
    if not complete:
        raise BudgetExceeded(f"more than {limit} ideals")
    return ideals


def _complementary_pairs(ideals: Sequence[LinearCode], full_exponent: int):
    """Pairs with |C||D| = |R^n| and C + D = R^n.

    By Nakayama, C + D = R^n iff the residue images already span F_q^n,
    so the sum is tested over the residue field.
    """
    by_exp: dict[int, list[LinearCode]] = {}
    for I in ideals:
        by_exp.setdefault(I.exponent, []).append(I)
    images = {I.key: I.project() for I in ideals}
    for C in ideals:
        pc = images[C.key]
        for D in by_exp.get(full_exponent - C.exponent, []):
            pd = images[D.key]
            if pc.rank + pd.rank >= C.n and (pc + pd).is_full():
                yield C, D


def brute_force_lcp_census(A: GroupAlgebra, budget: int = CENSUS_LIMIT) -> list[LcpPair]:
    """Every ordered LCP pair of two-sided ideals, found without idempotents."""
    if A.size > budget:
        raise BudgetExceeded(f"|R[G]| = {A.size} exceeds census budget {budget}")
    ideals = enumerate_ideals(A, "two", max_elements=budget)
    full = A.ring.v * A.n
    return [LcpPair(A, C, D) for C, D in _complementary_pairs(ideals, full) if check_lcp(C, D)]


def census_keys(pairs: Sequence[LcpPair]) -> set[tuple]:
    return {p.key for p in pairs}


# -- one-sided probe -------------------------------------------------------------------------

def find_equivalence(C: LinearCode, target: LinearCode, max_n: int = 8,
                     cap: int = DEFAULT_WORD_CAP) -> CoordinatePermutation | None:
    """Search all n! coordinate permutations for one mapping C onto target."""
    if C.n > max_n:
        raise BudgetExceeded(f"permutation search limited to n <= {max_n}")
    if C.cardinality != target.cardinality:
        return None
    if C.weight_distribution(cap) != target.weight_distribution(cap):
        return None
    words = target.codeword_set(cap)
    rows = C.normal.rows
    for image in itertools.permutations(range(C.n)):
        perm = CoordinatePermutation(image)
        if all(perm.apply(r) in words for r in rows):
            return perm
    return None


@dataclass
class WitnessFinding:
    C: LinearCode
    D: LinearCode
    c_two_sided: bool
    d_two_sided: bool
    tau_equals_dual: bool
    permutation_equivalent: bool | None
    witness: CoordinatePermutation | None

    def to_json(self) -> dict[str, Any]:
        ring = self.C.ring
        return {
            "C": [[ring.to_wire(a) for a in r] for r in self.C.normal.rows],
            "D": [[ring.to_wire(a) for a in r] for r in self.D.normal.rows],
            "card_C": _exp_str(self.C),
            "c_two_sided": self.c_two_sided,
            "d_two_sided": self.d_two_sided,
            "tau_equals_dual": self.tau_equals_dual,
            "permutation_equivalent": self.permutation_equivalent,
            "witness": None if self.witness is None else list(self.witness.image),
        }


@dataclass
class WitnessReport:
    algebra: GroupAlgebra
    findings: list[WitnessFinding]
    ideals_enumerated: int = 0
    budget_exceeded: bool = False
    abelian_short_circuit: bool = False

    def to_json(self) -> dict[str, Any]:
        A = self.algebra
        bad = [f for f in self.findings if not f.tau_equals_dual]
        return {
            "ring": A.ring.to_json(),
            "group": A.group.to_json(),
            "abelian_short_circuit": self.abelian_short_circuit,
            "budget_exceeded": self.budget_exceeded,
            "right_ideals": self.ideals_enumerated,
            "one_sided_pairs": len(self.findings),
            "tau_failures": len(bad),
            "tau_failures_permutation_equivalent": sum(1 for f in bad if f.permutation_equivalent),
            "findings": [f.to_json() for f in self.findings],
        }


def one_sided_witness_search(A: GroupAlgebra, budget: int = DEFAULT_WITNESS_BUDGET,
                             perm_search_max_n: int = 8, max_elements: int = 1 << 20) -> WitnessReport:
    """LCP pairs of right ideals with a component that is not two-sided.

    ``budget`` caps the number of right ideals enumerated; hitting it sets
    ``budget_exceeded`` and the pairs among the ideals found so far are still
    reported.  When tau fails, every coordinate permutation is tried for
    n <= perm_search_max_n.
    """
    report = WitnessReport(A, [])
    if A.group.is_abelian():
        report.abelian_short_circuit = True
        return report
    if budget <= 0:
        report.budget_exceeded = True
        return report
    try:
        ideals, complete = _enumerate_ideals(A, "right", budget, max_elements)
    except BudgetExceeded:
        report.budget_exceeded = True
        return report
    report.ideals_enumerated = len(ideals)
    report.budget_exceeded = not complete
    tau = inversion_permutation(A.group)
    two_sided = {I.key: A.is_left_ideal(I) for I in ideals}
    full = A.ring.v * A.n
    for C, D in _complementary_pairs(ideals, full):
        c2, d2 = two_sided[C.key], two_sided[D.key]
        if c2 and d2:
            continue
        Dd = D.dual()
        tau_ok = C.permute(tau) == Dd
        witness, equiv = (tau, True) if tau_ok else (None, None)
        if not tau_ok and A.n <= perm_search_max_n:
            witness = find_equivalence(C, Dd, perm_search_max_n)
            equiv = witness is not None
        report.findings.append(WitnessFinding(C, D, c2, d2, tau_ok, equiv, witness))
    return report
