"""Catalogs of (ring, group) instances and the verification pipeline that runs them.

A run produces a :class:`RunReport` whose JSON payload depends only on the
catalog and the budgets; wall times are kept apart in :meth:`RunReport.meta_json`.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any

from .chain_ring import ChainRing, parse_ring
from .errors import BudgetExceeded, ChainLcpError
from .finite_group import GroupTable, inversion_permutation, make_group
from .group_algebra import DEFAULT_IDEMPOTENT_BUDGET, GroupAlgebra
from .lcp import (CENSUS_LIMIT, DEFAULT_WITNESS_BUDGET, LcpPair, brute_force_lcp_census, census_keys,
                  lcp_pairs_from_idempotents, one_sided_witness_search, verify_equivalence)
from .linear_code import DEFAULT_WORD_CAP, LinearCode
from .propositions import DEFAULT_TRIALS, run_suite

THEOREM_CATALOG = [
    ("Z4", "C3"), ("Z4", "C2xC2"), ("Z4", "S3"), ("Z4", "D4"), ("Z8", "C2"), ("Z9", "C3"),
    ("F2u2", "C3"), ("F2u2", "S3"), ("F3u2", "C4"), ("F4u2", "C3"),
]
CENSUS_CATALOG = [("F2", "C3"), ("F3", "C3"), ("Z4", "C2"), ("F2", "S3")]
PROBE_INSTANCES = {("F2", "S3"), ("Z4", "S3")}

PASS, FAIL, BUDGET, ERROR = "pass", "fail", "budget", "error"


class CatalogError(ValueError):
    """Malformed catalog file or entry."""


@dataclass(frozen=True)
class Budgets:
    idempotents: int = DEFAULT_IDEMPOTENT_BUDGET
    distance: int = DEFAULT_WORD_CAP
    witness: int = DEFAULT_WITNESS_BUDGET

    def to_json(self) -> dict[str, int]:
        return {"idempotents": self.idempotents, "distance": self.distance, "witness": self.witness}


@dataclass
class CatalogEntry:
    ring: ChainRing
    group: GroupTable
    budgets: Budgets = field(default_factory=Budgets)
    census: bool | None = None  # None: run when |R[G]| <= CENSUS_LIMIT
    probe: bool = False
    pairs: list[tuple[list, list]] = field(default_factory=list)
    explicit_budgets: frozenset[str] = frozenset()

    @property
    def label(self) -> str:
        return f"{self.ring.name}[{self.group.name}]"

    def wants_census(self) -> bool:
        if self.census is None:
            return self.ring.size**self.group.n <= CENSUS_LIMIT
        return self.census


@dataclass
class Catalog:
    entries: list[CatalogEntry]
    suites: bool = True
    trials: int = DEFAULT_TRIALS
    seed: int = 0

    def rings(self) -> list[ChainRing]:
        seen: list[ChainRing] = []
        for e in self.entries:
            if e.ring not in seen:
                seen.append(e.ring)
        return seen

    def with_default_budgets(self, **overrides: int) -> Catalog:
        """Replace budgets that the catalog itself did not set."""
        entries = []
        for e in self.entries:
            given = {k: v for k, v in overrides.items() if v is not None and k not in e.explicit_budgets}
            entries.append(replace(e, budgets=replace(e.budgets, **given)))
        return replace(self, entries=entries)


def default_catalog() -> Catalog:
    entries = []
    for r, g in THEOREM_CATALOG + CENSUS_CATALOG:
        entries.append(CatalogEntry(parse_ring(r), make_group(g), probe=(r, g) in PROBE_INSTANCES))
    return Catalog(entries)


def _parse_ring(obj: Any) -> ChainRing:
    if isinstance(obj, str):
        return parse_ring(obj)
    return ChainRing.from_json(obj)


def _parse_budgets(obj: Any) -> tuple[Budgets, frozenset[str]]:
    if obj is None:
        return Budgets(), frozenset()
    if not isinstance(obj, dict):
        raise CatalogError("budgets must be an object")
    unknown = set(obj) - {"idempotents", "distance", "witness"}
    if unknown:
        raise CatalogError(f"unknown budget keys {sorted(unknown)}")
    for k, v in obj.items():
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise CatalogError(f"budget {k} must be a non-negative integer")
    return Budgets(**obj), frozenset(obj)


def _parse_fixture_pairs(ring: ChainRing, n: int, obj: Any) -> list[tuple[list, list]]:
    if obj is None:
        return []
    if not isinstance(obj, list):
        raise CatalogError("pairs must be a list")
    out = []
    for p in obj:
        if not isinstance(p, dict) or set(p) != {"C", "D"}:
            raise CatalogError("each pair needs exactly the keys C and D")
        sides = []
        for key in ("C", "D"):
            rows = p[key]
            if not isinstance(rows, list) or not all(isinstance(r, list) and len(r) == n for r in rows):
                raise CatalogError(f"pair component {key} must be a list of length-{n} rows")
            sides.append([[ring.from_wire(a) for a in r] for r in rows])
        out.append((sides[0], sides[1]))
    return out


def parse_entry(obj: Any) -> CatalogEntry:
    if not isinstance(obj, dict):
        raise CatalogError("catalog entry must be an object")
    unknown = set(obj) - {"ring", "group", "budgets", "census", "probe", "pairs"}
    if unknown:
        raise CatalogError(f"unknown entry keys {sorted(unknown)}")
    if "ring" not in obj or "group" not in obj:
        raise CatalogError("catalog entry needs ring and group")
    ring = _parse_ring(obj["ring"])
    group = make_group(obj["group"])
    budgets, explicit = _parse_budgets(obj.get("budgets"))
    census = obj.get("census")
    probe = obj.get("probe", False)
    if (census is not None and not isinstance(census, bool)) or not isinstance(probe, bool):
        raise CatalogError("census and probe must be booleans")
    pairs = _parse_fixture_pairs(ring, group.n, obj.get("pairs"))
    return CatalogEntry(ring, group, budgets, census, probe, pairs, explicit)


def parse_catalog(obj: Any) -> Catalog:
    if not isinstance(obj, dict) or not isinstance(obj.get("entries"), list):
        raise CatalogError('catalog must be an object with an "entries" list')
    unknown = set(obj) - {"entries", "suites", "trials", "seed"}
    if unknown:
        raise CatalogError(f"unknown catalog keys {sorted(unknown)}")
    cat = Catalog([parse_entry(e) for e in obj["entries"]])
    cat.suites = obj.get("suites", True)
    cat.trials = obj.get("trials", DEFAULT_TRIALS)
    cat.seed = obj.get("seed", 0)
    if not isinstance(cat.suites, bool):
        raise CatalogError("suites must be a boolean")
    for k in ("trials", "seed"):
        val = getattr(cat, k)
        if isinstance(val, bool) or not isinstance(val, int) or val < 0:
            raise CatalogError(f"{k} must be a non-negative integer")
    return cat


def load_catalog(path: str) -> Catalog:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CatalogError(f"{path}: {exc}") from None
    return parse_catalog(obj)


# -- running one entry ----------------------------------------------------------------------

def idempotent_checks(A: GroupAlgebra, budget: int) -> tuple[list[dict[str, Any]], dict[str, bool | None]]:
    """Lift every residue idempotent and check the lift; compare counts with a direct search in R[G]."""
    ring = A.ring
    one = A.one()
    residue = A.residue_central_idempotents(budget)
    g = ring.gamma_power(1)
    starts = [A.scale(g, one), A.scale(g, (1,) * A.n)]
    rows, lifts = [], []
    for e0 in residue:
        e = A.hensel_lift_idempotent(e0).element
        base = A.lift(e0)
        others = [A.hensel_lift_idempotent(e0, A.add(base, w)).element for w in starts]
        f = A.sub(one, e)
        checks = {
            "idempotent": A.mul(e, e) == e,
            "central": A.is_central(e) and all(A.mul(e, A.basis(h)) == A.mul(A.basis(h), e) for h in range(A.n)),
            "residue_image": A.project(e) == tuple(e0),
            "unique": all(o == e for o in others),
            "complement": A.mul(e, f) == A.zero() and A.add(e, f) == one,
        }
        lifts.append(e)
        rows.append({"residue": [ring.residue_field.to_wire(a) for a in e0],
                     "lifted": [ring.to_wire(a) for a in e], "checks": checks})
    summary: dict[str, bool | None] = {}
    try:
        direct = A.center_idempotents_by_search(budget)
    except BudgetExceeded:
        summary["count_match"] = None
    else:
        summary["count_match"] = len(direct) == len(residue) and direct == sorted(lifts)
    return rows, summary


def _strip(report_json: dict[str, Any]) -> dict[str, Any]:
    return {k: v for k, v in report_json.items() if k not in ("ring", "group")}


def run_entry(entry: CatalogEntry) -> dict[str, Any]:
    A = GroupAlgebra(entry.ring, entry.group)
    b = entry.budgets
    out: dict[str, Any] = {
        "instance": entry.label,
        "ring": entry.ring.to_json(),
        "group": entry.group.to_json(),
        "budgets": b.to_json(),
        "status": PASS,
        "idempotents": [],
        "idempotent_summary": {},
        "pairs": [],
        "fixture_pairs": [],
        "census": None,
        "probe": None,
        "messages": [],
    }
    tau = inversion_permutation(entry.group)
    try:
        out["idempotents"], out["idempotent_summary"] = idempotent_checks(A, b.idempotents)
        pairs = lcp_pairs_from_idempotents(A, b.idempotents)
        out["pairs"] = [_strip(verify_equivalence(p, tau, b.distance).to_json()) for p in pairs]
        for C_rows, D_rows in entry.pairs:
            pair = LcpPair(A, LinearCode(A.ring, A.n, C_rows), LinearCode(A.ring, A.n, D_rows))
            out["fixture_pairs"].append(_strip(verify_equivalence(pair, tau, b.distance).to_json()))
        if entry.wants_census():
            census = brute_force_lcp_census(A)
            out["census"] = {"pairs": len(census),
                             "matches_idempotents": census_keys(census) == census_keys(pairs)}
        if entry.probe:
            out["probe"] = one_sided_witness_search(A, b.witness).to_json()
    except BudgetExceeded as exc:
        out["status"] = BUDGET
        out["messages"].append(f"budget exceeded: {exc}")
    except ChainLcpError as exc:
        out["status"] = ERROR
        out["messages"].append(f"{type(exc).__name__}: {exc}")
    if any(v is False for _, v in entry_checks(out)):
        out["status"] = FAIL
    return out


def entry_checks(out: dict[str, Any]):
    """Yield (check name, value) for every check recorded in an entry payload."""
    for row in out["idempotents"]:
        for k, v in row["checks"].items():
            yield f"idempotent.{k}", v
    for k, v in out["idempotent_summary"].items():
        yield f"idempotent.{k}", v
    for grp in ("pairs", "fixture_pairs"):
        for rep in out[grp]:
            for k, v in rep["checks"].items():
                yield f"pair.{k}", v
    if out["census"] is not None:
        yield "census.matches_idempotents", out["census"]["matches_idempotents"]


# -- running a catalog ----------------------------------------------------------------------------

def _timed_entry(entry: CatalogEntry) -> tuple[dict[str, Any], float]:
    t = time.perf_counter()
    return run_entry(entry), time.perf_counter() - t


def _timed_suite(args: tuple[ChainRing, int, int]) -> tuple[dict[str, Any], float]:
    ring, trials, seed = args
    t = time.perf_counter()
    return run_suite(ring, trials=trials, seed=seed).to_json(), time.perf_counter() - t


@dataclass
class RunReport:
    entries: list[dict[str, Any]]
    suites: list[dict[str, Any]]
    entry_seconds: list[float] = field(default_factory=list)
    suite_seconds: list[float] = field(default_factory=list)

    @property
    def tallies(self) -> dict[str, dict[str, int]]:
        counts: dict[str, dict[str, int]] = {}
        for out in self.entries:
            for name, val in entry_checks(out):
                t = counts.setdefault(name, {"pass": 0, "fail": 0, "skip": 0})
                t["pass" if val else "skip" if val is None else "fail"] += 1
        for s in self.suites:
            for k, t in s["checks"].items():
                c = counts.setdefault(f"suite.{k}", {"pass": 0, "fail": 0, "skip": 0})
                for kk in ("pass", "fail", "skip"):
                    c[kk] += t[kk]
        return dict(sorted(counts.items()))

    @property
    def status(self) -> str:
        states = {e["status"] for e in self.entries}
        if FAIL in states or any(not s["ok"] for s in self.suites):
            return FAIL
        if ERROR in states:
            return ERROR
        if BUDGET in states:
            return BUDGET
        return PASS

    @property
    def exit_code(self) -> int:
        return {PASS: 0, FAIL: 1, BUDGET: 3, ERROR: 4}[self.status]

    def to_json(self) -> dict[str, Any]:
        return {"status": self.status, "entries": self.entries, "suites": self.suites,
                "tallies": self.tallies}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=False) + "\n"

    def meta_json(self) -> dict[str, Any]:
        return {
            "entry_seconds": {e["instance"]: round(s, 3) for e, s in zip(self.entries, self.entry_seconds)},
            "suite_seconds": {s["ring"]: round(t, 3) for s, t in zip(self.suites, self.suite_seconds)},
            "total_seconds": round(sum(self.entry_seconds) + sum(self.suite_seconds), 3),
        }


def run_catalog(catalog: Catalog, jobs: int = 1) -> RunReport:
    """Entries then suites, each list in catalog order whatever the schedule."""
    suite_args = [(r, catalog.trials, catalog.seed) for r in catalog.rings()] if catalog.suites else []
    if jobs > 1 and len(catalog.entries) + len(suite_args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            entry_futs = [pool.submit(_timed_entry, e) for e in catalog.entries]
            suite_futs = [pool.submit(_timed_suite, a) for a in suite_args]
            entry_res = [f.result() for f in entry_futs]
            suite_res = [f.result() for f in suite_futs]
    else:
        entry_res = [_timed_entry(e) for e in catalog.entries]
        suite_res = [_timed_suite(a) for a in suite_args]
    return RunReport([p for p, _ in entry_res], [p for p, _ in suite_res],
                     [t for _, t in entry_res], [t for _, t in suite_res])
