"""Command-line front end.

    chainlcp verify [--ring R --group G | --catalog FILE] [--out PATH]
    chainlcp code {dual,distance,normalize,project} FILE
    chainlcp atlas [--ring R --group G | --catalog FILE] [--out PATH] [--json]
    chainlcp ring NAME | group NAME | probe --ring R --group G

Exit codes: 0 pass, 1 check failure, 2 parse/validation error, 3 budget
exceeded, 4 domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from .catalog import Catalog, CatalogEntry, CatalogError, default_catalog, load_catalog, run_catalog
from .chain_ring import parse_ring
from .errors import BudgetExceeded, ChainLcpError, InvalidRing, InvalidTable
from .finite_group import inversion_permutation, make_group
from .group_algebra import GroupAlgebra
from .lcp import lcp_pairs_from_idempotents, one_sided_witness_search, verify_equivalence
from .linear_code import LinearCode

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_BUDGET, EXIT_DOMAIN = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=1) + "\n"


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _catalog_from_args(args) -> Catalog:
    if args.catalog and (args.ring or args.group):
        raise UsageError("give either --catalog or --ring/--group, not both")
    if bool(args.ring) != bool(args.group):
        raise UsageError("--ring and --group go together")
    if args.catalog:
        cat = load_catalog(args.catalog)
    elif args.ring:
        cat = Catalog([CatalogEntry(parse_ring(args.ring), make_group(args.group))])
    else:
        cat = default_catalog()
    cat = cat.with_default_budgets(idempotents=args.budget_idempotents, distance=args.budget_distance,
                                   witness=args.budget_witness)
    if getattr(args, "no_suites", False):
        cat.suites = False
    if getattr(args, "trials", None) is not None:
        cat.trials = args.trials
    return cat


# -- verify ---------------------------------------------------------------------------------

def cmd_verify(args) -> int:
    cat = _catalog_from_args(args)
    report = run_catalog(cat, jobs=args.jobs)
    text = report.dumps()
    if args.out:
        _write(args.out, text)
        _write(args.out + ".meta.json", _dump(report.meta_json()))
        for e in report.entries:
            print(f"{e['instance']:<14} {e['status']:<7} pairs={len(e['pairs'])}")
        for s in report.suites:
            print(f"suite {s['ring']:<8} {'pass' if s['ok'] else 'fail':<7} trials={s['trials']}")
        print(f"status: {report.status}")
    else:
        sys.stdout.write(text)
    return report.exit_code


# -- code -----------------------------------------------------------------------------------

def _read_code(path: str) -> LinearCode:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: {exc}") from None
    return LinearCode.from_json(obj)


def _code_summary(C: LinearCode) -> dict[str, Any]:
    out = C.to_json()
    out["type_vector"] = list(C.type_vector)
    out["cardinality"] = f"{C.ring.q}^{C.exponent}"
    out["free"] = C.is_free()
    return out


def cmd_code(args) -> int:
    C = _read_code(args.file)
    if args.op == "dual":
        out = _code_summary(C.dual())
    elif args.op == "normalize":
        out = _code_summary(C)
    elif args.op == "project":
        out = _code_summary(C.project())
    else:
        cap = args.budget_distance if args.budget_distance is not None else 1 << 24
        out = {"ring": C.ring.to_json(), "n": C.n, "type_vector": list(C.type_vector),
               "cardinality": f"{C.ring.q}^{C.exponent}", "min_distance": C.min_distance(args.method, cap)}
    sys.stdout.write(_dump(out))
    return EXIT_OK


# -- atlas ----------------------------------------------------------------------------------

ATLAS_COLUMNS = ("ring", "group", "idempotent", "card_C", "card_D", "d_C", "d_D_dual", "security", "tau")


def atlas_rows(cat: Catalog) -> tuple[list[dict[str, Any]], bool]:
    """One row per nontrivial unordered pair, oriented so |C| <= |D| (ties: smaller idempotent as C)."""
    rows: list[dict[str, Any]] = []
    ok = True
    for entry in cat.entries:
        A = GroupAlgebra(entry.ring, entry.group)
        tau = inversion_permutation(entry.group)
        b = entry.budgets
        found = []
        for pair in lcp_pairs_from_idempotents(A, b.idempotents):
            if pair.is_trivial():
                continue
            e = pair.source_idempotent.element
            if (pair.C.exponent, e) > (pair.D.exponent, A.sub(A.one(), e)):
                continue
            rep = verify_equivalence(pair, tau, b.distance)
            ok = ok and rep.passed
            found.append((e, {
                "ring": entry.ring.name,
                "group": entry.group.name,
                "idempotent": [entry.ring.to_wire(a) for a in e],
                "idempotent_text": " ".join(entry.ring.format(a) for a in e),
                "card_C": f"{entry.ring.q}^{pair.C.exponent}",
                "card_D": f"{entry.ring.q}^{pair.D.exponent}",
                "d_C": rep.d_C,
                "d_D_dual": rep.d_D_dual,
                "security": rep.security_parameter,
                "tau": rep.tau_image_equals_dual,
            }))
        rows.extend(r for _, r in sorted(found, key=lambda t: t[0]))
    return rows, ok


def atlas_text(rows: list[dict[str, Any]]) -> str:
    keys = ["idempotent_text" if c == "idempotent" else c for c in ATLAS_COLUMNS]
    table = [list(ATLAS_COLUMNS)] + [[str(r[k]) for k in keys] for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(ATLAS_COLUMNS))]
    return "".join("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() + "\n" for row in table)


def cmd_atlas(args) -> int:
    cat = _catalog_from_args(args)
    rows, ok = atlas_rows(cat)
    payload = _dump({"columns": list(ATLAS_COLUMNS), "rows": rows})
    text = atlas_text(rows)
    if args.out:
        _write(args.out, payload)
        _write(str(Path(args.out).with_suffix(".txt")), text)
    sys.stdout.write(payload if args.json else text)
    return EXIT_OK if ok else EXIT_FAIL


# -- inspection -------------------------------------------------------------------------------

def cmd_ring(args) -> int:
    R = parse_ring(args.name)
    out = {"name": R.name, "descriptor": R.to_json(), "size": R.size, "q": R.q, "v": R.v,
           "gamma": R.to_wire(R.gamma_power(1)), "units": len(R.units()),
           "residue_field": R.residue_field.name}
    sys.stdout.write(_dump(out))
    return EXIT_OK


def cmd_group(args) -> int:
    G = make_group(args.name)
    out = {"name": G.name, "descriptor": G.to_json(), "order": G.n, "labels": list(G.labels),
           "abelian": G.is_abelian(),
           "conjugacy_classes": [list(c) for c in G.conjugacy_classes],
           "inversion": list(inversion_permutation(G).image)}
    sys.stdout.write(_dump(out))
    return EXIT_OK


def cmd_probe(args) -> int:
    A = GroupAlgebra(parse_ring(args.ring), make_group(args.group))
    budget = args.budget_witness if args.budget_witness is not None else 10**5
    report = one_sided_witness_search(A, budget)
    _write(args.out, _dump(report.to_json()))
    return EXIT_OK


# -- parser -------------------------------------------------------------------------------------

def _add_catalog_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ring", help="ring name such as Z4, F2u2, F4u2")
    p.add_argument("--group", help="group name such as C3, C2xC2, S3, D4, Q8")
    p.add_argument("--catalog", help="catalog JSON file (default: built-in catalog)")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--budget-idempotents", type=int, help="max central candidates searched")
    p.add_argument("--budget-distance", type=int, help="max codewords enumerated per distance")
    p.add_argument("--budget-witness", type=int, help="max right ideals in the one-sided probe")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chainlcp", description="LCP group codes over finite chain rings")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify every LCP pair of a catalog")
    _add_catalog_flags(p)
    p.add_argument("--trials", type=int, help="random trials per ring in the structural suites")
    p.add_argument("--no-suites", action="store_true", help="skip the randomized suites")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("code", help="operations on a code file")
    p.add_argument("op", choices=["dual", "distance", "normalize", "project"])
    p.add_argument("file", help="code JSON file, or - for stdin")
    p.add_argument("--method", choices=["auto", "enumerate", "residue"], default="auto")
    p.add_argument("--budget-distance", type=int)
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("atlas", help="table of security parameters of nontrivial LCP pairs")
    _add_catalog_flags(p)
    p.add_argument("--json", action="store_true", help="print JSON instead of the text table")
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("ring", help="describe a chain ring")
    p.add_argument("name")
    p.set_defaults(func=cmd_ring)

    p = sub.add_parser("group", help="describe a group")
    p.add_argument("name")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("probe", help="search LCP pairs of one-sided ideals")
    p.add_argument("--ring", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--budget-witness", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_probe)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, CatalogError, InvalidRing, InvalidTable, OSError) as exc:
        print(f"chainlcp: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"chainlcp: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ChainLcpError as exc:
        print(f"chainlcp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"chainlcp: invalid input: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
