"""Finite groups stored as Cayley tables on indices 0..n-1.

Index 0 is always the identity.  Constructor orderings are fixed so that
codeword coordinates are reproducible:

* ``cyclic(n)``: g^0, g^1, ..., g^(n-1)
* ``direct_product(A, B)``: pairs (a, b) with the A-index major
* ``dihedral(n)`` (order 2n): r^0..r^(n-1), then r^0 s..r^(n-1) s
* ``symmetric(n)``: permutations of 1..n in lexicographic one-line order,
  composed right factor first, so (st)(i) = s(t(i))
* ``quaternion8()``: 1, -1, i, -i, j, -j, k, -k
"""

from __future__ import annotations

import itertools
import math
import random
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Sequence

import numpy as np

from .errors import InvalidTable

_EXHAUSTIVE_ASSOC = 64


@dataclass(frozen=True)
class CoordinatePermutation:
    """Bijection of coordinates; coordinate i moves to ``image[i]``."""

    image: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.image) != list(range(len(self.image))):
            raise ValueError(f"{self.image} is not a permutation")

    @property
    def n(self) -> int:
        return len(self.image)

    @classmethod
    def identity(cls, n: int) -> CoordinatePermutation:
        return cls(tuple(range(n)))

    def apply(self, vec: Sequence) -> tuple:
        out = [None] * len(vec)
        for i, x in enumerate(vec):
            out[self.image[i]] = x
        return tuple(out)

    __call__ = apply

    def inverse(self) -> CoordinatePermutation:
        inv = [0] * self.n
        for i, j in enumerate(self.image):
            inv[j] = i
        return CoordinatePermutation(tuple(inv))

    def compose(self, other: CoordinatePermutation) -> CoordinatePermutation:
        """self after other."""
        return CoordinatePermutation(tuple(self.image[j] for j in other.image))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.image))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(self.n):
            if i in seen:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = self.image[j]
            out.append(tuple(cyc))
        return out


class GroupTable:
    """A validated finite group.

    ``table[i][j]`` is the index of g_i * g_j.
    """

    def __init__(self, table: Sequence[Sequence[int]], labels: Sequence[str] | None = None,
                 name: str = "G", descriptor: dict | None = None):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.n = len(self.table)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(self.n))
        self.name = name
        self.identity_index = 0
        self.descriptor = descriptor if descriptor is not None else {
            "kind": "table", "table": [list(r) for r in self.table], "labels": list(self.labels)}
        self._validate()

    def _validate(self) -> None:
        n = self.n
        if n == 0:
            raise InvalidTable("empty table")
        if len(self.labels) != n:
            raise InvalidTable("label count does not match order")
        full = tuple(range(n))
        for row in self.table:
            if len(row) != n or tuple(sorted(row)) != full:
                raise InvalidTable("rows are not permutations of 0..n-1")
        for j in range(n):
            if sorted(self.table[i][j] for i in range(n)) != list(full):
                raise InvalidTable("columns are not permutations of 0..n-1")
        if self.table[0] != full or any(self.table[i][0] != i for i in range(n)):
            raise InvalidTable("index 0 is not the identity")
        t = np.array(self.table)
        if n <= _EXHAUSTIVE_ASSOC:
            ok = np.array_equal(t[t, :], t[:, t])  # (ab)c vs a(bc) over all triples
        else:
            rng = random.Random(n)
            ok = all(t[t[a, b], c] == t[a, t[b, c]]
                     for a, b, c in ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                                     for _ in range(20000)))
        if not ok:
            raise InvalidTable("multiplication is not associative")

    def __repr__(self) -> str:
        return f"GroupTable({self.name}, n={self.n})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupTable) and self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple(row.index(0) for row in self.table)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def power(self, a: int, k: int) -> int:
        k %= self.element_order(a)
        acc = 0
        for _ in range(k):
            acc = self.table[acc][a]
        return acc

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(self.table[i][j] == self.table[j][i] for i in range(self.n) for j in range(i))

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        seen: set[int] = set()
        classes = []
        for x in range(self.n):
            if x in seen:
                continue
            cls = sorted({self.table[self.table[g][x]][self.inverses[g]] for g in range(self.n)})
            seen.update(cls)
            classes.append(tuple(cls))
        return tuple(classes)

    @cached_property
    def class_index(self) -> tuple[int, ...]:
        idx = [0] * self.n
        for k, cls in enumerate(self.conjugacy_classes):
            for x in cls:
                idx[x] = k
        return tuple(idx)

    def left_permutation(self, g: int) -> CoordinatePermutation:
        """Coordinate action of x -> g*x on R[G]."""
        return CoordinatePermutation(self.table[g])

    def right_permutation(self, g: int) -> CoordinatePermutation:
        return CoordinatePermutation(tuple(self.table[h][g] for h in range(self.n)))

    def is_automorphism(self, perm: CoordinatePermutation) -> bool:
        f, t = perm.image, self.table
        return all(f[t[a][b]] == t[f[a]][f[b]] for a in range(self.n) for b in range(self.n))

    def is_anti_automorphism(self, perm: CoordinatePermutation) -> bool:
        f, t = perm.image, self.table
        return all(f[t[a][b]] == t[f[b]][f[a]] for a in range(self.n) for b in range(self.n))

    def to_json(self) -> dict:
        return self.descriptor


def inversion_permutation(G: GroupTable) -> CoordinatePermutation:
    """The coordinate permutation g -> g^-1."""
    return CoordinatePermutation(G.inverses)


def conjugacy_classes(G: GroupTable) -> list[tuple[int, ...]]:
    return list(G.conjugacy_classes)


def is_abelian(G: GroupTable) -> bool:
    return G.is_abelian()


def power_map(G: GroupTable, k: int) -> CoordinatePermutation:
    """g -> g^k; an automorphism of an abelian G when gcd(k, exponent) = 1."""
    return CoordinatePermutation(tuple(G.power(i, k) for i in range(G.n)))


# -- constructors -------------------------------------------------------------

def cyclic(n: int) -> GroupTable:
    if n < 1:
        raise InvalidTable("cyclic group order must be positive")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = ["1", "g"] + [f"g^{i}" for i in range(2, n)]
    return GroupTable(table, labels[:n], f"C{n}", {"kind": "cyclic", "n": n})


def direct_product(A: GroupTable, B: GroupTable) -> GroupTable:
    nb = B.n
    table = [[A.table[i // nb][j // nb] * nb + B.table[i % nb][j % nb]
              for j in range(A.n * nb)] for i in range(A.n * nb)]
    labels = [f"({a},{b})" for a in A.labels for b in B.labels]
    return GroupTable(table, labels, f"{A.name}x{B.name}",
                      {"kind": "product", "factors": [A.to_json(), B.to_json()]})


def dihedral(n: int) -> GroupTable:
    """Dihedral group of order 2n with r^n = s^2 = 1, s r s = r^-1."""
    if n < 1:
        raise InvalidTable("dihedral parameter must be positive")

    def mul(x, y):
        a, sx = x % n, x // n
        b, sy = y % n, y // n
        return (a + (-b if sx else b)) % n + n * ((sx + sy) % 2)

    table = [[mul(x, y) for y in range(2 * n)] for x in range(2 * n)]
    labels = ["1"] + [f"r^{i}" for i in range(1, n)] + ["s"] + [f"r^{i}s" for i in range(1, n)]
    return GroupTable(table, labels, f"D{n}", {"kind": "dihedral", "n": n})


def _cycle_label(perm: tuple[int, ...]) -> str:
    seen, parts = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j + 1))
            j = perm[j]
        parts.append("(" + "".join(cyc) + ")")
    return "".join(parts) or "1"


def symmetric(n: int) -> GroupTable:
    if not 1 <= n <= 5:
        raise InvalidTable("symmetric groups are supported for 1 <= n <= 5")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(s[t[i]] for i in range(n))] for t in perms] for s in perms]
    return GroupTable(table, [_cycle_label(p) for p in perms], f"S{n}", {"kind": "symmetric", "n": n})


def quaternion8() -> GroupTable:
    # unit products: UNIT[a][b] = (sign, unit) for a, b in {1, i, j, k}
    unit = [[(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (-1, 3), (-1, 0), (1, 1)],
            [(1, 3), (1, 2), (-1, 1), (-1, 0)]]

    def mul(x, y):
        s, u = unit[x // 2][y // 2]
        neg = (x % 2) ^ (y % 2) ^ (s < 0)
        return 2 * u + neg

    table = [[mul(x, y) for y in range(8)] for x in range(8)]
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return GroupTable(table, labels, "Q8", {"kind": "quaternion8"})


def from_table(raw: Sequence[Sequence[int]], labels: Sequence[str] | None = None) -> GroupTable:
    try:
        return GroupTable(raw, labels, "G")
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidTable):
            raise
        raise InvalidTable(str(exc)) from None


def make_group(desc: Any) -> GroupTable:
    """Build a group from a short name (``C3``, ``C2xC2``, ``S3``, ``D4``, ``Q8``) or a descriptor."""
    if isinstance(desc, GroupTable):
        return desc
    if isinstance(desc, str):
        return parse_group(desc)
    if not isinstance(desc, dict) or "kind" not in desc:
        raise InvalidTable(f"bad group descriptor {desc!r}")
    kind = desc["kind"]
    try:
        if kind == "cyclic":
            return cyclic(int(desc["n"]))
        if kind == "dihedral":
            return dihedral(int(desc["n"]))
        if kind == "symmetric":
            return symmetric(int(desc["n"]))
        if kind == "quaternion8":
            return quaternion8()
        if kind == "product":
            factors = [make_group(f) for f in desc["factors"]]
            if not factors:
                raise InvalidTable("product needs at least one factor")
            g = factors[0]
            for f in factors[1:]:
                g = direct_product(g, f)
            return g
        if kind == "table":
            return from_table(desc["table"], desc.get("labels"))
    except KeyError as exc:
        raise InvalidTable(f"group descriptor missing {exc}") from None
    raise InvalidTable(f"unknown group kind {kind!r}")


_GROUP_NAME = re.compile(r"^(C|D|S)(\d+)$")


def parse_group(name: str) -> GroupTable:
    parts = [s.strip() for s in name.split("x")]
    if len(parts) > 1:
        g = parse_group(parts[0])
        for part in parts[1:]:
            g = direct_product(g, parse_group(part))
        return g
    if name == "Q8":
        return quaternion8()
    mt = _GROUP_NAME.match(name)
    if not mt:
        raise InvalidTable(f"cannot parse group name {name!r}")
    n = int(mt.group(2))
    return {"C": cyclic, "D": dihedral, "S": symmetric}[mt.group(1)](n)


def class_equation_ok(G: GroupTable) -> bool:
    sizes = [len(c) for c in G.conjugacy_classes]
    return sum(sizes) == G.n and all(G.n % s == 0 for s in sizes)


def units_mod(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if math.gcd(k, n) == 1]
