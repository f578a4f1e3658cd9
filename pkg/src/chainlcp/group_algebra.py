"""The group ring R[G], its ideals, and central idempotents."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .chain_ring import ChainRing
from .errors import BudgetExceeded, RingMismatch
from .finite_group import CoordinatePermutation, GroupTable
from .linear_code import LinearCode

DEFAULT_IDEMPOTENT_BUDGET = 1 << 20

AlgebraElement = tuple[int, ...]


@dataclass(frozen=True)
class CentralIdempotent:
    element: AlgebraElement
    residue_image: AlgebraElement


class GroupAlgebra:
    """R[G] with elements as coefficient tuples in the group's index order."""

    def __init__(self, ring: ChainRing, group: GroupTable):
        self.ring = ring
        self.group = group
        self.n = group.n

    def __repr__(self) -> str:
        return f"{self.ring.name}[{self.group.name}]"

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupAlgebra) and (self.ring, self.group) == (other.ring, other.group)

    def __hash__(self) -> int:
        return hash((self.ring, self.group))

    @property
    def size(self) -> int:
        return self.ring.size**self.n

    @cached_property
    def residue(self) -> GroupAlgebra:
        """F_q[G]."""
        if self.ring.is_field:
            return self
        return GroupAlgebra(self.ring.residue_field, self.group)

    # -- elements -------------------------------------------------------------

    def zero(self) -> AlgebraElement:
        return (0,) * self.n

    def one(self) -> AlgebraElement:
        return self.basis(0)

    def basis(self, g: int) -> AlgebraElement:
        return tuple(1 if h == g else 0 for h in range(self.n))

    def add(self, x, y) -> AlgebraElement:
        return tuple(self.ring.vadd(x, y))

    def sub(self, x, y) -> AlgebraElement:
        return tuple(self.ring.vsub(x, y))

    def scale(self, r: int, x) -> AlgebraElement:
        return tuple(self.ring.vscale(r, x))

    def mul(self, x, y) -> AlgebraElement:
        """Convolution: (xy)_h = sum over g g' = h of x_g y_g'."""
        ring, table = self.ring, self.group.table
        out = [0] * self.n
        if ring.family == "Zpv":
            for i, a in enumerate(x):
                if a:
                    row = table[i]
                    for j, b in enumerate(y):
                        if b:
                            out[row[j]] += a * b
            N = ring.size
            return tuple(c % N for c in out)
        add, mul = ring.add, ring.mul
        for i, a in enumerate(x):
            if a:
                row = table[i]
                for j, b in enumerate(y):
                    if b:
                        k = row[j]
                        out[k] = add(out[k], mul(a, b))
        return tuple(out)

    def project(self, x) -> AlgebraElement:
        q = self.ring.q
        return tuple(a % q for a in x)

    def lift(self, x) -> AlgebraElement:
        return tuple(self.ring.lift(a) for a in x)

    def left_translate(self, g: int, x) -> AlgebraElement:
        return self.group.left_permutation(g).apply(x)

    def right_translate(self, x, g: int) -> AlgebraElement:
        return self.group.right_permutation(g).apply(x)

    def is_central(self, x) -> bool:
        """x commutes with every group element iff it is constant on conjugacy classes."""
        ci = self.group.class_index
        first: dict[int, int] = {}
        for g, a in enumerate(x):
            if first.setdefault(ci[g], a) != a:
                return False
        return True

    def apply_map(self, perm: CoordinatePermutation, x) -> AlgebraElement:
        """sum r_g g -> sum r_g psi(g)."""
        return perm.apply(x)

    # -- ideals ---------------------------------------------------------------------

    def _check(self, C: LinearCode) -> None:
        if C.ring != self.ring:
            raise RingMismatch(f"code over {C.ring.name} in {self!r}")
        if C.n != self.n:
            raise ValueError(f"code length {C.n} differs from |G| = {self.n}")

    def right_ideal(self, gens: Sequence[Sequence[int]]) -> LinearCode:
        """Span of {x g : x in gens, g in G}."""
        rights = [self.group.right_permutation(g) for g in range(self.n)]
        return LinearCode._from_trusted(self.ring, self.n, [p.apply(tuple(x)) for x in gens for p in rights])

    def left_ideal(self, gens: Sequence[Sequence[int]]) -> LinearCode:
        lefts = [self.group.left_permutation(g) for g in range(self.n)]
        return LinearCode._from_trusted(self.ring, self.n, [p.apply(tuple(x)) for x in gens for p in lefts])

    def ideal_from_generators(self, gens: Sequence[Sequence[int]]) -> LinearCode:
        """Smallest two-sided ideal containing gens: span of {g x h}."""
        right = self.right_ideal(gens)
        return self.left_ideal(right.normal.rows)

    def is_right_ideal(self, C: LinearCode) -> bool:
        self._check(C)
        rights = [self.group.right_permutation(g) for g in range(1, self.n)]
        return all(p.apply(c) in C for c in C.normal.rows for p in rights)

    def is_left_ideal(self, C: LinearCode) -> bool:
        self._check(C)
        lefts = [self.group.left_permutation(g) for g in range(1, self.n)]
        return all(p.apply(c) in C for c in C.normal.rows for p in lefts)

    def is_two_sided_ideal(self, C: LinearCode) -> bool:
        return self.is_right_ideal(C) and self.is_left_ideal(C)

    # -- center and idempotents -------------------------------------------------------

    def center_basis(self) -> list[AlgebraElement]:
        """One class sum per conjugacy class."""
        return [tuple(1 if g in cls else 0 for g in range(self.n)) for cls in self.group.conjugacy_classes]

    @cached_property
    def class_constants(self) -> np.ndarray:
        """N[a, b, d] = number of (x, y) in K_a x K_b with xy = rep(K_d); K_a K_b = sum_d N K_d."""
        G = self.group
        classes = G.conjugacy_classes
        c = len(classes)
        N = np.zeros((c, c, c), dtype=np.int64)
        reps = {cls[0]: d for d, cls in enumerate(classes)}
        for a, ka in enumerate(classes):
            for b, kb in enumerate(classes):
                for x in ka:
                    row = G.table[x]
                    for y in kb:
                        d = reps.get(row[y])
                        if d is not None:
                            N[a, b, d] += 1
        return N

    def center_idempotents_by_search(self, budget: int = DEFAULT_IDEMPOTENT_BUDGET) -> list[AlgebraElement]:
        """Every central e = e^2 of this algebra, by exhausting the class-sum span over the ring.

        Sorted lexicographically by coefficient vector.
        """
        R = self.ring
        classes = self.group.conjugacy_classes
        c, s = len(classes), R.size
        if s**c > budget:
            raise BudgetExceeded(f"{s}^{c} candidate central elements exceed budget {budget}")
        N = self.class_constants
        found = []
        total = s**c
        for start in range(0, total, 1 << 16):
            idx = np.arange(start, min(total, start + (1 << 16)), dtype=np.int64)
            lam = np.empty((len(idx), c), dtype=np.int64)
            for k in range(c):
                idx, lam[:, k] = np.divmod(idx, s)
            sq = np.zeros_like(lam)
            for a in range(c):
                for b in range(c):
                    nz = np.nonzero(N[a, b])[0]
                    if not len(nz):
                        continue
                    prod = R.np_mul(lam[:, a], lam[:, b])
                    for d in nz:
                        sq[:, d] = R.np_add(sq[:, d], R.np_mul(prod, R.from_int(int(N[a, b, d]))))
            for row in lam[(sq == lam).all(axis=1)].tolist():
                found.append(tuple(row[k] for k in self.group.class_index))
        return sorted(found)

    def residue_central_idempotents(self, budget: int = DEFAULT_IDEMPOTENT_BUDGET) -> list[AlgebraElement]:
        """Every central idempotent of F_q[G] (q^c candidates)."""
        return self.residue.center_idempotents_by_search(budget)

    def hensel_lift_idempotent(self, e0: Sequence[int], start: Sequence[int] | None = None) -> CentralIdempotent:
        """Lift a central residue idempotent through e <- 3e^2 - 2e^3.

        Each step squares the gamma-adic error, so ceil(log2 v) + 1 steps
        suffice from any starting lift.
        """
        e0 = tuple(e0)
        res = self.residue
        if res.mul(e0, e0) != e0:
            raise ValueError("residue element is not idempotent")
        e = self.lift(e0) if start is None else tuple(start)
        if self.project(e) != e0:
            raise ValueError("start does not reduce to the residue idempotent")
        ring = self.ring
        three, two = ring.from_int(3), ring.from_int(2)
        for _ in range((ring.v - 1).bit_length() + 1):
            e2 = self.mul(e, e)
            e3 = self.mul(e2, e)
            e = self.sub(self.scale(three, e2), self.scale(two, e3))
        return CentralIdempotent(e, e0)

    def central_idempotents(self, budget: int = DEFAULT_IDEMPOTENT_BUDGET) -> list[CentralIdempotent]:
        return [self.hensel_lift_idempotent(e0) for e0 in self.residue_central_idempotents(budget)]

    def is_idempotent(self, e) -> bool:
        return self.mul(e, e) == tuple(e)


def ga_mul(A: GroupAlgebra, x, y) -> AlgebraElement:
    return A.mul(x, y)


def ideal_from_generators(A: GroupAlgebra, gens) -> LinearCode:
    return A.ideal_from_generators(gens)


def is_two_sided_ideal(A: GroupAlgebra, C: LinearCode) -> bool:
    return A.is_two_sided_ideal(C)


def center_basis(A: GroupAlgebra) -> list[AlgebraElement]:
    return A.center_basis()


def residue_central_idempotents(A: GroupAlgebra, budget: int = DEFAULT_IDEMPOTENT_BUDGET):
    return A.residue_central_idempotents(budget)


def hensel_lift_idempotent(A: GroupAlgebra, e0, start=None) -> CentralIdempotent:
    return A.hensel_lift_idempotent(e0, start)
