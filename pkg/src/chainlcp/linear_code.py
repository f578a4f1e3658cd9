"""R-linear codes in R^n over a chain ring.

Codewords are tuples of ring codes (see :mod:`chainlcp.chain_ring`).  Every
:class:`LinearCode` carries a canonical normal form computed at
construction, so equality, hashing, cardinality and freeness are cheap.

Normal form: repeatedly pick the remaining entry of least valuation (leftmost
column on ties), scale its row so the pivot is exactly gamma^i, clear the
column in the remaining rows and reduce the earlier rows modulo gamma^i.
Rows come out sorted by (valuation, pivot column).  The pivot data is an
invariant of the module and the reduced rows are unique, so two codes are
equal iff their normal forms are.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .chain_ring import ChainRing
from .errors import CapacityError, DimensionMismatch, RingMismatch, ZeroCode
from .finite_group import CoordinatePermutation

DEFAULT_WORD_CAP = 1 << 24
_CHUNK = 1 << 15

Codeword = tuple[int, ...]


class NormalForm(NamedTuple):
    rows: tuple[Codeword, ...]
    pivots: tuple[int, ...]
    valuations: tuple[int, ...]
    type_vector: tuple[int, ...]


def _echelon(ring: ChainRing, rows, ncols: int, reduce_above: bool):
    """Min-valuation pivoting restricted to the first ``ncols`` columns.

    Returns (pivot_rows, leftover) where pivot_rows is a list of
    [row, col, valuation] and leftover holds the rows that vanished on the
    pivot region.
    """
    table = ring._valuations
    vt = table.__getitem__ if table is not None else ring.valuation
    q = ring.q
    work = [list(r) for r in rows if any(r)]
    done: list[list] = []
    leftover = []
    pivot_cols: set[int] = set()
    while work:
        best = None
        keep = []
        for ri, row in enumerate(work):
            found = False
            for c in range(ncols):
                a = row[c]
                if a:
                    found = True
                    key = (vt(a), c)
                    if best is None or key < best[0]:
                        best = (key, ri)
            if found:
                keep.append(ri)
            else:
                leftover.append(row)
        if best is None:
            break
        (i, c), ri = best
        row = work[ri]
        unit = row[c] // q**i
        if unit != 1:
            row = ring.vscale(ring.inverse(unit), row)
        step = q**i
        rest = []
        for rj in keep:
            if rj == ri:
                continue
            x = work[rj]
            a = x[c]
            if a:
                x = ring.vsub_scaled(x, a // step, row)
            if any(x):
                rest.append(x)
        if reduce_above:
            for entry in done:
                a = entry[0][c]
                if a >= step:
                    entry[0] = ring.vsub_scaled(entry[0], a // step, row)
        done.append([row, c, i])
        pivot_cols.add(c)
        work = rest
    return done, leftover


def normalize(ring: ChainRing, rows: Sequence[Sequence[int]], n: int | None = None) -> NormalForm:
    """Canonical generator matrix and type vector (k_0, ..., k_{v-1})."""
    if n is None:
        n = len(rows[0]) if rows else 0
    done, _ = _echelon(ring, rows, n, reduce_above=True)
    tv = [0] * ring.v
    for _, _, i in done:
        tv[i] += 1
    return NormalForm(tuple(tuple(r) for r, _, _ in done), tuple(c for _, c, _ in done),
                      tuple(i for _, _, i in done), tuple(tv))


class LinearCode:
    """An R-submodule of R^n given by generator rows."""

    def __init__(self, ring: ChainRing, n: int, rows: Sequence[Sequence[int]] = ()):
        self.ring = ring
        self.n = n
        rows = tuple(tuple(int(a) for a in r) for r in rows)
        size = ring.size
        for r in rows:
            if len(r) != n:
                raise DimensionMismatch(f"row of length {len(r)} in a code of length {n}")
            if r and (min(r) < 0 or max(r) >= size):
                raise ValueError(f"row {r} has entries outside {ring.name}")
        self.rows = rows
        self.normal = normalize(ring, rows, n)

    @classmethod
    def _from_trusted(cls, ring: ChainRing, n: int, rows) -> LinearCode:
        """Skip validation for rows produced by this module's own arithmetic."""
        self = cls.__new__(cls)
        self.ring, self.n = ring, n
        self.rows = tuple(tuple(r) for r in rows)
        self.normal = normalize(ring, self.rows, n)
        return self

    # -- constructors -------------------------------------------------------------

    @classmethod
    def zero(cls, ring: ChainRing, n: int) -> LinearCode:
        return cls(ring, n)

    @classmethod
    def full(cls, ring: ChainRing, n: int) -> LinearCode:
        return cls.gamma_space(ring, n, 0)

    @classmethod
    def gamma_space(cls, ring: ChainRing, n: int, i: int) -> LinearCode:
        """gamma^i R^n."""
        g = ring.gamma_power(i)
        return cls(ring, n, [tuple(g if j == k else 0 for j in range(n)) for k in range(n)])

    # -- invariants ------------------------------------------------------------------

    @property
    def type_vector(self) -> tuple[int, ...]:
        return self.normal.type_vector

    @property
    def exponent(self) -> int:
        """e with |C| = q^e."""
        v = self.ring.v
        return sum((v - i) * k for i, k in enumerate(self.type_vector))

    @property
    def cardinality(self) -> int:
        return self.ring.q**self.exponent

    @property
    def rank(self) -> int:
        return len(self.normal.rows)

    def is_free(self) -> bool:
        return not any(self.type_vector[1:])

    def is_zero(self) -> bool:
        return not self.normal.rows

    def is_full(self) -> bool:
        return self.exponent == self.ring.v * self.n

    @property
    def key(self) -> tuple:
        return (self.ring, self.n, self.normal.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearCode) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return (f"LinearCode({self.ring.name}, n={self.n}, type={self.type_vector}, "
                f"|C|={self.ring.q}^{self.exponent})")

    # -- membership ----------------------------------------------------------------------

    def reduce(self, x: Sequence[int]) -> list[int]:
        """Remainder of x against the normal form (zero iff x is in the code)."""
        ring, q = self.ring, self.ring.q
        x = list(x)
        for row, c, i in zip(*self.normal[:3]):
            a = x[c]
            if a:
                t, r = ring.split_gamma(a, i)
                if r:
                    return x
                x = ring.vsub_scaled(x, t, row)
        return x

    def __contains__(self, x) -> bool:
        if len(x) != self.n:
            raise DimensionMismatch(f"word of length {len(x)} vs code length {self.n}")
        return not any(self.reduce(x))

    def contains(self, x: Sequence[int]) -> bool:
        return x in self

    def __le__(self, other: LinearCode) -> bool:
        self._compatible(other)
        return all(r in other for r in self.normal.rows)

    # -- module operations ------------------------------------------------------------------

    def _compatible(self, other: LinearCode) -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring.name} vs {other.ring.name}")
        if self.n != other.n:
            raise DimensionMismatch(f"lengths {self.n} and {other.n}")

    def __add__(self, other: LinearCode) -> LinearCode:
        self._compatible(other)
        return LinearCode._from_trusted(self.ring, self.n, self.normal.rows + other.normal.rows)

    def __and__(self, other: LinearCode) -> LinearCode:
        self._compatible(other)
        return (self.dual() + other.dual()).dual()

    def dual(self) -> LinearCode:
        """Euclidean dual, as the kernel of x -> G x^T for the normal form G.

        Row-reduce [G^T | I] on the G^T block.  Kernel elements are the
        identity-block parts of rows that vanish on the G^T block, together
        with gamma^(v-i) times each valuation-i pivot row.
        """
        ring, n = self.ring, self.n
        gens = self.normal.rows
        k = len(gens)
        aug = [[g[c] for g in gens] + [1 if j == c else 0 for j in range(n)] for c in range(n)]
        done, leftover = _echelon(ring, aug, k, reduce_above=False)
        kernel = [row[k:] for row in leftover]
        for row, _, i in done:
            if i > 0:
                kernel.append(ring.vscale(ring.gamma_power(ring.v - i), row[k:]))
        return LinearCode._from_trusted(ring, n, kernel)

    def scale_gamma(self, i: int) -> LinearCode:
        """gamma^i C."""
        g = self.ring.gamma_power(i)
        return LinearCode._from_trusted(self.ring, self.n, [self.ring.vscale(g, r) for r in self.normal.rows])

    def colon_gamma(self, i: int) -> LinearCode:
        """(C : gamma^i) = {x : gamma^i x in C}, computed as (gamma^i C^perp)^perp."""
        if not 0 <= i <= self.ring.v:
            raise ValueError(f"i={i} outside [0, {self.ring.v}]")
        return self.dual().scale_gamma(i).dual()

    def project(self) -> LinearCode:
        """Image under the reduction map, a code over the residue field."""
        F = self.ring.residue_field
        return LinearCode(F, self.n, [[a % self.ring.q for a in r] for r in self.normal.rows])

    def permute(self, perm: CoordinatePermutation) -> LinearCode:
        if perm.n != self.n:
            raise DimensionMismatch(f"permutation of {perm.n} points on a length-{self.n} code")
        return LinearCode._from_trusted(self.ring, self.n, [perm.apply(r) for r in self.normal.rows])

    # -- enumeration ----------------------------------------------------------------------------

    def iter_codewords(self, cap: int = DEFAULT_WORD_CAP, chunk: int = _CHUNK) -> Iterator[np.ndarray]:
        """Yield the codewords in blocks; each word appears exactly once.

        A valuation-i normal-form row takes coefficients with code in
        [0, q^(v-i)), which are the canonical residues modulo gamma^(v-i).
        """
        total = self.cardinality
        if total > cap:
            raise CapacityError(f"{total} codewords exceed the enumeration cap {cap}")
        ring = self.ring
        rows = np.array(self.normal.rows, dtype=np.int64).reshape(-1, self.n)
        radices = [ring.q ** (ring.v - i) for i in self.normal.valuations]
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            words = np.zeros((len(idx), self.n), dtype=np.int64)
            for row, rad in zip(rows, radices):
                idx, coef = np.divmod(idx, rad)
                words = ring.np_add(words, ring.np_mul(coef[:, None], row[None, :]))
            yield words

    def codewords(self, cap: int = DEFAULT_WORD_CAP) -> np.ndarray:
        blocks = list(self.iter_codewords(cap))
        return np.concatenate(blocks) if blocks else np.zeros((0, self.n), dtype=np.int64)

    def codeword_set(self, cap: int = DEFAULT_WORD_CAP) -> set[Codeword]:
        return set(map(tuple, self.codewords(cap).tolist()))

    def min_distance(self, method: str = "auto", cap: int = DEFAULT_WORD_CAP) -> int:
        """Minimum Hamming weight of a nonzero codeword.

        ``auto`` searches the residue image for free codes (the two minima
        agree there) and the full code otherwise; ``enumerate`` always walks
        the full code; ``residue`` requires a free code.
        """
        if self.is_zero():
            raise ZeroCode("the zero code has no minimum distance")
        if method == "auto":
            method = "residue" if self.is_free() and not self.ring.is_field else "enumerate"
        if method == "residue":
            if not self.is_free():
                raise ValueError("residue distance is only valid for free codes")
            return self.project().min_distance("enumerate", cap)
        if method != "enumerate":
            raise ValueError(f"unknown method {method!r}")
        best = self.n
        for words in self.iter_codewords(cap):
            w = np.count_nonzero(words, axis=1)
            w = w[w > 0]
            if len(w):
                best = min(best, int(w.min()))
                if best == 1:
                    break
        return best

    def weight_distribution(self, cap: int = DEFAULT_WORD_CAP) -> tuple[int, ...]:
        counts = np.zeros(self.n + 1, dtype=np.int64)
        for words in self.iter_codewords(cap):
            counts += np.bincount(np.count_nonzero(words, axis=1), minlength=self.n + 1)
        return tuple(int(c) for c in counts)

    # -- serialization ------------------------------------------------------------------------------

    def to_json(self, normal: bool = True) -> dict:
        rows = self.normal.rows if normal else self.rows
        return {"ring": self.ring.to_json(), "n": self.n,
                "generators": [[self.ring.to_wire(a) for a in r] for r in rows]}

    @classmethod
    def from_json(cls, d: dict) -> LinearCode:
        from .chain_ring import ChainRing as _CR

        if not isinstance(d, dict):
            raise ValueError("code file must be a JSON object")
        try:
            ring = _CR.from_json(d["ring"])
            n = d["n"]
            gens = d["generators"]
        except KeyError as exc:
            raise ValueError(f"code file missing {exc}") from None
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise ValueError(f"bad length {n!r}")
        if not isinstance(gens, list):
            raise ValueError("generators must be a list")
        rows = []
        for g in gens:
            if not isinstance(g, list) or len(g) != n:
                raise ValueError(f"generator {g!r} does not have length {n}")
            rows.append([ring.from_wire(a) for a in g])
        return cls(ring, n, rows)


# -- functional aliases --------------------------------------------------------------------

def cardinality(C: LinearCode) -> int:
    return C.cardinality


def is_free(C: LinearCode) -> bool:
    return C.is_free()


def dual(C: LinearCode) -> LinearCode:
    return C.dual()


def code_sum(C: LinearCode, D: LinearCode) -> LinearCode:
    return C + D


def intersect(C: LinearCode, D: LinearCode) -> LinearCode:
    return C & D


def contains(C: LinearCode, x: Sequence[int]) -> bool:
    return x in C


def project_code(C: LinearCode) -> LinearCode:
    return C.project()


def colon_gamma(C: LinearCode, i: int) -> LinearCode:
    return C.colon_gamma(i)


def min_distance(C: LinearCode, method: str = "auto", cap: int = DEFAULT_WORD_CAP) -> int:
    return C.min_distance(method, cap)


def permute_code(C: LinearCode, perm: CoordinatePermutation) -> LinearCode:
    return C.permute(perm)


def codes_equal(C: LinearCode, D: LinearCode) -> bool:
    C._compatible(D)
    return C == D


# -- brute-force oracles (no normal forms involved) ------------------------------------------

def brute_force_span(ring: ChainRing, rows: Sequence[Sequence[int]], n: int,
                     limit: int = 1 << 16) -> set[Codeword] | None:
    """All R-combinations of rows by additive closure; None if more than ``limit`` words."""
    words = np.zeros((1, n), dtype=np.int64)
    scalars = np.arange(ring.size, dtype=np.int64)
    for g in rows:
        multiples = np.unique(ring.np_mul(scalars[:, None], np.asarray(g, dtype=np.int64)[None, :]), axis=0)
        words = np.unique(ring.np_add(words[:, None, :], multiples[None, :, :]).reshape(-1, n), axis=0)
        if len(words) > limit:
            return None
    return set(map(tuple, words.tolist()))


def all_words(ring: ChainRing, n: int) -> np.ndarray:
    grids = np.indices((ring.size,) * n).reshape(n, -1).T
    return grids.astype(np.int64)


def brute_force_dual(ring: ChainRing, rows: Sequence[Sequence[int]], n: int) -> set[Codeword]:
    """Words of R^n orthogonal to every row, by exhaustion."""
    words = all_words(ring, n)
    keep = np.ones(len(words), dtype=bool)
    for g in rows:
        acc = np.zeros(len(words), dtype=np.int64)
        for j in range(n):
            acc = ring.np_add(acc, ring.np_mul(words[:, j], int(g[j])))
        keep &= acc == 0
    return set(map(tuple, words[keep].tolist()))


def brute_force_min_weight(words) -> int:
    return min(sum(1 for a in w if a) for w in words if any(w))
