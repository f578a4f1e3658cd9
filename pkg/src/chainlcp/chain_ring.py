"""Finite chain rings Z/p^v and F_q[u]/(u^v).

Every ring element is stored as a non-negative integer *code*.  For both
families the code is read as a base-q expansion whose i-th digit is the
coefficient of gamma^i:

* ``Zpv``: the residue of the integer in [0, p^v); base q = p.
* ``FqU``: sum_j c_j q^j where c_j is the F_q coefficient of u^j, itself
  encoded as sum_k a_k p^k over the fixed residue modulus.

With this encoding gamma^i * lift(x) has code ``x * q**i``, the projection
to the residue field is ``code % q`` and an element lies in gamma^i R iff
``code % q**i == 0``.  The linear-algebra kernels rely on these identities.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Sequence

import numpy as np

from .errors import InvalidRing, NonUnit, RingMismatch

ZPV = "Zpv"
FQU = "FqU"

_PY_TABLE_LIMIT = 1024
_NP_TABLE_LIMIT = 256


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, k) with n == p**k, or None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n and n % p:
        p += 1
    if n % p:
        p = n
    k, rest = 0, n
    while rest % p == 0:
        rest //= p
        k += 1
    return (p, k) if rest == 1 else None


def _digits(x: int, base: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        x, d = divmod(x, base)
        out.append(d)
    return out


def _undigits(ds: Sequence[int], base: int) -> int:
    x = 0
    for d in reversed(ds):
        x = x * base + d
    return x


def _poly_rem(a: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial mod, over F_p (little-endian)."""
    a = [c % p for c in a]
    dm = len(mod) - 1
    for top in range(len(a) - 1, dm - 1, -1):
        c = a[top]
        if c:
            shift = top - dm
            for k, mk in enumerate(mod):
                a[shift + k] = (a[shift + k] - c * mk) % p
    return (a[:dm] + [0] * dm)[:dm]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1 or poly[-1] % p != 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not any(_poly_rem(poly, list(low) + [1], p)):
                return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """First monic irreducible polynomial of degree m, counting low coefficients up."""
    if m == 1:
        return (0, 1)
    for c in range(1, p**m):
        poly = _digits(c, p, m) + [1]
        if poly[0] and is_irreducible(poly, p):
            return tuple(poly)
    raise InvalidRing(f"no irreducible polynomial of degree {m} over F_{p}")  # pragma: no cover


@dataclass(frozen=True)
class ChainRing:
    """Descriptor of one of the two supported chain-ring families.

    Instances are immutable and hashable; arithmetic tables are built lazily
    and cached on the instance.
    """

    family: str
    p: int
    m: int = 1
    v: int = 1
    modulus: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.family not in (ZPV, FQU):
            raise InvalidRing(f"unknown ring family {self.family!r}")
        if not is_prime(self.p):
            raise InvalidRing(f"p={self.p} is not prime")
        if self.v < 1:
            raise InvalidRing(f"nilpotency index v={self.v} must be >= 1")
        if self.m < 1:
            raise InvalidRing(f"extension degree m={self.m} must be >= 1")
        if self.family == ZPV and self.m != 1:
            raise InvalidRing("family Zpv requires m = 1")
        if self.m == 1:
            object.__setattr__(self, "modulus", None)
            return
        mod = default_modulus(self.p, self.m) if self.modulus is None else self.modulus
        mod = tuple(int(c) % self.p for c in mod)
        if len(mod) != self.m + 1 or mod[-1] != 1:
            raise InvalidRing(f"modulus {list(mod)} is not monic of degree {self.m}")
        if not is_irreducible(mod, self.p):
            raise InvalidRing(f"modulus {list(mod)} is reducible over F_{self.p}")
        if self.q > _PY_TABLE_LIMIT:
            raise InvalidRing(f"residue field of order {self.q} is too large")
        object.__setattr__(self, "modulus", mod)

    # -- derived quantities -------------------------------------------------

    @cached_property
    def q(self) -> int:
        return self.p**self.m

    @cached_property
    def size(self) -> int:
        return self.q**self.v

    @property
    def is_field(self) -> bool:
        return self.v == 1

    @property
    def name(self) -> str:
        if self.family == ZPV:
            return f"Z{self.size}"
        return f"F{self.q}" if self.v == 1 else f"F{self.q}u{self.v}"

    def __repr__(self) -> str:
        return f"ChainRing({self.name})"

    @cached_property
    def residue_field(self) -> ChainRing:
        """R / gamma R as a chain ring with v = 1; its codes are [0, q)."""
        if self.v == 1:
            return self
        return ChainRing(self.family, self.p, self.m, 1, self.modulus)

    @property
    def gamma(self) -> RingElement:
        return RingElement(self, self.gamma_power(1))

    def gamma_power(self, i: int) -> int:
        """Code of gamma^i (0 once i >= v)."""
        return self.q**i if i < self.v else 0

    def elements(self) -> range:
        return range(self.size)

    def units(self) -> list[int]:
        return [a for a in self.elements() if a % self.q]

    # -- residue field arithmetic (codes in [0, q)) ---------------------------

    @cached_property
    def _field_tables(self) -> tuple[list[list[int]], list[list[int]]]:
        p, m, q = self.p, self.m, self.q
        digs = [_digits(a, p, m) for a in range(q)]
        add = [[_undigits([(x + y) % p for x, y in zip(digs[a], digs[b])], p) for b in range(q)] for a in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                prod = [0] * (2 * m - 1)
                for i, x in enumerate(digs[a]):
                    if x:
                        for j, y in enumerate(digs[b]):
                            prod[i + j] += x * y
                c = _undigits(_poly_rem(prod, self.modulus, p), p)
                mul[a][b] = mul[b][a] = c
        return add, mul

    def _fadd(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        return self._field_tables[0][a][b]

    def _fmul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        return self._field_tables[1][a][b]

    def _fneg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        return _undigits([-d % self.p for d in _digits(a, self.p, self.m)], self.p)

    def _finv(self, a: int) -> int:
        if a == 0:
            raise NonUnit("0 has no inverse in the residue field")
        if self.m == 1:
            return pow(a, -1, self.p)
        row = self._field_tables[1][a]
        return row.index(1)

    # -- scalar ring arithmetic -----------------------------------------------

    @cached_property
    def _tables(self) -> tuple[list[list[int]], list[list[int]], list[list[int]]] | None:
        if self.family == ZPV or self.size > _PY_TABLE_LIMIT:
            return None
        a = np.arange(self.size)
        add = self._np_add_direct(a[:, None], a[None, :])
        mul = self._np_mul_direct(a[:, None], a[None, :])
        neg = self._np_neg_direct(a)
        sub = add[:, neg]
        return add.tolist(), sub.tolist(), mul.tolist()

    def check(self, a: int) -> int:
        if not 0 <= a < self.size:
            raise ValueError(f"code {a} is not an element of {self.name}")
        return a

    def from_int(self, n: int) -> int:
        """Code of the integer n times the identity."""
        return n % self.size if self.family == ZPV else n % self.p

    def add(self, a: int, b: int) -> int:
        if self.family == ZPV:
            return (a + b) % self.size
        t = self._tables
        if t is not None:
            return t[0][a][b]
        q, v = self.q, self.v
        return _undigits([self._fadd(x, y) for x, y in zip(_digits(a, q, v), _digits(b, q, v))], q)

    def neg(self, a: int) -> int:
        if self.family == ZPV:
            return -a % self.size
        return _undigits([self._fneg(x) for x in _digits(a, self.q, self.v)], self.q)

    def sub(self, a: int, b: int) -> int:
        if self.family == ZPV:
            return (a - b) % self.size
        t = self._tables
        if t is not None:
            return t[1][a][b]
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.family == ZPV:
            return a * b % self.size
        t = self._tables
        if t is not None:
            return t[2][a][b]
        q, v = self.q, self.v
        ad, bd = _digits(a, q, v), _digits(b, q, v)
        c = [0] * v
        for i, x in enumerate(ad):
            if x:
                for j in range(v - i):
                    if bd[j]:
                        c[i + j] = self._fadd(c[i + j], self._fmul(x, bd[j]))
        return _undigits(c, q)

    @cached_property
    def _valuations(self) -> list[int] | None:
        if self.size > 1 << 16:
            return None
        return [self._valuation(a) for a in range(self.size)]

    def _valuation(self, a: int) -> int:
        if a == 0:
            return self.v
        i = 0
        while a % self.q == 0:
            a //= self.q
            i += 1
        return i

    def valuation(self, a: int) -> int:
        """Largest i with a in gamma^i R; valuation(0) = v."""
        vt = self._valuations
        return vt[a] if vt is not None else self._valuation(a)

    def is_unit(self, a: int) -> bool:
        return a % self.q != 0

    def inverse(self, a: int) -> int:
        if not self.is_unit(a):
            raise NonUnit(f"{self.to_wire(a)} is not a unit in {self.name}")
        if self.family == ZPV:
            return pow(a, -1, self.size)
        # Newton iteration b <- b(2 - ab) doubles gamma-adic precision.
        b = self._finv(a % self.q)
        two = self.from_int(2)
        for _ in range((self.v - 1).bit_length()):
            b = self.mul(b, self.sub(two, self.mul(a, b)))
        return b

    def project(self, a: int) -> int:
        return a % self.q

    def lift(self, x: int) -> int:
        if not 0 <= x < self.q:
            raise ValueError(f"{x} is not a residue field code")
        return x

    def split_gamma(self, a: int, i: int) -> tuple[int, int]:
        """(t, r) with a = gamma^i * t + r and r reduced modulo gamma^i."""
        return divmod(a, self.q**i)

    # -- vector arithmetic on python lists ----------------------------------------

    def vadd(self, x: Sequence[int], y: Sequence[int]) -> list[int]:
        if self.family == ZPV:
            n = self.size
            return [(a + b) % n for a, b in zip(x, y)]
        return [self.add(a, b) for a, b in zip(x, y)]

    def vsub(self, x: Sequence[int], y: Sequence[int]) -> list[int]:
        if self.family == ZPV:
            n = self.size
            return [(a - b) % n for a, b in zip(x, y)]
        return [self.sub(a, b) for a, b in zip(x, y)]

    def vscale(self, t: int, x: Sequence[int]) -> list[int]:
        if self.family == ZPV:
            n = self.size
            return [t * a % n for a in x]
        tab = self._tables
        if tab is not None:
            row = tab[2][t]
            return [row[a] for a in x]
        return [self.mul(t, a) for a in x]

    def vsub_scaled(self, x: Sequence[int], t: int, y: Sequence[int]) -> list[int]:
        """x - t*y."""
        if self.family == ZPV:
            n = self.size
            return [(a - t * b) % n for a, b in zip(x, y)]
        tab = self._tables
        if tab is not None:
            row, sub = tab[2][t], tab[1]
            return [sub[a][row[b]] for a, b in zip(x, y)]
        return [self.sub(a, self.mul(t, b)) for a, b in zip(x, y)]

    def dot(self, x: Sequence[int], y: Sequence[int]) -> int:
        if self.family == ZPV:
            return sum(a * b for a, b in zip(x, y)) % self.size
        acc = 0
        for a, b in zip(x, y):
            if a and b:
                acc = self.add(acc, self.mul(a, b))
        return acc

    # -- numpy arithmetic ------------------------------------------------------

    def _np_field_add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        return self._np_field_tables[0][a, b]

    def _np_field_mul(self, a, b):
        if self.m == 1:
            return a * b % self.p
        return self._np_field_tables[1][a, b]

    @cached_property
    def _np_field_tables(self):
        add, mul = self._field_tables
        return np.array(add, dtype=np.int64), np.array(mul, dtype=np.int64)

    def _np_add_direct(self, a, b):
        q, v = self.q, self.v
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = np.zeros(a.shape, dtype=np.int64)
        for i in reversed(range(v)):
            s = q**i
            out = out * q + self._np_field_add((a // s) % q, (b // s) % q)
        return out

    def _np_neg_direct(self, a):
        q, v = self.q, self.v
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros(a.shape, dtype=np.int64)
        for i in reversed(range(v)):
            d = (a // q**i) % q
            if self.m == 1:
                nd = -d % self.p
            else:
                nd = np.zeros_like(d)
                for k in reversed(range(self.m)):
                    nd = nd * self.p + (-((d // self.p**k) % self.p)) % self.p
            out = out * q + nd
        return out

    def _np_mul_direct(self, a, b):
        q, v = self.q, self.v
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        ad = [(a // q**i) % q for i in range(v)]
        bd = [(b // q**i) % q for i in range(v)]
        c = [np.zeros(a.shape, dtype=np.int64) for _ in range(v)]
        for i in range(v):
            for j in range(v - i):
                c[i + j] = self._np_field_add(c[i + j], self._np_field_mul(ad[i], bd[j]))
        out = np.zeros(a.shape, dtype=np.int64)
        for i in reversed(range(v)):
            out = out * q + c[i]
        return out

    @cached_property
    def _np_tables(self):
        if self.family == ZPV or self.size > _NP_TABLE_LIMIT:
            return None
        a = np.arange(self.size)
        return self._np_add_direct(a[:, None], a[None, :]), self._np_mul_direct(a[:, None], a[None, :])

    def np_add(self, a, b):
        if self.family == ZPV:
            return (np.asarray(a, dtype=np.int64) + b) % self.size
        t = self._np_tables
        return t[0][a, b] if t is not None else self._np_add_direct(a, b)

    def np_mul(self, a, b):
        if self.family == ZPV:
            if self.size >= 1 << 31:
                raise InvalidRing(f"{self.name} is too large for vectorised arithmetic")
            return np.asarray(a, dtype=np.int64) * b % self.size
        t = self._np_tables
        return t[1][a, b] if t is not None else self._np_mul_direct(a, b)

    # -- serialization ---------------------------------------------------------

    def to_wire(self, a: int) -> Any:
        if self.family == ZPV:
            return a
        return [_digits(c, self.p, self.m) for c in _digits(a, self.q, self.v)]

    def from_wire(self, obj: Any) -> int:
        if self.family == ZPV:
            if isinstance(obj, bool) or not isinstance(obj, int):
                raise ValueError(f"expected an integer element of {self.name}, got {obj!r}")
            if not 0 <= obj < self.size:
                raise ValueError(f"{obj} is not a reduced element of {self.name}")
            return obj
        if isinstance(obj, bool) or not isinstance(obj, list) or len(obj) > self.v:
            raise ValueError(f"expected a list of at most {self.v} u-coefficients for {self.name}, got {obj!r}")
        coeffs = []
        for c in obj:
            if isinstance(c, list):
                if len(c) > self.m or not all(isinstance(d, int) and not isinstance(d, bool)
                                              and 0 <= d < self.p for d in c):
                    raise ValueError(f"bad residue coefficient {c!r}")
                coeffs.append(_undigits(c, self.p))
            elif isinstance(c, int) and not isinstance(c, bool) and 0 <= c < self.q:
                coeffs.append(c)
            else:
                raise ValueError(f"bad residue coefficient {c!r}")
        return _undigits(coeffs, self.q)

    def to_json(self) -> dict:
        d: dict[str, Any] = {"family": self.family, "p": self.p, "m": self.m, "v": self.v}
        if self.modulus is not None:
            d["modulus"] = list(self.modulus)
        return d

    @classmethod
    def from_json(cls, d: dict) -> ChainRing:
        if not isinstance(d, dict):
            raise InvalidRing(f"ring descriptor must be an object, got {d!r}")
        try:
            return make_ring(d["family"], d["p"], d.get("m", 1), d["v"], d.get("modulus"))
        except KeyError as exc:
            raise InvalidRing(f"ring descriptor missing {exc}") from None

    def element(self, code: int) -> RingElement:
        return RingElement(self, self.check(code))

    def format(self, a: int) -> str:
        """Human-readable form, e.g. ``1+u`` or ``a+(1+a)u`` (a generates F_q over F_p)."""
        if self.family == ZPV:
            return str(a)

        def power(sym: str, k: int) -> str:
            return "" if k == 0 else sym if k == 1 else f"{sym}^{k}"

        def monomial(d: int, mono: str) -> str:
            if not mono:
                return str(d)
            return mono if d == 1 else f"{d}{mono}"

        terms = []
        for j, c in enumerate(_digits(a, self.q, self.v)):
            if not c:
                continue
            if self.m == 1:
                coef = str(c)
            else:
                coef = "+".join(monomial(d, power("a", k)) for k, d in enumerate(_digits(c, self.p, self.m)) if d)
                if "+" in coef and j:
                    coef = f"({coef})"
            u = power("u", j)
            terms.append(coef if not u else u if coef == "1" else f"{coef}{u}")
        return "+".join(terms) or "0"


def make_ring(family: str, p: int, m: int = 1, v: int = 1, modulus: Sequence[int] | None = None) -> ChainRing:
    for name, val in (("p", p), ("m", m), ("v", v)):
        if isinstance(val, bool) or not isinstance(val, int):
            raise InvalidRing(f"{name} must be an integer, got {val!r}")
    return ChainRing(family, p, m, v, None if modulus is None else tuple(modulus))


_RING_NAME = re.compile(r"^(?:Z(\d+)|F(\d+)(?:u(\d+)|\[u\]/\(u\^(\d+)\))?)$")


def parse_ring(name: str) -> ChainRing:
    """Ring from a short name: ``Z4``, ``Z9``, ``F2``, ``F2u2``, ``F4u2``, ``F3[u]/(u^2)``."""
    mt = _RING_NAME.match(name.strip())
    if not mt:
        raise InvalidRing(f"cannot parse ring name {name!r}")
    if mt.group(1):
        pk = prime_power(int(mt.group(1)))
        if pk is None:
            raise InvalidRing(f"{mt.group(1)} is not a prime power")
        return make_ring(ZPV, pk[0], 1, pk[1])
    pk = prime_power(int(mt.group(2)))
    if pk is None:
        raise InvalidRing(f"{mt.group(2)} is not a prime power")
    v = int(mt.group(3) or mt.group(4) or 1)
    return make_ring(FQU, pk[0], pk[1], v)


@dataclass(frozen=True)
class RingElement:
    """A ring element with operator support; ``code`` is canonical."""

    ring: ChainRing
    code: int

    def _other(self, other) -> int:
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring.name} vs {other.ring.name}")
            return other.code
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return RingElement(self.ring, self.ring.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return RingElement(self.ring, self.ring.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        return RingElement(self.ring, self.ring.sub(b, self.code))

    def __mul__(self, other):
        b = self._other(other)
        return RingElement(self.ring, self.ring.mul(self.code, b))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.code))

    def __pow__(self, k: int):
        acc, base = self.ring.from_int(1), self.code
        while k:
            if k & 1:
                acc = self.ring.mul(acc, base)
            base = self.ring.mul(base, base)
            k >>= 1
        return RingElement(self.ring, acc)

    @property
    def valuation(self) -> int:
        return self.ring.valuation(self.code)

    @property
    def is_unit(self) -> bool:
        return self.ring.is_unit(self.code)

    def inverse(self) -> RingElement:
        return RingElement(self.ring, self.ring.inverse(self.code))

    def to_wire(self):
        return self.ring.to_wire(self.code)

    def __repr__(self) -> str:
        return f"{self.ring.format(self.code)} in {self.ring.name}"


# Residue field elements are elements of the residue ring (v = 1).
ResidueElement = RingElement


def _same(a: RingElement, b: RingElement) -> None:
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring.name} vs {b.ring.name}")


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    _same(a, b)
    return a + b


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    _same(a, b)
    return a * b


def ring_neg(a: RingElement) -> RingElement:
    return -a


def unit_inverse(a: RingElement) -> RingElement:
    return a.inverse()


def valuation(a: RingElement) -> int:
    return a.valuation


def project(a: RingElement) -> ResidueElement:
    """The reduction map onto the residue field."""
    return RingElement(a.ring.residue_field, a.ring.project(a.code))


def lift(x: ResidueElement, ring: ChainRing) -> RingElement:
    """Canonical representative of the coset of x (higher gamma digits zero)."""
    if x.ring != ring.residue_field:
        raise RingMismatch(f"{x.ring.name} is not the residue field of {ring.name}")
    return RingElement(ring, ring.lift(x.code))
