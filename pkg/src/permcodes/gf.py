"""Small finite fields GF(p^k) with integer-encoded elements.

An element is an integer ``e`` in ``0..q-1`` whose base-p digits are the
polynomial coefficients, constant term least significant.  So ``0`` is the
zero element and ``1`` the multiplicative identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import NotAPrimePower, NotASquareOrder, ZeroInverse
from .numtheory import prime_power

TABLE_LIMIT = 256


def _poly_mod(coeffs: list[int], modulus: tuple[int, ...], p: int) -> list[int]:
    """Reduce ``coeffs`` (low degree first) modulo a monic ``modulus``."""
    k = len(modulus) - 1
    c = list(coeffs)
    for deg in range(len(c) - 1, k - 1, -1):
        lead = c[deg] % p
        if lead:
            for i in range(k + 1):
                c[deg - k + i] = (c[deg - k + i] - lead * modulus[i]) % p
    c = [x % p for x in c[:k]]
    return c + [0] * (k - len(c))


def _has_root_or_factor(poly: tuple[int, ...], p: int) -> bool:
    """True when ``poly`` has a monic factor of degree 1..deg/2 over GF(p)."""
    k = len(poly) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = tuple(low) + (1,)
            if not any(_poly_mod(list(poly), divisor, p)):
                return True
    return False


def is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Exhaustive irreducibility test for a monic polynomial (low degree first)."""
    if poly[-1] != 1 or len(poly) < 2:
        return False
    return not _has_root_or_factor(poly, p)


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """The monic irreducible of degree k with the smallest integer encoding
    ``sum(c_i * p**i)``, i.e. ordered from the leading coefficient down."""
    if k == 1:
        return (0, 1)
    for code in range(p ** k):
        low = [(code // p ** i) % p for i in range(k)]
        poly = tuple(low) + (1,)
        if low[0] and is_irreducible(poly, p):
            return poly
    raise AssertionError(f"no irreducible of degree {k} over GF({p})")


@dataclass(frozen=True)
class FiniteField:
    p: int
    k: int
    modulus: tuple[int, ...]
    q: int = field(init=False)
    _add: np.ndarray | None = field(init=False, repr=False, compare=False)
    _mul: np.ndarray | None = field(init=False, repr=False, compare=False)
    _inv: tuple[int, ...] | None = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p ** self.k)
        add = mul = inv = None
        if self.q <= TABLE_LIMIT:
            add, mul = self._build_tables()
            inv = [0] * self.q
            for a in range(1, self.q):
                inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
            inv = tuple(inv)
        object.__setattr__(self, "_add", add)
        object.__setattr__(self, "_mul", mul)
        object.__setattr__(self, "_inv", inv)

    def digits(self, e: int) -> list[int]:
        return [(e // self.p ** i) % self.p for i in range(self.k)]

    def encode(self, digits) -> int:
        return sum(int(d) % self.p * self.p ** i for i, d in enumerate(digits))

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        D = np.array([self.digits(e) for e in range(q)], dtype=np.int64)
        weights = p ** np.arange(k, dtype=np.int64)
        add = ((D[:, None, :] + D[None, :, :]) % p) @ weights
        # row a of the mul table is the GF(p)-linear map b -> a*b
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            basis = []
            cur = self.digits(a)
            for _ in range(k):
                basis.append(cur)
                cur = _poly_mod([0] + cur, self.modulus, p)
            M = np.array(basis, dtype=np.int64)
            mul[a] = ((D @ M) % p) @ weights
        add.setflags(write=False)
        mul.setflags(write=False)
        return add, mul

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return int(self._add[a, b])
        return self.encode(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a: int) -> int:
        return self.encode(-x for x in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul is not None:
            return int(self._mul[a, b])
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self.encode(_poly_mod(prod, self.modulus, self.p))

    def pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("0 has no multiplicative inverse")
        if self._inv is not None:
            return self._inv[a]
        return self.pow(a, self.q - 2)

    def mul_table(self) -> np.ndarray:
        if self._mul is None:
            raise ValueError(f"tables are only materialized for q <= {TABLE_LIMIT}")
        return self._mul

    def add_table(self) -> np.ndarray:
        if self._add is None:
            raise ValueError(f"tables are only materialized for q <= {TABLE_LIMIT}")
        return self._add


@lru_cache(maxsize=None)
def gf_make(q: int) -> FiniteField:
    """Field of order q with the least irreducible modulus (see
    :func:`least_irreducible`)."""
    pk = prime_power(q)
    if pk is None:
        raise NotAPrimePower(f"{q} is not a prime power")
    p, k = pk
    return FiniteField(p, k, least_irreducible(p, k))


def gf_add(F: FiniteField, a: int, b: int) -> int:
    return F.add(a, b)


def gf_mul(F: FiniteField, a: int, b: int) -> int:
    return F.mul(a, b)


def gf_inv(F: FiniteField, a: int) -> int:
    return F.inv(a)


def subfield(F2: FiniteField) -> list[int]:
    """Elements of the order-sqrt(|F2|) subfield: the solutions of x^q = x."""
    if F2.k % 2:
        raise NotASquareOrder(f"GF({F2.q}) has no subfield of order sqrt({F2.q})")
    q = F2.p ** (F2.k // 2)
    return [x for x in F2.elements() if F2.pow(x, q) == x]


def gf_subfield_cosets(F2: FiniteField) -> list[list[int]]:
    """Partition GF(q^2) into the q additive cosets of its subfield GF(q).

    Each coset is sorted, and cosets are ordered by their least element, so
    the subfield itself comes first.
    """
    sub = subfield(F2)
    q = F2.p ** (F2.k // 2)
    assert len(sub) == q
    seen: set[int] = set()
    cosets = []
    for c in F2.elements():
        if c in seen:
            continue
        coset = sorted(F2.add(c, s) for s in sub)
        seen.update(coset)
        cosets.append(coset)
    return cosets
