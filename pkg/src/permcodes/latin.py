"""Latin squares, MOLS over finite fields, direct products, and the passage
from idempotent MOLS to regular idempotent permutation codes."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import (
    EmptyInput,
    NotIdempotent,
    NotOrthogonal,
    OrderMismatch,
    OrderTooSmall,
    PermCodeError,
)
from .gf import gf_make
from .numtheory import prime_power_factors
from .perm import PermutationCode


def _is_latin(n: int, cells) -> bool:
    full = set(range(1, n + 1))
    return all(set(row) == full for row in cells) and all(
        {cells[x][y] for x in range(n)} == full for y in range(n)
    )


@dataclass(frozen=True)
class LatinSquare:
    n: int
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        cells = tuple(tuple(int(v) for v in row) for row in self.cells)
        object.__setattr__(self, "cells", cells)
        if len(cells) != self.n or any(len(row) != self.n for row in cells):
            raise PermCodeError(f"latin square of order {self.n} must be {self.n}x{self.n}")
        if not _is_latin(self.n, cells):
            raise PermCodeError("rows and columns must be permutations of 1..n")

    def __call__(self, x: int, y: int) -> int:
        return self.cells[x - 1][y - 1]

    def is_idempotent(self) -> bool:
        return all(self.cells[i][i] == i + 1 for i in range(self.n))


@dataclass(frozen=True)
class MolsSet:
    n: int
    squares: tuple[LatinSquare, ...]
    idempotent: bool = False

    def __post_init__(self):
        object.__setattr__(self, "squares", tuple(self.squares))
        if any(sq.n != self.n for sq in self.squares):
            raise OrderMismatch("all squares in a MOLS set must share one order")
        if self.idempotent and not all(sq.is_idempotent() for sq in self.squares):
            raise NotIdempotent("square flagged idempotent has a bad diagonal")

    def __len__(self) -> int:
        return len(self.squares)

    def __iter__(self):
        return iter(self.squares)


@dataclass(frozen=True)
class PartialLatinSquare:
    n: int
    cells: tuple[tuple[int | None, ...], ...]

    def __post_init__(self):
        cells = tuple(tuple(row) for row in self.cells)
        object.__setattr__(self, "cells", cells)
        lines = list(cells) + [tuple(cells[x][y] for x in range(self.n)) for y in range(self.n)]
        for line in lines:
            filled = [v for v in line if v is not None]
            if len(filled) != len(set(filled)):
                raise PermCodeError("symbol repeated in a row or column")

    def is_complete(self) -> bool:
        return all(v is not None for row in self.cells for v in row)

    def to_latin(self) -> LatinSquare:
        if not self.is_complete():
            raise PermCodeError("partial square has blank cells")
        return LatinSquare(self.n, self.cells)


def are_orthogonal(A: LatinSquare, B: LatinSquare) -> bool:
    if A.n != B.n:
        raise OrderMismatch(f"orders {A.n} and {B.n}")
    pairs = {(a, b) for ra, rb in zip(A.cells, B.cells) for a, b in zip(ra, rb)}
    return len(pairs) == A.n * A.n


def is_mols(squares: Sequence[LatinSquare]) -> bool:
    return all(are_orthogonal(a, b) for a, b in combinations(squares, 2))


def _field_square(q: int, fn) -> LatinSquare:
    F = gf_make(q)
    return LatinSquare(q, [[fn(F, x, y) + 1 for y in F.elements()] for x in F.elements()])


def field_mols(q: int, count: int | None = None) -> MolsSet:
    """The q-1 squares (x, y) -> a*x + y, a != 0, over GF(q); only the first
    ``count`` slopes when given."""
    gf_make(q)
    slopes = range(1, q)[:count]
    squares = [_field_square(q, lambda F, x, y, a=a: F.add(F.mul(a, x), y)) for a in slopes]
    return MolsSet(q, squares)


def field_idempotent_mols(q: int, count: int | None = None) -> MolsSet:
    """The q-2 idempotent squares (x, y) -> a*x + (1-a)*y, a not in {0, 1}."""
    F = gf_make(q)
    if q < 2:
        raise OrderTooSmall(f"order {q}")

    def cell(F, x, y, a):
        return F.add(F.mul(a, x), F.mul(F.sub(1, a), y))

    slopes = range(2, q)[:count]
    squares = [_field_square(q, lambda F, x, y, a=a: cell(F, x, y, a)) for a in slopes]
    return MolsSet(q, squares, idempotent=True)


def mols_product(A: MolsSet, B: MolsSet) -> MolsSet:
    """Direct product, pairing the k-th squares; rows, columns and symbols of
    the product are indexed row-major: (x1, x2) -> (x1 - 1) * n2 + x2."""
    if not len(A) or not len(B):
        raise EmptyInput("both factors need at least one square")
    n1, n2 = A.n, B.n
    n = n1 * n2
    squares = []
    for a, b in zip(A.squares, B.squares):
        cells = [[0] * n for _ in range(n)]
        for x1 in range(n1):
            for x2 in range(n2):
                row = cells[x1 * n2 + x2]
                ra, rb = a.cells[x1], b.cells[x2]
                for y1 in range(n1):
                    base = (ra[y1] - 1) * n2
                    off = y1 * n2
                    for y2 in range(n2):
                        row[off + y2] = base + rb[y2]
        squares.append(LatinSquare(n, cells))
    return MolsSet(n, squares, idempotent=A.idempotent and B.idempotent)


def macneish_mols(n: int, idempotent: bool = False, count: int | None = None) -> MolsSet:
    """Product of field MOLS over the prime-power factors of n.

    Gives min(q) - 1 squares, or min(q) - 2 idempotent ones; an empty set when
    a factor contributes none.
    """
    if n < 2:
        raise OrderTooSmall(f"order {n}")
    make = field_idempotent_mols if idempotent else field_mols
    result = None
    for q in prime_power_factors(n):
        factor = make(q, count)
        if not len(factor):
            return MolsSet(n, (), idempotent)
        result = factor if result is None else mols_product(result, factor)
    return result


def macneish_floor(n: int) -> tuple[int, int]:
    """(q-1, q-2) for the least prime-power factor q of n, clamped at 0."""
    q = prime_power_factors(n)[0]
    return max(q - 1, 0), max(q - 2, 0)


def square_to_words(square: LatinSquare) -> list[tuple[int, ...]]:
    """Words pi_i with pi_i(x) = y iff square(x, y) = i, for i = 1..n."""
    n = square.n
    words = [[0] * n for _ in range(n)]
    for x, row in enumerate(square.cells):
        for y, i in enumerate(row):
            words[i - 1][x] = y + 1
    return [tuple(w) for w in words]


def mols_to_code(mols: MolsSet) -> PermutationCode:
    if not is_mols(mols.squares):
        raise NotOrthogonal("squares are not mutually orthogonal")
    words = [w for sq in mols.squares for w in square_to_words(sq)]
    return PermutationCode(mols.n, words, claimed_d=mols.n - 1)


def mols_to_ipc(mols: MolsSet) -> PermutationCode:
    """r idempotent MOLS -> r-IPC(n, n-1), words ordered by (square, symbol)."""
    if not all(sq.is_idempotent() for sq in mols.squares):
        raise NotIdempotent("every square must have (i, i) = i")
    code = mols_to_code(mols)
    return code.with_claims(d=mols.n - 1, r=len(mols))
