"""Pairwise balanced designs: a verifier, the truncated transversal design
PBD(mt+u, {m, m+1, t, u}), and truncated projective planes."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import (
    BadTruncation,
    EmptyInput,
    InsufficientMOLS,
    KeepOutOfRange,
    NotAPrimePower,
    PointOutOfRange,
)
from .gf import gf_make
from .latin import LatinSquare, MolsSet, is_mols, macneish_mols
from .numtheory import is_prime_power


@dataclass(frozen=True)
class PairwiseBalancedDesign:
    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(x) for x in b)) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)

    @property
    def K(self) -> set[int]:
        return {len(b) for b in self.blocks}

    def blocks_through(self, point: int) -> list[tuple[int, ...]]:
        return [b for b in self.blocks if point in b]


@dataclass(frozen=True)
class PBDCheck:
    ok: bool
    pair: tuple[int, int] | None = None
    count: int = 1

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "every pair covered exactly once"
        return f"pair {self.pair} covered {self.count} times"


def verify_pbd(d: PairwiseBalancedDesign) -> PBDCheck:
    """Pair-coverage check; on failure returns the first bad pair in
    lexicographic order with its coverage count."""
    cover = np.zeros((d.n + 1, d.n + 1), dtype=np.int32)
    for b in d.blocks:
        if any(x < 1 or x > d.n for x in b):
            raise PointOutOfRange(f"block {b} leaves 1..{d.n}")
        if len(set(b)) != len(b):
            raise PointOutOfRange(f"block {b} repeats a point")
        for x, y in combinations(b, 2):
            cover[x, y] += 1
    upper = np.triu(cover[1:, 1:], k=1)
    mask = np.triu(np.ones((d.n, d.n), dtype=bool), k=1)
    bad = np.argwhere(mask & (upper != 1))
    if len(bad):
        x, y = (int(v) + 1 for v in bad[0])
        return PBDCheck(False, (x, y), int(cover[x, y]))
    return PBDCheck(True)


def _mols_of_order(t: int, count: int) -> MolsSet:
    if count <= 0:
        return MolsSet(t, ())
    if t == 1:
        return MolsSet(1, [LatinSquare(1, [(1,)])] * count)
    if t < 1:
        raise InsufficientMOLS(f"no MOLS of order {t}")
    mols = macneish_mols(t, count=count)
    if len(mols) < count:
        raise InsufficientMOLS(f"need {count} MOLS of order {t}, MacNeish gives {len(mols)}")
    return mols


def truncated_td_pbd(m: int, t: int, u: int, mols: MolsSet | None = None) -> PairwiseBalancedDesign:
    """PBD on m*t + u points from m-1 MOLS of order t.

    Point (x, h), x in 1..t, h in 1..m+1, becomes (h-1)*t + x; only x <= u
    survives in the last fiber.  Blocks are the transversals
    {(i,1), (j,2), (L_1(i,j),3), ..., (L_{m-1}(i,j),m+1)} minus deleted
    points, then the fibers.  Blocks of size 0 or 1 are dropped.
    """
    if not 0 <= u <= t:
        raise BadTruncation(f"need 0 <= u <= t, got u={u}, t={t}")
    if m < 2:
        raise EmptyInput(f"m must be at least 2, got {m}")
    if mols is None:
        mols = _mols_of_order(t, m - 1)
    else:
        if mols.n != t:
            raise InsufficientMOLS(f"MOLS have order {mols.n}, need {t}")
        if len(mols) < m - 1:
            raise InsufficientMOLS(f"need {m - 1} MOLS of order {t}, got {len(mols)}")
        if not is_mols(mols.squares[: m - 1]):
            raise InsufficientMOLS("supplied squares are not mutually orthogonal")
    squares = mols.squares[: m - 1]

    def point(x, h):
        return (h - 1) * t + x

    blocks = []
    for i in range(1, t + 1):
        for j in range(1, t + 1):
            coords = [i, j] + [sq(i, j) for sq in squares]
            b = [point(x, h) for h, x in enumerate(coords, 1) if h <= m or x <= u]
            blocks.append(b)
    for h in range(1, m + 2):
        size = t if h <= m else u
        if size >= 2:
            blocks.append([point(x, h) for x in range(1, size + 1)])
    return PairwiseBalancedDesign(m * t + u, blocks)


def projective_plane(p: int) -> tuple[int, list[list[int]]]:
    """Desarguesian plane of order p on points 1..p^2+p+1.

    Affine point (x, y) is x*p + y + 1; the point at infinity of slope s is
    p^2 + s + 1 and the vertical direction is p^2 + p + 1.  Lines come in the
    order y = s*x + b, x = c, then the line at infinity.
    """
    if not is_prime_power(p):
        raise NotAPrimePower(f"{p} is not a prime power")
    F = gf_make(p)
    pt = lambda x, y: x * p + y + 1  # noqa: E731
    lines = []
    for s in F.elements():
        for b in F.elements():
            line = [pt(x, F.add(F.mul(s, x), b)) for x in F.elements()]
            lines.append(sorted(line) + [p * p + s + 1])
    for c in F.elements():
        lines.append([pt(c, y) for y in F.elements()] + [p * p + p + 1])
    lines.append(list(range(p * p + 1, p * p + p + 2)))
    return p * p + p + 1, lines


def plane_truncation_pbd(p: int, p_keep: int) -> PairwiseBalancedDesign:
    """Keep only the first p_keep points of the last line (the line at
    infinity) of the plane of order p: a PBD(p^2 + p_keep, {p_keep, p, p+1})."""
    if not is_prime_power(p):
        raise NotAPrimePower(f"{p} is not a prime power")
    if not 2 <= p_keep <= p + 1:
        raise KeepOutOfRange(f"p_keep must lie in 2..{p + 1}, got {p_keep}")
    v, lines = projective_plane(p)
    deleted = set(lines[-1][p_keep:])
    blocks = []
    for line in lines:
        b = [x for x in line if x not in deleted]
        if len(b) >= 2:
            blocks.append(b)
    return PairwiseBalancedDesign(v - len(deleted), blocks)
