"""Gluing regular idempotent codes along a pairwise balanced design."""

from __future__ import annotations

from typing import Mapping

from .design import PairwiseBalancedDesign, verify_pbd
from .errors import BlockSizeTwo, IngredientNotRIPC, MissingIngredient, PBDInvalid
from .perm import PermutationCode, fixed_points, verify_ripc


def _templates(code: PermutationCode, r: int) -> list[list[tuple[int, ...]]]:
    """``out[s - 1]`` lists the words fixing s, in code order."""
    by_symbol: list[list[tuple[int, ...]]] = [[] for _ in range(code.n)]
    for w in code.words:
        (s,) = fixed_points(w)
        by_symbol[s - 1].append(w)
    assert all(len(ws) == r for ws in by_symbol)
    return by_symbol


def compose_via_pbd(
    pbd: PairwiseBalancedDesign, ingredients: Mapping[int, PermutationCode], r: int
) -> PermutationCode:
    """Build an r-IPC(n, n-1) on the points of ``pbd``.

    Each block B of size k carries a copy of ``ingredients[k]`` transported
    along the ascending bijection 1..k -> B.  Word (i, j) fixes i and, on
    every block B through i, acts as the j-th ingredient word fixing i's
    position in B.  Output is ordered by (i, j).
    """
    check = verify_pbd(pbd)
    if not check:
        raise PBDInvalid(check.describe())
    sizes = sorted(k for k in pbd.K if k >= 2)
    if r >= 1 and 2 in sizes:
        raise BlockSizeTwo("no r-IPC(2, 1) exists for r >= 1")
    templates = {}
    for k in sizes:
        if k not in ingredients:
            raise MissingIngredient(k)
        code = ingredients[k]
        if code.n != k:
            raise IngredientNotRIPC(k, f"ingredient has length {code.n}")
        rep = verify_ripc(code, r)
        if not rep.ok:
            raise IngredientNotRIPC(k, "; ".join(rep.problems))
        templates[k] = _templates(code, r)

    n = pbd.n
    through: list[list[tuple[int, ...]]] = [[] for _ in range(n + 1)]
    for b in pbd.blocks:
        if len(b) >= 2:
            for x in b:
                through[x].append(b)

    words = []
    for i in range(1, n + 1):
        for j in range(r):
            w = [0] * n
            w[i - 1] = i
            for b in through[i]:
                pos = b.index(i)
                tmpl = templates[len(b)][pos][j]
                for s, x in enumerate(b):
                    if x != i:
                        w[x - 1] = b[tmpl[s] - 1]
            words.append(tuple(w))
    return PermutationCode(n, words, claimed_d=n - 1, claimed_r=r)
