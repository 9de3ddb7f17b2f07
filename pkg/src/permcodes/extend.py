"""Partition-and-extension: lengthen affine codes over GF(q^2) by one symbol
to obtain a (q-1)-IPC(q^2 + 1, q^2).

Field element e is written as symbol e + 1 and the new symbol is q^2 + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NoAnchor, NotAPrimePower, ZeroSlope
from .gf import FiniteField, gf_make, gf_subfield_cosets, subfield
from .numtheory import prime_power
from .perm import PermutationCode, fixed_points


@dataclass(frozen=True)
class ExtensionPlan:
    parts: tuple[tuple[int, ...], ...]
    families: tuple[PermutationCode, ...]
    infinity_symbol: int


def agl_coset(F2: FiniteField, a: int) -> PermutationCode:
    """The maps x -> a*x + b for every b, ordered by b."""
    if a == 0:
        raise ZeroSlope("slope must be nonzero")
    words = [
        tuple(F2.add(F2.mul(a, x), b) + 1 for x in F2.elements()) for b in F2.elements()
    ]
    return PermutationCode(F2.q, words, claimed_d=F2.q)


def anchors(word: Sequence[int], part) -> list[int]:
    part = set(part)
    return [z for z in sorted(part) if word[z - 1] in part]


def extend_word(word: Sequence[int], part) -> tuple[int, ...]:
    """Reroute the least z in ``part`` with word(z) in ``part`` through the
    new symbol n + 1: z -> n+1 and n+1 -> word(z)."""
    found = anchors(word, part)
    if not found:
        raise NoAnchor(f"no z in {sorted(part)} with word(z) in the same part")
    z = found[0]
    n = len(word)
    out = list(word) + [word[z - 1]]
    out[z - 1] = n + 1
    return tuple(out)


def extension_plan(q: int) -> ExtensionPlan:
    """Cosets of GF(q) in GF(q^2) paired, in ascending order, with the AGL
    cosets of the q least slopes outside GF(q)."""
    F2 = gf_make(q * q)
    parts = gf_subfield_cosets(F2)
    sub = set(subfield(F2))
    slopes = [a for a in F2.elements() if a not in sub][:q]
    families = tuple(agl_coset(F2, a) for a in slopes)
    parts = tuple(tuple(x + 1 for x in part) for part in parts)
    return ExtensionPlan(parts, families, q * q + 1)


def baer_ipc(q: int) -> PermutationCode:
    """A (q-1)-IPC(q^2 + 1, q^2).

    Extended words that lose their fixed point to the new symbol are dropped,
    then each field symbol keeps its first q-1 fixing words in construction
    order.  The new symbol is fixed by the q-1 translations x -> x + b with the
    smallest nonzero b, each extended by appending it.
    """
    pk = prime_power(q)
    if pk is None:
        raise NotAPrimePower(f"{q} is not a prime power")
    plan = extension_plan(q)
    r = q - 1
    kept, per_symbol = [], {}
    for part, family in zip(plan.parts, plan.families):
        for w in family.words:
            (fp,) = fixed_points(w)
            ext = extend_word(w, part)
            if ext[fp - 1] != fp:
                continue
            if per_symbol.get(fp, 0) < r:
                per_symbol[fp] = per_symbol.get(fp, 0) + 1
                kept.append(ext)
    F2 = gf_make(q * q)
    for b in range(1, q):
        kept.append(tuple(F2.add(x, b) + 1 for x in F2.elements()) + (plan.infinity_symbol,))
    return PermutationCode(q * q + 1, kept, claimed_d=q * q, claimed_r=r)
