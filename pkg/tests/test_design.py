import itertools
from math import comb

import pytest

from permcodes.design import (
    PairwiseBalancedDesign,
    plane_truncation_pbd,
    projective_plane,
    truncated_td_pbd,
    verify_pbd,
)
from permcodes.errors import (
    BadTruncation,
    InsufficientMOLS,
    KeepOutOfRange,
    NotAPrimePower,
    PointOutOfRange,
)
from permcodes.latin import field_mols

FANO = [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)]


def pair_oracle(d):
    seen = {}
    for b in d.blocks:
        for pair in itertools.combinations(sorted(b), 2):
            seen[pair] = seen.get(pair, 0) + 1
    return all(seen.get(p, 0) == 1 for p in itertools.combinations(range(1, d.n + 1), 2))


def pair_count_identity(d):
    return sum(comb(len(b), 2) for b in d.blocks) == comb(d.n, 2)


def test_composition_design(composition_example):
    pbd, _, _ = composition_example
    assert pbd.n == 10 and len(pbd.blocks) == 12 and pbd.K == {3, 4}
    assert verify_pbd(pbd)


def test_fano_plane():
    d = PairwiseBalancedDesign(7, FANO)
    assert pair_oracle(d) and verify_pbd(d)


def test_double_cover_witness():
    check = verify_pbd(PairwiseBalancedDesign(4, [(1, 2, 3), (1, 2, 4)]))
    assert not check and check.pair == (1, 2) and check.count == 2


def test_uncovered_witness():
    check = verify_pbd(PairwiseBalancedDesign(3, [(1, 2)]))
    assert not check and check.pair == (1, 3) and check.count == 0


def test_point_out_of_range():
    with pytest.raises(PointOutOfRange):
        verify_pbd(PairwiseBalancedDesign(3, [(1, 2, 4)]))


@pytest.mark.parametrize(
    "m,t,u,K",
    [(3, 3, 1, {3, 4}), (3, 4, 0, {3, 4}), (4, 5, 3, {3, 4, 5}), (9, 11, 1, {9, 10, 11}), (9, 11, 11, {10, 11})],
)
def test_truncated_td(m, t, u, K):
    d = truncated_td_pbd(m, t, u)
    assert d.n == m * t + u
    assert d.K == K and d.K <= {m, m + 1, t, u}
    assert verify_pbd(d) and pair_oracle(d) and pair_count_identity(d)
    fibers = sum(1 for size in [t] * m + [u] if size >= 2)
    assert len(d.blocks) == t * t + fibers
    # each transversal block meets every untruncated fiber once
    for b in d.blocks[: t * t]:
        for h in range(m):
            assert sum(1 for x in b if h * t < x <= (h + 1) * t) == 1


def test_truncated_td_with_supplied_mols():
    d = truncated_td_pbd(3, 4, 2, field_mols(4))
    assert verify_pbd(d) and d.K == {2, 3, 4}


def test_truncated_td_errors():
    with pytest.raises(BadTruncation):
        truncated_td_pbd(3, 3, 4)
    with pytest.raises(InsufficientMOLS):
        truncated_td_pbd(4, 6, 0)  # MacNeish gives 1 square of order 6
    with pytest.raises(InsufficientMOLS):
        truncated_td_pbd(5, 4, 0, field_mols(4))


@pytest.mark.parametrize("p", [2, 3, 4, 5, 7])
def test_projective_plane(p):
    v, lines = projective_plane(p)
    d = PairwiseBalancedDesign(v, lines)
    assert v == p * p + p + 1 and len(lines) == v
    assert d.K == {p + 1} and verify_pbd(d)


@pytest.mark.parametrize(
    "p,keep,n,K", [(3, 4, 13, {4}), (3, 3, 12, {3, 4}), (5, 3, 28, {3, 5, 6}), (7, 4, 53, {4, 7, 8})]
)
def test_plane_truncation(p, keep, n, K):
    d = plane_truncation_pbd(p, keep)
    assert d.n == n and d.K == K
    assert verify_pbd(d) and pair_oracle(d) and pair_count_identity(d)


def test_plane_truncation_errors():
    with pytest.raises(NotAPrimePower):
        plane_truncation_pbd(6, 3)
    with pytest.raises(KeepOutOfRange):
        plane_truncation_pbd(3, 5)
    with pytest.raises(KeepOutOfRange):
        plane_truncation_pbd(3, 1)
