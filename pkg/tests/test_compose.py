import itertools

import pytest

from permcodes.compose import compose_via_pbd
from permcodes.design import PairwiseBalancedDesign, plane_truncation_pbd, truncated_td_pbd
from permcodes.errors import BlockSizeTwo, IngredientNotRIPC, MissingIngredient, PBDInvalid
from permcodes.latin import field_idempotent_mols, mols_to_ipc
from permcodes.perm import (
    PermutationCode,
    adjoin_identity,
    extract_ripc,
    fixed_points,
    identity,
    trim_regularity,
    verify_ripc,
)


def ipc(q, r):
    return trim_regularity(mols_to_ipc(field_idempotent_mols(q)), r)


def test_composition_reproduction(composition_example):
    pbd, ingredients, expected = composition_example
    out = compose_via_pbd(pbd, ingredients, 1)
    assert sorted(out.words) == sorted(expected.words)
    assert out.words == expected.words
    assert verify_ripc(out, 1).ok


def test_composition_ingredient_properties(composition_example):
    _, ingredients, _ = composition_example
    assert verify_ripc(ingredients[3], 1).ok
    assert verify_ripc(ingredients[4], 1).ok
    assert ingredients[3].words == mols_to_ipc(field_idempotent_mols(3)).words


def test_single_block_design_returns_ingredient():
    ing = mols_to_ipc(field_idempotent_mols(7))
    pbd = PairwiseBalancedDesign(7, [tuple(range(1, 8))])
    out = compose_via_pbd(pbd, {7: ing}, 5)
    assert set(out.words) == set(ing.words)


def test_pbd_23():
    pbd = truncated_td_pbd(4, 5, 3)
    ingredients = {3: ipc(3, 1), 4: ipc(4, 1), 5: ipc(5, 1)}
    out = compose_via_pbd(pbd, ingredients, 1)
    assert len(out) == 23 and verify_ripc(out, 1).ok


def test_plane_truncation_composition():
    pbd = plane_truncation_pbd(5, 3)  # blocks of size 3, 5, 6
    out = compose_via_pbd(pbd, {3: ipc(3, 1), 5: ipc(5, 1), 6: _six()}, 1)
    assert len(out) == 28 and verify_ripc(out, 1).ok


def _six():
    from permcodes.formats import ingest_rows
    from pathlib import Path

    code = ingest_rows((Path(__file__).parent / "data" / "ipc_6_5.txt").read_text())
    return trim_regularity(code, 1)


def test_agreements_localized_to_blocks():
    pbd = truncated_td_pbd(4, 5, 4)
    r = 2
    ingredients = {k: ipc(k, r) for k in (4, 5)}
    out = compose_via_pbd(pbd, ingredients, r)
    assert verify_ripc(out, r).ok
    block_of = {}
    for b in pbd.blocks:
        for x, y in itertools.combinations(b, 2):
            block_of[(x, y)] = set(b)
    for a, b in itertools.combinations(out.words, 2):
        (fa,), (fb,) = fixed_points(a), fixed_points(b)
        for h in range(1, pbd.n + 1):
            if a[h - 1] == b[h - 1] and h not in (fa, fb) and fa != fb:
                assert h in block_of[tuple(sorted((fa, fb)))]


def test_closure_under_extraction():
    pbd = truncated_td_pbd(3, 4, 1)
    out = compose_via_pbd(pbd, {3: ipc(3, 1), 4: ipc(4, 1)}, 1)
    # restrict to one block: words fixing a point of B, restricted to B
    for B in pbd.blocks:
        local = []
        for w in out.words:
            (f,) = fixed_points(w)
            if f in B:
                local.append(tuple(B.index(w[x - 1]) + 1 for x in B))
        code = PermutationCode(len(B), local)
        r, sub = extract_ripc(adjoin_identity(code), identity(len(B)))
        assert r >= 1 and verify_ripc(sub, r).ok


def test_size_one_blocks_ignored(composition_example):
    pbd, ingredients, expected = composition_example
    padded = PairwiseBalancedDesign(pbd.n, pbd.blocks + ((5,),))
    assert compose_via_pbd(padded, ingredients, 1).words == expected.words


def test_errors(composition_example):
    pbd, ingredients, _ = composition_example
    with pytest.raises(MissingIngredient):
        compose_via_pbd(pbd, {3: ingredients[3]}, 1)
    with pytest.raises(IngredientNotRIPC):
        compose_via_pbd(pbd, {3: ingredients[3], 4: ingredients[3]}, 1)
    with pytest.raises(IngredientNotRIPC):
        compose_via_pbd(pbd, ingredients, 2)
    with pytest.raises(BlockSizeTwo):
        compose_via_pbd(truncated_td_pbd(3, 4, 2), {2: None, 3: ipc(3, 1), 4: ipc(4, 1)}, 1)
    with pytest.raises(PBDInvalid):
        compose_via_pbd(PairwiseBalancedDesign(4, [(1, 2, 3)]), {3: ipc(3, 1)}, 1)


def test_r_zero_gives_empty_code(composition_example):
    pbd, _, _ = composition_example
    empty3, empty4 = PermutationCode(3, []), PermutationCode(4, [])
    assert len(compose_via_pbd(pbd, {3: empty3, 4: empty4}, 0)) == 0
