import itertools

import pytest

from permcodes.errors import (
    EmptyInput,
    NotAPrimePower,
    NotIdempotent,
    NotOrthogonal,
    OrderMismatch,
)
from permcodes.latin import (
    LatinSquare,
    MolsSet,
    PartialLatinSquare,
    are_orthogonal,
    field_idempotent_mols,
    field_mols,
    is_mols,
    macneish_floor,
    macneish_mols,
    mols_product,
    mols_to_code,
    mols_to_ipc,
)
from permcodes.perm import PermutationCode, verify_pc, verify_ripc

A3 = LatinSquare(3, [(1, 2, 3), (2, 3, 1), (3, 1, 2)])
B3 = LatinSquare(3, [(1, 2, 3), (3, 1, 2), (2, 3, 1)])


def brute_latin(sq):
    n = sq.n
    rows_ok = all(sorted(r) == list(range(1, n + 1)) for r in sq.cells)
    cols_ok = all(sorted(sq.cells[x][y] for x in range(n)) == list(range(1, n + 1)) for y in range(n))
    return rows_ok and cols_ok


def brute_orthogonal(a, b):
    n = a.n
    return len({(a.cells[x][y], b.cells[x][y]) for x in range(n) for y in range(n)}) == n * n


def test_order3_pair_orthogonal():
    pairs = [(A3.cells[x][y], B3.cells[x][y]) for x in range(3) for y in range(3)]
    assert len(set(pairs)) == 9
    assert are_orthogonal(A3, B3)


def test_square_not_orthogonal_to_itself():
    assert not are_orthogonal(A3, A3)
    one = LatinSquare(1, [(1,)])
    assert are_orthogonal(one, one)


def test_order_mismatch():
    with pytest.raises(OrderMismatch):
        are_orthogonal(A3, LatinSquare(1, [(1,)]))


def test_latin_square_validation():
    with pytest.raises(ValueError):
        LatinSquare(2, [(1, 2), (1, 2)])
    with pytest.raises(ValueError):
        PartialLatinSquare(2, [(1, 1), (None, None)])


def test_field_idempotent_small_orders():
    m3 = field_idempotent_mols(3)
    assert len(m3) == 1 and brute_latin(m3.squares[0]) and m3.squares[0].is_idempotent()
    assert len(field_idempotent_mols(2)) == 0
    m4 = field_idempotent_mols(4)
    assert len(m4) == 2
    assert brute_orthogonal(*m4.squares)
    with pytest.raises(NotAPrimePower):
        field_idempotent_mols(6)


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9, 11, 13])
def test_field_mols_are_mols(q):
    for mols, size in ((field_idempotent_mols(q), q - 2), (field_mols(q), q - 1)):
        assert len(mols) == size
        assert all(brute_latin(sq) for sq in mols.squares)
        assert all(brute_orthogonal(a, b) for a, b in itertools.combinations(mols.squares, 2))
    assert all(sq.is_idempotent() for sq in field_idempotent_mols(q).squares)


def test_product_3_by_5():
    prod = mols_product(field_idempotent_mols(3), field_idempotent_mols(5))
    assert prod.n == 15 and len(prod) == 1 and prod.idempotent
    (sq,) = prod.squares
    assert brute_latin(sq)
    assert all(sq.cells[i][i] == i + 1 for i in range(15))


def test_product_with_order_one_factor():
    A = field_idempotent_mols(5)
    one = MolsSet(1, [LatinSquare(1, [(1,)])] * 3, idempotent=True)
    prod = mols_product(A, one)
    assert prod.squares == A.squares


def test_product_order_12():
    prod = mols_product(field_idempotent_mols(4), field_idempotent_mols(3))
    assert prod.n == 12 and len(prod) == 1
    plain = macneish_mols(12)
    assert len(plain) == macneish_floor(12)[0] == 2
    assert is_mols(plain.squares)


def test_product_of_plain_mols_orthogonal():
    prod = mols_product(field_mols(3), field_mols(4))
    assert len(prod) == 2 and brute_orthogonal(*prod.squares)


def test_product_empty_input():
    with pytest.raises(EmptyInput):
        mols_product(field_idempotent_mols(2), field_idempotent_mols(3))


def test_product_diagonal_is_paired_symbol():
    A, B = field_idempotent_mols(4), field_idempotent_mols(5)
    prod = mols_product(A, B)
    for sq in prod.squares:
        for i1 in range(1, 5):
            for i2 in range(1, 6):
                idx = (i1 - 1) * 5 + i2
                assert sq(idx, idx) == idx


@pytest.mark.parametrize("q,expected", [(5, 15), (7, 35), (4, 8)])
def test_mols_to_ipc(q, expected):
    code = mols_to_ipc(field_idempotent_mols(q))
    assert len(code) == expected
    assert verify_ripc(code, q - 2).ok


def test_mols_to_ipc_order3_matches_letter_code():
    code = mols_to_ipc(field_idempotent_mols(3))
    # a c b / c b a / b a c
    assert code.words == ((1, 3, 2), (3, 2, 1), (2, 1, 3))


def test_mols_to_ipc_empty():
    code = mols_to_ipc(field_idempotent_mols(2))
    assert len(code) == 0


def test_mols_to_ipc_rejects_bad_input():
    with pytest.raises(NotIdempotent):
        mols_to_ipc(field_mols(5))
    sq = field_idempotent_mols(5).squares[0]
    with pytest.raises(NotOrthogonal):
        mols_to_ipc(MolsSet(5, [sq, sq], idempotent=True))


def test_plain_mols_give_pc():
    code = mols_to_code(field_mols(7))
    assert len(code) == 42 and verify_pc(code, 6).ok


def test_macneish_floor():
    assert macneish_floor(35) == (4, 3)
    assert macneish_floor(6) == (1, 0)
    assert macneish_floor(13) == (12, 11)
    assert macneish_floor(100) == (3, 2)


def test_macneish_idempotent_product():
    mols = macneish_mols(35, idempotent=True)
    assert len(mols) == 3 and mols.idempotent
    code = mols_to_ipc(mols)
    assert verify_ripc(code, 3).ok
    assert len(macneish_mols(6, idempotent=True)) == 0
