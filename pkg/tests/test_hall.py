import pytest

from freeaut.errors import InputError
from freeaut.hall import (
    basic_commutators,
    bc_to_tensor,
    bc_to_word,
    hall_basis,
    lyndon_count as duval_count,
    mobius,
    parse_commutator,
    satisfies_definition,
    witt_rank,
)
from freeaut.series import Tensor, lcs_weight
from freeaut.zlin import rank
from helpers import lyndon_count


def test_mobius():
    assert [mobius(k) for k in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_witt_examples():
    assert all(witt_rank(n, 1) == n for n in range(1, 6))
    assert witt_rank(3, 3) == 8
    assert witt_rank(2, 6) == 9
    assert witt_rank(3, 4) == 18


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_witt_against_lyndon_and_hall(n):
    for k in range(1, 7):
        assert witt_rank(n, k) == lyndon_count(n, k) == len(hall_basis(n, k))


def test_hall_basis_small():
    assert [str(c) for c in hall_basis(3, 2)] == ["(x2,x1)", "(x3,x1)", "(x3,x2)"]
    assert [str(c) for c in hall_basis(2, 3)] == ["((x2,x1),x1)", "((x2,x1),x2)"]
    names = [str(c) for c in hall_basis(3, 3)]
    assert len(names) == 8
    assert "((x3,x2),x1)" not in names


def test_structure():
    for c in basic_commutators(3, 5):
        assert satisfies_definition(c)
    keys = [c.order_key for c in basic_commutators(3, 4)]
    assert keys == sorted(keys)


def test_words_and_tensors():
    c21 = parse_commutator("(x2,x1)", 2)
    assert bc_to_word(c21).letters == (-2, -1, 2, 1)
    assert bc_to_tensor(c21) == Tensor(2, 2, {(2, 1): 1, (1, 2): -1})
    c = parse_commutator("((x2,x1),x1)", 2)
    assert len(bc_to_word(c)) == 10
    t = bc_to_tensor(c)
    assert (t[(2, 1, 1)], t[(1, 2, 1)], t[(1, 1, 2)]) == (1, -2, 1)
    assert lcs_weight(bc_to_word(c), 4) == 3


@pytest.mark.parametrize("n,k", [(2, 4), (3, 2), (3, 4), (4, 3)])
def test_hall_tensors_full_rank(n, k):
    assert rank([bc_to_tensor(c).to_sparse_vector() for c in hall_basis(n, k)]) == witt_rank(n, k)


def test_parse_commutator_rejects():
    with pytest.raises(InputError):
        parse_commutator("(x1,x2)", 2)
    with pytest.raises(InputError):
        parse_commutator("nonsense", 2)


def test_duval_count_matches_rotation_oracle():
    for n in (1, 2, 3):
        for k in range(1, 8):
            assert duval_count(n, k) == lyndon_count(n, k)
