import pytest
from hypothesis import given, strategies as st

from freeaut.errors import NotInFiltrationError
from freeaut.hall import basic_commutators, bc_to_word
from freeaut.series import Tensor, TruncSeries, bracket, lcs_weight, leading_class, lie_class, magnus
from freeaut.word import Word, commutator, parse_word
from helpers import brute_magnus, words


def W(text, n=2):
    return parse_word(text, n)


def test_magnus_examples():
    assert magnus(Word(2), 3).coeffs == {(): 1}
    assert magnus(W("x1"), 2).coeffs == {(): 1, (1,): 1}
    c = commutator(W("x1"), W("x2"))
    assert magnus(c, 2).coeffs == {(): 1, (1, 2): 1, (2, 1): -1}


@given(words(3, 10), st.integers(1, 4))
def test_magnus_matches_brute_force(w, D):
    assert magnus(w, D).coeffs == brute_magnus(w, D)


@given(words(3, 6), words(3, 6), st.integers(1, 4))
def test_magnus_multiplicative(u, v, D):
    assert magnus(u * v, D) == magnus(u, D) * magnus(v, D)


@given(words(3, 8), st.integers(1, 4))
def test_magnus_inverse(w, D):
    assert magnus(w, D) * magnus(~w, D) == TruncSeries.one(3, D)


def test_lcs_weight_examples():
    x1, x2 = W("x1"), W("x2")
    assert lcs_weight(x1, 3) == 1
    assert lcs_weight(commutator(x1, x2), 3) == 2
    assert lcs_weight(commutator(commutator(x1, x2), x1), 5) == 3
    assert lcs_weight(Word(2), 4) is None
    # deeper than the bound
    assert lcs_weight(commutator(commutator(x1, x2), x1), 2) is None


def test_lie_class_examples():
    x1, x2 = W("x1"), W("x2")
    t = lie_class(commutator(x1, x2), 2)
    assert t == Tensor(2, 2, {(1, 2): 1, (2, 1): -1})
    assert lie_class(commutator(x2, x1), 2) == -t
    assert lie_class(Word(2), 3).is_zero()
    assert lie_class(commutator(commutator(x1, x2), x2), 2).is_zero()
    with pytest.raises(NotInFiltrationError):
        lie_class(x1, 2)


def test_lie_class_additive():
    x1, x2, x3 = (parse_word(f"x{i}", 3) for i in (1, 2, 3))
    a, b = commutator(x1, x2), commutator(x2, x3)
    assert lie_class(a * b, 2) == lie_class(a, 2) + lie_class(b, 2)


commutators3 = st.sampled_from([c for c in basic_commutators(3, 3)])


@given(commutators3, commutators3)
def test_n_series_law(c, d):
    w = commutator(bc_to_word(c), bc_to_word(d))
    wt = lcs_weight(w, c.weight + d.weight)
    assert wt is None or wt >= c.weight + d.weight


def test_leading_class_reports_weight():
    w = commutator(W("x1"), W("x2"))
    assert leading_class(w, 4)[0] == 2


def test_tensor_ops_and_json():
    a = Tensor.generator(1, 2)
    b = Tensor.generator(2, 2)
    br = bracket(a, b)
    assert br == (a @ b) - (b @ a)
    assert Tensor.from_json(br.to_json(), 2, 2) == br
    assert br.to_sparse_vector() == {1: 1, 2: -1}
    assert Tensor.zero(2, 3) == Tensor.zero(2, 5)
    assert hash(Tensor.zero(2, 3)) == hash(Tensor.zero(2, 5))
