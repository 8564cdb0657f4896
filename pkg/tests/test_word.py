import pytest
from hypothesis import given, strategies as st

from freeaut.errors import InputError
from freeaut.word import (
    Endo,
    Word,
    apply,
    commutator,
    compose,
    conjugate,
    identity,
    invert,
    left_normed,
    multiply,
    parse_word,
    reduce,
)
from helpers import naive_reduce, raw_letters, words


def W(text, n=3):
    return parse_word(text, n)


def test_reduce_examples():
    assert reduce([(1, 1), (1, -1)], 2).letters == ()
    assert reduce([(1, 1), (2, 1)], 2).letters == (1, 2)
    raw = [(1, 1), (2, 1), (2, -1), (1, -1), (3, 1)]
    assert reduce(raw, 3).letters == (3,)
    assert naive_reduce([1, 2, -2, -1, 3]) == (3,)


def test_reduce_rejects_bad_index():
    with pytest.raises(InputError):
        reduce([4], 3)
    with pytest.raises(InputError):
        reduce([(2, 2)], 3)


@given(raw_letters(3, 20))
def test_reduce_matches_naive_oracle(ls):
    w = reduce(ls, 3)
    assert w.letters == naive_reduce(ls)
    assert reduce(w.letters, 3) == w


def test_multiply_examples():
    assert multiply(W("x1"), W("x1^-1")).is_identity()
    assert multiply(W("x1 x2"), W("x2^-1 x3")) == W("x1 x3")
    w = W("x2 x1^-1")
    assert multiply(Word(3), w) == w


def test_rank_mismatch():
    with pytest.raises(InputError):
        multiply(W("x1", 2), W("x1", 3))
    with pytest.raises(InputError):
        commutator(W("x1", 2), W("x1", 3))


def test_invert_examples():
    assert invert(W("x1 x2")) == W("x2^-1 x1^-1")
    assert invert(Word(3)).is_identity()
    assert invert(commutator(W("x1"), W("x2"))) == commutator(W("x2"), W("x1"))


def test_commutator_examples():
    x1, x2 = W("x1"), W("x2")
    assert commutator(x1, x1).is_identity()
    c = commutator(x1, x2)
    assert c.letters == (-1, -2, 1, 2)
    lhs = commutator(x1 * x2, x1)
    rhs = conjugate(commutator(x1, x1), x2) * commutator(x2, x1)
    assert lhs == rhs


@given(words(3), words(3), words(3))
def test_group_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a * ~a).is_identity()
    assert a * Word(3) == a


@given(words(3), words(3), words(3))
def test_commutator_identities(a, b, c):
    # (a,b) = (b,a)^-1, (a,b)^c = (a^c, b^c), (a, bc) = (a,c)(a,b)^c, (ab, c) = (a,c)^b (b,c)
    assert commutator(a, b) == ~commutator(b, a)
    assert conjugate(commutator(a, b), c) == commutator(conjugate(a, c), conjugate(b, c))
    assert commutator(a, b * c) == commutator(a, c) * conjugate(commutator(a, b), c)
    assert commutator(a * b, c) == conjugate(commutator(a, c), b) * commutator(b, c)


@given(words(3, 6), words(3, 6), words(3, 6))
def test_witt_hall_identity(a, b, c):
    t1 = conjugate(left_normed([a, ~b, c]), b)
    t2 = conjugate(left_normed([b, ~c, a]), c)
    t3 = conjugate(left_normed([c, ~a, b]), a)
    assert (t1 * t2 * t3).is_identity()


def test_parse_and_format_round_trip():
    w = W("x1 x2^-2 x1")
    assert w.letters == (1, -2, -2, 1)
    assert str(w) == "x1 x2^-2 x1"
    assert parse_word(str(w), 3) == w
    assert parse_word("1", 2).is_identity()
    with pytest.raises(InputError):
        parse_word("y1", 2)
    with pytest.raises(InputError):
        parse_word("x5", 2)


XI12 = Endo.from_strings(["x2^-1 x1 x2", "x2"])
XI12_INV = Endo.from_strings(["x2 x1 x2^-1", "x2"])


def test_apply_examples():
    w = W("x1 x2^-1", 2)
    assert apply(identity(2), w) == w
    assert apply(XI12, W("x1", 2)) == W("x2^-1 x1 x2", 2)
    assert apply(XI12, W("x1^-1", 2)) == W("x2^-1 x1^-1 x2", 2)


def test_compose_examples():
    assert compose(identity(2), XI12) == XI12
    assert compose(XI12, XI12_INV) == identity(2)
    assert compose(XI12, XI12).images[0] == W("x2^-2 x1 x2^2", 2)


def test_endo_validates_length():
    with pytest.raises(InputError):
        Endo(2, (W("x1", 2),))


endos = st.lists(words(2, 4), min_size=2, max_size=2).map(lambda ims: Endo(2, tuple(ims)))


@given(endos, endos, words(2, 6))
def test_compose_is_two_step_application(a, b, w):
    assert apply(compose(a, b), w) == apply(a, apply(b, w))


@given(endos, endos, endos)
def test_compose_associative(a, b, c):
    assert compose(compose(a, b), c) == compose(a, compose(b, c))
