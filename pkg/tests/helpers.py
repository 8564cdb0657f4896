"""Shared strategies and small independent oracles for the test suite."""

from fractions import Fraction
import itertools

from hypothesis import strategies as st

from freeaut.word import Word, reduce


def raw_letters(n, max_len=8):
    return st.lists(st.integers(1, n).flatmap(lambda i: st.sampled_from([i, -i])), max_size=max_len)


def words(n, max_len=8):
    return raw_letters(n, max_len).map(lambda ls: reduce(ls, n))


def naive_reduce(letters):
    """Repeatedly delete the first cancelling pair until none is left."""
    out = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            if out[i] == -out[i + 1]:
                del out[i : i + 2]
                changed = True
                break
    return tuple(out)


def series_mul(a, b, D):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            if len(m1) + len(m2) <= D:
                out[m1 + m2] = out.get(m1 + m2, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def letter_series(a, D):
    i = abs(a)
    if a > 0:
        return {(): 1, (i,): 1}
    return {(i,) * d: (-1) ** d for d in range(D + 1)}


def brute_magnus(w: Word, D):
    s = {(): 1}
    for a in w.letters:
        s = series_mul(s, letter_series(a, D), D)
    return s


def fraction_rank(rows):
    """Rank by plain Gaussian elimination over the rationals."""
    M = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    cols = len(M[0]) if M else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(M)) if M[r][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(len(M)):
            if r != rank and M[r][c] != 0:
                f = M[r][c] / M[rank][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[rank])]
        rank += 1
    return rank


def lyndon_count(n, k):
    count = 0
    for w in itertools.product(range(n), repeat=k):
        if all(w < w[i:] + w[:i] for i in range(1, k)):
            count += 1
    return count
