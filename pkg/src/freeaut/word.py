"""Words in the free group F_n and endomorphisms of F_n.

A letter is a nonzero integer: ``+i`` stands for x_i and ``-i`` for x_i^{-1}.
Words are always stored freely reduced, so equality of group elements is
equality of letter tuples.

Product convention: the product ``a * b`` of two endomorphisms is the
functional composite ``a o b`` (apply ``b`` first, then ``a``).  With this
choice the Johnson map sends group commutators to derivation brackets with a
plus sign; ``freeaut.autgrp.calibrate_convention`` checks both conventions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import InputError

RawLetter = Union[int, tuple[int, int]]


def _normalize_letter(letter: RawLetter, rank: int) -> int:
    if isinstance(letter, tuple):
        index, sign = letter
        if sign not in (1, -1):
            raise InputError(f"letter sign must be +1 or -1, got {sign}")
        value = index * sign
        index = abs(index)
    else:
        value = int(letter)
        index = abs(value)
    if not 1 <= index <= rank or value == 0:
        raise InputError(f"generator index {index} out of range 1..{rank}")
    return value


def _free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for a in letters:
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """Freely reduced word over x_1..x_rank.

    Build instances with :func:`reduce` or :meth:`parse`; the constructor
    trusts its input.
    """

    rank: int
    letters: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, e: int) -> "Word":
        base = self if e >= 0 else invert(self)
        out = Word(self.rank)
        for _ in range(abs(e)):
            out = multiply(out, base)
        return out

    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        return format_word(self)

    @classmethod
    def parse(cls, text: str, rank: int) -> "Word":
        return parse_word(text, rank)

    @classmethod
    def gen(cls, i: int, rank: int) -> "Word":
        return reduce([i], rank)


def reduce(letters: Sequence[RawLetter], rank: int) -> Word:
    """Freely reduce a raw letter sequence.

    Letters may be signed integers or ``(index, sign)`` pairs.

    >>> reduce([(1, 1), (2, 1), (2, -1), (1, -1), (3, 1)], 3).letters
    (3,)
    """
    return Word(rank, _free_reduce(_normalize_letter(a, rank) for a in letters))


def _check_rank(a: int, b: int) -> None:
    if a != b:
        raise InputError(f"rank mismatch: {a} != {b}")


def multiply(a: Word, b: Word) -> Word:
    _check_rank(a.rank, b.rank)
    x, y = a.letters, b.letters
    # cancel at the junction only; both halves are already reduced
    i = 0
    m = min(len(x), len(y))
    while i < m and x[len(x) - 1 - i] == -y[i]:
        i += 1
    return Word(a.rank, x[: len(x) - i] + y[i:])


def invert(w: Word) -> Word:
    return Word(w.rank, tuple(-a for a in reversed(w.letters)))


def commutator(a: Word, b: Word) -> Word:
    """(a, b) = a^-1 b^-1 a b."""
    _check_rank(a.rank, b.rank)
    return Word(a.rank, _free_reduce(invert(a).letters + invert(b).letters + a.letters + b.letters))


def conjugate(a: Word, b: Word) -> Word:
    """a^b = b^-1 a b."""
    _check_rank(a.rank, b.rank)
    return Word(a.rank, _free_reduce(invert(b).letters + a.letters + b.letters))


def left_normed(words: Sequence[Word]) -> Word:
    """(w_1, w_2, ..., w_k) = ((w_1, ..., w_{k-1}), w_k)."""
    if not words:
        raise InputError("left_normed needs at least one word")
    out = words[0]
    for w in words[1:]:
        out = commutator(out, w)
    return out


_TOKEN = re.compile(r"^x(\d+)(?:\^([+-]?\d+))?$")


def parse_word(text: str, rank: int) -> Word:
    """Parse ``"x1 x2^-1 x1"``.  The strings ``""``, ``"1"`` and ``"e"`` denote the identity."""
    text = text.strip()
    if text in ("", "1", "e"):
        return Word(rank)
    letters: list[int] = []
    for token in text.split():
        m = _TOKEN.match(token)
        if m is None:
            raise InputError(f"cannot parse word token {token!r}")
        index = int(m.group(1))
        exp = int(m.group(2)) if m.group(2) is not None else 1
        if not 1 <= index <= rank:
            raise InputError(f"generator index {index} out of range 1..{rank}")
        letters.extend([index if exp > 0 else -index] * abs(exp))
    return Word(rank, _free_reduce(letters))


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    parts: list[str] = []
    run_letter, run_len = w.letters[0], 0
    for a in w.letters + (0,):
        if a == run_letter:
            run_len += 1
            continue
        exp = run_len if run_letter > 0 else -run_len
        parts.append(f"x{abs(run_letter)}" if exp == 1 else f"x{abs(run_letter)}^{exp}")
        run_letter, run_len = a, 1
    return " ".join(parts)


@dataclass(frozen=True)
class Endo:
    """Endomorphism of F_rank given by the images of x_1..x_rank."""

    rank: int
    images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != self.rank:
            raise InputError(f"expected {self.rank} images, got {len(self.images)}")
        for w in self.images:
            _check_rank(w.rank, self.rank)

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __mul__(self, other: "Endo") -> "Endo":
        return compose(self, other)

    def is_identity(self) -> bool:
        return all(img.letters == (i + 1,) for i, img in enumerate(self.images))

    def to_strings(self) -> list[str]:
        return [format_word(w) for w in self.images]

    @classmethod
    def from_strings(cls, images: Sequence[str], rank: int | None = None) -> "Endo":
        n = len(images) if rank is None else rank
        return cls(n, tuple(parse_word(s, n) for s in images))


def identity(rank: int) -> Endo:
    return Endo(rank, tuple(Word(rank, (i,)) for i in range(1, rank + 1)))


def apply(e: Endo, w: Word) -> Word:
    """Substitute the images of ``e`` into ``w`` and reduce."""
    _check_rank(e.rank, w.rank)
    images = e.images
    inverses: dict[int, tuple[int, ...]] = {}
    out: list[int] = []
    for a in w.letters:
        if a > 0:
            piece = images[a - 1].letters
        else:
            piece = inverses.get(a)
            if piece is None:
                piece = invert(images[-a - 1]).letters
                inverses[a] = piece
        for b in piece:
            if out and out[-1] == -b:
                out.pop()
            else:
                out.append(b)
    return Word(w.rank, tuple(out))


def compose(a: Endo, b: Endo) -> Endo:
    """The group product ``a * b``: x_i maps to ``a(b(x_i))``."""
    _check_rank(a.rank, b.rank)
    return Endo(a.rank, tuple(apply(a, img) for img in b.images))
