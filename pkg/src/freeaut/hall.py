"""Basic commutators (Hall basis) of the free group and the Witt rank formula.

Basic commutators of weight 1 are x_1 < ... < x_n.  A basic commutator of
weight l is (c_i, c_j) with w(c_i) + w(c_j) = l, c_i > c_j, and, when
c_i = (c_s, c_t), c_j >= c_t.  Within one weight, commutators are ordered
lexicographically by the positions of (left, right); for F_3 this gives
(x2,x1) < (x3,x1) < (x3,x2) and the familiar eight of weight 3.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .errors import InputError
from .series import Tensor, bracket
from .word import Word, commutator


def mobius(k: int) -> int:
    if k < 1:
        raise InputError("mobius is defined for k >= 1")
    result = 1
    p = 2
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            result = -result
        p += 1
    if k > 1:
        result = -result
    return result


def divisors(k: int) -> list[int]:
    small = [d for d in range(1, int(k**0.5) + 1) if k % d == 0]
    return sorted(set(small + [k // d for d in small]))


def witt_rank(n: int, k: int) -> int:
    """Rank of Gamma_n(k)/Gamma_n(k+1): (1/k) sum_{d | k} mu(d) n^(k/d)."""
    if n < 1 or k < 1:
        raise InputError("witt_rank needs n >= 1 and k >= 1")
    total = sum(mobius(d) * n ** (k // d) for d in divisors(k))
    assert total % k == 0
    return total // k


def lyndon_count(n: int, k: int) -> int:
    """Number of Lyndon words of length k over n letters, by Duval's generation."""
    if n < 1 or k < 1:
        raise InputError("lyndon_count needs n >= 1 and k >= 1")
    count = 0
    w = [-1]
    while w:
        w[-1] += 1
        if len(w) == k:
            count += 1
        m = len(w)
        while len(w) < k:
            w.append(w[len(w) - m])
        while w and w[-1] == n - 1:
            w.pop()
    return count


@dataclass(frozen=True)
class BasicCommutator:
    rank: int
    weight: int
    order_key: int
    generator: Optional[int] = None
    left: Optional["BasicCommutator"] = field(default=None, repr=False)
    right: Optional["BasicCommutator"] = field(default=None, repr=False)

    @property
    def is_leaf(self) -> bool:
        return self.generator is not None

    def __str__(self) -> str:
        if self.is_leaf:
            return f"x{self.generator}"
        return f"({self.left},{self.right})"

    def __lt__(self, other: "BasicCommutator") -> bool:
        return self.order_key < other.order_key


@lru_cache(maxsize=None)
def basic_commutators(n: int, max_weight: int) -> tuple[BasicCommutator, ...]:
    """All basic commutators on x_1..x_n of weight <= max_weight, in order."""
    if n < 1 or max_weight < 1:
        raise InputError("basic_commutators needs n >= 1 and max_weight >= 1")
    ordered = [BasicCommutator(n, 1, i, generator=i) for i in range(1, n + 1)]
    by_weight: dict[int, list[BasicCommutator]] = {1: list(ordered)}
    for l in range(2, max_weight + 1):
        candidates = []
        for wl in range(1, l):
            wr = l - wl
            if wr > wl:
                continue
            for ci in by_weight[wl]:
                for cj in by_weight[wr]:
                    if not ci.order_key > cj.order_key:
                        continue
                    if not ci.is_leaf and cj.order_key < ci.right.order_key:
                        continue
                    candidates.append((ci.order_key, cj.order_key, ci, cj))
        candidates.sort(key=lambda t: (t[0], t[1]))
        layer = []
        for _, _, ci, cj in candidates:
            c = BasicCommutator(n, l, len(ordered) + 1, left=ci, right=cj)
            ordered.append(c)
            layer.append(c)
        by_weight[l] = layer
    return tuple(ordered)


def hall_basis(n: int, k: int) -> list[BasicCommutator]:
    """Basic commutators of weight exactly k on x_1..x_n."""
    return [c for c in basic_commutators(n, k) if c.weight == k]


@lru_cache(maxsize=None)
def bc_to_word(c: BasicCommutator) -> Word:
    if c.is_leaf:
        return Word(c.rank, (c.generator,))
    return commutator(bc_to_word(c.left), bc_to_word(c.right))


@lru_cache(maxsize=None)
def bc_to_tensor(c: BasicCommutator) -> Tensor:
    if c.is_leaf:
        return Tensor.generator(c.generator, c.rank)
    return bracket(bc_to_tensor(c.left), bc_to_tensor(c.right))


def satisfies_definition(c: BasicCommutator) -> bool:
    """Structural check of the recursive conditions on a node."""
    if c.is_leaf:
        return c.weight == 1
    a, b = c.left, c.right
    if c.weight != a.weight + b.weight or not a.order_key > b.order_key:
        return False
    if not a.is_leaf and b.order_key < a.right.order_key:
        return False
    return satisfies_definition(a) and satisfies_definition(b)


_LEAF = re.compile(r"x(\d+)")


def parse_commutator(text: str, n: int) -> BasicCommutator:
    """Look up a basic commutator from its nested form, e.g. ``"((x2,x1),x3)"``."""
    weight = len(_LEAF.findall(text))
    if weight == 0:
        raise InputError(f"cannot parse commutator {text!r}")
    for c in basic_commutators(n, weight):
        if c.weight == weight and str(c) == text.replace(" ", ""):
            return c
    raise InputError(f"{text!r} is not a basic commutator on {n} generators")
