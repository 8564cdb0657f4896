"""Truncated Magnus expansion and graded classes of lower central series terms.

The Magnus map sends x_i to 1 + X_i and x_i^{-1} to 1 - X_i + X_i^2 - ...
in the ring of noncommutative integer power series.  A word lies in the k-th
lower central series term Gamma_n(k) exactly when its expansion minus 1 has no
terms of degree < k, and its degree-k component is then the tensor image of
its class in Gamma_n(k)/Gamma_n(k+1).
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Iterator, Mapping, Optional

import numpy as np

from .errors import InputError, NotInFiltrationError
from .word import Word

Monomial = tuple[int, ...]


class Tensor:
    """Homogeneous element of degree ``degree`` of the tensor algebra on X_1..X_rank.

    Coefficients are stored sparsely; zero entries are dropped.  Instances are
    treated as immutable.
    """

    __slots__ = ("rank", "degree", "_coeffs")

    def __init__(self, rank: int, degree: int, coeffs: Mapping[Monomial, int] | None = None):
        self.rank = rank
        self.degree = degree
        clean: dict[Monomial, int] = {}
        for mono, c in (coeffs or {}).items():
            if c == 0:
                continue
            if len(mono) != degree:
                raise InputError(f"monomial {mono} does not have degree {degree}")
            if any(not 1 <= a <= rank for a in mono):
                raise InputError(f"monomial {mono} uses an index outside 1..{rank}")
            clean[tuple(mono)] = int(c)
        self._coeffs = clean

    @classmethod
    def _trusted(cls, rank: int, degree: int, coeffs: dict[Monomial, int]) -> "Tensor":
        t = cls.__new__(cls)
        t.rank, t.degree, t._coeffs = rank, degree, coeffs
        return t

    @classmethod
    def zero(cls, rank: int, degree: int) -> "Tensor":
        return cls._trusted(rank, degree, {})

    @classmethod
    def generator(cls, i: int, rank: int) -> "Tensor":
        return cls(rank, 1, {(i,): 1})

    @property
    def coeffs(self) -> dict[Monomial, int]:
        return dict(self._coeffs)

    def items(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self._coeffs.items())

    def __getitem__(self, mono: Monomial) -> int:
        return self._coeffs.get(tuple(mono), 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        if self.rank != other.rank:
            return False
        if not self._coeffs and not other._coeffs:
            return True
        return self.degree == other.degree and self._coeffs == other._coeffs

    def __hash__(self):
        # degree is implied by the monomials; zero tensors of any degree compare equal
        return hash((self.rank, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        return f"Tensor(rank={self.rank}, degree={self.degree}, {format_tensor(self)})"

    def _check(self, other: "Tensor") -> None:
        if self.rank != other.rank:
            raise InputError(f"rank mismatch: {self.rank} != {other.rank}")
        if self._coeffs and other._coeffs and self.degree != other.degree:
            raise InputError(f"degree mismatch: {self.degree} != {other.degree}")

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check(other)
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        degree = self.degree if self._coeffs else other.degree
        return Tensor._trusted(self.rank, degree, out)

    def __neg__(self) -> "Tensor":
        return Tensor._trusted(self.rank, self.degree, {m: -c for m, c in self._coeffs.items()})

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def __rmul__(self, k: int) -> "Tensor":
        if k == 0:
            return Tensor.zero(self.rank, self.degree)
        return Tensor._trusted(self.rank, self.degree, {m: k * c for m, c in self._coeffs.items()})

    def __matmul__(self, other: "Tensor") -> "Tensor":
        """Concatenation product in the tensor algebra."""
        if self.rank != other.rank:
            raise InputError(f"rank mismatch: {self.rank} != {other.rank}")
        out: dict[Monomial, int] = {}
        for m1, c1 in self._coeffs.items():
            for m2, c2 in other._coeffs.items():
                m = m1 + m2
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Tensor._trusted(self.rank, self.degree + other.degree, out)

    def to_sparse_vector(self, offset: int = 0) -> dict[int, int]:
        """Coordinates in the dense basis of rank**degree monomials (base-rank digits)."""
        n = self.rank
        vec: dict[int, int] = {}
        for mono, c in self._coeffs.items():
            idx = 0
            for a in mono:
                idx = idx * n + (a - 1)
            vec[offset + idx] = c
        return vec

    def to_json(self) -> list[dict]:
        return [{"monomial": list(m), "coeff": c} for m, c in sorted(self._coeffs.items())]

    @classmethod
    def from_json(cls, data: Iterable[Mapping], rank: int, degree: int) -> "Tensor":
        return cls(rank, degree, {tuple(d["monomial"]): int(d["coeff"]) for d in data})


def bracket(a: Tensor, b: Tensor) -> Tensor:
    """[a, b] = ab - ba."""
    return (a @ b) - (b @ a)


def format_tensor(t: Tensor) -> str:
    if t.is_zero():
        return "0"
    parts = []
    for mono, c in sorted(t.items()):
        name = "".join(f"X{a}" for a in mono) or "1"
        parts.append(f"{c:+d}*{name}")
    return " ".join(parts)


class TruncSeries:
    """Noncommutative integer power series truncated above ``degree_bound``."""

    __slots__ = ("rank", "degree_bound", "_coeffs")

    def __init__(self, rank: int, degree_bound: int, coeffs: Mapping[Monomial, int] | None = None):
        if degree_bound < 1:
            raise InputError("degree bound must be >= 1")
        self.rank = rank
        self.degree_bound = degree_bound
        self._coeffs = {tuple(m): int(c) for m, c in (coeffs or {}).items() if c and len(m) <= degree_bound}

    @classmethod
    def one(cls, rank: int, degree_bound: int) -> "TruncSeries":
        return cls(rank, degree_bound, {(): 1})

    @property
    def coeffs(self) -> dict[Monomial, int]:
        return dict(self._coeffs)

    def __getitem__(self, mono: Monomial) -> int:
        return self._coeffs.get(tuple(mono), 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.rank, self.degree_bound, self._coeffs) == (other.rank, other.degree_bound, other._coeffs)

    def __repr__(self) -> str:
        terms = " ".join(f"{c:+d}*{''.join(f'X{a}' for a in m) or '1'}" for m, c in sorted(self._coeffs.items(), key=lambda kv: (len(kv[0]), kv[0])))
        return f"TruncSeries(rank={self.rank}, D={self.degree_bound}, {terms or '0'})"

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        if self.rank != other.rank:
            raise InputError(f"rank mismatch: {self.rank} != {other.rank}")
        D = min(self.degree_bound, other.degree_bound)
        out: dict[Monomial, int] = {}
        for m1, c1 in self._coeffs.items():
            if len(m1) > D:
                continue
            for m2, c2 in other._coeffs.items():
                if len(m1) + len(m2) > D:
                    continue
                m = m1 + m2
                out[m] = out.get(m, 0) + c1 * c2
        return TruncSeries(self.rank, D, out)

    def component(self, d: int) -> Tensor:
        return Tensor(self.rank, d, {m: c for m, c in self._coeffs.items() if len(m) == d})

    def lowest_nonconstant_degree(self) -> Optional[int]:
        degrees = [len(m) for m in self._coeffs if m]
        return min(degrees) if degrees else None


def _dense_magnus(w: Word, D: int) -> list[np.ndarray]:
    """Graded pieces 0..D of the Magnus expansion as dense arrays of shape (n,)*d."""
    n = w.rank
    # a degree-d coefficient is a sum of at most C(len+D, D) terms of absolute value 1
    dtype = np.int64 if comb(len(w) + D, D) < 2**62 else object
    pieces = [np.ones((), dtype=dtype)] + [np.zeros((n,) * d, dtype=dtype) for d in range(1, D + 1)]
    for a in w.letters:
        i = abs(a) - 1
        if a > 0:
            for d in range(D, 0, -1):
                pieces[d][..., i] += pieces[d - 1]
        else:
            for d in range(1, D + 1):
                pieces[d][..., i] -= pieces[d - 1]
    return pieces


def _dense_to_tensor(arr: np.ndarray, rank: int, degree: int) -> Tensor:
    if degree == 0:
        c = int(arr)
        return Tensor._trusted(rank, 0, {(): c} if c else {})
    idx = np.nonzero(arr)
    coeffs = {tuple(int(x) + 1 for x in pos): int(arr[pos]) for pos in zip(*idx)}
    return Tensor._trusted(rank, degree, coeffs)


def magnus(w: Word, D: int) -> TruncSeries:
    """Magnus expansion of ``w`` truncated above degree ``D``."""
    if D < 1:
        raise InputError("degree bound must be >= 1")
    pieces = _dense_magnus(w, D)
    coeffs: dict[Monomial, int] = {}
    for d, arr in enumerate(pieces):
        coeffs.update(_dense_to_tensor(arr, w.rank, d)._coeffs)
    return TruncSeries(w.rank, D, coeffs)


def lcs_weight(w: Word, D: int) -> Optional[int]:
    """Largest k <= D with w in Gamma_n(k), or ``None`` when w lies in Gamma_n(D+1).

    The identity word lies in every term and always gives ``None``.
    """
    if D < 1:
        raise InputError("degree bound must be >= 1")
    if w.is_identity():
        return None
    pieces = _dense_magnus(w, D)
    for d in range(1, D + 1):
        if np.any(pieces[d] != 0):
            return d
    return None


def leading_class(w: Word, D: int) -> tuple[Optional[int], Tensor]:
    """Return (lcs_weight(w, D), lowest nonconstant Magnus component) in one pass."""
    if w.is_identity():
        return None, Tensor.zero(w.rank, D)
    pieces = _dense_magnus(w, D)
    for d in range(1, D + 1):
        if np.any(pieces[d] != 0):
            return d, _dense_to_tensor(pieces[d], w.rank, d)
    return None, Tensor.zero(w.rank, D)


def lie_class(w: Word, k: int) -> Tensor:
    """Class of ``w`` in Gamma_n(k)/Gamma_n(k+1) as a degree-k tensor.

    Raises :class:`NotInFiltrationError` if ``w`` is not in Gamma_n(k).
    """
    if k < 1:
        raise InputError("k must be >= 1")
    weight, cls = leading_class(w, k)
    if weight is None:
        return Tensor.zero(w.rank, k)
    if weight < k:
        raise NotInFiltrationError(f"word {w} lies in Gamma_{weight} but not in Gamma_{k}")
    return cls
