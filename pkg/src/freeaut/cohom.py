"""Cohomology rings E/J of iterated almost-direct products of free groups.

E is the exterior algebra on the duals e_1..e_m of the generators, and J is
generated in degree 2 by the annihilator of the relator classes in
Lambda^2 H_1.  For a relator (a, b) w^-1 with w a product of commutators
inside one free factor, the class is a^b minus the degree-2 class of w; each
relator contributes exactly one cross term a^b between two factors, so the
annihilator has one element per pair inside a factor:

    eta = e_r ^ e_s + sum of kappa * (cross pair),

where kappa cancels the pairing with every relator.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import InputError
from .series import lie_class
from .word import Word, commutator
from .zlin import EchelonBasis

Subset = tuple[int, ...]


def _sort_sign(idx: Sequence[int]) -> tuple[int, Subset]:
    """Sign of the sorting permutation and the sorted tuple (0 if an index repeats)."""
    if len(set(idx)) != len(idx):
        return 0, ()
    arr = list(idx)
    sign = 1
    for i in range(len(arr)):
        for j in range(len(arr) - 1 - i):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                sign = -sign
    return sign, tuple(arr)


class ExtElement:
    """Homogeneous element of the exterior algebra on e_1..e_m (1-based indices)."""

    __slots__ = ("generator_count", "degree", "terms")

    def __init__(self, generator_count: int, terms: Mapping[Sequence[int], int], degree: int | None = None):
        self.generator_count = generator_count
        clean: dict[Subset, int] = {}
        degrees = set()
        for idx, c in terms.items():
            if any(not 1 <= a <= generator_count for a in idx):
                raise InputError(f"index out of range in {idx}")
            degrees.add(len(idx))
            s, key = _sort_sign(idx)
            if s == 0 or c == 0:
                continue
            v = clean.get(key, 0) + s * c
            if v:
                clean[key] = v
            else:
                clean.pop(key, None)
        if len(degrees) > 1:
            raise InputError("exterior element must be homogeneous")
        self.degree = degree if degree is not None else (degrees.pop() if degrees else 0)
        self.terms = clean

    @classmethod
    def basis(cls, m: int, *idx: int) -> "ExtElement":
        return cls(m, {tuple(idx): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExtElement):
            return NotImplemented
        return self.generator_count == other.generator_count and self.terms == other.terms

    def __add__(self, other: "ExtElement") -> "ExtElement":
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return ExtElement(self.generator_count, terms, self.degree)

    def __neg__(self) -> "ExtElement":
        return ExtElement(self.generator_count, {k: -v for k, v in self.terms.items()}, self.degree)

    def __sub__(self, other: "ExtElement") -> "ExtElement":
        return self + (-other)

    def __rmul__(self, c: int) -> "ExtElement":
        return ExtElement(self.generator_count, {k: c * v for k, v in self.terms.items()}, self.degree)

    def wedge(self, other: "ExtElement") -> "ExtElement":
        if self.generator_count != other.generator_count:
            raise InputError("generator count mismatch")
        out: dict[Subset, int] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                s, key = _sort_sign(a + b)
                if s:
                    out[key] = out.get(key, 0) + s * ca * cb
        return ExtElement(self.generator_count, out, self.degree + other.degree)

    __xor__ = wedge

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " ".join(f"{c:+d}*" + "^".join(f"e{a}" for a in k) for k, c in sorted(self.terms.items()))

    def format(self, labels: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, c in sorted(self.terms.items()):
            name = "^".join(labels[a - 1] for a in k)
            parts.append(f"{'+' if c > 0 else '-'} {name}" if abs(c) == 1 else f"{c:+d} {name}")
        return " ".join(parts).lstrip("+ ")


@dataclass(frozen=True)
class PresentationData:
    """Generators grouped into free factors, plus relator words over them.

    Generators are numbered 1..m factor by factor; every relator is a word
    (a, b) w^-1 in the free group on the m generators.
    """

    factor_ranks: tuple[int, ...]
    relators: tuple[Word, ...]
    labels: tuple[str, ...] = ()
    factor_of: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        if any(r < 1 for r in self.factor_ranks):
            raise InputError("factor ranks must be positive")
        m = sum(self.factor_ranks)
        owners = []
        for p, r in enumerate(self.factor_ranks):
            owners += [p] * r
        object.__setattr__(self, "factor_of", tuple(owners))
        for w in self.relators:
            if w.rank != m:
                raise InputError(f"relator over {w.rank} generators, expected {m}")
        if self.labels and len(self.labels) != m:
            raise InputError("one label per generator expected")

    @property
    def m(self) -> int:
        return sum(self.factor_ranks)

    def relator_classes(self) -> list[dict[tuple[int, int], int]]:
        """Each relator's degree-2 class as {(a, b): coeff} over pairs a < b."""
        out = []
        for w in self.relators:
            t = lie_class(w, 2)
            out.append({(a, b): c for (a, b), c in t.items() if a < b})
        return out


def build_ideal(data: PresentationData) -> list[ExtElement]:
    """Degree-2 generators of J, one per pair inside each free factor."""
    m = data.m
    owner = data.factor_of
    # cross pair -> (its coefficient in the relator, pure pairs of that relator)
    cross: dict[tuple[int, int], tuple[int, dict]] = {}
    for cls in data.relator_classes():
        crosses = [(pr, c) for pr, c in cls.items() if owner[pr[0] - 1] != owner[pr[1] - 1]]
        if len(crosses) != 1 or abs(crosses[0][1]) != 1:
            raise InputError(f"relator class {cls} must have exactly one cross term with coefficient +-1")
        pr, c = crosses[0]
        if pr in cross:
            raise InputError(f"two relators share the cross term {pr}")
        pure = {q: v for q, v in cls.items() if q != pr}
        cross[pr] = (c, pure)
    ideal = []
    start = 0
    for r in data.factor_ranks:
        for a, b in itertools.combinations(range(start + 1, start + r + 1), 2):
            terms = {(a, b): 1}
            for pr, (c, pure) in cross.items():
                v = pure.get((a, b), 0)
                if v:
                    if v % c:
                        raise InputError("non-integral correction coefficient")
                    terms[pr] = terms.get(pr, 0) - v // c
            ideal.append(ExtElement(m, terms, 2))
        start += r
    return ideal


def _subset_index(m: int, k: int) -> dict[Subset, int]:
    return {s: i for i, s in enumerate(itertools.combinations(range(1, m + 1), k))}


def betti(m: int, ideal: Sequence[ExtElement], k: int) -> int:
    """Rank of the degree-k part of E/J with J generated by degree-2 elements."""
    if k < 0 or k > m:
        return 0
    if k < 2 or not ideal:
        return comb(m, k)
    for g in ideal:
        if g.degree != 2 and not g.is_zero():
            raise InputError("ideal generators must have degree 2")
    index = _subset_index(m, k)
    basis = EchelonBasis("Q")
    for mono in itertools.combinations(range(1, m + 1), k - 2):
        for g in ideal:
            row: dict[int, int] = {}
            for pair, c in g.terms.items():
                s, key = _sort_sign(pair + mono)
                if s:
                    j = index[key]
                    row[j] = row.get(j, 0) + s * c
            basis.add(row)
            if basis.rank == len(index):
                return 0
    return comb(m, k) - basis.rank


def betti_sequence(m: int, ideal: Sequence[ExtElement]) -> list[int]:
    """b_0, b_1, ... through degree 2 at least, then up to the last nonzero value.

    Degree 2 is always reported since that is where the relations live.
    E/J is generated in degree 1, so once some b_k vanishes all later ones do.
    """
    out = []
    for k in range(m + 1):
        b = betti(m, ideal, k)
        if b == 0 and k > 2:
            break
        out.append(b)
        if b == 0:
            break
    return out


def product_coefficients(factor_ranks: Iterable[int]) -> list[int]:
    """Coefficients of prod (1 + n_p t)."""
    coeffs = [1]
    for r in factor_ranks:
        coeffs = [a + r * b for a, b in zip(coeffs + [0], [0] + coeffs)]
    return coeffs


# ------------------------------------------------------- built-in families


def _free_word(m: int, a: int) -> Word:
    return Word(m, (a,))


def in_presentation_data(n: int) -> PresentationData:
    """Partial inner automorphism group: factors nu(p,1..p) for p = 2..n."""
    if n < 2:
        raise InputError("n must be >= 2")
    symbols = [(p, i) for p in range(2, n + 1) for i in range(1, p + 1)]
    num = {s: k + 1 for k, s in enumerate(symbols)}
    m = len(symbols)
    g = lambda p, i: _free_word(m, num[(p, i)])  # noqa: E731
    relators = []
    for p in range(3, n + 1):
        for q in range(2, p):
            for i in range(1, p + 1):
                for j in range(1, q + 1):
                    lhs = commutator(g(p, i), g(q, j))
                    if j != i and i <= q:
                        lhs = lhs * ~commutator(g(p, i), g(p, j))
                    relators.append(lhs)
    labels = tuple(f"a{p}{i}" for p, i in symbols)
    return PresentationData(tuple(range(2, n + 1)), tuple(relators), labels)


def upper_presentation_data(n: int) -> PresentationData:
    """Upper-triangular McCool group: factors x(p,1..p) for p = 1..n-1."""
    if n < 2:
        raise InputError("n must be >= 2")
    symbols = [(p, i) for p in range(1, n) for i in range(1, p + 1)]
    num = {s: k + 1 for k, s in enumerate(symbols)}
    m = len(symbols)
    g = lambda p, i: _free_word(m, num[(p, i)])  # noqa: E731
    relators = []
    for p in range(2, n):
        for q in range(1, p):
            for i in range(1, p + 1):
                for j in range(1, q + 1):
                    lhs = commutator(g(p, i), g(q, j))
                    if q == i:
                        lhs = lhs * ~commutator(g(p, i), ~g(p, j))
                    relators.append(lhs)
    labels = tuple(f"e{p}{i}" for p, i in symbols)
    return PresentationData(tuple(range(1, n)), tuple(relators), labels)


def presentation_data(family: str, n: int) -> PresentationData:
    if family == "in":
        return in_presentation_data(n)
    if family == "psigma+":
        return upper_presentation_data(n)
    raise InputError(f"no cohomology data for family {family!r}; use 'in' or 'psigma+'")


def listed_relations(family: str, n: int) -> list[ExtElement]:
    """The closed-form degree-2 relations usually quoted for these rings.

    For ``in``: a_{p,i}^a_{p,j} + a_{q,j}^a_{p,i} with j < i <= q < p.
    For ``psigma+``: e_{p,i}^e_{p,j} - e_{p,i}^e_{i,j} with j < i < p.
    """
    data = presentation_data(family, n)
    m = data.m
    if family == "in":
        symbols = [(p, i) for p in range(2, n + 1) for i in range(1, p + 1)]
    else:
        symbols = [(p, i) for p in range(1, n) for i in range(1, p + 1)]
    num = {s: k + 1 for k, s in enumerate(symbols)}
    e = lambda p, i: ExtElement.basis(m, num[(p, i)])  # noqa: E731
    out = []
    if family == "in":
        for p in range(2, n + 1):
            for q in range(2, p):
                for i in range(2, q + 1):
                    for j in range(1, i):
                        out.append(e(p, i).wedge(e(p, j)) + e(q, j).wedge(e(p, i)))
    else:
        for p in range(1, n):
            for i in range(1, p):
                for j in range(1, i):
                    out.append(e(p, i).wedge(e(p, j)) - e(p, i).wedge(e(i, j)))
    return out


@dataclass
class MembershipReport:
    family: str
    n: int
    checked: int
    missing: list[str]

    @property
    def ok(self) -> bool:
        return not self.missing

    def to_json(self) -> dict:
        return {"family": self.family, "n": self.n, "checked": self.checked, "missing": self.missing}


def compare_listed(family: str, n: int) -> MembershipReport:
    """Which listed relations fail to lie in the rational span of the derived ideal."""
    data = presentation_data(family, n)
    index = _subset_index(data.m, 2)
    span = EchelonBasis("Q")
    for g in build_ideal(data):
        span.add({index[k]: v for k, v in g.terms.items()})
    listed = listed_relations(family, n)
    missing = [
        r.format(data.labels) for r in listed if not span.contains({index[k]: v for k, v in r.terms.items()})
    ]
    return MembershipReport(family, n, len(listed), missing)


@dataclass
class PoincareReport:
    family: str
    n: int
    betti: list[int]
    expected: list[int]
    b1_expected: int

    @property
    def ok(self) -> bool:
        return self.betti == self.expected and self.betti[1:2] == [self.b1_expected]

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "betti": self.betti,
            "expected": self.expected,
            "b1_expected": self.b1_expected,
            "match": self.ok,
        }


def poincare_check(family: str, n: int) -> PoincareReport:
    """Betti numbers of E/J against the product formula prod (1 + n_p t)."""
    data = presentation_data(family, n)
    seq = betti_sequence(data.m, build_ideal(data))
    expected = product_coefficients(data.factor_ranks)
    expected += [0] * (len(seq) - len(expected))
    b1 = (n * n + n - 2) // 2 if family == "in" else n * (n - 1) // 2
    return PoincareReport(family, n, seq, expected, b1)


def betti_table_csv(max_n: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "n", "k", "betti", "expected"])
    for family in ("in", "psigma+"):
        for n in range(2, max_n + 1):
            rep = poincare_check(family, n)
            for k in range(max(len(rep.betti), len(rep.expected))):
                got = rep.betti[k] if k < len(rep.betti) else 0
                exp = rep.expected[k] if k < len(rep.expected) else 0
                w.writerow([family, n, k, got, exp])
    return buf.getvalue()
