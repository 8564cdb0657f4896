"""Derivations of the free Lie algebra and graded ranks of Lie rings.

Everything lives in tensor coordinates: a degree-k derivation of the free
Lie algebra on X_1..X_n is stored as its n values, each a degree-(k+1) tensor.
Ranks are exact and computed with :mod:`freeaut.zlin`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import InputError
from .hall import bc_to_tensor, hall_basis, witt_rank
from .limits import LIE_GUARD, SizeGuard
from .series import Monomial, Tensor
from .zlin import EchelonBasis, IntMatrix, rank, snf


class Derivation:
    """Degree-k derivation: ``values[i]`` is the image of X_{i+1}, of degree k+1."""

    __slots__ = ("rank", "degree", "values")

    def __init__(self, rank: int, degree: int, values: Sequence[Tensor]):
        if degree < 0:
            raise InputError("derivation degree must be >= 0")
        if len(values) != rank:
            raise InputError(f"expected {rank} values, got {len(values)}")
        for v in values:
            if v.rank != rank:
                raise InputError(f"value of rank {v.rank} in a rank-{rank} derivation")
            if not v.is_zero() and v.degree != degree + 1:
                raise InputError(f"value of degree {v.degree} in a degree-{degree} derivation")
        self.rank = rank
        self.degree = degree
        self.values = tuple(v if not v.is_zero() else Tensor.zero(rank, degree + 1) for v in values)

    @classmethod
    def zero(cls, rank: int, degree: int) -> "Derivation":
        return cls(rank, degree, [Tensor.zero(rank, degree + 1)] * rank)

    @classmethod
    def single(cls, i: int, value: Tensor) -> "Derivation":
        """The derivation X_i -> value, X_j -> 0 otherwise."""
        n = value.rank
        values = [Tensor.zero(n, value.degree)] * n
        values[i - 1] = value
        return cls(n, value.degree - 1, values)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.rank == other.rank and self.values == other.values and (
            self.degree == other.degree or self.is_zero()
        )

    def __hash__(self):
        return hash((self.rank, self.values))

    def __add__(self, other: "Derivation") -> "Derivation":
        _check_pair(self, other)
        if self.degree != other.degree:
            raise InputError("cannot add derivations of different degrees")
        return Derivation(self.rank, self.degree, [a + b for a, b in zip(self.values, other.values)])

    def __neg__(self) -> "Derivation":
        return Derivation(self.rank, self.degree, [-v for v in self.values])

    def __sub__(self, other: "Derivation") -> "Derivation":
        return self + (-other)

    def __repr__(self) -> str:
        nz = ", ".join(f"X{i + 1}: {v!r}" for i, v in enumerate(self.values) if not v.is_zero())
        return f"Derivation(rank={self.rank}, degree={self.degree}, {{{nz}}})"

    @property
    def dimension(self) -> int:
        return self.rank ** (self.degree + 2)

    def to_sparse_vector(self) -> dict[int, int]:
        """Flatten into coordinates of length n * n^(k+1)."""
        block = self.rank ** (self.degree + 1)
        vec: dict[int, int] = {}
        for i, v in enumerate(self.values):
            vec.update(v.to_sparse_vector(offset=i * block))
        return vec

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "degree": self.degree,
            "values": [{"generator": i + 1, "tensor": v.to_json()} for i, v in enumerate(self.values)],
        }

    def is_lie(self) -> bool:
        """True when every value lies in the rational span of the Hall basis tensors."""
        n, k = self.rank, self.degree + 1
        basis = EchelonBasis("Q")
        for c in hall_basis(n, k):
            basis.add(bc_to_tensor(c).to_sparse_vector())
        return all(basis.contains(v.to_sparse_vector()) for v in self.values)


def _check_pair(a: Derivation, b: Derivation) -> None:
    if a.rank != b.rank:
        raise InputError(f"rank mismatch: {a.rank} != {b.rank}")


def leibniz_extend(d: Derivation, t: Tensor) -> Tensor:
    """Apply ``d`` to a tensor by the Leibniz rule (letter by letter)."""
    if d.rank != t.rank:
        raise InputError(f"rank mismatch: {d.rank} != {t.rank}")
    out: dict[Monomial, int] = {}
    images = [list(v.items()) for v in d.values]
    for mono, c in t.items():
        for pos, a in enumerate(mono):
            prefix, suffix = mono[:pos], mono[pos + 1 :]
            for m, cv in images[a - 1]:
                key = prefix + m + suffix
                val = out.get(key, 0) + c * cv
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
    return Tensor(t.rank, t.degree + d.degree, out)


def der_bracket(d: Derivation, e: Derivation) -> Derivation:
    """[d, e] = d o e - e o d, a derivation of degree deg d + deg e."""
    _check_pair(d, e)
    values = [leibniz_extend(d, ev) - leibniz_extend(e, dv) for dv, ev in zip(d.values, e.values)]
    return Derivation(d.rank, d.degree + e.degree, values)


def graded_subalgebra_ranks(gens: Sequence[Derivation], k_max: int, guard: SizeGuard | None = None) -> list[int]:
    """Ranks of the degree-1..k_max pieces of the Lie subring generated by degree-1 derivations.

    The degree-k piece is spanned by [b, g] with b running over a basis of the
    degree-(k-1) piece and g over the generators.
    """
    if k_max < 1:
        return []
    if not gens:
        return [0] * k_max
    n = gens[0].rank
    for g in gens:
        if g.degree != 1 or g.rank != n:
            raise InputError("generators must be degree-1 derivations of a common rank")
    guard = guard or LIE_GUARD
    guard.check(n=n, k=k_max, dim=n ** (k_max + 2), what="graded_subalgebra_ranks")

    ranks = []
    layer: list[Derivation] = []
    basis = EchelonBasis("Q")
    for g in gens:
        if basis.add(g.to_sparse_vector()):
            layer.append(g)
    ranks.append(basis.rank)
    for _ in range(2, k_max + 1):
        basis = EchelonBasis("Q")
        nxt = []
        for b in layer:
            for g in gens:
                v = der_bracket(b, g)
                if basis.add(v.to_sparse_vector()):
                    nxt.append(v)
        layer = nxt
        ranks.append(basis.rank)
    return ranks


@dataclass(frozen=True)
class LiePresentation:
    """Quadratic presentation of a Lie ring on ``num_generators`` symbols.

    Relations are degree-2 antisymmetric tensors in the symbols.
    """

    num_generators: int
    relations: tuple[Tensor, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        m = self.num_generators
        for r in self.relations:
            if r.rank != m:
                raise InputError(f"relation over {r.rank} symbols in a presentation on {m}")
            if r.is_zero():
                continue
            if r.degree != 2:
                raise InputError(f"inhomogeneous relation of degree {r.degree}; only degree 2 is supported")
            for (a, b), c in r.items():
                if r[(b, a)] != -c:
                    raise InputError(f"relation is not antisymmetric at X{a}X{b}")


class PresentedPiece(NamedTuple):
    degree: int
    rank: int
    divisors: tuple[int, ...]


def lie_relation(pairs: Sequence[tuple[int, int, int]], m: int) -> Tensor:
    """Sum of c*[g_a, g_b] over ``(c, a, b)`` triples, as an antisymmetric 2-tensor."""
    coeffs: dict[Monomial, int] = {}
    for c, a, b in pairs:
        coeffs[(a, b)] = coeffs.get((a, b), 0) + c
        coeffs[(b, a)] = coeffs.get((b, a), 0) - c
    return Tensor(m, 2, coeffs)


def _bracket_with_generator(row: dict[int, int], g: int, m: int, degree: int) -> dict[int, int]:
    """[v, X_g] for v of the given degree in dense base-m coordinates."""
    shift = (g - 1) * m**degree
    out: dict[int, int] = {}
    for idx, c in row.items():
        right = idx * m + (g - 1)
        out[right] = out.get(right, 0) + c
        left = shift + idx
        out[left] = out.get(left, 0) - c
    return {j: v for j, v in out.items() if v}


def presented_lie_ranks(p: LiePresentation, k_max: int, guard: SizeGuard | None = None) -> list[PresentedPiece]:
    """Graded ranks of (free Lie ring)/(ideal generated by the relations).

    The degree-k piece of the ideal is the Z-span of iterated brackets
    [...[r, g_1], ..., g_{k-2}] of relations r with generators; by the
    Jacobi identity brackets on the left add nothing.  The reported divisors
    are the nonzero elementary divisors of that lattice inside the degree-k
    tensors; since the free Lie ring is a direct summand of the tensor
    algebra, any divisor > 1 is torsion of the quotient.
    """
    m = p.num_generators
    guard = guard or LIE_GUARD
    guard.check(k=k_max, dim=m**k_max if k_max >= 1 else None, what="presented_lie_ranks")
    out: list[PresentedPiece] = []
    if k_max >= 1:
        out.append(PresentedPiece(1, m, ()))
    ideal = EchelonBasis("Z")
    for k in range(2, k_max + 1):
        if k == 2:
            for r in p.relations:
                ideal.add(r.to_sparse_vector())
        else:
            prev = ideal.rows()
            ideal = EchelonBasis("Z")
            for row in prev:
                for g in range(1, m + 1):
                    ideal.add(_bracket_with_generator(row, g, m, k - 1))
        rows = ideal.rows()
        divisors = snf(IntMatrix(rows, m**k)).divisors[: len(rows)] if rows else ()
        out.append(PresentedPiece(k, witt_rank(m, k) - ideal.rank, tuple(divisors)))
    return out


def free_lie_rank(m: int, k: int) -> int:
    """Rank of the span of Hall basis tensors, computed directly (a check on the Witt formula)."""
    return rank([bc_to_tensor(c).to_sparse_vector() for c in hall_basis(m, k)])


def in_lie_presentation(n: int) -> LiePresentation:
    """Symbols y(p,i), 2 <= p <= n, 1 <= i <= p, with the partial-inner relations."""
    if n < 2:
        raise InputError("n must be >= 2")
    symbols = [(p, i) for p in range(2, n + 1) for i in range(1, p + 1)]
    num = {s: k + 1 for k, s in enumerate(symbols)}
    m = len(symbols)
    rels = []
    for p in range(3, n + 1):
        for q in range(2, p):
            for i in range(1, p + 1):
                for j in range(1, q + 1):
                    terms = [(1, num[(p, i)], num[(q, j)])]
                    if j != i and i <= q:
                        terms.append((-1, num[(p, i)], num[(p, j)]))
                    rels.append(lie_relation(terms, m))
    return LiePresentation(m, tuple(rels), tuple(f"y{p}{i}" for p, i in symbols))


def upper_lie_presentation(n: int) -> LiePresentation:
    """Symbols e(p,i), 1 <= i <= p <= n-1, with the upper-triangular McCool relations."""
    if n < 2:
        raise InputError("n must be >= 2")
    symbols = [(p, i) for p in range(1, n) for i in range(1, p + 1)]
    num = {s: k + 1 for k, s in enumerate(symbols)}
    m = len(symbols)
    rels = []
    for p in range(2, n):
        for q in range(1, p):
            for i in range(1, p + 1):
                for j in range(1, q + 1):
                    terms = [(1, num[(p, i)], num[(q, j)])]
                    if q == i:
                        terms.append((1, num[(p, i)], num[(p, j)]))
                    rels.append(lie_relation(terms, m))
    return LiePresentation(m, tuple(rels), tuple(f"e{p}{i}" for p, i in symbols))
