"""Exact integer linear algebra: echelon bases, rank, Smith normal form.

Rows are handled sparsely as ``{column: value}`` dictionaries.  All
arithmetic is on Python integers, so nothing overflows.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping, Sequence, Union

SparseRow = dict[int, int]


class IntMatrix:
    """Integer matrix with explicit shape; stored as sparse rows."""

    def __init__(self, rows: Sequence[Union[Sequence[int], Mapping[int, int]]], cols: int | None = None):
        sparse: list[SparseRow] = []
        width = 0
        for row in rows:
            if isinstance(row, Mapping):
                d = {int(j): int(v) for j, v in row.items() if v}
                width = max(width, max(d, default=-1) + 1)
            else:
                d = {j: int(v) for j, v in enumerate(row) if v}
                width = max(width, len(row))
            sparse.append(d)
        if cols is None:
            cols = width
        elif width > cols:
            raise ValueError(f"row entries exceed declared width {cols}")
        self.rows = len(sparse)
        self.cols = cols
        self.sparse_rows = sparse

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([{i: 1} for i in range(n)], n)

    def dense(self) -> list[list[int]]:
        out = []
        for d in self.sparse_rows:
            row = [0] * self.cols
            for j, v in d.items():
                row[j] = v
            out.append(row)
        return out

    def transpose(self) -> "IntMatrix":
        cols: list[SparseRow] = [dict() for _ in range(self.cols)]
        for i, d in enumerate(self.sparse_rows):
            for j, v in d.items():
                cols[j][i] = v
        return IntMatrix(cols, self.rows)

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols})"


MatrixLike = Union[IntMatrix, Sequence[Sequence[int]]]


def as_matrix(M: MatrixLike) -> IntMatrix:
    return M if isinstance(M, IntMatrix) else IntMatrix(M)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, u, v) with u*a + v*b = g = gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _axpy(r: SparseRow, s: int, p: SparseRow, t: int) -> SparseRow:
    """s*r + t*p as a new sparse row."""
    out = {j: s * v for j, v in r.items()} if s != 1 else dict(r)
    for j, v in p.items():
        w = out.get(j, 0) + t * v
        if w:
            out[j] = w
        else:
            out.pop(j, None)
    return out


class EchelonBasis:
    """Incrementally maintained row-echelon basis.

    ``over="Q"`` keeps a basis of the rational span (rows are scaled and
    divided by their content).  ``over="Z"`` uses only unimodular row
    operations, so the rows span exactly the same lattice as the inputs.
    """

    def __init__(self, over: str = "Q"):
        if over not in ("Q", "Z"):
            raise ValueError("over must be 'Q' or 'Z'")
        self.over = over
        self._pivots: dict[int, SparseRow] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def __len__(self) -> int:
        return len(self._pivots)

    def rows(self) -> list[SparseRow]:
        return [dict(self._pivots[c]) for c in sorted(self._pivots)]

    def pivot_values(self) -> list[int]:
        return [self._pivots[c][c] for c in sorted(self._pivots)]

    def _residual_q(self, r: SparseRow) -> SparseRow:
        while r:
            c = min(r)
            p = self._pivots.get(c)
            if p is None:
                return r
            a, b = p[c], r[c]
            g = gcd(a, b)
            r = _axpy(r, a // g, p, -(b // g))
            if r:
                content = 0
                for v in r.values():
                    content = gcd(content, v)
                    if content == 1:
                        break
                if content > 1:
                    r = {j: v // content for j, v in r.items()}
        return r

    def add(self, row: Mapping[int, int]) -> bool:
        """Insert a row; return True when it increases the rank."""
        r = {j: v for j, v in row.items() if v}
        if self.over == "Q":
            r = self._residual_q(r)
            if not r:
                return False
            self._pivots[min(r)] = r
            return True
        while r:
            c = min(r)
            p = self._pivots.get(c)
            if p is None:
                self._pivots[c] = r
                return True
            a, b = p[c], r[c]
            if b % a == 0:
                r = _axpy(r, 1, p, -(b // a))
                continue
            g, u, v = _xgcd(a, b)
            new_p = _axpy(p, u, r, v)
            r = _axpy(r, a // g, p, -(b // g))
            self._pivots[c] = new_p
        return False

    def contains(self, row: Mapping[int, int]) -> bool:
        """Rational membership test (Q-mode) or lattice membership test (Z-mode)."""
        r = {j: v for j, v in row.items() if v}
        if self.over == "Q":
            return not self._residual_q(r)
        while r:
            c = min(r)
            p = self._pivots.get(c)
            if p is None or r[c] % p[c]:
                return False
            r = _axpy(r, 1, p, -(r[c] // p[c]))
        return True


@dataclass(frozen=True)
class SnfResult:
    divisors: tuple[int, ...]
    rank: int

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.divisors if d > 1)


def _min_abs_position(A: list[list[int]], t: int) -> tuple[int, int] | None:
    best = None
    best_val = 0
    for i in range(t, len(A)):
        row = A[i]
        for j in range(t, len(row)):
            v = row[j]
            if v and (best is None or abs(v) < best_val):
                best, best_val = (i, j), abs(v)
                if best_val == 1:
                    return best
    return best


def _snf_dense(A: list[list[int]]) -> list[int]:
    """Nonzero elementary divisors of a dense matrix, by min-|entry| pivoting."""
    A = [row[:] for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    divisors: list[int] = []
    t = 0
    while t < min(m, n):
        pos = _min_abs_position(A, t)
        if pos is None:
            break
        i, j = pos
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        ri, rt = A[i], A[t]
                        for j in range(t, n):
                            if rt[j]:
                                ri[j] -= q * rt[j]
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        for row in A[t:]:
                            if row[t]:
                                row[j] -= q * row[t]
                    if A[t][j]:
                        clean = False
            if not clean:
                # move the smallest remainder in row t / column t onto the diagonal
                cands = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cands += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i, j = min(cands)
                A[t], A[i] = A[i], A[t]
                for row in A:
                    row[t], row[j] = row[j], row[t]
                continue
            bad = next((i for i in range(t + 1, m) if any(A[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad])]
        divisors.append(abs(A[t][t]))
        t += 1
    return divisors


def snf(M: MatrixLike) -> SnfResult:
    """Elementary divisors d_1 | d_2 | ... (padded with zeros to min(rows, cols))."""
    M = as_matrix(M)
    basis = EchelonBasis("Z")
    for row in M.sparse_rows:
        basis.add(row)
    r = basis.rank
    size = min(M.rows, M.cols)
    if all(abs(v) == 1 for v in basis.pivot_values()):
        nonzero = [1] * r
    else:
        echelon = IntMatrix(basis.rows(), M.cols).dense()
        nonzero = sorted(_snf_dense(echelon))
    divisors = tuple(nonzero + [0] * (size - len(nonzero)))
    return SnfResult(divisors, len(nonzero))


def rank(M: Union[MatrixLike, Iterable[Mapping[int, int]]]) -> int:
    """Rank of an integer matrix (number of nonzero elementary divisors)."""
    basis = EchelonBasis("Q")
    rows = M.sparse_rows if isinstance(M, IntMatrix) else M
    for row in rows:
        if isinstance(row, Mapping):
            basis.add(row)
        else:
            basis.add({j: v for j, v in enumerate(row) if v})
    return basis.rank
