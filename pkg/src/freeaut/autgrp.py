"""Subgroups of IA_n given by named generators, their relations and Johnson images.

Three families are built in:

* ``in``      partial inner automorphisms nu(p,i): x_k -> x_i^-1 x_k x_i for k <= p
* ``psigma``  basis-conjugating automorphisms xi(i,j): x_i -> x_j^-1 x_i x_j
* ``psigma+`` the lower-triangular xi's, indexed as up(p,i) = xi(n-i+1, n-p)

Group words multiply left to right, and a product g*h of automorphisms is the
composite g o h (see :mod:`freeaut.word`).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import InputError, NotInFiltrationError
from .hall import hall_basis, bc_to_tensor, witt_rank
from .liealg import Derivation, graded_subalgebra_ranks
from .limits import RANK_GUARD, RELATION_GUARD, SizeGuard
from .series import Tensor, bracket, leading_class, lcs_weight
from .word import Endo, Word, compose, identity, reduce
from .zlin import EchelonBasis

FAMILIES = ("in", "psigma", "psigma+", "custom")


@dataclass(frozen=True, order=True)
class NamedGenerator:
    kind: str  # "xi", "xiT", "nu" or "up"
    indices: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind}({','.join(map(str, self.indices))})"

    def validate(self, n: int) -> None:
        k, ix = self.kind, self.indices
        if k == "xi":
            ok = len(ix) == 2 and ix[0] != ix[1] and all(1 <= a <= n for a in ix)
        elif k == "xiT":
            ok = len(ix) == 3 and len(set(ix)) == 3 and all(1 <= a <= n for a in ix)
        elif k == "nu":
            ok = len(ix) == 2 and 1 <= ix[1] <= ix[0] <= n
        elif k == "up":
            ok = len(ix) == 2 and 1 <= ix[1] <= ix[0] <= n - 1
        else:
            raise InputError(f"unknown generator kind {k!r}")
        if not ok:
            raise InputError(f"invalid indices for {self} in rank {n}")


def Xi(i: int, j: int) -> NamedGenerator:
    return NamedGenerator("xi", (i, j))


def XiTriple(k: int, s: int, t: int) -> NamedGenerator:
    return NamedGenerator("xiT", (k, s, t))


def Nu(p: int, i: int) -> NamedGenerator:
    return NamedGenerator("nu", (p, i))


def Upper(p: int, i: int) -> NamedGenerator:
    return NamedGenerator("up", (p, i))


def _conj_map(n: int, targets, c: int) -> Endo:
    """x_k -> x_c^-1 x_k x_c for k in targets (c is a signed letter)."""
    images = []
    for k in range(1, n + 1):
        if k in targets and k != abs(c):
            images.append(Word(n, (-c, k, c)))
        else:
            images.append(Word(n, (k,)))
    return Endo(n, tuple(images))


def _endo(g: NamedGenerator, n: int, sign: int) -> Endo:
    g.validate(n)
    if g.kind == "xi":
        i, j = g.indices
        return _conj_map(n, {i}, sign * j)
    if g.kind == "nu":
        p, i = g.indices
        return _conj_map(n, set(range(1, p + 1)), sign * i)
    if g.kind == "up":
        p, i = g.indices
        return _endo(Xi(n - i + 1, n - p), n, sign)
    k, s, t = g.indices
    tail = (-s, -t, s, t) if sign > 0 else (-t, -s, t, s)
    images = [Word(n, (a,)) for a in range(1, n + 1)]
    images[k - 1] = reduce((k,) + tail, n)
    return Endo(n, tuple(images))


def endo_of(g: NamedGenerator, n: int) -> Endo:
    """The defining automorphism of a named generator."""
    return _endo(g, n, 1)


def inverse_of(g: NamedGenerator, n: int) -> Endo:
    return _endo(g, n, -1)


@dataclass(frozen=True)
class Automorphism:
    """An automorphism carried together with its inverse."""

    forward: Endo
    inverse: Endo

    @classmethod
    def of(cls, g: NamedGenerator, n: int) -> "Automorphism":
        return cls(endo_of(g, n), inverse_of(g, n))

    @classmethod
    def one(cls, n: int) -> "Automorphism":
        e = identity(n)
        return cls(e, e)

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        return Automorphism(compose(self.forward, other.forward), compose(other.inverse, self.inverse))

    def inv(self) -> "Automorphism":
        return Automorphism(self.inverse, self.forward)

    def commutator(self, other: "Automorphism") -> "Automorphism":
        """(a, b) = a^-1 b^-1 a b."""
        return self.inv() * other.inv() * self * other


_TOKEN = re.compile(r"\s*(xiT|xi|nu|up)\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)(?:\^\(?(-?\d+)\)?)?\s*")


@dataclass(frozen=True)
class GroupWord:
    factors: tuple[tuple[NamedGenerator, int], ...] = ()

    def __post_init__(self):
        for g, e in self.factors:
            if e == 0:
                raise InputError(f"zero exponent on {g}")

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.factors + other.factors)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((g, -e) for g, e in reversed(self.factors)))

    def __pow__(self, e: int) -> "GroupWord":
        base = self if e >= 0 else self.inverse()
        return GroupWord(base.factors * abs(e))

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " ".join(str(g) if e == 1 else f"{g}^{e}" for g, e in self.factors)

    @classmethod
    def gen(cls, g: NamedGenerator, e: int = 1) -> "GroupWord":
        return cls(((g, e),))

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        """Parse e.g. ``"nu(3,1)^-1 xi(2,3) xiT(1,2,3)"``; "" and "1" give the empty word."""
        text = text.strip()
        if text in ("", "1"):
            return cls()
        factors = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise InputError(f"cannot parse group word at {text[pos:]!r}")
            idx = tuple(int(a) for a in m.group(2).split(","))
            factors.append((NamedGenerator(m.group(1), idx), int(m.group(3) or 1)))
            pos = m.end()
        return cls(tuple(factors))


def group_commutator(a: GroupWord, b: GroupWord) -> GroupWord:
    return a.inverse() * b.inverse() * a * b


def left_normed_group(words: Sequence[GroupWord]) -> GroupWord:
    out = words[0]
    for w in words[1:]:
        out = group_commutator(out, w)
    return out


def evaluate_pair(w: GroupWord, n: int) -> Automorphism:
    result = Automorphism.one(n)
    for g, e in w.factors:
        a = Automorphism.of(g, n)
        if e < 0:
            a = a.inv()
        for _ in range(abs(e)):
            result = result * a
    return result


def evaluate(w: GroupWord, n: int) -> Endo:
    """The automorphism of F_n represented by a group word."""
    return evaluate_pair(w, n).forward


@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int
    custom: tuple[NamedGenerator, ...] = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown group family {self.family!r}; expected one of {FAMILIES}")
        if self.n < 2:
            raise InputError("group rank n must be >= 2")
        if self.family == "custom":
            if not self.custom:
                raise InputError("custom family needs a generator list")
            for g in self.custom:
                g.validate(self.n)

    def generators(self) -> list[NamedGenerator]:
        n = self.n
        if self.family == "in":
            return [Nu(p, i) for p in range(2, n + 1) for i in range(1, p + 1)]
        if self.family == "psigma":
            return [Xi(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
        if self.family == "psigma+":
            return [Upper(p, i) for p in range(1, n) for i in range(1, p + 1)]
        return list(self.custom)

    def label(self) -> str:
        return {"in": "I", "psigma": "PSigma", "psigma+": "PSigma+", "custom": "custom"}[self.family] + f"_{self.n}"


# ---------------------------------------------------------------- relations


@dataclass
class RelationReport:
    suite: str
    n: int
    instances: int = 0
    failures: list = field(default_factory=list)
    conflicts: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and not self.conflicts

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "n": self.n,
            "instances": self.instances,
            "failures": self.failures,
            "conflicts": self.conflicts,
        }


def _g(g: NamedGenerator, e: int = 1) -> GroupWord:
    return GroupWord.gen(g, e)


def _comm(a: GroupWord, b: GroupWord) -> GroupWord:
    return group_commutator(a, b)


ONE = GroupWord()


def _mccool(n: int):
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    for (i, j), (s, t) in itertools.combinations(pairs, 2):
        if {i, j}.isdisjoint({s, t}):
            yield "disjoint", _comm(_g(Xi(i, j)), _g(Xi(s, t))), ONE
    for i, k in itertools.combinations(range(1, n + 1), 2):
        for j in range(1, n + 1):
            if j not in (i, k):
                yield "same target", _comm(_g(Xi(i, j)), _g(Xi(k, j))), ONE
    for i, j, k in itertools.permutations(range(1, n + 1), 3):
        yield "triangle", _comm(_g(Xi(i, j)) * _g(Xi(k, j)), _g(Xi(i, k))), ONE


def _conj_formulas(n: int):
    for v in (1, -1):
        for i, j in itertools.permutations(range(1, n + 1), 2):
            conj = lambda x: _g(Xi(i, j), -v) * x * _g(Xi(i, j), v)  # noqa: E731
            for k, l in itertools.permutations(range(1, n + 1), 2):
                if {k, l}.isdisjoint({i, j}):
                    yield f"1 v={v}", conj(_g(Xi(k, l))), _g(Xi(k, l))
            for k in range(1, n + 1):
                if k in (i, j):
                    continue
                yield f"2 v={v}", conj(_g(Xi(k, j))), _g(Xi(k, j))
                yield f"3 v={v}", conj(_g(Xi(k, i))), _g(Xi(k, j), v) * _g(Xi(k, i)) * _g(Xi(k, j), -v)
                yield f"4 v={v}", conj(_g(Xi(i, k))), _g(Xi(k, j), v) * _g(Xi(i, k)) * _g(Xi(k, j), -v)
                yield f"5 v={v}", conj(_g(Xi(j, k))), _comm(_g(Xi(k, j), -v), _g(Xi(i, k))) * _g(Xi(j, k))


def _in_cases(n: int):
    """Yield (p, i, q, j, matching line numbers) for the partial-inner relations."""
    for p in range(3, n + 1):
        for q in range(2, p):
            for i in range(1, p + 1):
                for j in range(1, q + 1):
                    lines = []
                    if j == i:
                        lines.append(1)
                    if i > q:
                        lines.append(2)
                    if j != i and i <= q:
                        lines.append(3)
                    yield p, i, q, j, lines


def _in_presentation(n: int):
    for p, i, q, j, lines in _in_cases(n):
        lhs = _comm(_g(Nu(p, i)), _g(Nu(q, j)))
        for line in lines:
            rhs = _comm(_g(Nu(p, i)), _g(Nu(p, j))) if line == 3 else ONE
            yield f"line {line} p={p} i={i} q={q} j={j}", lhs, rhs


def _upper_presentation(n: int):
    for p in range(2, n):
        for q in range(1, p):
            for i in range(1, p + 1):
                for j in range(1, q + 1):
                    lhs = _comm(_g(Upper(p, i)), _g(Upper(q, j)))
                    if q == i:
                        yield "q=i", lhs, _comm(_g(Upper(p, i)), _g(Upper(p, j), -1))
                    else:
                        yield "otherwise", lhs, ONE


def _upper_shifted(n: int):
    """The upper-triangular relations with x_{p,i} = xi(p+1, i), acting when i = q+1."""
    x = lambda p, i, e=1: _g(Xi(p + 1, i), e)  # noqa: E731
    for p in range(2, n):
        for q in range(1, p):
            for i in range(1, p + 1):
                for j in range(1, q + 1):
                    lhs = _comm(x(p, i), x(q, j))
                    if i == q + 1:
                        yield "i=q+1", lhs, _comm(x(p, i), x(p, j, -1))
                    else:
                        yield "otherwise", lhs, ONE


def nu_word(p: int, i: int) -> GroupWord:
    """nu(p,i) as a group word, with nu(1,1) the identity."""
    return ONE if p == 1 else _g(Nu(p, i))


def _embedding_remark(n: int):
    for i in range(2, n + 1):
        for j in range(1, i):
            yield f"xi({i},{j})", nu_word(i - 1, j).inverse() * nu_word(i, j), _g(Xi(i, j))


SUITES = {
    "mccool": _mccool,
    "conj_formulas": _conj_formulas,
    "in_presentation": _in_presentation,
    "upper_presentation": _upper_presentation,
    "embedding_remark": _embedding_remark,
}

# diagnostic suites, not part of the main list
EXTRA_SUITES = {"upper_shifted": _upper_shifted}


def relation_instances(suite: str, n: int) -> list[tuple[str, GroupWord, GroupWord]]:
    table = {**SUITES, **EXTRA_SUITES}
    if suite not in table:
        raise InputError(f"unknown suite {suite!r}; expected one of {sorted(table)}")
    return list(table[suite](n))


def _reversed(w: GroupWord) -> GroupWord:
    return GroupWord(tuple(reversed(w.factors)))


def verify_relations(suite: str, n: int, guard: SizeGuard | None = None, opposite: bool = False) -> RelationReport:
    """Check every instance of a relation schema by comparing automorphisms.

    With ``opposite=True`` words are evaluated under the opposite product
    (g*h = h o g); this exists only to document why that convention is not used.
    """
    if n < 2:
        raise InputError("n must be >= 2")
    (guard or RELATION_GUARD).check(n=n, what=f"verify {suite}")
    report = RelationReport(suite, n)
    seen: dict[str, tuple[int, Endo, Endo]] = {}
    for label, lhs, rhs in relation_instances(suite, n):
        if opposite:
            lhs, rhs = _reversed(lhs), _reversed(rhs)
        a, b = evaluate(lhs, n), evaluate(rhs, n)
        report.instances += 1
        if a != b:
            report.failures.append({"label": label, "lhs": str(lhs), "rhs": str(rhs)})
        if suite == "in_presentation":
            key = label.split(" ", 2)[2]
            if key in seen and seen[key][2] != b:
                report.conflicts.append({"instance": key, "lines": [seen[key][0], int(label.split()[1])]})
            seen.setdefault(key, (int(label.split()[1]), a, b))
    return report


def calibrate_convention(n: int = 3) -> dict[str, dict]:
    """Compare the two product conventions.

    For each convention: relation-suite failure counts, and the sign s with
    tau_2((a, b)) = s * [tau_1(a), tau_1(b)] over pairs of generators of
    PSigma_n (0 if no single sign fits).
    """
    from .liealg import der_bracket

    gens = GroupSpec("psigma", n).generators()
    out = {}
    for name, opposite in (("functional", False), ("opposite", True)):
        failures = {s: len(verify_relations(s, n, opposite=opposite).failures) for s in SUITES}
        signs = set()
        for a, b in itertools.product(gens, repeat=2):
            w = _comm(_g(a), _g(b))
            e = evaluate(_reversed(w) if opposite else w, n)
            lhs = johnson(e, 2)
            br = der_bracket(johnson(endo_of(a, n), 1), johnson(endo_of(b, n), 1))
            if br.is_zero() and lhs.is_zero():
                continue
            signs.add(1 if lhs == br else -1 if lhs == -br else 0)
        out[name] = {"failures": failures, "bracket_sign": signs.pop() if len(signs) == 1 else 0}
    return out


# ---------------------------------------------------------- Johnson images


def andreadakis_member(e: Endo, k: int) -> bool:
    """True when e acts trivially on F_n / Gamma_n(k+1)."""
    if k < 1:
        raise InputError("k must be >= 1")
    for i in range(1, e.rank + 1):
        w = Word(e.rank, (-i,)) * e.images[i - 1]
        wt = lcs_weight(w, k + 1)
        if wt is not None and wt < k + 1:
            return False
    return True


def johnson(e: Endo, k: int) -> Derivation:
    """tau_k(e): the value on x_i is the degree-(k+1) class of x_i^-1 e(x_i).

    Elements lying deeper in the filtration map to zero.
    """
    if k < 1:
        raise InputError("k must be >= 1")
    n = e.rank
    values = []
    for i in range(1, n + 1):
        w = Word(n, (-i,)) * e.images[i - 1]
        weight, cls = leading_class(w, k + 1)
        if weight is None:
            values.append(Tensor.zero(n, k + 1))
        elif weight < k + 1:
            raise NotInFiltrationError(f"not in A_n({k}): x_{i}^-1 e(x_{i}) has weight {weight}")
        else:
            values.append(cls)
    return Derivation(n, k, values)


def gamma_generators(spec: GroupSpec, k: int) -> list[GroupWord]:
    """All left-normed commutators of weight k in the generators, with repetition."""
    if k < 1:
        raise InputError("k must be >= 1")
    gens = [GroupWord.gen(g) for g in spec.generators()]
    return [left_normed_group(list(t)) for t in itertools.product(gens, repeat=k)]


def _commutator_tree(spec: GroupSpec, k: int) -> Iterator[Automorphism]:
    """Same elements as gamma_generators, evaluated with shared prefixes."""
    n = spec.n
    gens = [Automorphism.of(g, n) for g in spec.generators()]

    def walk(prefix: Automorphism, depth: int):
        if depth == k:
            yield prefix
            return
        for g in gens:
            yield from walk(prefix.commutator(g), depth + 1)

    for g in gens:
        yield from walk(g, 1)


def _rank_guard(spec: GroupSpec, k: int, guard: SizeGuard | None) -> None:
    (guard or RANK_GUARD).check(n=spec.n, k=k, what=f"gr_rank {spec.label()}")


def gr_rank(spec: GroupSpec, k: int, method: str = "johnson", guard: SizeGuard | None = None) -> int:
    """Rank of tau_k applied to the weight-k lower central series quotient."""
    if k < 1:
        raise InputError("k must be >= 1")
    _rank_guard(spec, k, guard)
    if method == "johnson":
        basis = EchelonBasis("Q")
        for a in _commutator_tree(spec, k):
            basis.add(johnson(a.forward, k).to_sparse_vector())
        return basis.rank
    if method == "derivation":
        gens = [johnson(endo_of(g, spec.n), 1) for g in spec.generators()]
        lie_guard = SizeGuard(max_n=spec.n, max_k=k, max_dim=spec.n ** (k + 2))
        return graded_subalgebra_ranks(gens, k, guard=lie_guard)[k - 1]
    raise InputError(f"unknown method {method!r}; expected 'johnson' or 'derivation'")


def gr_ranks(spec: GroupSpec, k_max: int, guard: SizeGuard | None = None) -> list[int]:
    """gr_rank by the derivation method for every k <= k_max in one pass."""
    _rank_guard(spec, k_max, guard)
    gens = [johnson(endo_of(g, spec.n), 1) for g in spec.generators()]
    lie_guard = SizeGuard(max_n=spec.n, max_k=k_max, max_dim=spec.n ** (k_max + 2))
    return graded_subalgebra_ranks(gens, k_max, guard=lie_guard)


def partial_inner_expected(n: int, k: int) -> int:
    return sum(witt_rank(m, k) for m in range(2, n + 1))


def expected_rank(family: str, n: int, k: int) -> int | None:
    """Closed-form rank of gr^k where one is known, else None."""
    if family == "in":
        return partial_inner_expected(n, k)
    if family == "psigma+":
        return sum(witt_rank(m, k) for m in range(1, n))
    if family == "psigma":
        if n == 2:
            return witt_rank(2, k)
        if n == 3:
            return 2 * witt_rank(3, k)
        if k == 1:
            return n * (n - 1)
        if k == 2:
            return (n - 1) * witt_rank(n, 2)
    return None


def mccool_a4_commutators(n: int) -> list[GroupWord]:
    xi = lambda i, j: _g(Xi(i, j))  # noqa: E731
    out = [_comm(xi(i, j), xi(j, i)) for i, j in itertools.combinations(range(1, n + 1), 2)]
    for i in range(1, n + 1):
        others = [a for a in range(1, n + 1) if a != i]
        for j, t in itertools.combinations(others, 2):
            out.append(_comm(xi(i, j), xi(i, t)))
    return out


def theorem_A4_basis_rank(n: int) -> int:
    """Rank of the tau_2 images of the listed weight-2 commutators of PSigma_n."""
    if n < 2:
        raise InputError("n must be >= 2")
    RANK_GUARD.check(n=n, what="theorem_A4_basis_rank")
    basis = EchelonBasis("Q")
    for w in mccool_a4_commutators(n):
        basis.add(johnson(evaluate(w, n), 2).to_sparse_vector())
    return basis.rank


def inner_image_basis_rank(n: int, k: int) -> tuple[int, int]:
    """Rank of {x_s^* (x) [c, X_s] : c a Hall element of weight k on X_1..X_s}.

    Returns (rank, number of vectors that vanish); the s = 1 terms vanish.
    """
    basis = EchelonBasis("Q")
    vanishing = 0
    for s in range(1, n + 1):
        xs = Tensor.generator(s, n)
        for c in hall_basis(s, k):
            ct = Tensor(n, k, bc_to_tensor(c).coeffs)
            value = bracket(ct, xs)
            if value.is_zero():
                vanishing += 1
                continue
            basis.add(Derivation.single(s, value).to_sparse_vector())
    return basis.rank, vanishing


@dataclass
class ProbeReport:
    n: int
    k: int
    computed_rank: int
    conjectured_value: int
    method: str
    note: str = "computed rank is that of the Johnson image, a lower bound for the rank of gr^k"

    def to_json(self) -> dict:
        return {
            "group": "psigma",
            "n": self.n,
            "k": self.k,
            "computed_rank": self.computed_rank,
            "conjectured_value": self.conjectured_value,
            "method": self.method,
            "note": self.note,
        }


def conjecture_probe(n: int, k: int, method: str = "johnson", guard: SizeGuard | None = None) -> ProbeReport:
    """Johnson-image rank of gr^k(PSigma_n) next to (n-1) * r_n(k); no verdict."""
    computed = gr_rank(GroupSpec("psigma", n), k, method=method, guard=guard)
    return ProbeReport(n, k, computed, (n - 1) * witt_rank(n, k), method)


def permutation_automorphism(perm: Sequence[int]) -> Automorphism:
    """x_i -> x_perm[i-1] together with its inverse."""
    n = len(perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise InputError(f"{perm} is not a permutation of 1..{n}")
    fwd = Endo(n, tuple(Word(n, (perm[i],)) for i in range(n)))
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p - 1] = i + 1
    return Automorphism(fwd, Endo(n, tuple(Word(n, (inv[i],)) for i in range(n))))


def relabel(t: Tensor, perm: Sequence[int]) -> Tensor:
    """Substitute X_a -> X_perm[a-1] in every monomial."""
    return Tensor(t.rank, t.degree, {tuple(perm[a - 1] for a in m): c for m, c in t.items()})
