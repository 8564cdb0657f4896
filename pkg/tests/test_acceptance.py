"""One test per acceptance criterion; each records a PASS/FAIL line."""

import io
import json
import time

import pytest

from freeaut.autgrp import GroupSpec, gr_rank, partial_inner_expected, theorem_A4_basis_rank, verify_relations
from freeaut.cli import run
from freeaut.cohom import compare_listed, poincare_check
from freeaut.hall import basic_commutators, bc_to_tensor, bc_to_word, hall_basis, witt_rank
from freeaut.limits import SizeGuard
from freeaut.liealg import in_lie_presentation, presented_lie_ranks
from freeaut.series import lie_class
from helpers import lyndon_count

RESULTS: list[str] = []


def record(number, title, ok, elapsed, detail=""):
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'} {title} ({elapsed:.1f}s){' ' + detail if detail else ''}"
    RESULTS.append(line)
    print(line)
    return ok


def test_criterion_01_hall_reproduction():
    t = time.perf_counter()
    b2 = [str(c) for c in hall_basis(3, 2)]
    b3 = [str(c) for c in hall_basis(3, 3)]
    expect3 = [
        "((x2,x1),x1)", "((x2,x1),x2)", "((x2,x1),x3)", "((x3,x1),x1)",
        "((x3,x1),x2)", "((x3,x1),x3)", "((x3,x2),x2)", "((x3,x2),x3)",
    ]
    ok = b2 == ["(x2,x1)", "(x3,x1)", "(x3,x2)"] and b3 == expect3 and "((x3,x2),x1)" not in b3
    el = time.perf_counter() - t
    assert record(1, "hall basis (3,2) and (3,3)", ok and el < 1, el)


def test_criterion_02_witt_cross_check():
    t = time.perf_counter()
    bad = [
        (n, k)
        for n in range(1, 5)
        for k in range(1, 7)
        if not len(hall_basis(n, k)) == witt_rank(n, k) == lyndon_count(n, k)
    ]
    el = time.perf_counter() - t
    assert record(2, "|hall| = witt = lyndon, n<=4, k<=6", not bad and el < 10, el, str(bad) if bad else "")


def test_criterion_03_magnus_consistency():
    t = time.perf_counter()
    bad = []
    count = 0
    for n in (1, 2, 3):
        for c in basic_commutators(n, 5):
            count += 1
            if lie_class(bc_to_word(c), c.weight) != bc_to_tensor(c):
                bad.append(str(c))
    el = time.perf_counter() - t
    assert record(3, f"lie_class of {count} basic commutators", not bad and el < 30, el, str(bad[:3]) if bad else "")


SUITE_RANGES = {
    "mccool": 5,
    "conj_formulas": 4,
    "in_presentation": 5,
    "upper_presentation": 5,
    "embedding_remark": 5,
}


def test_criterion_04_relation_suites():
    t = time.perf_counter()
    failing = {}
    for suite, top in SUITE_RANGES.items():
        for n in range(2, top + 1):
            rep = verify_relations(suite, n)
            if not rep.ok:
                failing[f"{suite} n={n}"] = f"{len(rep.failures)}/{rep.instances}"
    el = time.perf_counter() - t
    assert record(4, "relation suites", not failing and el < 30, el, json.dumps(failing) if failing else "")


def test_criterion_05_abelianization_rank():
    t = time.perf_counter()
    guard = SizeGuard(max_n=5, max_k=1)
    got = [gr_rank(GroupSpec("in", n), 1, guard=guard) for n in (2, 3, 4, 5)]
    el = time.perf_counter() - t
    assert record(5, f"gr_rank(I_n,1) = {got}", got == [2, 5, 9, 14] and el < 10, el)


def test_criterion_06_andreadakis_equality():
    t = time.perf_counter()
    bad = []
    for n in (2, 3, 4):
        for k in (1, 2, 3, 4):
            spec = GroupSpec("in", n)
            want = partial_inner_expected(n, k)
            a = gr_rank(spec, k, method="johnson")
            b = gr_rank(spec, k, method="derivation")
            if not a == b == want:
                bad.append((n, k, a, b, want))
    spot = [gr_rank(GroupSpec("in", n), k) for n, k in ((3, 2), (3, 3), (4, 2))]
    el = time.perf_counter() - t
    ok = not bad and spot == [4, 10, 10] and el < 300
    assert record(6, "gr_rank(I_n,k) = sum r_m(k), both methods", ok, el, str(bad) if bad else "")


def test_criterion_07_presented_lie_ring():
    t = time.perf_counter()
    bad = []
    for n in (2, 3, 4):
        pieces = presented_lie_ranks(in_lie_presentation(n), 4)
        for x in pieces:
            if x.rank != partial_inner_expected(n, x.degree) or any(d != 1 for d in x.divisors):
                bad.append((n, x.degree, x.rank))
    el = time.perf_counter() - t
    assert record(7, "presented I_n ranks, divisors all 1", not bad and el < 300, el, str(bad) if bad else "")


def test_criterion_08_mccool_ranks():
    t = time.perf_counter()
    bad = []
    guard = SizeGuard(max_n=4, max_k=5)
    for k in range(1, 6):
        r = gr_rank(GroupSpec("psigma", 2), k, guard=guard)
        if r != witt_rank(2, k):
            bad.append(("psigma2", k, r))
    for k in range(1, 5):
        r = gr_rank(GroupSpec("psigma", 3), k)
        if r != 2 * witt_rank(3, k):
            bad.append(("psigma3", k, r))
    r4 = gr_rank(GroupSpec("psigma", 4), 2)
    a4 = theorem_A4_basis_rank(4)
    if (r4, a4) != (18, 18):
        bad.append(("psigma4", r4, a4))
    el = time.perf_counter() - t
    assert record(8, "McCool group ranks", not bad and el < 300, el, str(bad) if bad else "")


def test_criterion_09_cohomology():
    t = time.perf_counter()
    problems = {}
    for family in ("in", "psigma+"):
        for n in range(2, 6):
            rep = poincare_check(family, n)
            if not rep.ok:
                problems[f"betti {family} n={n}"] = rep.to_json()
            listed = compare_listed(family, n)
            if not listed.ok:
                problems[f"listed {family} n={n}"] = f"{len(listed.missing)}/{listed.checked} outside span"
    el = time.perf_counter() - t
    ok = not problems and el < 30
    assert record(9, "Betti = product formula; listed relations in span", ok, el, json.dumps(problems) if problems else "")


def test_criterion_10_conjecture_probe():
    t = time.perf_counter()
    out, err = io.StringIO(), io.StringIO()
    code = run(["probe", "--group", "psigma", "--n", "4", "--k", "3"], out, err)
    el = time.perf_counter() - t
    data = json.loads(out.getvalue()) if code == 0 else {}
    ok = code == 0 and data.get("conjectured_value") == 60 and "computed_rank" in data
    detail = f"computed={data.get('computed_rank')} conjectured={data.get('conjectured_value')}"
    assert record(10, "probe psigma n=4 k=3 (report only)", ok, el, detail)
