"""Command-line front end: ``freeaut <command> [options]``.

Every command prints JSON (or CSV with ``--format csv``).  Exit codes:
0 success, 1 verification failure or ``--expect`` mismatch, 2 invalid input,
3 size guard exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any, Sequence

from . import autgrp, cohom, hall, liealg
from .errors import InputError, NotInFiltrationError, SizeGuardError
from .limits import LIE_GUARD, RANK_GUARD, RELATION_GUARD, SizeGuard
from .series import lie_class
from .word import Endo

SCHEMA_VERSION = 1


class _Failed(Exception):
    pass


def _guard(args, base: SizeGuard) -> SizeGuard:
    return base.with_env().override(args.max_n, args.max_k)


def _spec(args) -> autgrp.GroupSpec:
    custom = ()
    if args.group == "custom":
        if not args.gens:
            raise InputError("--gens is required with --group custom")
        custom = tuple(g for g, _ in autgrp.GroupWord.parse(args.gens).factors)
    return autgrp.GroupSpec(args.group, args.n, custom)


def _element(args) -> Endo:
    if args.word is not None and args.images is not None:
        raise InputError("give either --word or --images, not both")
    if args.word is not None:
        return autgrp.evaluate(autgrp.GroupWord.parse(args.word), args.n)
    if args.images is not None:
        return Endo.from_strings([s.strip() for s in args.images.split(",")], args.n)
    raise InputError("one of --word or --images is required")


def _check_expect(args, value: int) -> None:
    if getattr(args, "expect", None) is not None and value != args.expect:
        raise _Failed(f"expected {args.expect}, got {value}")


def cmd_witt(args) -> dict:
    r = hall.witt_rank(args.n, args.k)
    _check_expect(args, r)
    return {"n": args.n, "k": args.k, "r": r}


def cmd_hall(args) -> dict:
    if args.sweep:
        return _hall_sweep(args)
    basis = hall.hall_basis(args.n, args.k)
    _check_expect(args, len(basis))
    return {"n": args.n, "k": args.k, "count": len(basis), "rows": [{"index": i + 1, "commutator": str(c)} for i, c in enumerate(basis)]}


def _hall_sweep(args) -> dict:
    """Counts against Witt and Lyndon, and Magnus classes against Hall tensors, for all n' <= n, w <= k."""
    rows = []
    for n in range(1, args.n + 1):
        by_weight: dict[int, list] = {}
        for c in hall.basic_commutators(n, args.k):
            by_weight.setdefault(c.weight, []).append(c)
        for k in range(1, args.k + 1):
            cs = by_weight.get(k, [])
            magnus_ok = all(lie_class(hall.bc_to_word(c), k) == hall.bc_to_tensor(c) for c in cs)
            w, ly = hall.witt_rank(n, k), hall.lyndon_count(n, k)
            rows.append({"n": n, "k": k, "hall": len(cs), "witt": w, "lyndon": ly, "magnus_ok": magnus_ok, "ok": len(cs) == w == ly and magnus_ok})
    out = {"sweep": "hall", "max_n": args.n, "max_k": args.k, "rows": rows}
    if not all(r["ok"] for r in rows):
        raise _Failed(out)
    return out


def cmd_verify(args) -> dict:
    guard = _guard(args, RELATION_GUARD)
    if args.suite == "all" or args.sweep:
        suites = list(autgrp.SUITES) if args.suite == "all" else [args.suite]
        sizes = range(2, args.n + 1) if args.sweep else [args.n]
        rows = []
        for suite in suites:
            for n in sizes:
                rep = autgrp.verify_relations(suite, n, guard=guard)
                rows.append({"suite": suite, "n": n, "instances": rep.instances, "failures": len(rep.failures), "ok": rep.ok})
        out = {"sweep": "verify", "rows": rows}
        if not all(r["ok"] for r in rows):
            raise _Failed(out)
        return out
    rep = autgrp.verify_relations(args.suite, args.n, guard=guard)
    out = rep.to_json()
    if not rep.ok:
        raise _Failed(out)
    return out


def cmd_member(args) -> dict:
    e = _element(args)
    return {"n": args.n, "k": args.k, "member": autgrp.andreadakis_member(e, args.k)}


def cmd_johnson(args) -> dict:
    e = _element(args)
    d = autgrp.johnson(e, args.k)
    rows = [
        {"generator": i + 1, "monomial": " ".join(f"X{a}" for a in m), "coeff": c}
        for i, v in enumerate(d.values)
        for m, c in sorted(v.items())
    ]
    return {"n": args.n, "k": args.k, "zero": d.is_zero(), "rows": rows}


def _ranks_by_method(spec, k, method, guard) -> tuple[int, dict]:
    methods = ("johnson", "derivation") if method == "both" else (method,)
    found = {m: autgrp.gr_rank(spec, k, method=m, guard=guard) for m in methods}
    if len(set(found.values())) != 1:
        raise _Failed(f"methods disagree: {found}")
    return next(iter(found.values())), found


def _gr_rank_sweep(args) -> dict:
    guard = _guard(args, RANK_GUARD)
    if args.group == "custom":
        raise InputError("--sweep is not available for --group custom")
    rows = []
    for n in range(2, args.n + 1):
        spec = autgrp.GroupSpec(args.group, n)
        for k in range(1, args.k + 1):
            methods = ("johnson", "derivation") if args.method == "both" else (args.method,)
            found = {m: autgrp.gr_rank(spec, k, method=m, guard=guard) for m in methods}
            want = autgrp.expected_rank(args.group, n, k)
            row = {"n": n, "k": k, **found, "expected": want}
            ok = len(set(found.values())) == 1 and (want is None or want in found.values())
            if args.group == "psigma" and k == 2:
                row["a4_basis_rank"] = autgrp.theorem_A4_basis_rank(n)
                ok = ok and row["a4_basis_rank"] == want
            row["ok"] = ok
            rows.append(row)
    out = {"sweep": "gr-rank", "group": args.group, "method": args.method, "rows": rows}
    if not all(r["ok"] for r in rows):
        raise _Failed(out)
    return out


def cmd_gr_rank(args) -> dict:
    if args.sweep:
        return _gr_rank_sweep(args)
    spec = _spec(args)
    r, found = _ranks_by_method(spec, args.k, args.method, _guard(args, RANK_GUARD))
    out = {"group": args.group, "n": args.n, "k": args.k, "method": args.method, "rank": r}
    if args.group == "in":
        out["expected_sum_witt"] = autgrp.partial_inner_expected(args.n, args.k)
    _check_expect(args, r)
    return out


def _presentation(group: str, n: int) -> liealg.LiePresentation:
    if group == "in":
        return liealg.in_lie_presentation(n)
    if group == "psigma+":
        return liealg.upper_lie_presentation(n)
    raise InputError("lie-ranks supports --group in or psigma+")


def cmd_lie_ranks(args) -> dict:
    guard = _guard(args, LIE_GUARD)
    if args.sweep:
        rows = []
        for n in range(2, args.n + 1):
            for x in liealg.presented_lie_ranks(_presentation(args.group, n), args.k, guard=guard):
                want = autgrp.expected_rank(args.group, n, x.degree)
                torsion = [d for d in x.divisors if d > 1]
                rows.append({"n": n, "degree": x.degree, "rank": x.rank, "expected": want, "torsion": torsion, "ok": x.rank == want and not torsion})
        out = {"sweep": "lie-ranks", "group": args.group, "rows": rows}
        if not all(r["ok"] for r in rows):
            raise _Failed(out)
        return out
    p = _presentation(args.group, args.n)
    pieces = liealg.presented_lie_ranks(p, args.k, guard=guard)
    rows = [{"degree": x.degree, "rank": x.rank, "divisors": list(x.divisors), "torsion": [d for d in x.divisors if d > 1]} for x in pieces]
    if pieces:
        _check_expect(args, pieces[-1].rank)
    return {"group": args.group, "n": args.n, "generators": p.num_generators, "rows": rows}


def cmd_betti(args) -> dict:
    data = cohom.presentation_data(args.group, args.n)
    ideal = cohom.build_ideal(data)
    if args.k is not None:
        b = cohom.betti(data.m, ideal, args.k)
        _check_expect(args, b)
        return {"group": args.group, "n": args.n, "k": args.k, "betti": b}
    seq = cohom.betti_sequence(data.m, ideal)
    return {
        "group": args.group,
        "n": args.n,
        "betti": seq,
        "ideal": [g.format(data.labels) for g in ideal],
    }


def cmd_poincare(args) -> dict:
    if args.table:
        return {"csv": cohom.betti_table_csv(args.n)}
    if args.sweep:
        rows = []
        for family in ("in", "psigma+"):
            for n in range(2, args.n + 1):
                rep = cohom.poincare_check(family, n)
                listed = cohom.compare_listed(family, n)
                rows.append({
                    "family": family,
                    "n": n,
                    "betti": rep.betti,
                    "expected": rep.expected,
                    "match": rep.ok,
                    "listed_checked": listed.checked,
                    "listed_missing": len(listed.missing),
                    "ok": rep.ok and listed.ok,
                })
        out = {"sweep": "poincare", "rows": rows}
        if not all(r["ok"] for r in rows):
            raise _Failed(out)
        return out
    rep = cohom.poincare_check(args.group, args.n)
    listed = cohom.compare_listed(args.group, args.n)
    out = rep.to_json()
    out["listed_relations"] = listed.to_json()
    if not rep.ok:
        raise _Failed(out)
    return out


def cmd_probe(args) -> dict:
    if args.group != "psigma":
        raise InputError("probe is defined for --group psigma")
    rep = autgrp.conjecture_probe(args.n, args.k, method=args.method, guard=_guard(args, RANK_GUARD))
    return rep.to_json()


def _emit(payload: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps({"schema_version": SCHEMA_VERSION, **payload}, sort_keys=False) + "\n")
        return
    if "csv" in payload:
        out.write(payload["csv"])
        return
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    rows = payload.get("rows")
    if isinstance(rows, list) and rows and isinstance(rows[0], dict):
        scalars = {k: v for k, v in payload.items() if not isinstance(v, (list, dict))}
        keys = list(dict.fromkeys(k for r in rows for k in r))
        w.writerow(list(scalars) + keys)
        for r in rows:
            w.writerow(list(scalars.values()) + [_cell(r.get(k, "")) for k in keys])
    else:
        w.writerow(list(payload))
        w.writerow([_cell(v) for v in payload.values()])
    out.write(buf.getvalue())


def _cell(v: Any) -> Any:
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="freeaut", description="Lower central series and Johnson images of IA_n subgroups.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--max-n", type=int, default=None, help="size guard on n (env MAX_N)")
    common.add_argument("--max-k", type=int, default=None, help="size guard on k (env MAX_K)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, expect=False):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        if expect:
            p.add_argument("--expect", type=int, default=None, help="exit 1 unless the result equals this value")
        return p

    p = add("witt", cmd_witt, "rank r_n(k) of the k-th free Lie piece", expect=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("hall", cmd_hall, "basic commutators of weight k", expect=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sweep", action="store_true", help="check counts and Magnus classes for all n' <= n, weights <= k")

    p = add("verify", cmd_verify, "check a relation suite")
    p.add_argument("--suite", required=True, choices=sorted({**autgrp.SUITES, **autgrp.EXTRA_SUITES}) + ["all"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sweep", action="store_true", help="run every n' from 2 to n")

    for name, func, text in (("member", cmd_member, "Andreadakis filtration membership"), ("johnson", cmd_johnson, "Johnson image tau_k")):
        p = add(name, func, text)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--word", default=None, help='group word, e.g. "nu(3,1)^-1 xi(2,3)"')
        p.add_argument("--images", default=None, help='comma-separated images, e.g. "x2^-1 x1 x2, x2"')

    p = add("gr-rank", cmd_gr_rank, "rank of the Johnson image of gr^k", expect=True)
    p.add_argument("--group", required=True, choices=autgrp.FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=("johnson", "derivation", "both"), default="johnson")
    p.add_argument("--gens", default=None, help="generator list for --group custom")
    p.add_argument("--sweep", action="store_true", help="all n' in 2..n and k' in 1..k against closed forms")

    p = add("lie-ranks", cmd_lie_ranks, "graded ranks of a presented Lie ring", expect=True)
    p.add_argument("--group", required=True, choices=("in", "psigma+"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sweep", action="store_true", help="all n' in 2..n against closed forms")

    p = add("betti", cmd_betti, "Betti numbers of E/J", expect=True)
    p.add_argument("--group", required=True, choices=("in", "psigma+"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)

    p = add("poincare", cmd_poincare, "Betti numbers against the product formula")
    p.add_argument("--group", choices=("in", "psigma+"), default="in")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--table", action="store_true", help="CSV table for both families and all n up to --n")
    p.add_argument("--sweep", action="store_true", help="both families, all n' in 2..n, with listed relations")

    p = add("probe", cmd_probe, "computed rank next to the conjectured value (n-1) r_n(k)")
    p.add_argument("--group", default="psigma")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=("johnson", "derivation"), default="johnson")
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload = args.func(args)
    except _Failed as exc:
        detail = exc.args[0]
        if isinstance(detail, dict):
            _emit(detail, args.format, out)
        else:
            err.write(f"verification failed: {detail}\n")
        return 1
    except SizeGuardError as exc:
        err.write(f"size guard: {exc}\n")
        return 3
    except (InputError, NotInFiltrationError, ValueError) as exc:
        err.write(f"invalid input: {exc}\n")
        return 2
    _emit(payload, args.format, out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
