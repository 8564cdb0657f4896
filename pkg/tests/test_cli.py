import io
import json

import pytest

from freeaut.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def payload(*argv):
    code, out, _ = call(*argv)
    assert code == 0
    data = json.loads(out)
    assert data["schema_version"] == 1
    return data


def test_witt():
    assert payload("witt", "--n", "3", "--k", "4")["r"] == 18


def test_verify_mccool():
    data = payload("verify", "--suite", "mccool", "--n", "4")
    assert data["instances"] > 0 and data["failures"] == []


def test_gr_rank_expect():
    assert call("gr-rank", "--group", "in", "--n", "3", "--k", "2", "--expect", "4")[0] == 0
    assert call("gr-rank", "--group", "in", "--n", "3", "--k", "2", "--expect", "5")[0] == 1


def test_verification_failure_exit_code():
    code, out, _ = call("verify", "--suite", "upper_presentation", "--n", "3")
    assert code == 1 and json.loads(out)["failures"]


def test_invalid_input_exit_code():
    assert call("witt", "--n", "3")[0] == 2
    assert call("johnson", "--n", "2", "--k", "2", "--word", "xi(1,2)")[0] == 2
    assert call("member", "--n", "2", "--k", "1", "--images", "y1, x2")[0] == 2
    assert call("gr-rank", "--group", "custom", "--n", "3", "--k", "1")[0] == 2


def test_size_guard_exit_code(monkeypatch):
    assert call("gr-rank", "--group", "in", "--n", "5", "--k", "1")[0] == 3
    assert call("gr-rank", "--group", "in", "--n", "5", "--k", "1", "--max-n", "5", "--expect", "14")[0] == 0
    monkeypatch.setenv("MAX_N", "5")
    assert call("gr-rank", "--group", "in", "--n", "5", "--k", "1", "--expect", "14")[0] == 0


def test_member_and_johnson():
    assert payload("member", "--n", "2", "--k", "2", "--word", "xi(1,2)")["member"] is False
    assert payload("member", "--n", "2", "--k", "1", "--images", "x2^-1 x1 x2, x2")["member"] is True
    rows = payload("johnson", "--n", "2", "--k", "1", "--word", "xi(1,2)")["rows"]
    assert {(r["generator"], r["monomial"], r["coeff"]) for r in rows} == {(1, "X1 X2", 1), (1, "X2 X1", -1)}


def test_hall_csv():
    code, out, _ = call("hall", "--n", "3", "--k", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,k,count,index,commutator"
    assert lines[1:] == ["3,2,3,1,\"(x2,x1)\"", "3,2,3,2,\"(x3,x1)\"", "3,2,3,3,\"(x3,x2)\""]


def test_lie_ranks_betti_poincare():
    rows = payload("lie-ranks", "--group", "in", "--n", "3", "--k", "3")["rows"]
    assert [r["rank"] for r in rows] == [5, 4, 10]
    assert payload("betti", "--group", "in", "--n", "3")["betti"] == [1, 5, 6]
    assert call("betti", "--group", "in", "--n", "3", "--k", "2", "--expect", "6")[0] == 0
    data = payload("poincare", "--group", "psigma+", "--n", "4")
    assert data["match"] and data["listed_relations"]["missing"] == []
    code, out, _ = call("poincare", "--n", "3", "--table", "--format", "csv")
    assert code == 0 and out.startswith("family,n,k,betti,expected")


def test_probe():
    data = payload("probe", "--group", "psigma", "--n", "3", "--k", "2")
    assert data["conjectured_value"] == 6 and data["computed_rank"] == 6
    assert call("probe", "--group", "in", "--n", "3", "--k", "2")[0] == 2


@pytest.mark.parametrize("argv", [["witt", "--n", "4", "--k", "5"], ["betti", "--group", "psigma+", "--n", "4"]])
def test_deterministic(argv):
    assert call(*argv) == call(*argv)


def test_sweeps():
    rows = payload("hall", "--n", "3", "--k", "5", "--sweep")["rows"]
    assert len(rows) == 15 and all(r["ok"] for r in rows)
    rows = payload("gr-rank", "--group", "in", "--n", "3", "--k", "3", "--sweep", "--method", "both")["rows"]
    assert [r["johnson"] for r in rows if r["n"] == 3] == [5, 4, 10]
    rows = payload("gr-rank", "--group", "psigma", "--n", "3", "--k", "2", "--sweep")["rows"]
    assert rows[-1]["a4_basis_rank"] == 6
    assert payload("lie-ranks", "--group", "psigma+", "--n", "4", "--k", "3", "--sweep")["rows"][-1]["ok"]


def test_sweeps_report_known_reds():
    code, out, _ = call("verify", "--suite", "all", "--n", "3", "--sweep")
    bad = [r for r in json.loads(out)["rows"] if not r["ok"]]
    assert code == 1 and [(r["suite"], r["n"]) for r in bad] == [("upper_presentation", 3)]
    code, out, _ = call("poincare", "--n", "3", "--sweep")
    bad = [r for r in json.loads(out)["rows"] if not r["ok"]]
    assert code == 1 and [(r["family"], r["n"]) for r in bad] == [("in", 3)]
    assert all(r["match"] for r in json.loads(out)["rows"])


def test_methods_both():
    data = payload("gr-rank", "--group", "psigma", "--n", "3", "--k", "3", "--method", "both")
    assert data["rank"] == 16
