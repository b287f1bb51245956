import json

import pytest

from rigidinv import lab
from rigidinv.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_invariants_record(capsys):
    code, out, _ = run(capsys, "invariants", "--pair", '{"theory":"B","n":2,"lambda1":[2,2,1],"lambda2":[]}')
    assert code == 0
    rec = json.loads(out)
    assert rec["symbol"] == {"top": [0, 0], "bottom": [2]}
    assert rec["fingerprint"] == {"alpha": [2], "beta": []}


def test_invariants_pretty_seo2(capsys):
    code, out, _ = run(capsys, "invariants", "--format", "pretty", "--pair", '{"theory":"B","n":6,"lambda1":[2,2,1],"lambda2":[3,2,2,1]}')
    assert code == 0
    assert "    mu_i |  4  4  4  0" in out
    assert "     tau | -1 -1 -1" in out
    assert "fingerprint: [();(2,2,2)]" in out


@pytest.mark.parametrize(
    "text",
    [
        '{"theory":"B","n":2,"lambda1":[1,2,2],"lambda2":[]}',
        '{"theory":"D","n":1,"lambda1":[1,1],"lambda2":[]}',
        "not json",
        '{"theory":"Q","n":1,"lambda1":[],"lambda2":[]}',
    ],
)
def test_invalid_pair_exit_2(capsys, text):
    code, _, err = run(capsys, "invariants", "--pair", text)
    assert code == 2
    assert "error" in err


def test_rigidity_diagnostic(capsys):
    _, _, err = run(capsys, "invariants", "--pair", '{"theory":"D","n":1,"lambda1":[1,1],"lambda2":[]}')
    assert "odd part 1 appears exactly twice" in err


def test_input_file(capsys, tmp_path):
    f = tmp_path / "pairs.jsonl"
    f.write_text('{"theory":"C","n":1,"lambda1":[1,1],"lambda2":[]}\n{"theory":"C","n":1,"lambda1":[],"lambda2":[1,1]}\n')
    code, out, _ = run(capsys, "invariants", "--input", str(f))
    assert code == 0 and len(out.splitlines()) == 2


@pytest.mark.parametrize("family", ["B", "C", "D"])
def test_verify_forward(capsys, family):
    code, out, err = run(capsys, "verify-forward", "--theory", family, "--max-rank", "6")
    assert code == 0
    assert "0 violations" in err
    assert all(json.loads(line)["uniform"] for line in out.splitlines())


def test_verify_forward_wrong_rule_fails(capsys):
    code, _, err = run(capsys, "verify-forward", "--theory", "B", "--max-rank", "4", "--sign-rule", "a")
    assert code == 1
    assert "violation" in err


def test_verify_converse_rank0(capsys):
    code, out, _ = run(capsys, "verify-converse", "--theory", "B", "--max-rank", "0")
    assert code == 0 and out == ""


def test_verify_converse_report(capsys):
    code, out, err = run(capsys, "verify-converse", "--theory", "B", "--max-rank", "4")
    assert code == 0
    assert json.loads(err)["classes"] == len(out.splitlines())


def test_duality_match(capsys):
    code, out, _ = run(capsys, "duality-match", "--rank", "1")
    rep = json.loads(out)
    assert code == 0
    assert rep["counts"] == {"B": 2, "C": 2}
    code, out, _ = run(capsys, "duality-match", "--rank", "5", "--include-d")
    rep = json.loads(out)
    assert rep["unmatched_B"] and rep["counts"]["B"] != rep["counts"]["C"]
    assert "matched_D_with_B" in rep


def test_duality_join_symmetric():
    rep = lab.duality_match(4)
    b_side = {m["symbol"] for m in rep["matched"]}
    c_keys = {m["symbol"] for m in rep["matched"]}
    assert b_side == c_keys
    for m in rep["matched"]:
        assert m["B"] and m["C"]


def test_enumerate_formats(capsys):
    code, out, _ = run(capsys, "enumerate", "--theory", "C", "--rank", "2", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("pair,") and len(lines) == 6


def test_config_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"theory": "D", "max_rank": 2}')
    _, out, _ = run(capsys, "enumerate", "--config", str(cfg))
    assert len(out.splitlines()) == 2
    _, out, _ = run(capsys, "enumerate", "--config", str(cfg), "--theory", "C")
    assert len(out.splitlines()) == 7
    bad = tmp_path / "bad.json"
    bad.write_text('{"colour": 1}')
    code, _, _ = run(capsys, "enumerate", "--config", str(bad))
    assert code == 2


def test_out_file(capsys, tmp_path):
    dest = tmp_path / "cat.jsonl"
    code, out, _ = run(capsys, "enumerate", "--theory", "B", "--max-rank", "2", "--out", str(dest))
    assert code == 0 and out == ""
    assert len(dest.read_text().splitlines()) == 8


def test_moves_report(capsys):
    code, out, _ = run(capsys, "moves", "--theory", "D", "--max-rank", "4", "--enable-teto")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and recs
    assert all(r["symbol_preserved"] for r in recs)


def test_selftest_pass(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and "FAIL" not in out


def test_selftest_bad_sign_rule(capsys):
    code, out, _ = run(capsys, "selftest", "--sign-rule", "a")
    assert code == 1
    assert "first failure: Seo2 mu table" in out


def test_selftest_bad_orientation(capsys):
    code, out, _ = run(capsys, "selftest", "--orientation", "rows")
    assert code == 1
    assert "first failure: structure clauses on B (2,2,1)" in out
