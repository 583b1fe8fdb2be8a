import json

from apnkit import from_text, gold
from apnkit.cli import main

from conftest import pz

TABLE2_CSV = """m,count
2,1
4,2
6,2
8,6
10,6
12,8
14,12
16,20
18,15
20,24
22,30
24,28
26,42
28,48
30,32
32,72
34,72
"""


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_pott_zhou_roundtrip(tmp_path, capsys, f4):
    out = tmp_path / "f10.tbl"
    code, _, _ = run(capsys, "construct", "--family", "pott-zhou", "--m", "4", "--k", "1", "--s", "0", "--out", str(out))
    assert code == 0
    f = from_text(out.read_text())
    assert f.n == 8 and len(f.table) == 256
    assert f == pz(f4, 1, 0)


def test_construct_gold_stdout(capsys, f5):
    code, text, _ = run(capsys, "construct", "--family", "gold", "--m", "5", "--k", "1")
    assert code == 0
    f = from_text(text)
    assert f.n == 5 and len(f.table) == 32
    assert f == gold(f5, 1)


def test_construct_rejects_odd_s(capsys):
    code, _, err = run(capsys, "construct", "--m", "4", "--k", "1", "--s", "1")
    assert code == 2
    assert "s must be even" in err


def test_construct_unsafe_bypass(capsys):
    code, text, _ = run(capsys, "construct", "--m", "4", "--k", "1", "--s", "1", "--unsafe-skip-validation")
    assert code == 0
    assert not from_text(text).is_apn()


def test_check_reports(tmp_path, capsys):
    out = tmp_path / "g.tbl"
    run(capsys, "construct", "--family", "gold", "--m", "4", "--k", "1", "--out", str(out))
    code, text, _ = run(capsys, "check", str(out), "--apn", "--degree", "--spectrum")
    assert code == 0
    doc = json.loads(text)
    assert doc == {
        "n": 4,
        "is_apn": True,
        "algebraic_degree": 2,
        "differential_spectrum": {"0": 120, "2": 120},
    }


def test_check_malformed_exit_3(tmp_path, capsys):
    bad = tmp_path / "bad.tbl"
    bad.write_text("nonsense\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 3
    assert "format" in err


def test_check_missing_file_exit_3(capsys):
    code, _, _ = run(capsys, "check", "/nonexistent/file.tbl")
    assert code == 3


def test_invariants_m2(tmp_path, capsys):
    out = tmp_path / "pz2.tbl"
    run(capsys, "construct", "--m", "2", "--k", "1", "--s", "0", "--out", str(out))
    code, text, _ = run(capsys, "invariants", str(out), "--gamma-rank", "--aut")
    assert code == 0
    doc = json.loads(text)
    assert doc == {
        "gamma_rank": 100,
        "aut_l_order": 360,
        "aut_ea_order": 5760,
        "aut_order": 5760,
        "is_apn": True,
        "algebraic_degree": 2,
    }


def test_invariants_gamma_rank_guard(tmp_path, capsys):
    out = tmp_path / "big.tbl"
    run(capsys, "construct", "--m", "10", "--k", "1", "--s", "0", "--out", str(out))
    code, _, err = run(capsys, "invariants", str(out), "--gamma-rank")
    assert code == 2
    assert "n <= 16" in err or "MiB" in err


def test_catalog_counts_golden(capsys):
    code, text, _ = run(capsys, "catalog", "--m-max", "34")
    assert code == 0
    assert text == TABLE2_CSV


def test_catalog_deterministic(capsys):
    _, first, _ = run(capsys, "catalog", "--m-max", "34")
    _, second, _ = run(capsys, "catalog", "--m-max", "34")
    assert first == second


def test_catalog_figure_data(capsys):
    code, text, _ = run(capsys, "catalog", "--m-max", "16", "--figure-data")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "m,count,lower_bound,upper_bound"
    last = lines[-1].split(",")
    assert last[0] == "16" and last[1] == "20"
    assert float(last[3]) == 20.0  # upper bound sharp at powers of two
    assert not text.endswith(",\n")


def test_catalog_rejects_odd(capsys):
    code, _, _ = run(capsys, "catalog", "--m-max", "3")
    assert code == 2


def test_catalog_with_invariants(capsys):
    code, text, _ = run(capsys, "catalog", "--m-max", "4", "--with-invariants")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "m,k,s,alpha,n,is_apn,algebraic_degree,gamma_rank,aut_l_order"
    assert lines[1] == "2,1,0,2,4,True,2,100,360"
    rows = {tuple(l.split(",")[:3]) for l in lines[1:]}
    assert ("4", "1", "0") in rows and ("4", "1", "2") in rows
    code, _, _ = run(capsys, "catalog", "--m-max", "8", "--with-invariants")
    assert code == 2  # guarded: full tables beyond m=6 refused


def test_witness_negate_k(capsys):
    code, text, _ = run(capsys, "witness", "--m", "6", "--k", "1", "--s", "2", "--negate-k")
    assert code == 0
    doc = json.loads(text)
    assert doc["verified"] is True
    assert doc["target"] == {"k": 5, "s": 2, "alpha": "2"}
    assert doc["variant"] == "bivariate"


def test_witness_to_alpha(capsys):
    code, text, _ = run(capsys, "witness", "--m", "4", "--k", "1", "--s", "0", "--to-alpha", "4")
    assert code == 0
    doc = json.loads(text)
    assert doc["verified"] is True and doc["target"]["alpha"] == "4"


def test_witness_negate_both(capsys):
    code, text, _ = run(capsys, "witness", "--m", "6", "--k", "1", "--s", "2", "--negate-both")
    assert code == 0
    assert json.loads(text)["target"] == {"k": 5, "s": 4, "alpha": "2"}


def test_witness_rejects_cube_alpha(capsys):
    code, _, err = run(capsys, "witness", "--m", "4", "--k", "1", "--s", "0", "--alpha", "8", "--to-alpha", "4")
    assert code == 2  # gamma^3 = 0x8 is a cube in GF(16)


def test_gold_aut_m4(capsys):
    code, text, _ = run(capsys, "gold-aut", "--m", "4", "--k", "1")
    assert code == 0
    doc = json.loads(text)
    assert doc["monomial_count"] == 60
    assert doc["binomial_count"] == 300
    assert doc["aut_l_order"] == 360
    assert doc["case2_candidates"] == 900
    assert doc["case2_permutations"] == 0
    assert doc["search_aut_l_order"] == 360


def test_gold_aut_m5(capsys):
    code, text, _ = run(capsys, "gold-aut", "--m", "5", "--k", "1")
    assert code == 0
    doc = json.loads(text)
    assert doc["monomial_count"] == 155
    assert doc["search_aut_l_order"] == 155
    assert "binomial_count" not in doc


def test_gold_aut_rejects_bad_k(capsys):
    code, _, _ = run(capsys, "gold-aut", "--m", "6", "--k", "2")
    assert code == 2


def test_gold_aut_enumerate(capsys):
    code, text, _ = run(capsys, "gold-aut", "--m", "4", "--k", "1", "--enumerate")
    assert code == 0
    doc = json.loads(text)
    assert len(doc["witnesses"]) == 360
    assert doc["witnesses"][0]["format"] == "ea-witness/1"


def test_invariants_timeout_partial_report(tmp_path, capsys):
    out = tmp_path / "f10.tbl"
    run(capsys, "construct", "--m", "4", "--k", "1", "--s", "0", "--out", str(out))
    code, text, err = run(capsys, "invariants", str(out), "--aut", "--timeout", "0.01")
    assert code == 4
    assert "timeout" in err
    doc = json.loads(text)
    # the cheap fields are filled, the timed-out searches are explicit nulls
    assert doc["is_apn"] is True and doc["algebraic_degree"] == 2
    assert doc["aut_l_order"] is None and doc["aut_order"] is None
