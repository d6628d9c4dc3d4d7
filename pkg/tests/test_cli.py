import json
import subprocess
import sys

import pytest

from p1codes import artifacts, cli
from p1codes.config import RunConfig
from p1codes.gfpoly import field_of_order
from p1codes.projline import Divisor, P1Point


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


@pytest.fixture
def rs62(tmp_path, capsys):
    path = tmp_path / "rs.json"
    assert cli.main(["construct", "--example", "rs62", "-o", str(path)]) == 0
    capsys.readouterr()
    return path


def test_orbits_ok_and_insufficient(capsys):
    code, doc = run(["orbits", "--family", "a5", "--q", "61"], capsys)
    assert code == 0
    r = doc["result"]
    assert sorted(o["size"] for o in r["special_orbits"]) == [12, 20, 30]
    assert r["ramification_profile"] == [5, 3, 2] and r["row_match"]
    code, doc = run(["orbits", "--family", "a5", "--q", "41"], capsys)
    assert code == 2 and not doc["result"]["sufficient"]


def test_orbits_psl_uses_quadratic_field(capsys):
    code, doc = run(["orbits", "--family", "psl2", "--t", "1", "--q", "7"], capsys)
    assert code == 0
    assert doc["result"]["analysis_q"] == 49
    assert doc["result"]["ramification_profile"] == [21, 4]


def test_usage_errors(capsys):
    code, doc = run(["orbits", "--family", "cyclic", "--q", "7", "--seed", "4"], capsys)
    assert code == 2 and "error" in doc["result"] and doc["config"]["seed"] == 4
    assert run(["orbits", "--family", "cyclic", "--delta", "3", "--q", "12"], capsys)[0] == 2
    assert run(["orbits", "--family", "cyclic", "--delta", "3", "--q", "7", "--p", "5"], capsys)[0] == 2
    with pytest.raises(SystemExit):
        cli.main(["orbits", "--q", "7"])


def test_construct_analyze_autos_roundtrip(rs62, capsys):
    code, doc = run(["analyze", str(rs62)], capsys)
    r = doc["result"]
    assert code == 0 and (r["n"], r["k"]) == (6, 2)
    assert r["source_consistent"]
    code, doc = run(["autos", str(rs62)], capsys)
    r = doc["result"]
    assert code == 0 and r["elements_preserving"] == r["elements_total"] == 6
    assert r["lift_consistency"]["hypothesis_met"] in (True, False)


def test_corrupted_matrix_gives_witness(tmp_path, capsys):
    path = tmp_path / "c.json"
    assert cli.main(["construct", "--q", "7", "--D", "2*inf", "--E", "1+2+3+4+5+6", "-o", str(path)]) == 0
    doc = json.loads(path.read_text())
    G = doc["result"]["generator"]
    for row in G:
        row[2] = row[4]
    del doc["result"]["D"], doc["result"]["E"]  # plain matrix, no source divisors
    path.write_text(json.dumps(doc))
    capsys.readouterr()
    code, out = run(["analyze", str(path), "--mds", "exact"], capsys)
    mds = out["result"]["mds"]
    assert code == 1 and mds["verdict"] is False and {3, 5} <= set(mds["witness_columns"])


def test_rerun_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert cli.main(["construct", "--example", "dihedral17", "-o", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    for p in (a, b):
        cli.main(["analyze", str(a), "--mds", "sampled", "--trials", "200", "--seed", "9",
                  "-o", str(p.with_suffix(".an"))])
    assert a.with_suffix(".an").read_bytes() == b.with_suffix(".an").read_bytes()


def test_env_overrides(monkeypatch, capsys):
    monkeypatch.setenv("P1CODES_SEED", "77")
    code, doc = run(["search-field", "--family", "dihedral", "--delta", "4", "--qmax", "30"], capsys)
    assert doc["config"]["seed"] == 77
    code, doc = run(["search-field", "--family", "dihedral", "--delta", "4", "--qmax", "30",
                     "--seed", "5"], capsys)
    assert doc["config"]["seed"] == 5 and doc["result"]["q"] == 17


def test_config_validation(monkeypatch):
    with pytest.raises(ValueError):
        RunConfig(seed=-1)
    with pytest.raises(ValueError):
        RunConfig(enumeration_budget=0)
    monkeypatch.setenv("P1CODES_SAMPLE_TRIALS", "12")
    assert RunConfig.from_env().sample_trials == 12


def test_rep_command(capsys):
    code, doc = run(["rep", "--q", "7", "--family", "cyclic", "--delta", "3", "--D", "1*0+1*inf"], capsys)
    r = doc["result"]
    assert code == 0 and r["dimension"] == 3 and len(r["matrices"]) == 3
    assert r["checks"]["homomorphism"] and r["checks"]["triangular"]
    code, doc = run(["rep", "--q", "7", "--family", "cyclic", "--delta", "3", "--D=-1*0+2*inf"], capsys)
    assert code == 0 and doc["result"]["checks"]["submodule"]["stable"]
    code, _ = run(["rep", "--q", "7", "--family", "cyclic", "--delta", "3", "--D", "1*1"], capsys)
    assert code == 2


def test_atomic_write_leaves_no_temp(tmp_path):
    target = tmp_path / "out.json"
    artifacts.write_atomic(str(target), "x")
    artifacts.write_atomic(str(target), "y")
    assert target.read_text() == "y"
    assert [p.name for p in tmp_path.iterdir()] == ["out.json"]


def test_parsers():
    F = field_of_order(9)
    assert artifacts.parse_element(F, "1:2") == F.from_coeffs([1, 2]).code
    D = artifacts.parse_divisor(F, "2*inf+1*0-0:1")
    assert D == Divisor({P1Point(F, None): 2, P1Point(F, 0): 1, P1Point(F, 3): -1})
    assert artifacts.parse_divisor(F, "0-3").is_zero()  # bare integers are reduced mod p
    assert artifacts.parse_moebius(F, "0,1,1,0")(P1Point(F, 0)) == P1Point(F, None)


def test_module_entry_point(rs62):
    out = subprocess.run([sys.executable, "-m", "p1codes.cli", "analyze", str(rs62)],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["result"]["k"] == 2
