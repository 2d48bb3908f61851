import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from transpoly.cli import main
from transpoly.report import SAFE_INT, Report, decode_value, encode_value, summarize_generators


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_report_golden_732_json(capsys):
    code, out, _ = run(capsys, "report", "--n", "7", "--i", "3", "--j", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert doc["type_value"] == 113 and doc["type_exact"] == 113
    assert doc["a_invariant"] == -1
    assert doc["numerator"] == [1, 1561, 24795, 57023, 25571, 1673, 1]
    assert doc["cone"]["ray_count"] == 16
    assert doc["canonical"]["count"] == 113


def test_report_golden_745_text(capsys):
    code, out, _ = run(capsys, "report", "--n", "7", "--i", "4", "--j", "5")
    assert code == 0
    assert "type: 540" in out and "a-invariant: -3" in out
    assert "numerator: 1, 351, 2835, 3297, 540" in out


def test_report_small_gorenstein(capsys):
    code, out, _ = run(capsys, "report", "--n", "3", "--i", "1", "--j", "1")
    assert code == 0
    assert "Gorenstein: yes" in out and "(1 + 6t + t^2)/(1-t)^3" in out


def test_report_flags_closed_form_gap(capsys):
    code, out, _ = run(capsys, "report", "--n", "5", "--i", "1", "--j", "1")
    assert code == 0
    assert "type: 2" in out and "type from the cone (exact): 3" in out


def test_report_verify_exit_codes(capsys):
    assert run(capsys, "report", "--n", "4", "--i", "1", "--j", "1", "--verify")[0] == 0
    code, _, err = run(capsys, "report", "--n", "5", "--i", "1", "--j", "1", "--verify", "--max-t", "1")
    assert code == 1 and "type[5,1,1]" in err


def test_usage_errors_exit_2(capsys, tmp_path):
    assert run(capsys, "report", "--n", "3", "--i", "2", "--j", "1")[0] == 2
    assert run(capsys, "report", "--n", "3")[0] == 2
    assert run(capsys, "report")[0] == 2
    assert run(capsys, "verify", "--max-n", "2")[0] == 2
    assert run(capsys, "verify", "--only", "nonsense")[0] == 2
    assert run(capsys, "rays", "--n", "4", "--i", "1", "--j", "1", "--shift", "4")[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("3\n1 2\n")
    assert run(capsys, "report", "--presentation", str(bad))[0] == 2
    assert run(capsys, "report", "--presentation", str(tmp_path / "missing.txt"))[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["bogus"])
    assert info.value.code == 2


def test_verify_small_grid_passes(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "4", "--max-t", "2")
    assert code == 0
    assert "oracle checks: 96/96 pass" in out


def test_verify_reports_first_failure(capsys):
    code, _, err = run(capsys, "verify", "--max-n", "5", "--min-n", "5", "--only", "type", "--max-t", "1")
    assert code == 1
    assert err.strip() == "verification failed: type[5,1,1]: brute force 3, formula 2"


def test_rays_and_canonical(capsys):
    code, out, _ = run(capsys, "rays", "--n", "3", "--i", "1", "--j", "1", "--shift", "1", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["cone"]["normals"][0]["coords"] == [2, -1, 2]
    code, out, _ = run(capsys, "canonical", "--n", "4", "--i", "1", "--j", "1", "--format", "json", "--verify")
    doc = json.loads(out)
    assert code == 0 and doc["canonical"]["generators"] == [[1, 1, 1, 1], [5, 1, 1, 1]]


def test_presentation_mode(capsys, tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("# a counterexample\n5\n1 2 3 4\n2 3 5\n1 5\n3\n1 4 5\n")
    code, out, _ = run(capsys, "report", "--presentation", str(f), "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["type_value"] == 20 and doc["a_invariant"] == -2
    assert doc["rows"][0]["status"] == "fails"
    code, out, _ = run(capsys, "canonical", "--presentation", str(f), "--full", "--format", "json")
    assert json.loads(out)["canonical"]["degrees"] == {"2": 19, "3": 1}


def test_sweep_deterministic_and_serialises_counterexamples(capsys, tmp_path):
    args = ["sweep", "--max-n", "4", "--random", "50", "--seed", "1", "--format", "json"]
    code, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert code == 0 and first == second
    doc = json.loads(first)
    random_rows = [r for r in doc["rows"] if "presentation" in r]
    assert len(random_rows) == 50
    assert all(r["status"] in {"holds", "fails", "skipped"} for r in doc["rows"])
    ce = tmp_path / "ce.json"
    code, _, _ = run(capsys, "sweep", "--max-n", "5", "--family-mode", "exact", "--counterexamples", str(ce))
    assert code == 0
    bad = json.loads(ce.read_text())
    assert [r["instance"] for r in bad] == ["family(5,1,1)/exact"]


def test_report_json_round_trip(capsys):
    _, out, _ = run(capsys, "report", "--n", "6", "--i", "2", "--j", "3", "--format", "json", "--verify", "--max-t", "1")
    rep = Report.from_json(out)
    assert rep.to_json() == out


@given(st.integers(min_value=-(2**80), max_value=2**80))
def test_big_integer_encoding_round_trips(value):
    doc = {"h": [value, 1], "k": {"x": value}}
    enc = encode_value(doc)
    if abs(value) > SAFE_INT:
        assert enc["h"][0] == str(value)
    else:
        assert enc["h"][0] == value
    assert decode_value(json.loads(json.dumps(enc))) == doc


def test_report_rejects_unknown_fields():
    with pytest.raises(ValueError):
        Report.from_dict({"command": "x", "surprise": 1})


def test_generator_summary_truncates():
    gens = [(k, 2000 - k) for k in range(1500)]
    s = summarize_generators(gens)
    assert s["truncated"] and s["count"] == 1500 and len(s["generators"]) == 20
    assert s["generators"][0] == [0, 2000]
    assert len(summarize_generators(gens, full=True)["generators"]) == 1500
