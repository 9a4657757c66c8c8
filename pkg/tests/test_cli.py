import csv
import io
import json
import subprocess
import sys

import pytest

from hermsym.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_describe(capsys):
    code, out, _ = run(capsys, "describe", "rect:2,2")
    assert code == 0
    doc = json.loads(out)
    data = doc["data"]
    assert (data["rank"], data["dim"], data["structure_constant"]) == (2, 4, 4)
    assert len(data["polytope_vertices"]) == 3
    assert doc["meta"]["model"] == "rect:2,2" and doc["meta"]["convention"] is None
    code, out, _ = run(capsys, "describe", "rect:1,1")
    data = json.loads(out)["data"]
    assert (data["rank"], data["dim"], data["structure_constant"]) == (1, 1, 2)


def test_size_and_level_guards(capsys):
    code, out, err = run(capsys, "describe", "rect:9,9")
    assert code == 2 and "--force" in err and out == ""
    code, _, err = run(capsys, "decompose", "rect:2,2", "--k", "7")
    assert code == 2 and "k_max" in err
    code, _, _ = run(capsys, "decompose", "rect:2,2", "--k", "7", "--force")
    assert code == 0


def test_usage_errors(capsys):
    assert run(capsys, "describe", "bogus:1")[0] == 2
    assert run(capsys, "verify", "rect:1,1", "--suite", "nonsense")[0] == 2
    assert run(capsys, "explode", "rect:1,1")[0] == 2
    assert run(capsys, "decompose", "rect:1,1", "--k", "0")[0] == 2


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "rect:2,2", "--k", "1")
    data = json.loads(out)["data"]
    assert code == 0
    assert [r["dimension"] for r in data["rows"]] == [1, 4, 1]
    assert data["total"] == data["expected_total"] == 6 and data["ok"]
    code, out, _ = run(capsys, "decompose", "rect:2,2", "--k", "1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["m", "weight", "dimension"] and len(rows) == 4
    assert "\r" not in out


def test_polytope_csv(capsys):
    code, out, _ = run(capsys, "polytope", "rect:2,2", "--k", "1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and len(rows) == 4 and rows[0][0] == "vertex"


def test_okounkov(capsys):
    code, out, _ = run(capsys, "okounkov", "rect:1,1")
    doc = json.loads(out)
    assert code == 0
    assert doc["data"]["generators"] == [[1, [0]], [1, [1]]]
    assert doc["meta"]["convention"] == "vacuous"
    assert all(c["status"] == "pass" for c in doc["checks"])
    code, out, _ = run(capsys, "okounkov", "rect:2,2")
    assert json.loads(out)["meta"]["convention"] == "opposite"


def test_moment_eval(capsys):
    code, out, _ = run(capsys, "moment-eval", "rect:1,1", "--x", "1")
    data = json.loads(out)["data"]
    assert code == 0
    assert abs(complex(*data["operator"][0][0])) < 1e-12
    assert data["nu"] == pytest.approx([0.5])
    code, _, err = run(capsys, "moment-eval", "rect:2,2", "--x", "1,2")
    assert code == 2 and "expected 4" in err


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "rect:1,1")
    doc = json.loads(out)
    assert code == 0
    assert {s["suite"] for s in doc["data"]["suites"]} == {"jordan-identities", "peirce", "moment", "branching",
                                                             "okounkov"}
    assert doc["meta"]["convention"] == "vacuous"
    code, out, err = run(capsys, "verify", "rect:1,1", "--suite", "moment", "--tolerance", "0")
    assert code == 1 and "moment:" in err
    failed = [c for c in json.loads(out)["checks"] if c["status"] == "fail"]
    assert failed and all(c["name"].startswith("moment: ") for c in failed)


def test_comma_separated_suites(capsys):
    code, out, _ = run(capsys, "verify", "rect:2,2", "--suite", "branching,peirce", "--format", "table")
    assert code == 0
    assert out.splitlines()[0].split() == ["suite", "passed", "total"]
    assert "[fail]" not in out


def test_determinism(tmp_path):
    outputs = []
    for i in range(2):
        target = tmp_path / f"out{i}.json"
        subprocess.run([sys.executable, "-m", "hermsym", "moment-eval", "rect:2,2", "--seed", "9", "-o", str(target)],
                       check=True)
        outputs.append(target.read_bytes())
    assert outputs[0] == outputs[1]


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0 and out.startswith("hermsym ")
