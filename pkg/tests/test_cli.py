import csv
import io
import json
import subprocess
import sys

import pytest

from haarspace.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_limit_prints_value(capsys):
    code, out, _ = call(capsys, "laws", "limit", "--cat", "nc2", "--legs", "4", "--t", "1")
    assert code == 0
    assert out.strip().splitlines()[-1] == "2"
    assert out.startswith("# ")


def test_singular_gram_exit(capsys):
    code, out, _ = call(capsys, "weingarten", "inv", "--cat", "p2", "--legs", "4", "--n", "1")
    assert code == 1
    assert json.loads(out)["error"] == "singular-gram"


def test_bad_rows_exit(capsys):
    code, _, err = call(capsys, "integrate", "moment", "--family", "o", "--L", "1", "--M", "2", "--N", "3",
                        "--word", "ww", "--rows", "3,1", "--cols", "1,1")
    assert code == 2
    assert json.loads(err)["error"] == "usage"


def test_usage_errors(capsys):
    assert call(capsys, "laws")[0] == 2
    assert call(capsys, "integrate", "chi", "--family", "zz", "--L", "1", "--M", "1", "--N", "1", "--K", "1")[0] == 2
    assert call(capsys, "integrate", "chi", "--family", "o", "--L", "2", "--M", "1", "--N", "1", "--K", "1")[0] == 2


def test_budget_exit(capsys):
    code, out, _ = call(capsys, "oracle", "exact", "--s", "2", "--L", "2", "--M", "3", "--N", "3", "--budget", "5")
    assert code == 1 and json.loads(out)["error"] == "budget"


def test_json_numbers_have_both_forms(capsys):
    code, out, _ = call(capsys, "weingarten", "inv", "--family", "o+", "--word", "wwww", "--n", "7",
                        "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["config"]["n"] == "7"
    assert doc["result"]["entries"][0][0] == {"exact": "1/48", "decimal": "0.0208333333333333"}
    assert doc["result"]["entries"][0][1]["exact"] == "-1/336"


def test_csv_gram(capsys):
    code, out, _ = call(capsys, "weingarten", "gram", "--family", "o+", "--word", "wwww", "--n", "7",
                        "--format", "csv")
    body = [line for line in out.splitlines() if not line.startswith("#")]
    rows = list(csv.DictReader(io.StringIO("\n".join(body))))
    assert [r["exact"] for r in rows] == ["49/1", "7/1", "7/1", "49/1"]


def test_table_columns(capsys):
    code, out, _ = call(capsys, "laws", "table", "--family", "hs+", "--s", "2", "--kappa", "1/2",
                        "--lambda", "1/2", "--mu", "1/2", "--ns", "4,8,16,32", "--max-order", "6",
                        "--format", "csv")
    assert code == 0
    body = [line for line in out.splitlines() if not line.startswith("#")]
    assert body[0] == "N,order,moment_exact,moment_decimal,limit_exact,gap_decimal"
    assert len(body) == 1 + 4 * 6
    assert "# kappa=1/2" in out


def test_deterministic(capsys):
    argv = ["oracle", "mc", "--family", "o", "--L", "2", "--M", "3", "--N", "4", "--count", "5000",
            "--seed", "42", "--format", "json"]
    a = call(capsys, *argv)[1]
    b = call(capsys, *argv)[1]
    assert a == b
    doc = json.loads(a)["result"]
    assert {"seed", "count", "mean", "stderr"} <= set(doc)
    assert doc["seed"] == 42 and doc["count"] == 5000


def test_out_file(capsys, tmp_path):
    target = tmp_path / "m.json"
    code, out, _ = call(capsys, "integrate", "moment", "--family", "h+", "--s", "2", "--L", "1", "--M", "2",
                        "--N", "3", "--word", "wwww", "--rows", "1,1,2,2", "--cols", "1,1,2,2",
                        "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert doc["config"]["family"] == "HsPlus(2)"
    assert doc["result"]["moment"]["exact"] == "0/1"


def test_other_commands(capsys):
    code, out, _ = call(capsys, "integrate", "chi", "--family", "o+", "--L", "2", "--M", "3", "--N", "4",
                        "--K", "2", "--order", "4")
    assert code == 0 and out.strip().splitlines()[-1] == "37/180"
    code, out, _ = call(capsys, "integrate", "relation-check", "--family", "o", "--L", "2", "--M", "3",
                        "--N", "4", "--word", "ww", "--pi", "[[1,2]]", "--sigma", "[[1,2]]", "--format", "json")
    assert json.loads(out)["result"]["holds"] is True
    code, out, _ = call(capsys, "oracle", "exact", "--s", "2", "--L", "1", "--M", "2", "--N", "2",
                        "--word", "ww", "--rows", "1,1", "--cols", "1,1")
    assert out.strip().splitlines()[-1] == "1/4"
    code, out, _ = call(capsys, "categories", "enumerate", "--cat", "nc2", "--word", "wbwb", "--format", "json")
    assert json.loads(out)["result"]["count"] == 2
    code, out, _ = call(capsys, "categories", "check", "--cat", "nceven-minus", "--max-legs", "6",
                        "--format", "json")
    res = json.loads(out)["result"]
    assert res["uniform"] and res["axioms"]
    code, out, _ = call(capsys, "oracle", "invariance", "--family", "u", "--L", "1", "--M", "2", "--N", "3",
                        "--word", "wb", "--count", "5000", "--seed", "1", "--format", "json")
    assert code == 0 and "agree_3se" in json.loads(out)["result"]


def test_version(capsys):
    code, out, _ = call(capsys, "--version")
    assert code == 0 and "format" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "haarspace", "laws", "limit", "--cat", "p2", "--legs", "4"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip().splitlines()[-1] == "3"
