import json
import os
import subprocess
import sys

import pytest

from bmw import gram
from bmw.combinatorics import parse_partition
from bmw.cli import main
from bmw.factored import FactoredValue


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dims_json(capsys):
    code, out, _ = run(capsys, "dims", "--n", "4", "--json")
    assert code == 0
    js = json.loads(out)
    assert len(js["cells"]) == 8 and js["sum_dim_squared"] == 105 == js["rank"]


def test_gram_factored_matches_closed_form(capsys):
    code, out, _ = run(capsys, "gram", "--n", "3", "--f", "1", "--lambda", "1", "--factored", "--json")
    assert code == 0
    rec = json.loads(out)
    assert rec["n"] == 3 and rec["f"] == 1 and rec["lambda"] == "1" and rec["dim"] == 3
    assert FactoredValue.from_json(rec) == gram.closed_form_one_row(3)


def test_gram_text_and_empty_partition(capsys):
    code, out, _ = run(capsys, "gram", "--n", "2", "--lambda", "", "--factored")
    assert code == 0
    assert "(r-q^-1) * (r+q) * (q^2-1)^-1" in out
    # --f defaults to n/2 when lambda is omitted
    code2, out2, _ = run(capsys, "gram", "--n", "2", "--f", "1", "--factored")
    assert code2 == 0 and out2 == out


def test_gram_all_with_jobs(capsys):
    code, out, _ = run(capsys, "gram-all", "--n", "4", "--json", "--no-cache", "--jobs", "2")
    assert code == 0
    recs = json.loads(out)
    assert len(recs) == 8
    for rec in recs:
        n, f = rec["n"], rec["f"]
        assert FactoredValue.from_json(rec) == gram.gram_det_recursive(n, f, parse_partition(rec["lambda"])).value


def test_determinism(capsys):
    a = run(capsys, "gram-all", "--n", "4", "--factored", "--no-cache")
    b = run(capsys, "gram-all", "--n", "4", "--factored", "--no-cache")
    assert a == b


def test_cache_roundtrip_and_verification(capsys, tmp_path):
    cache = tmp_path / "cache"
    first = run(capsys, "gram", "--n", "4", "--f", "1", "--lambda", "2", "--factored")
    files = sorted(p.name for p in cache.iterdir())
    assert "det-n4.json" in files
    data = json.loads((cache / "det-n4.json").read_text())
    assert data["n"] == 4 and "toolVersion" in data and "1|2" in data["records"]
    again = run(capsys, "gram", "--n", "4", "--f", "1", "--lambda", "2", "--factored")
    assert again == first
    code, _, _ = run(capsys, "gram", "--n", "4", "--f", "1", "--lambda", "2", "--verify-cache")
    assert code == 0
    data["records"]["1|2"]["unit"]["coeff"] = "-1"
    (cache / "det-n4.json").write_text(json.dumps(data))
    code, out, _ = run(capsys, "gram", "--n", "4", "--f", "1", "--lambda", "2", "--verify-cache")
    assert code == 3 and "mismatch" in out


def test_stale_cache_is_ignored(capsys, tmp_path):
    cache = tmp_path / "cache"
    cache.mkdir()
    bogus = {"toolVersion": "0.0.0-old", "n": 2,
             "records": {"1|": {"unit": {"coeff": "5", "e_q": 0, "e_r": 0}, "factors": []}}}
    (cache / "det-n2.json").write_text(json.dumps(bogus))
    code, out, _ = run(capsys, "gram", "--n", "2", "--f", "1", "--json")
    assert code == 0
    assert json.loads(out)["unit"]["coeff"] == "1"


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "--n", "3", "--f", "1", "--lambda", "1", "--r=+q^-1")
    assert code == 0 and "(q^4+1)" in out
    code, out, _ = run(capsys, "eval", "--n", "3", "--f", "1", "--lambda", "1", "--r=+q^-1", "--q", "2")
    assert code == 0 and out.strip().endswith("17")
    code, out, _ = run(capsys, "eval", "--n", "2", "--f", "1", "--r", "numeric:2,3", "--json")
    assert code == 0 and json.loads(out)["value"] == "25/9"
    code, out, _ = run(capsys, "eval", "--n", "2", "--f", "1", "--r", "numeric:2,3", "--char", "7")
    assert code == 0 and out.strip() == str(25 * pow(9, -1, 7) % 7)


def test_eval_pole_is_a_computation_error(capsys):
    # det G_{1,()} has (q^2-1) in the denominator; q0 = -1 is rejected up front
    code, _, err = run(capsys, "eval", "--n", "2", "--f", "1", "--r", "numeric:-1,3")
    assert code == 2 and err


def test_semisimple(capsys):
    code, out, _ = run(capsys, "semisimple", "--n", "4", "--r=-q", "--json")
    assert code == 0
    js = json.loads(out)
    assert js["semisimple"] is False and js["clause"] == "b1" and js["witness"]
    code, out, _ = run(capsys, "semisimple", "--n", "3", "--r", "generic", "--qorder", "inf")
    assert code == 0 and out.startswith("semisimple")
    code, out, _ = run(capsys, "semisimple", "--n", "5", "--r=-q", "--char", "2", "--json")
    assert json.loads(out)["clause"] == "b4"


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", "--n", "3", "--json")
    assert code == 0
    js = json.loads(out)
    assert js["passed"] and len(js["cells"]) == 4
    assert all(rel["passed"] for c in js["cells"] for rel in c["relations"])
    assert all("seconds" in rel for c in js["cells"] for rel in c["relations"])


def test_certify_single_cell_parallel(capsys):
    code, out, _ = run(capsys, "certify", "--n", "4", "--jobs", "2")
    assert code == 0 and out.count("pass") == 8


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--max-n", "5", "--json")
    assert code == 0
    js = json.loads(out)
    assert js["passed"] and [r["n"] for r in js["rows"]] == [2, 3, 4, 5]


@pytest.mark.parametrize("argv", [
    ["dims"],
    ["dims", "--bogus"],
    ["nosuch"],
    ["gram", "--n", "3", "--f", "1", "--lambda", "2"],
    ["gram", "--n", "3", "--lambda", "1,2"],
    ["semisimple", "--n", "3", "--r", "banana"],
    ["semisimple", "--n", "3", "--char", "4"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err


def test_console_script(tmp_path):
    env = dict(os.environ, BMW_CACHE_DIR=str(tmp_path))
    proc = subprocess.run([sys.executable, "-m", "bmw.cli", "dims", "--n", "3"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0
    assert "sum of dim^2 = 15" in proc.stdout
