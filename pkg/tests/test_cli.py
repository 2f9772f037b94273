import csv
import io
import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from twistgraph.cli import main
from twistgraph.poly3 import Polynomial3

DATA = Path(__file__).parent / "data" / "v1"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_partition_k1_n4_text(capsys):
    code, out, _ = run(capsys, "partition", "--k", "1", "--n", "4")
    assert code == 0
    expected = Polynomial3.parse_text("r1^4 + rm1^4 + r0^4 + 4 r0^2 r1 rm1 + 2 r1^2 rm1^2")
    assert Polynomial3.parse_text(out) == expected


def test_partition_k1_n3_json(capsys):
    code, out, _ = run(capsys, "partition", "--k", "1", "--n", "3", "--format", "json", "--route", "all")
    obj = json.loads(out)
    assert code == 0 and obj["schema"] == "twistgraph/1" and obj["agree"]
    assert Polynomial3.from_json_obj(obj["polynomial"]) == Polynomial3.from_json((DATA / "partition_k1_n3.json").read_text())
    assert len(obj["polynomial"]["terms"]) == 4


def test_partition_k2_n3(capsys):
    code, out, _ = run(capsys, "partition", "--k", "2", "--n", "3", "--route", "graph-raw")
    golden = Polynomial3.from_json((DATA / "partition_k2_n3.json").read_text())
    assert code == 0
    assert Polynomial3.parse_text(out) * 8 == golden
    code, out, _ = run(capsys, "partition", "--k", "2", "--n", "3", "--unnormalized")
    assert Polynomial3.parse_text(out) == golden


def test_partition_csv(capsys):
    code, out, _ = run(capsys, "partition", "--k", "1", "--n", "3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["e1", "e0", "em1", "c"]
    assert ["1", "1", "1", "3"] in rows


def test_partition_guard_exit_code(capsys):
    code, _, err = run(capsys, "partition", "--k", "3", "--n", "4", "--route", "graph-raw")
    assert code == 2 and "error" in err


def test_negativity_all_routes(capsys):
    code, out, _ = run(capsys, "negativity", "--k", "1", "--n", "3", "--r", "1/3,1/3,1/3", "--route", "all", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["agree"]
    assert set(obj["routes"]) == {"graph-raw", "graph-fast", "closed", "direct-sum", "density", "wick"}
    for name, v in obj["routes"].items():
        if name != "density":
            assert v["exp_En"] == "2/9"
        assert v["En"] == pytest.approx(math.log(2 / 9))


def test_negativity_single_copy(capsys):
    code, out, _ = run(capsys, "negativity", "--k", "2", "--n", "1", "--r", "1/5,3/10,1/2")
    assert code == 0 and "exp_En=1 " in out


def test_negativity_float_warns(capsys):
    code, out, err = run(capsys, "negativity", "--k", "2", "--n", "1", "--r", "0.2,0.3,0.5")
    assert code == 0 and "warning" in err


def test_negativity_continuation(capsys):
    code, out, _ = run(capsys, "negativity", "--k", "1", "--n", "0.5x2", "--r", "1/2,0,1/2", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["agree"]
    for v in obj["routes"].values():
        assert v["En"] == pytest.approx(math.log(2), abs=1e-12)


def test_negativity_bad_ratios(capsys):
    code, _, err = run(capsys, "negativity", "--k", "1", "--n", "2", "--r", "1/2,1/2,1/2")
    assert code == 1 and "error" in err


def test_negativity_guard(capsys):
    code, _, _ = run(capsys, "negativity", "--k", "3", "--n", "3", "--r", "1/3,1/3,1/3", "--route", "wick")
    assert code == 2


def test_renyi(capsys):
    code, out, _ = run(capsys, "renyi", "--k", "1", "--n", "2", "--r1", "1/2", "--format", "json")
    obj = json.loads(out)
    assert code == 0
    assert obj["routes"]["closed"] == {"exp_Sn": "1/2", "Sn": pytest.approx(math.log(2))}
    code, out, _ = run(capsys, "renyi", "--k", "3", "--n", "2", "--r1", "0")
    assert code == 0 and "Sn=0" in out
    code, out, _ = run(capsys, "renyi", "--k", "2", "--n", "3", "--r1", "1/2", "--route", "all")
    assert code == 0 and out.count("exp_Sn=5/32") == 3 and "verdict: OK" in out


def test_curve_sweep(capsys):
    code, out, _ = run(capsys, "curve", "--k", "1", "--n", "2", "--r1", "0:1:11", "--check")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert out.splitlines()[0] == "r1,r0,rm1,exp_En,En"
    assert len(rows) == 11
    assert float(rows[0]["En"]) == 0 and float(rows[-1]["En"]) == 0
    assert [float(r["r1"]) for r in rows] == pytest.approx([i / 10 for i in range(11)])


def test_curve_continuation_max(capsys):
    code, out, _ = run(capsys, "curve", "--k", "1", "--n", "0.5x2", "--r1", "0:1:21", "--rm1-share", "1")
    rows = list(csv.DictReader(io.StringIO(out)))
    best = max(rows, key=lambda r: float(r["En"]))
    assert float(best["r1"]) == 0.5
    assert float(best["En"]) == pytest.approx(math.log(2), rel=1e-14)


def test_curve_grid_and_renyi(capsys):
    code, out, _ = run(capsys, "curve", "--k", "2", "--n", "3", "--grid", "5", "--check")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 15
    code, out, _ = run(capsys, "curve", "--k", "2", "--n", "2", "--r1", "0:1:3", "--renyi")
    assert out.splitlines()[0] == "r1,r0,rm1,exp_1mn_Sn,Sn"
    assert float(list(csv.DictReader(io.StringIO(out)))[1]["Sn"]) == pytest.approx(math.log(8 / 3))


def test_curve_fifteen_digits(capsys):
    run(capsys, "curve", "--k", "1", "--n", "3", "--r1", "1/3:1/3:1", "--rm1-share", "1/2")
    _, out, _ = run(capsys, "curve", "--k", "1", "--n", "3", "--r1", "1/3:1/3:1", "--rm1-share", "1/2")
    row = out.splitlines()[1].split(",")
    assert row[0] == "0.333333333333333"
    assert row[3] == format(2 / 9, ".15g")


def test_verify_empty_grid(capsys):
    code, out, _ = run(capsys, "verify", "--scope", "cross-routes", "--grid-size", "0")
    obj = json.loads(out)
    assert code == 0 and obj["ok"] and obj["checks"] == [] and obj["schema"] == "twistgraph/1"


def test_verify_recursion(capsys):
    code, out, _ = run(capsys, "verify", "--scope", "recursion")
    obj = json.loads(out)
    assert code == 0 and obj["ok"] and obj["passed"] > 12


def test_verify_reference_scope_reports_failure(capsys):
    code, out, err = run(capsys, "verify", "--scope", "paper-values")
    obj = json.loads(out)
    failed = [c["name"] for c in obj["checks"] if not c["ok"]]
    # only the three-copy instance of the cubic A_{0,3} expression disagrees
    assert failed == ["A[k=2,n=3,p=0,sigma=3]"]
    assert code == 3 and "FAILED" in err


def test_spectrum(capsys):
    code, out, _ = run(capsys, "spectrum", "--k", "1", "--r", "1/2,0,1/2", "--matrix")
    obj = json.loads(out)
    assert code == 0
    assert obj["eigenvalues"] == pytest.approx([0.5, 0.5, 0.5, -0.5])
    assert obj["sum"] == pytest.approx(1) and obj["sum_abs"] == pytest.approx(2)
    assert len(obj["matrix"]) == 4


def test_graphs_dump(capsys):
    code, out, _ = run(capsys, "graphs", "--k", "1", "--n", "3")
    obj = json.loads(out)
    assert code == 0 and obj["count"] == 6 and len(obj["graphs"]) == 6
    assert all(len(g["edges"]) == 3 for g in obj["graphs"])
    code, out, _ = run(capsys, "graphs", "--k", "2", "--n", "3", "--limit", "2")
    obj = json.loads(out)
    assert obj["count"] == 720 and len(obj["graphs"]) == 2


def test_output_is_reproducible(capsys):
    _, a, _ = run(capsys, "curve", "--k", "2", "--n", "4", "--grid", "4")
    _, b, _ = run(capsys, "curve", "--k", "2", "--n", "4", "--grid", "4")
    assert a == b


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "twistgraph", "negativity", "--k", "1", "--n", "3", "--r", "1/3,1/3,1/3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "exp_En=2/9" in proc.stdout
