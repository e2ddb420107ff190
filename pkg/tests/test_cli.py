import csv
import io
import json
import subprocess
import sys

import pytest

from e8orbits.cli import main
from e8orbits.rootdata import named_datum

from oracles import brute_alcove_count


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"tool_version", "command", "params", "result"}
    return doc["result"]


def test_reduce_examples(capsys):
    r = run_json(capsys, "reduce", "--type", "E8", "-p", "29", "--vector", "1,1,1,1,1,1,1,1")
    assert r["representative"] == [1] * 8
    assert r["stabilizer"] == {"J": [0], "order": 2}
    r = run_json(capsys, "reduce", "-p", "31", "--vector", ",".join(["30"] * 8))
    assert r["representative"] == [1] * 8
    r = run_json(capsys, "reduce", "-p", "37", "--vector=" + ",".join(["-1"] * 8))
    assert r["representative"] == [1] * 8


def test_reduce_small_types(capsys):
    r = run_json(capsys, "reduce", "--type", "G2", "-p", "7", "--vector=-3,5")
    assert len(r["representative"]) == 2


@pytest.mark.parametrize("argv,code", [
    (["reduce", "-p", "4", "--vector", "1,1,1,1,1,1,1,1"], 2),
    (["reduce", "-p", "31", "--vector", "1,1"], 2),
    (["reduce", "-p", "31", "--vector", "a,b"], 2),
    (["reduce", "--type", "H3", "-p", "31", "--vector", "1"], 2),
    (["decide", "-p", "31", "--family", "w", "--z-order", "4"], 2),
    (["decide", "-p", "7", "--family", "w", "--z-order", "1"], 2),
    (["decide", "-p", "31", "--family", "bogus", "--z-order", "1"], 2),
    (["decide", "-p", "31", "--family", "wtilde", "--z-order", "1"], 3),
    (["alcove-points", "-p", "263"], 2),
    (["theorem", "--p-from", "50", "--p-to", "40"], 2),
])
def test_exit_codes(capsys, argv, code):
    got, out, err = run(capsys, *argv)
    assert got == code
    assert err.startswith("e8orbits: ")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["reduce", "-p", "31"])
    assert exc.value.code == 2


def test_decide_examples(capsys):
    assert run_json(capsys, "decide", "-p", "29", "--family", "wtilde", "--z-order", "4")["regular"] is False
    assert run_json(capsys, "decide", "-p", "29", "--family", "wprime", "--z-order", "28")["regular"] is True
    assert run_json(capsys, "decide", "-p", "31", "--family", "w", "--z-order", "5")["regular"] is False
    code, out, _ = run(capsys, "decide", "-p", "37", "--family", "w", "--z-order", "1")
    assert code == 0 and "regular: true" in out


def test_alcove_points_p23_has_no_small_stabilizers(capsys):
    r = run_json(capsys, "alcove-points", "-p", "23", "--max-stab-order", "2")
    assert r["rows"] == []


def test_alcove_points_p29_small_stabilizers(capsys):
    rows = run_json(capsys, "alcove-points", "-p", "29", "--max-stab-order", "2")["rows"]
    assert {"point": [1] * 8, "pairing": 29, "J": [0], "stab_order": 2} in rows
    assert len(rows) == 44


def test_alcove_points_csv_count(capsys):
    code, out, _ = run(capsys, "alcove-points", "-p", "11", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == brute_alcove_count(named_datum("E8").marks, 11)
    assert list(rows[0]) == ["point", "pairing", "J", "stab_order"]


def test_min_stab_filter(capsys):
    rows = run_json(capsys, "alcove-points", "-p", "13", "--min-stab-order", "10**9".replace("10**9", "696729600"))["rows"]
    assert rows == [{"point": [0] * 8, "pairing": 0, "J": list(range(1, 9)), "stab_order": 696729600}]


def test_theorem_csv_json_agree(capsys):
    rows = run_json(capsys, "theorem", "--p-from", "29", "--p-to", "41")["rows"]
    code, out, _ = run(capsys, "theorem", "--p-from", "29", "--p-to", "41", "--format", "csv")
    assert code == 0
    csv_rows = list(csv.DictReader(io.StringIO(out)))
    as_text = sorted(tuple(str(v).lower() if not isinstance(v, list) else " ".join(map(str, v))
                           for v in ("" if x is None else x for x in r.values())) for r in rows)
    assert as_text == sorted(tuple(r.values()) for r in csv_rows)
    assert all(r["regular"] for r in rows if r["p"] > 31)
    code, out, _ = run(capsys, "theorem", "--p-from", "29", "--p-to", "31")
    assert "p=31   w       no regular orbit for |Z| in 3,5,6,10,15,30" in out


def test_output_file_is_atomic(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "decide", "-p", "37", "--family", "w", "--z-order", "2",
                       "--format", "json", "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["result"]["regular"] is True
    assert [p.name for p in tmp_path.iterdir()] == ["out.json"]


def test_scan_threads_identical(capsys, tmp_path):
    docs = []
    for t in ("1", "4"):
        path = tmp_path / f"scan{t}.json"
        code, _, _ = run(capsys, "scan-rho", "--threads", t, "--max-depth", "20", "--progress", "0",
                         "--format", "json", "--output", str(path))
        assert code == 0
        doc = json.loads(path.read_text())
        doc["result"].pop("elapsed")
        doc["params"].pop("threads")
        docs.append(json.dumps(doc, sort_keys=True))
    assert docs[0] == docs[1]


def test_scan_small_type(capsys):
    r = run_json(capsys, "scan-rho", "--type", "F4", "--progress", "0")
    assert r["node_count"] == 1152


def test_selfcheck_quick(capsys):
    code, out, _ = run(capsys, "selfcheck")
    assert code == 0 and "FAIL" not in out


def test_selfcheck_injected_fault(capsys):
    code, out, _ = run(capsys, "selfcheck", "--inject-fault")
    assert code == 1 and "FAIL  E8 root count" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "e8orbits", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("e8orbits ")


def test_pure_fallback_agrees(tmp_path):
    script = (
        "from e8orbits import _accel\n"
        "from e8orbits.alcove import representative\n"
        "from e8orbits.orbitscan import ScanConfig, scan_rho_orbit\n"
        "from e8orbits.rootdata import named_datum\n"
        "d = named_datum('E8')\n"
        "print(_accel.backend_name())\n"
        "print(representative(d, [-7, 3, 11, -2, 5, 0, -9, 4], 41))\n"
        "print(scan_rho_orbit(d, ScanConfig(workers=1, max_depth=4)).to_dict(False))\n"
    )
    outs = []
    for flag in ("0", "1"):
        env = {"E8ORBITS_NUMBA": flag, "PATH": "/usr/bin:/bin"}
        import os
        env = dict(os.environ, **env)
        proc = subprocess.run([sys.executable, "-c", script], capture_output=True, text=True, env=env)
        assert proc.returncode == 0, proc.stderr
        outs.append(proc.stdout.splitlines())
    assert outs[0][0] != outs[1][0]
    assert outs[0][1:] == outs[1][1:]
