import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from pslet.cli import main
from pslet.workbench import RECORD_HEADER, RunSpec, load_baseline, run_table, solve_record, table_rows


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_json_examples(capsys):
    code, out, _ = run(capsys, "solve", "--potential", "spiked", "--a", "1000", "--b", "1.0", "--convention", "doubled", "--format", "json")
    assert code == 0
    rec = json.loads(out)
    assert rec["e_p"] == pytest.approx(190.72330, rel=5e-7)
    assert rec["inputs"]["order"] == 4
    assert set(rec["pade"]) == {"E[3,3]", "E[3,4]"}

    code, out, _ = run(capsys, "solve", "--potential", "tcoulomb", "--c", "100", "--l", "2", "--format", "json")
    assert json.loads(out)["e_p"] == pytest.approx(-0.00703519, abs=1e-8)


def test_pure_oscillator_record(capsys):
    code, out, _ = run(capsys, "solve", "--potential", "ho", "--format", "json")
    rec = json.loads(out)
    assert rec["e_p"] == pytest.approx(1.5, abs=1e-12)
    assert max(abs(c) for c in rec["corrections"]) < 1e-10
    assert rec["pade"]["E[3,3]"] == pytest.approx(1.5, abs=1e-12)


def test_json_round_trip_is_byte_identical(capsys):
    _, out, _ = run(capsys, "solve", "--potential", "spiked", "--a", "5", "--b", "2.5", "--oracle", "--pade", "2,2", "--pade", "3,4", "--format", "json")
    text = out.strip()
    assert json.dumps(json.loads(text), sort_keys=True, separators=(",", ":")) == text
    rec = solve_record(RunSpec("spiked", a=5, b=2.5, pade=((2, 2), (3, 4)), oracle=True))
    assert rec.to_json() == text


def test_csv_header_and_precision(capsys):
    _, out, _ = run(capsys, "solve", "--potential", "tcoulomb", "--c", "5", "--l", "1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == RECORD_HEADER + ["E[3,3]", "E[3,4]", "oracle", "smallest_term_index"]
    e_p = rows[1][RECORD_HEADER.index("e_p")]
    assert e_p == "-0.0681914029"
    assert len(e_p.lstrip("-0.")) == 9


def test_text_output(capsys):
    code, out, _ = run(capsys, "solve", "--potential", "coulomb", "--l", "1")
    assert code == 0 and "2p" in out and "E_P" in out


def test_exit_codes(capsys):
    assert run(capsys, "solve", "--potential", "spiked", "--a", "-3", "--b", "2")[0] == 2
    assert run(capsys, "solve", "--potential", "ho", "--tol", "0")[0] == 2
    assert run(capsys, "solve", "--potential", "ho", "--nr", "1")[0] == 3
    with pytest.raises(SystemExit) as info:
        main(["solve", "--potential", "morse"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        main(["solve", "--potential", "ho", "--pade", "3"])


def test_table_exit_status(capsys):
    # table 1 carries one disputed numerical cell
    code, out, err = run(capsys, "table", "1", "--format", "csv")
    assert code == 4
    assert "row 10" in err
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 14
    assert rows[2]["ref_e_p"] == "104.41022"
    assert float(rows[2]["e_p"]) == pytest.approx(104.41022, rel=5e-7)
    assert [r["status"] for r in rows].count("DISPUTED") == 1
    assert run(capsys, "table", "1", "--allow-disputed")[0] == 0
    assert run(capsys, "table", "4", "--format", "json")[0] == 0


def test_table_examples():
    t3 = run_table(3, oracle=False)
    assert len(t3) == 12
    c5_2p = next(r for r in t3 if r.row.c == 5 and r.row.l == 1)
    assert c5_2p.record.e_p == pytest.approx(-0.06819140, abs=5e-9)
    t4 = run_table(4, oracle=False)
    last = next(r for r in t4 if r.row.c == 200 and r.row.l == 3)
    assert last.record.e_p == pytest.approx(-0.00362385, abs=5e-9)


def test_baseline_file():
    rows = load_baseline()
    assert [len(table_rows(t)) for t in (1, 2, 3, 4)] == [14, 8, 12, 12]
    assert len(rows) == 46
    flags = {f for r in rows for f in r.binding.values()}
    assert flags <= {"0", "1", "d"}


def test_scan_reproduces_table1(capsys):
    grid = ",".join(str(r.b) for r in table_rows(1))
    code, out, _ = run(capsys, "scan", "--potential", "spiked", "--a", "1000", "--convention", "doubled", "--over", "b", "--values", grid, "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    for row, ref in zip(rows, table_rows(1)):
        assert float(row["e_p"]) == pytest.approx(ref.values["e_p"], rel=5e-5)


def test_scan_in_c_is_monotone_and_confirmed_by_oracle(capsys):
    code, out, _ = run(capsys, "scan", "--potential", "tcoulomb", "--over", "c", "--values", "20:60:5", "--oracle", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    e_p = np.array([float(r["e_p"]) for r in rows])
    oracle = np.array([float(r["oracle"]) for r in rows])
    assert len(rows) == 5
    assert np.all(np.diff(e_p) > 0) and np.all(np.diff(oracle) > 0)


def test_single_point_scan_equals_solve(capsys):
    _, scan_out, _ = run(capsys, "scan", "--potential", "tcoulomb", "--over", "c", "--values", "7", "--format", "json")
    _, solve_out, _ = run(capsys, "solve", "--potential", "tcoulomb", "--c", "7", "--format", "json")
    assert scan_out == solve_out


def test_parallel_scan_keeps_order(capsys):
    args = ["scan", "--potential", "spiked", "--a", "10", "--over", "b", "--values", "0.5,3,1.5,6", "--format", "csv"]
    _, serial, _ = run(capsys, *args)
    _, parallel, _ = run(capsys, *args, "--jobs", "2")
    assert serial == parallel


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "pslet", "solve", "--potential", "ho", "--format", "json"], capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["e_p"] == pytest.approx(1.5)
