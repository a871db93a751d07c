import csv
import io
import json
import subprocess
import sys

import pytest

from kradius import cli
from kradius.core import parse_sequence

from conftest import EXAMPLE_9


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_n10_k2(capsys):
    code, out, err = run(capsys, "construct", "--n", "10", "--k", "2")
    assert code == 0
    seq = parse_sequence(out)
    assert len(seq) == 30
    assert "optimal_2p" in err and "length=30" in err


def test_construct_single_pass(capsys):
    code, out, _ = run(capsys, "construct", "--n", "3", "--k", "5")
    assert code == 0
    assert parse_sequence(out).tolist() == [0, 1, 2]


def test_construct_json_n2000(capsys):
    code, out, _ = run(capsys, "construct", "--n", "2000", "--k", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["length"] == len(doc["symbols"]) <= 1.20 * 10**6
    assert doc["trace"][0]["strategy"] == "main_recursive"
    assert doc["lower_bound"] <= doc["length"]


def test_show_underlines(capsys):
    code, out, _ = run(capsys, "construct", "--n", "10", "--k", "2", "--show-underlines")
    assert out.split()[3:7] == ["0", "_1", "3", "_0"]
    assert len(parse_sequence(out)) == 30


def test_round_trip_through_file(tmp_path, capsys):
    path = tmp_path / "seq.txt"
    assert cli.main(["construct", "--n", "57", "--k", "3", "--out", str(path)]) == 0
    capsys.readouterr()
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0 and "k-radius: yes" in out


def test_verify_known_example(tmp_path, capsys):
    path = tmp_path / "ex.txt"
    path.write_text("# n=9 k=2\n" + "\n".join(map(str, EXAMPLE_9)) + "\n")
    code, _, _ = run(capsys, "verify", str(path))
    assert code == 0


def test_verify_failure_lists_witness(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("# n=4 k=2\n0\n1\n2\n3\n")
    code, out, _ = run(capsys, "verify", str(path), "--format", "json")
    doc = json.loads(out)
    assert code == 1
    assert doc["uncovered_witnesses"] == [[0, 3]]
    assert doc["is_k_radius"] is False


def test_verify_radius_override(tmp_path, capsys):
    path = tmp_path / "s.txt"
    path.write_text("# n=4 k=2\n0\n1\n2\n3\n")
    code, _, _ = run(capsys, "verify", str(path), "--k", "3")
    assert code == 0


def test_verify_parse_error(tmp_path, capsys):
    path = tmp_path / "junk.txt"
    path.write_text("hello\n")
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2 and "header" in err


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", "--n", "10", "--k", "2", "--format", "json")
    assert code == 0 and json.loads(out)["mod4_lower"] == 30


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--n", "4", "--k", "2", "--budget", "1e6", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["status"] == "optimal" and doc["best_length"] == 5


def test_search_large_needs_flag(capsys):
    code, _, err = run(capsys, "search", "--n", "13", "--k", "3")
    assert code == 2 and "--allow-long" in err


def test_bench_csv(capsys):
    code, out, _ = run(capsys, "bench", "--k", "2", "--n-list", "200,500,1000,2000")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["n"]) for r in rows] == [200, 500, 1000, 2000]
    assert list(rows[0]) == cli.BENCH_FIELDS
    ratios = [float(r["ratio"]) for r in rows]
    assert ratios == sorted(ratios, reverse=True)
    assert all(int(r["length"]) >= int(r["lower_bound"]) for r in rows)


def test_bench_marks_failed_rows_and_continues(capsys):
    code, out, _ = run(capsys, "bench", "--k", "2", "--n-list", "10,12",
                       "--strategies", "optimal_2p", "--format", "json")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 1
    assert rows[0]["length"] == 30 and rows[0]["error"] == ""
    assert rows[1]["length"] is None and "InvalidInput" in rows[1]["error"]


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["construct", "--n", "x", "--k", "2"])
    assert exc.value.code == 2
    code, _, _ = run(capsys, "construct", "--n", "5", "--k", "0")
    assert code == 2


def test_construction_bug_exit_code(monkeypatch, capsys):
    import kradius.builder as builder
    from kradius.core import Sequence

    def broken(n, k, strategy, q_choice):
        return Sequence.of(range(n), n, k).symbols, ()

    monkeypatch.setattr(builder, "_build_uncached", broken)
    code, _, err = run(capsys, "construct", "--n", "20", "--k", "2")
    assert code == 3 and "internal error" in err


def test_module_entry_point_pipes_into_verify():
    made = subprocess.run(
        [sys.executable, "-m", "kradius", "construct", "--n", "31", "--k", "2"],
        capture_output=True, text=True, check=True,
    )
    checked = subprocess.run(
        [sys.executable, "-m", "kradius", "verify", "-"],
        input=made.stdout, capture_output=True, text=True,
    )
    assert checked.returncode == 0
