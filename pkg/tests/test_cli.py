import io
import json

import pytest

from lamanbounds.algebra.field import PRIME_ENV_VAR
from lamanbounds.cli import main, parse_input_line, read_config, UsageError
from lamanbounds.graph import GraphCode


def run(capsys, monkeypatch, argv, stdin=""):
    monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    status = main(argv)
    out, err = capsys.readouterr()
    return status, out, err


def json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_count_prism_from_stdin(capsys, monkeypatch):
    status, out, _ = run(capsys, monkeypatch, ["count", "--dim", "2", "--jobs", "1"], "6\t7916\n")
    (rec,) = json_lines(out)
    assert status == 0 and rec["value"] == 24 and rec["agreed"] is True


def test_theorem3d_table_ends_at_2560(capsys, monkeypatch):
    status, out, _ = run(capsys, monkeypatch, ["bound", "--construction", "theorem3d", "--n-range", "3..10"])
    rows = out.strip().splitlines()
    assert status == 0
    assert rows[-1].split(",")[4] == "2560"


def test_decode_then_check(capsys, monkeypatch):
    status, out, _ = run(capsys, monkeypatch, ["decode", "31", "4"])
    assert status == 0 and json_lines(out)[0]["edges"] == [[0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]
    status, out, _ = run(capsys, monkeypatch, ["check", "--dim", "2"], out)
    assert status == 0 and json_lines(out)[0]["laman"] is True


def test_encode_and_canon(capsys, monkeypatch):
    status, out, _ = run(capsys, monkeypatch, ["encode", "--n", "3", "--edges", "0-1,0-2,1-2"])
    assert status == 0 and out.split() == ["3", "7"]
    status, out, _ = run(capsys, monkeypatch, ["canon"], "4\t31\n")
    assert status == 0 and out.split()[0] == "4"


def test_input_line_forms():
    assert parse_input_line("4\t31") == GraphCode(4, 31)
    assert parse_input_line('{"n": 3, "edges": [[0, 1], [0, 2], [1, 2]]}') == GraphCode(3, 7)
    assert parse_input_line('{"n": 4, "code": 31}') == GraphCode(4, 31)


def test_errors_are_one_line(capsys, monkeypatch):
    status, out, err = run(capsys, monkeypatch, ["count", "--bogus"])
    assert status == 2 and len(err.strip().splitlines()) == 1
    status, _, err = run(capsys, monkeypatch, ["decode", "31", "3"])
    assert status == 2 and len(err.strip().splitlines()) == 1
    status, _, _ = run(capsys, monkeypatch, ["generate", "--max-n", "40"])
    assert status != 0


def test_partial_batch_failure(capsys, monkeypatch):
    status, out, err = run(capsys, monkeypatch, ["check"], "4\t31\nnot a graph\n3\t7\n")
    assert status == 1
    assert len(json_lines(out)) == 2
    assert ":2:" in err


def test_generate_small(capsys, monkeypatch):
    status, out, _ = run(capsys, monkeypatch, ["generate", "--max-n", "6", "--jobs", "1"])
    assert status == 0 and len(out.strip().splitlines()) == 13


def test_config_file_and_flag_precedence(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nruns = 2\nmax-runs = 4\nseed = 5\n")
    assert read_config(str(cfg))["max_runs"] == "4"
    _, out, _ = run(capsys, monkeypatch, ["--config", str(cfg), "count", "--jobs", "1"], "3\t7\n")
    rec = json_lines(out)[0]
    assert len(rec["runs"]) == 2 and rec["runs"][0]["seed"] == 5 * 1000003
    _, out, _ = run(capsys, monkeypatch, ["--config", str(cfg), "count", "--seed", "1", "--jobs", "1"], "3\t7\n")
    assert json_lines(out)[0]["runs"][0]["seed"] == 1000003
    cfg.write_text("nonsense = 1\n")
    status, _, _ = run(capsys, monkeypatch, ["--config", str(cfg), "count"], "")
    assert status == 2


def test_prime_env_var(capsys, monkeypatch):
    monkeypatch.setenv(PRIME_ENV_VAR, "1000000007")
    _, out, _ = run(capsys, monkeypatch, ["count", "--jobs", "1"], "6\t7916\n")
    rec = json_lines(out)[0]
    assert rec["value"] == 24 and {r["prime"] for r in rec["runs"]} == {1000000007}


def test_counts_are_deterministic(capsys, monkeypatch):
    argv = ["count", "--seed", "9", "--jobs", "1"]
    recs = []
    for _ in range(2):
        rec = json_lines(run(capsys, monkeypatch, argv, "7\t1269995\n")[1])[0]
        for r in rec["runs"]:
            r.pop("seconds")  # wall-clock timing is the only varying field
        recs.append(rec)
    assert recs[0] == recs[1] and recs[0]["value"] == 56


def test_family_membership(capsys, monkeypatch, tmp_path):
    ev = tmp_path / "ev.jsonl"
    status, out, _ = run(capsys, monkeypatch, ["family", "--family", "T", "--evidence", str(ev)],
                         "12\t757486969329934592\n12\t252590061719913632\n")
    rows = json_lines(out)
    assert status == 0 and [r["verdict"] for r in rows] == [True, False]
    assert len(ev.read_text().splitlines()) == 2


@pytest.mark.parametrize("table", ["appendix", "4", "6"])
def test_reproduce_quick_tables(capsys, monkeypatch, table):
    status, out, err = run(capsys, monkeypatch, ["reproduce", "--table", table])
    assert status == 0
    assert json_lines(out)
    assert "FAIL" not in err


def test_usage_error_type():
    with pytest.raises(UsageError):
        from lamanbounds.cli import _parse_range
        _parse_range("5..3")
