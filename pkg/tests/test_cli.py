"""Command-line interface: subcommands, output, exit codes."""

import json

import pytest

from permtri.cli import main
from permtri.scan import to_csv_text
from permtri import exhaustive_scan


class TestScanCommand:
    def test_csv_to_file(self, tmp_path, capsys):
        out = tmp_path / "q5.csv"
        code = main(["scan", "--p", "5", "--h", "1", "--out", str(out)])
        assert code == 0
        assert out.read_text() == to_csv_text(exhaustive_scan(5, 1))

    def test_csv_to_stdout(self, capsys):
        code = main(["scan", "--p", "5", "--h", "1", "--summary-only"])
        assert code == 0
        captured = capsys.readouterr().out
        assert captured.splitlines()[0].startswith("q,a_idx,b_idx,")

    def test_json_format(self, tmp_path):
        out = tmp_path / "r.json"
        code = main(
            ["scan", "--p", "7", "--h", "1", "--sample", "100", "--seed", "4",
             "--format", "json", "--out", str(out)]
        )
        assert code == 0
        data = json.loads(out.read_text())
        assert data["q"] == 7 and data["mode"] == "sampled"

    def test_threads_flag(self, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["scan", "--p", "7", "--h", "1", "--out", str(out1)]) == 0
        assert main(["scan", "--p", "7", "--h", "1", "--threads", "4", "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_non_prime_is_usage_error(self, capsys):
        assert main(["scan", "--p", "6", "--h", "1"]) == 2
        assert "error" in capsys.readouterr().err

    def test_budget_exceeded_is_usage_error(self, capsys):
        assert main(["scan", "--p", "37", "--h", "1"]) == 2
        assert "sampled" in capsys.readouterr().err


class TestCheckCommand:
    def test_json_record(self, capsys):
        code = main(["check", "--p", "5", "--h", "1", "--a", "5", "--b", "1"])
        assert code == 0
        data = json.loads(capsys.readouterr().out)
        assert data["verdict"]["is_pp"] is True
        assert data["gcd_deg"] == 2
        assert data["conditions"]["prima_bis"] is True and "v" in data["conditions"]

    def test_diagnostics_flag(self, capsys):
        code = main(["check", "--p", "5", "--h", "1", "--a", "2", "--b", "3", "--diagnostics"])
        assert code == 0
        data = json.loads(capsys.readouterr().out)
        assert data["points_off_diag"] == 0
        assert data["conic"]["pattern"] == "conic-swap"

    def test_zero_parameter_is_usage_error(self, capsys):
        assert main(["check", "--p", "5", "--h", "1", "--a", "0", "--b", "3"]) == 2


class TestUsage:
    def test_missing_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_unknown_flag_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["scan", "--nope"])
        assert exc.value.code == 2


class TestSelftest:
    def test_small_bound_passes(self, capsys):
        # at max-q 5 every mandated check trims to q = 5 and passes
        code = main(["selftest", "--max-q", "5"])
        out = capsys.readouterr().out
        assert code == 0
        lines = [l for l in out.splitlines() if l.startswith("criterion")]
        assert len(lines) == 11
        assert all(": PASS" in l or "skipped" in l for l in lines)
