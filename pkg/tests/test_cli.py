import numpy as np
import pytest

from qcldpc.cli import main
from qcldpc.code_model import wifi_base_matrix


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestExpand:
    def test_alist_to_stdout(self, capsys):
        rc, out, _ = run(capsys, "expand", "--code", "wifi-z27")
        assert rc == 0
        assert out.split("\n")[0] == "648 324"

    def test_out_file(self, capsys, tmp_path):
        dest = tmp_path / "h.alist"
        rc, out, _ = run(capsys, "expand", "--code", "wifi-z27", "--out", str(dest))
        assert rc == 0
        assert out == ""
        assert dest.read_text().split("\n")[0] == "648 324"

    def test_missing_file_is_data_error(self, capsys):
        rc, _, err = run(capsys, "expand", "--code", "no_such.bm")
        assert rc == 2
        assert "no_such.bm" in err

    def test_bad_matrix_is_data_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.bm"
        bad.write_text("2 2 4\n0 1\n")  # one row short
        rc, _, err = run(capsys, "expand", "--code", str(bad))
        assert rc == 2

    def test_missing_flag_is_usage_error(self, capsys):
        rc, _, _ = run(capsys, "expand")
        assert rc == 1

    def test_unknown_command_is_usage_error(self, capsys):
        rc, _, _ = run(capsys, "frobnicate")
        assert rc == 1


class TestCompact:
    def test_reports_one_third(self, capsys):
        rc, out, _ = run(capsys, "compact", "--code", "wifi-z81")
        assert rc == 0
        assert "J = 8" in out
        assert "lambda = 1/3" in out
        assert "1/lambda = 3" in out

    def test_csv_rows(self, capsys):
        rc, out, _ = run(capsys, "compact", "--code", "wifi-z81", "--csv")
        assert rc == 0
        assert "beta_I,0,0,4,6,8,10,12,13,-1" in out
        assert "beta_S,0,57,50,11,50,79,1,0,-1" in out


class TestSchedule:
    def test_auto_reports_headline_numbers(self, capsys):
        rc, out, _ = run(capsys, "schedule", "--code", "wifi-z81")
        assert rc == 0
        assert "superlayer_size = 6" in out
        assert "eta_p = 6/7" in out
        assert "slots_per_iteration = 112" in out
        assert "speedup_vs_serial = 12/7" in out

    def test_serial_mode(self, capsys):
        rc, out, _ = run(capsys, "schedule", "--code", "wifi-z81", "--mode", "1x")
        assert rc == 0
        assert "slots_per_iteration = 192" in out
        assert "hazards = 0" in out

    def test_throughput_model(self, capsys):
        rc, out, _ = run(capsys, "schedule", "--code", "wifi-z81", "--fclk", "2e8")
        assert rc == 0
        line = [l for l in out.split("\n") if l.startswith("modeled_throughput_bps")][0]
        assert abs(float(line.split(" = ")[1]) - 433.9e6) < 0.1e6

    def test_bad_superlayer_is_data_error(self, capsys):
        rc, _, err = run(capsys, "schedule", "--code", "wifi-z81", "--superlayer", "5")
        assert rc == 2


class TestDecode:
    def write_llrs(self, tmp_path, llr, raw=False):
        p = tmp_path / ("llr.bin" if raw else "llr.txt")
        if raw:
            p.write_bytes(np.asarray(llr, dtype="<f4").tobytes())
        else:
            p.write_text("\n".join(f"{v}" for v in llr) + "\n")
        return str(p)

    def test_noiseless_all_zero(self, capsys, tmp_path):
        n = 24 * 27
        path = self.write_llrs(tmp_path, [4.0] * n)
        rc, out, _ = run(capsys, "decode", "--code", "wifi-z27", "--llr", path)
        assert rc == 0
        bits, iters, conv = out.strip().split("\n")
        assert bits == "0" * n
        assert iters == "iterations = 1"
        assert conv == "converged = true"

    def test_raw_float32_input(self, capsys, tmp_path):
        n = 24 * 27
        path = self.write_llrs(tmp_path, [4.0] * n, raw=True)
        rc, out, _ = run(capsys, "decode", "--code", "wifi-z27", "--llr", path, "--raw")
        assert rc == 0
        assert "converged = true" in out

    def test_fixed_arithmetic(self, capsys, tmp_path):
        n = 24 * 27
        path = self.write_llrs(tmp_path, [4.0] * n)
        rc, out, _ = run(
            capsys, "decode", "--code", "wifi-z27", "--llr", path,
            "--arith", "fixed", "--qformat", "6.4",
        )
        assert rc == 0
        assert "converged = true" in out

    def test_wrong_length_is_data_error(self, capsys, tmp_path):
        path = self.write_llrs(tmp_path, [4.0] * 10)
        rc, _, err = run(capsys, "decode", "--code", "wifi-z27", "--llr", path)
        assert rc == 2
        assert "648" in err

    def test_qformat_with_float_rejected(self, capsys, tmp_path):
        path = self.write_llrs(tmp_path, [4.0] * 648)
        rc, _, err = run(
            capsys, "decode", "--code", "wifi-z27", "--llr", path, "--qformat", "6.4"
        )
        assert rc == 2
        assert "--arith fixed" in err


class TestBer:
    ARGS = (
        "ber", "--code", "wifi-z27", "--ebno", "3.0:1.0:3.0",
        "--seed", "11", "--min-errors", "10", "--max-frames", "512", "--iters", "4",
    )

    def test_csv_output(self, capsys):
        rc, out, _ = run(capsys, *self.ARGS)
        assert rc == 0
        lines = out.strip().split("\n")
        assert lines[0] == "ebno_db,frames,bit_errors,frame_errors,ber,fer,avg_iters"
        assert lines[1].startswith("3.00,512,")

    def test_workers_do_not_change_output(self, capsys):
        _, base, _ = run(capsys, *self.ARGS)
        _, threaded, _ = run(capsys, *self.ARGS, "--workers", "2")
        assert threaded == base

    def test_bad_grid_is_data_error(self, capsys):
        rc, _, err = run(capsys, "ber", "--code", "wifi-z27", "--ebno", "nope")
        assert rc == 2
        assert "LO:STEP:HI" in err


class TestHelp:
    @pytest.mark.parametrize("cmd", ["expand", "compact", "schedule", "decode", "ber"])
    def test_subcommand_help_lists_code_flag(self, capsys, cmd):
        rc, out, _ = run(capsys, cmd, "--help")
        assert rc == 0
        assert "--code" in out
