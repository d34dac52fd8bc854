import json
import subprocess
import sys
from pathlib import Path

import pytest

from statcore import analysis, cli
from statcore.circuit_format import parse

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_run_xor_text(capsys):
    code, out, _ = run(capsys, "run", DATA / "xor.qwd")
    assert code == 0
    assert "core readout    (1 -1 -1 1, -1 1 1 -1)" in out
    assert "spectrum        (0 0 0 0, 0 0 0 8)" in out
    assert "common factor   8" in out
    assert "nonzero at      111" in out


def test_run_xor_structured(capsys):
    code, out, _ = run(capsys, "run", DATA / "xor.qwd", "--format", "structured", "--spectral")
    doc = json.loads(out)
    assert code == 0
    assert doc["final_core_vector"] == [1, -1, -1, 1, -1, 1, 1, -1]
    assert doc["spectrum"] == [0, 0, 0, 0, 0, 0, 0, 8]
    assert doc["common_factor"] == 8
    assert doc["spectral_report"]["basis_address"] == "111"


def test_run_identity_and_single_not(capsys):
    _, out, _ = run(capsys, "run", DATA / "identity.qwd", "--format", "structured")
    doc = json.loads(out)
    assert doc["final_core_vector"] == [0, 1, 0, 0, 0, 0, 0, 0]
    assert doc["spectrum"] is None
    _, out, _ = run(capsys, "run", DATA / "single_not.qwd", "--format", "structured")
    assert json.loads(out)["final_core_vector"] == [1, 0]


def test_run_report_spectrum_iff_post():
    with_post = cli.run_program(parse((DATA / "xor.qwd").read_text()))
    without = cli.run_program(parse((DATA / "identity.qwd").read_text()))
    assert with_post.spectrum is not None and without.spectrum is None


def test_run_parse_error(capsys):
    code, _, err = run(capsys, "run", DATA / "malformed" / "index_out_of_range.qwd")
    assert code == 2 and "line 2" in err


def test_run_missing_file(capsys):
    code, _, err = run(capsys, "run", DATA / "nope.qwd")
    assert code == 2


def test_run_over_cap(capsys, monkeypatch):
    monkeypatch.setenv("STATCORE_MAX_N", "2")
    code, _, err = run(capsys, "run", DATA / "xor.qwd")
    assert code == 2 and "cap" in err


def test_run_warns_on_wide_controls(capsys, tmp_path):
    prog = tmp_path / "wide.qwd"
    prog.write_text("lines 4\nstep MCX A3 A2 A1 A0\n")
    code, _, err = run(capsys, "run", prog)
    assert code == 0 and "3 controls" in err


def test_classify_xor(capsys):
    code, out, _ = run(capsys, "classify", "01,10", "--format", "structured")
    doc = json.loads(out)
    assert code == 0
    assert doc["spectral"]["affine"] and doc["spectral"]["basis_address"] == "111"
    assert doc["spectral"]["balanced"] and doc["ground_truth"]["balanced"]
    assert doc["ground_truth"]["symmetric"]
    assert doc["internal_errors"] == []


def test_classify_constant(capsys):
    code, out, _ = run(capsys, "classify", "0000", "--format", "structured")
    doc = json.loads(out)
    assert code == 0
    assert doc["spectral"]["constant"] and doc["spectral"]["marker_entry"] == 8


def test_classify_balanced_not_affine(capsys):
    code, out, _ = run(capsys, "classify", "0111,0001")
    assert code == 0
    assert "verdicts        balanced (marker entry 0)" in out
    assert "ground truth    balanced anti_symmetric" in out


def test_classify_bad_table(capsys):
    code, _, err = run(capsys, "classify", "011")
    assert code == 2 and "power of two" in err


def test_classify_flags_internal_error(capsys, monkeypatch):
    real = analysis.classify_spectrum

    def lying(spectrum, n):
        rep = real(spectrum, n)
        return analysis.SpectralReport(**{**rep.__dict__, "constant": not rep.constant})

    monkeypatch.setattr(analysis, "classify_spectrum", lying)
    code, _, err = run(capsys, "classify", "0110")
    assert code == 1 and "INTERNAL ERROR" in err


def test_cost_default(capsys):
    code, out, _ = run(capsys, "cost", "--format", "structured")
    doc = json.loads(out)
    assert code == 0
    assert doc["transistors_per_word"] == 226 and doc["address_space_bits"] == 35
    assert doc["gate_delay_ns"] == 320


def test_cost_config(capsys, tmp_path):
    cfg = tmp_path / "tech.cfg"
    cfg.write_text("address_bits = 16\n")
    code, out, _ = run(capsys, "cost", "--config", cfg)
    assert code == 0 and "transistors per word  114" in out
    cfg.write_text("wafer_radius = -20\n")
    code, _, err = run(capsys, "cost", "--config", cfg)
    assert code == 2 and "wafer_radius" in err


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "--seed", 1, "--trials", 200, "--max-n", 10)
    assert code == 0 and out.startswith("pass: 200")


def test_verify_zero_trials(capsys):
    code, out, _ = run(capsys, "verify", "--trials", 0)
    assert code == 0


def test_verify_bad_max_n(capsys):
    code, _, _ = run(capsys, "verify", "--max-n", 99)
    assert code == 2


def test_verify_reports_counterexample(capsys, monkeypatch):
    from statcore import reference_oracle

    def corrupt(circuit, start):
        out = reference_oracle.run_stationary(circuit, start)
        out[0] += 1
        return out

    monkeypatch.setattr(cli, "cross_check", lambda s, t, m: reference_oracle.cross_check(s, t, m, runner=corrupt))
    code, out, _ = run(capsys, "verify", "--trials", 5)
    assert code == 1
    assert "trial 0" in out and "lines" in out and "FAIL" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["run", str(DATA / "xor.qwd"), "--format", "structured", "--spectral"],
        ["verify", "--seed", "9", "--trials", "20", "--format", "structured"],
        ["classify", "0110|1001", "--format", "structured"],
    ],
)
def test_structured_output_is_stable(capsys, argv):
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "statcore", "classify", "01,10"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "affine at 111" in proc.stdout


def test_usage_error_exit_code():
    proc = subprocess.run([sys.executable, "-m", "statcore", "frobnicate"], capture_output=True)
    assert proc.returncode == 2
