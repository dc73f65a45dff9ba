"""End-to-end tests of the command line interface, run in process."""

import json

import pytest

from powfrac.cli import main
from powfrac.sieve import SieveProblem, dense_gram_eigenvalue

SUBCOMMANDS = [
    "enumerate", "pairs", "blocks", "window", "measure", "expsum-direct",
    "expsum-vdc", "kusmin", "meanvalue", "sieve-delta", "sieve-l1",
    "sieve-dual", "bounds", "sharpness-study",
]


def run_cli(capsys, argv):
    """Invoke main() and return (exit_code, stdout, stderr).

    argparse reports its own validation failures via SystemExit; fold
    those into the same exit-code channel.
    """
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
    out = capsys.readouterr()
    return code, out.out, out.err


def test_pairs_json_report(capsys):
    code, out, err = run_cli(capsys, ["pairs", "--k", "2", "--n-max", "2", "--y", "2/1"])
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 21
    assert payload["schema"] == 1
    assert payload["query"]["y"] == "2/1"
    # keys are emitted sorted so reruns are byte-comparable
    assert out == json.dumps(payload, sort_keys=True) + "\n"
    assert "count=21" in err


def test_reports_byte_identical_across_runs(capsys):
    def grab(argv):
        code, out, _ = run_cli(capsys, argv)
        assert code == 0
        payload = json.loads(out)
        payload.pop("elapsed_ms", None)
        return json.dumps(payload, sort_keys=True)

    argv = ["pairs", "--k", "2", "--n-max", "3", "--y", "9/2", "--metric", "circle"]
    assert grab(argv) == grab(argv)
    argv = ["sieve-l1", "--k", "2", "--n-max", "3", "--m-len", "5",
            "--alpha-mode", "random", "--seed", "7"]
    assert grab(argv) == grab(argv)


def test_enumerate_sorted_starts_at_minimum(capsys):
    code, out, _ = run_cli(capsys, ["enumerate", "--k", "2", "--n-max", "2", "--sorted"])
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 5
    assert payload["tuples"][0] == {"k": 2, "n": 2, "u": 1}  # value 1/4


def test_blocks_count(capsys):
    code, out, _ = run_cli(capsys, [
        "blocks", "--k", "2", "--u1", "1", "--n1", "1", "--u2", "1", "--n2", "1",
        "--y", "1/1",
    ])
    assert code == 0
    assert json.loads(out)["count"] >= 1


def test_window_count(capsys):
    code, out, _ = run_cli(capsys, [
        "window", "--k", "1", "--n-max", "3", "--y", "6/1", "--x", "1/2",
    ])
    assert code == 0
    assert json.loads(out)["count"] == 3


def test_measure_report_and_profile_csv(capsys, tmp_path):
    profile = tmp_path / "profile.csv"
    code, out, _ = run_cli(capsys, [
        "measure", "--k", "1", "--n-max", "2", "--y", "4/1", "--threshold", "1",
        "--profile-csv", str(profile),
    ])
    assert code == 0
    payload = json.loads(out)
    assert payload["point_count"] == 2  # coprime by default: 1/1 and 1/2
    assert payload["measure"] == "1/1"
    assert payload["integral"] == "1/1"
    lines = profile.read_text().strip().splitlines()
    assert lines[0] == "breakpoint_p,breakpoint_q,depth"
    assert lines[1:] == ["1,4,1", "3,4,1"]


def test_kusmin_report(capsys):
    code, out, _ = run_cli(capsys, [
        "kusmin", "--coef", "0.25", "--a", "0", "--b", "3", "--lam", "0.25",
    ])
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert payload["magnitude"] <= payload["bound"]


def test_meanvalue_matches_library(capsys):
    code, out, _ = run_cli(capsys, [
        "meanvalue", "--k", "1", "--n-lo", "1", "--n-hi", "2",
        "--u-lo", "1", "--u-hi", "2", "--y-max", "8",
    ])
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] > 0


def test_expsum_vdc_csv_header(capsys):
    code, out, _ = run_cli(capsys, [
        "expsum-vdc", "--alpha", "-1", "--y", "400", "--n-scale", "10",
        "--eta", "2", "--format", "csv",
    ])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == ("alpha,y,n_scale,eta,direct_re,direct_im,"
                        "transform_re,transform_im,abs_err,budget,ratio")
    fields = lines[1].split(",")
    assert float(fields[8]) <= 10 * float(fields[9])  # abs_err within budget


def test_expsum_direct_report(capsys):
    code, out, _ = run_cli(capsys, [
        "expsum-direct", "--alpha", "0.5", "--y", "0", "--n-scale", "1", "--eta", "10.5",
    ])
    assert code == 0
    payload = json.loads(out)
    assert payload["value_re"] == pytest.approx(9.0)
    assert payload["value_im"] == pytest.approx(0.0)


def test_sieve_delta_methods_agree(capsys):
    def delta(method):
        code, out, _ = run_cli(capsys, [
            "sieve-delta", "--k", "2", "--n-max", "2", "--m-len", "3",
            "--method", method,
        ])
        assert code == 0
        return json.loads(out)["delta"]

    fast, slow = delta("power"), delta("dense")
    assert fast == pytest.approx(slow, rel=1e-6)
    assert slow == pytest.approx(dense_gram_eigenvalue(SieveProblem(2, 2, 3)), rel=1e-12)


def test_sieve_l1_basis_mode(capsys):
    code, out, _ = run_cli(capsys, [
        "sieve-l1", "--k", "2", "--n-max", "2", "--m-len", "1",
        "--alpha-mode", "basis",
    ])
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == pytest.approx(3.0)  # P rows, unit window
    assert payload["within_cs"] is True


def test_sieve_dual_ones_single_modulus(capsys):
    code, out, _ = run_cli(capsys, [
        "sieve-dual", "--k", "1", "--n-max", "1", "--m-len", "7",
        "--coeff-mode", "ones",
    ])
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(7.0)


def test_bounds_csv_row(capsys):
    code, out, _ = run_cli(capsys, [
        "bounds", "--k", "2", "--n", "10", "--m", "1000", "--format", "csv",
    ])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,n,m,classical_1,classical_2,conjecture,cor2_rhs"
    assert lines[1] == "2,10,1000,11000,11000,2000,2000"


def test_sharpness_study_csv(capsys):
    code, out, _ = run_cli(capsys, [
        "sharpness-study", "--k", "2", "--n-list", "4,6", "--format", "csv",
    ])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,count,ratio,log_slope"
    first = lines[1].split(",")
    assert first[:3] == ["4", "56", "0.875"]
    assert first[3] == ""  # no slope for the first row


def test_invalid_rational_exits_2(capsys):
    code, _, err = run_cli(capsys, ["pairs", "--k", "2", "--n-max", "2", "--y", "0.5"])
    assert code == 2
    assert err


def test_zero_y_exits_2(capsys):
    code, _, _ = run_cli(capsys, ["pairs", "--k", "2", "--n-max", "2", "--y", "0/1"])
    assert code == 2


def test_resource_cap_exits_3(capsys, monkeypatch):
    monkeypatch.setenv("POWFRAC_MAX_POINTS", "3")
    code, _, err = run_cli(capsys, ["pairs", "--k", "2", "--n-max", "2", "--y", "2/1"])
    assert code == 3
    assert "resource" in err.lower()


def test_output_file_keeps_stdout_for_summary(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, [
        "pairs", "--k", "2", "--n-max", "2", "--y", "2/1", "--output", str(target),
    ])
    assert code == 0
    assert json.loads(target.read_text())["count"] == 21
    assert "count=21" in out


@pytest.mark.parametrize("name", SUBCOMMANDS)
def test_every_subcommand_has_help(capsys, name):
    with pytest.raises(SystemExit) as exc_info:
        main([name, "--help"])
    assert exc_info.value.code == 0
    out = capsys.readouterr().out
    assert "--output" in out
