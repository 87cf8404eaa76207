import json

import pytest

from polysieve.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_local_density_documented_invocation(capsys):
    code, out, _ = run(capsys, "local-density", "--m", "3", "--n", "1", "--d", "5,1,1", "--p", "5")
    assert code == 0
    payload = json.loads(out)
    assert payload["closed_form"] == "9/5"
    assert payload["oracle"] == "9/5"
    assert payload["agree"] is True


def test_beta_documented_invocation(capsys):
    code, out, _ = run(capsys, "beta", "--m", "3", "--n", "1", "--p", "5", "--c", "1,0,0")
    assert code == 0
    assert json.loads(out)["beta"] == "3/10"


def test_eisenstein_invocation(capsys):
    code, out, _ = run(capsys, "eisenstein", "--m", "3", "--n", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == "12"
    assert payload["level"] == {"N": 16, "M": 2}


def test_aggregates_invocation(capsys):
    code, out, _ = run(capsys, "aggregates", "--m", "5", "--n", "1", "--a", "2", "--z0", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["W"] == "1/4"
    assert payload["s_a"] == "1"


def test_spinor_invocation(capsys):
    code, out, _ = run(capsys, "spinor", "--m", "3", "--p", "7", "--d", "7,7,1")
    assert code == 0
    payload = json.loads(out)
    assert payload["group"] == "(Qp*)^2" and payload["case"] == "2c"


def test_sieve_weights_invocation(capsys):
    code, out, _ = run(capsys, "sieve", "weights", "--D", "100", "--beta", "1", "--d", "1,3,15")
    assert code == 0
    payload = json.loads(out)
    assert payload["weights"][0] == {"d": 1, "lambda_plus": 1, "lambda_minus": 1, "Lambda_minus": 1}


def test_sieve_check_invocation(capsys):
    code, out, _ = run(capsys, "sieve", "check", "--pmax", "12", "--D", "10,100", "--beta", "1,2")
    assert code == 0
    assert json.loads(out)["all_pass"] is True


def test_scan_invocation(tmp_path, capsys):
    out_file = tmp_path / "report.csv"
    code, out, _ = run(
        capsys,
        "scan", "eureka", "--m", "3", "--limit", "500",
        "--nonneg", "--max-omega", "2", "--allow-zero", "--out", str(out_file),
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["config"]["limit"] == 500
    assert out_file.read_text().splitlines()[0] == "n,representable"


def test_scan_density_mode(capsys):
    code, out, _ = run(
        capsys, "scan", "density", "--m", "3", "--limit", "2000", "--mode", "zero-one-prime"
    )
    assert code == 0
    assert json.loads(out)["config"]["mode"] == "zero_one_prime"


def test_audit_constants_invocation(capsys):
    code, out, _ = run(capsys, "audit", "constants")
    assert code == 0
    assert json.loads(out)["all_pass"] is True


def test_represent_invocation(capsys):
    code, out, _ = run(capsys, "represent", "--m", "3", "--n", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 24


def test_unknown_flag_is_error(capsys):
    code, _, _ = run(capsys, "beta", "--m", "3", "--n", "1", "--p", "5", "--c", "1,0,0", "--bogus")
    assert code == 2


def test_domain_error_exit_code(capsys):
    # p outside the supported prime set is a domain error, not a crash
    code, _, err = run(capsys, "local-density", "--m", "3", "--n", "1", "--d", "1,1,1", "--p", "5")
    assert code == 2
    assert "error" in err


def test_output_schema_stable(capsys):
    golden = (
        '{"agree": true, "closed_form": "9/5", "decimal": 1.8, "h": 11, "oracle": "9/5"}'
    )
    _, out, _ = run(capsys, "local-density", "--m", "3", "--n", "1", "--d", "5,1,1", "--p", "5")
    assert out.strip() == golden
