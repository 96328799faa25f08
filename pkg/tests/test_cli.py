import io
import json
from pathlib import Path

import pytest

from posauction import cli_response
from posauction.cli import main
from posauction.core.config import CONFIG_DIR_ENV, LEDGER_PATH_ENV
from posauction.core.errors import InvariantViolation


@pytest.fixture(autouse=True)
def isolated_config(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    root = tmp_path / "config-root"
    monkeypatch.setenv(CONFIG_DIR_ENV, str(root))
    monkeypatch.delenv(LEDGER_PATH_ENV, raising=False)
    return root


def _write(path: Path, *bids: str) -> str:
    path.write_text("\n".join(bids) + "\n", encoding="utf-8")
    return str(path)


def test_equilibrium_text(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["equilibrium", "--n", "5", "--r", "2"]) == 0
    assert capsys.readouterr().out == "4 (branch=proportional, fidelity=proved)\n"


def test_equilibrium_json(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["equilibrium", "--n", "10", "--r", "3/20", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["value"] == "7/10"
    assert payload["branch"] == "zerosPlusUnbeatable"
    assert payload["fidelity"] == "stated"


def test_psi_json(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["psi", "--n", "4", "--r", "1", "--beta", "1", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["bids"] == ["1/10", "1/5", "3/10", "2/5"]


def test_psi_then_best_response(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    bids = tmp_path / "psi.txt"
    assert main(["psi", "--n", "5", "--r", "2", "--output", str(bids)]) == 0
    assert bids.read_text(encoding="utf-8").startswith("# psi n=5 R=2 beta=1 branch=proportional\n")
    capsys.readouterr()
    assert main(["best-response", "--d", str(bids), "--r", "2", "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["achieved"] == "4"
    assert report["case"] == "high-case2"


def test_best_response_text_from_stdin(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    monkeypatch.setattr("sys.stdin", io.StringIO("1/4\n1/4\n1/4\n1/4\n"))
    assert main(["best-response", "--d", "-", "--r", "1"]) == 0
    first, second = capsys.readouterr().out.splitlines()
    assert first == "case=low-i4 ell=4 guarantee=9/4 achieved=3 fidelity=proved"
    assert second.startswith("bids: ")


def test_eval(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    adversary = _write(tmp_path / "a.txt", "0", "0", "0", "1/2")
    defender = _write(tmp_path / "d.txt", "1/10", "1/5", "3/10", "2/5")
    assert main(["eval", "--a", adversary, "--d", defender]) == 0
    assert capsys.readouterr().out == "1\n"
    assert main(["eval", "--a", adversary, "--d", defender, "--enumerate", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"adversary": "1", "defender": "3", "n": 4}


def test_oracle_commands(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    defender = _write(tmp_path / "d.txt", "1/4", "1/4", "1/4", "1/4")
    assert main(["oracle-br", "--d", defender, "--r", "1", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == "3"
    assert main(["oracle-minmax", "--n", "2", "--r", "1", "--grid-denominator", "6"]) == 0
    assert capsys.readouterr().out.splitlines() == ["value=1 candidates=16", "argmin: 0 1"]


def test_simulate(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    adversary = _write(tmp_path / "a.txt", "0", "0", "0", "1/2")
    defender = _write(tmp_path / "d.txt", "1/10", "1/5", "3/10", "2/5")
    assert main(["simulate", "--a", adversary, "--d", defender, "--trials", "2000", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["mean"] == 1.0
    assert payload["exact"] == "1"


def test_ratios_and_limits(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["ratios", "--n-max", "3", "--r-list", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,R,equilibrium,E_A,E_D,fidelity"
    assert "3,1,5/3,10/9,8/9,proved" in lines
    target = tmp_path / "figs" / "low.csv"
    assert main(["ratios", "--preset", "low", "--output", str(target)]) == 0
    assert len(target.read_text(encoding="utf-8").splitlines()) == 1 + 20 * 100
    capsys.readouterr()
    assert main(["limits", "--r", "2"]) == 0
    assert capsys.readouterr().out == "E_A=9/8 E_D=3/4\n"


def test_verify_command(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    ledger = tmp_path / "ledger.jsonl"
    assert main(["verify", "--n", "5", "--r", "1/4", "--samples", "3", "--ledger", str(ledger)]) == 0
    out = capsys.readouterr().out
    assert "PASS spectrum-identities" in out
    assert out.rstrip().endswith("6 passed, 0 failed")
    assert '"kind": "sliver"' in ledger.read_text(encoding="utf-8")


def test_config_file_supplies_defaults(
    isolated_config: Path, tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    isolated_config.mkdir(parents=True)
    (isolated_config / "config.yaml").write_text("simulate:\n  trials: 7\n  seed: 5\n", encoding="utf-8")
    adversary = _write(tmp_path / "a.txt", "1/2", "1/2")
    defender = _write(tmp_path / "d.txt", "1/2", "1/2")
    assert main(["simulate", "--a", adversary, "--d", defender]) == 0
    assert "trials=7 seed=5" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["equilibrium", "--n", "x", "--r", "1"],
        ["equilibrium", "--r", "1"],
        ["ratios", "--n-max", "3"],
        ["ratios", "--preset", "low", "--n-max", "3"],
        ["oracle-minmax", "--n", "2", "--r", "1", "--grid-denominator", "6", "--workers", "0"],
    ],
)
def test_usage_errors(argv, capsys: pytest.CaptureFixture[str]) -> None:
    assert main(argv) == 1


def test_eval_rejects_two_stdin_inputs(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["eval", "--a", "-", "--d", "-"]) == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["equilibrium", "--n", "2", "--r", "abc"],
        ["equilibrium", "--n", "2", "--r", "0"],
        ["equilibrium", "--n", "0", "--r", "1"],
        ["oracle-minmax", "--n", "5", "--r", "1", "--grid-denominator", "6"],
        ["ratios", "--preset", "low", "--config", "/nonexistent/config.yaml"],
    ],
)
def test_invalid_input_exit_code(argv, capsys: pytest.CaptureFixture[str]) -> None:
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("Error: ")


def test_size_mismatch_exit_code(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    adversary = _write(tmp_path / "a.txt", "1/2")
    defender = _write(tmp_path / "d.txt", "1/2", "1/2")
    assert main(["eval", "--a", adversary, "--d", defender]) == 2
    assert "size mismatch" in capsys.readouterr().err


def test_invariant_violation_exit_code(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]
) -> None:
    def broken(defender, R, oracle_cap=None):
        raise InvariantViolation("i4-search", "no pair meets either search bound", {"ell": 2})

    monkeypatch.setattr(cli_response, "best_response", broken)
    defender = _write(tmp_path / "d.txt", "1/5", "1/5", "3/5")
    assert main(["best-response", "--d", defender, "--r", "1"]) == 3
    err = capsys.readouterr().err
    assert "[i4-search]" in err
    assert 'counterexample: {"ell": 2}' in err


@pytest.mark.parametrize("n, r", [(4, "1"), (5, "2"), (6, "3/2"), (7, "5/2")])
def test_psi_json_round_trip(
    n: int, r: str, monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]
) -> None:
    assert main(["psi", "--n", str(n), "--r", r, "--format", "json"]) == 0
    psi_json = capsys.readouterr().out
    assert main(["equilibrium", "--n", str(n), "--r", r, "--format", "json"]) == 0
    expected = json.loads(capsys.readouterr().out)["value"]
    monkeypatch.setattr("sys.stdin", io.StringIO(psi_json))
    assert main(["best-response", "--d", "-", "--r", r, "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["achieved"] == expected


def test_simulate_is_deterministic(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    adversary = _write(tmp_path / "a.txt", "1/4", "1/4", "1/4", "1/4")
    defender = _write(tmp_path / "d.txt", "1/10", "1/5", "3/10", "2/5")
    argv = ["simulate", "--a", adversary, "--d", defender, "--trials", "500", "--seed", "9"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first


def test_main_survives_closed_stderr(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    first = io.TextIOWrapper(io.BytesIO(), encoding="utf-8")
    monkeypatch.setattr("sys.stderr", first)
    assert main(["equilibrium", "--n", "2", "--r", "1"]) == 0
    first.close()
    second = io.StringIO()
    monkeypatch.setattr("sys.stderr", second)
    assert main(["equilibrium", "--n", "3", "--r", "1"]) == 0
    assert capsys.readouterr().out.splitlines()[-1].startswith("5/3")


def test_psi_bids_alias(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    bids = tmp_path / "psi.txt"
    assert main(["psi", "--n", "4", "--r", "1", "--bids", str(bids)]) == 0
    assert capsys.readouterr().out.startswith("Wrote 4 bids to ")
    lines = [line for line in bids.read_text(encoding="utf-8").splitlines() if not line.startswith("#")]
    assert lines == ["1/10", "1/5", "3/10", "2/5"]
