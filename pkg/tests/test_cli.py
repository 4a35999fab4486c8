import json

import pytest

from toricquot import __version__
from toricquot.cli import main
from toricquot.constants import BOUND_ENV_VAR
from toricquot.data_loader import parse_document


@pytest.fixture(autouse=True)
def _no_bound_override(monkeypatch):
    monkeypatch.delenv(BOUND_ENV_VAR, raising=False)


@pytest.fixture
def glued_path(tmp_path, glued_text):
    path = tmp_path / "glued.json"
    path.write_text(glued_text, encoding="utf-8")
    return path


def test_analyze_text(glued_path, capsys):
    assert main(["analyze", str(glued_path)]) == 0
    out = capsys.readouterr().out
    assert "Component group Phi_J = 1" in out
    assert "pi* NOT surjective, cokernel Z/2" in out


def test_analyze_machine(glued_path, capsys):
    assert main(["analyze", str(glued_path), "--format", "machine", "--bound", "1"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["bound"] == "1"
    assert len(data["subvarieties"]) == 2


def test_analyze_reports_the_offending_field(tmp_path, glued_text, capsys):
    data = json.loads(glued_text)
    data["coords"][0][1] = ["0", "4"]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    assert main(["analyze", str(path)]) == 2
    assert "coords/0/1/1" in capsys.readouterr().err


def test_analyze_unreadable_input(tmp_path, capsys):
    assert main(["analyze", str(tmp_path / "missing.json")]) == 1
    assert capsys.readouterr().err.startswith("error: cannot read")

    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    assert main(["analyze", str(broken)]) == 1
    assert "malformed JSON" in capsys.readouterr().err


def test_glue_writes_a_document_to_stdout(capsys):
    assert main(["glue", "1", "0", "1", "0", "2", "--field", "5,5,4"]) == 0
    captured = capsys.readouterr()
    doc = parse_document(captured.out)
    assert doc.lattice.g == 2
    assert "cokernel Z/2" in captured.err


def test_glue_with_output_file(tmp_path, capsys):
    out = tmp_path / "product.json"
    assert main(["glue", "1", "0", "2", "0", "1", "--field", "5,5,4", "--out", str(out)]) == 0
    assert "Subvariety 0: pi* surjective" in capsys.readouterr().out
    assert parse_document(out.read_text(encoding="utf-8")).lattice.principal


def test_glue_output_file_matches_stdout_document(tmp_path, capsys):
    argv = ["glue", "1", "0", "1", "0", "2", "--field", "5,5,4"]
    assert main(argv) == 0
    piped = capsys.readouterr().out
    out = tmp_path / "glued.json"
    assert main([*argv, "--out", str(out)]) == 0
    assert out.read_text(encoding="utf-8") == piped


def test_glue_level_must_divide_w(capsys):
    assert main(["glue", "1", "0", "1", "0", "3", "--field", "5,5,4"]) == 2
    assert "does not divide" in capsys.readouterr().err


def test_glue_rejects_a_malformed_field():
    with pytest.raises(SystemExit):
        main(["glue", "1", "0", "1", "0", "2", "--field", "5,5"])


@pytest.mark.parametrize("prime", ["5", "7"])
def test_genus_two(prime, capsys):
    assert main(["genus-two", "--prime", prime]) == 0
    out = capsys.readouterr().out
    assert out.startswith(f"Worked example at p = {prime}")
    assert "[FAIL]" not in out


def test_genus_two_needs_an_odd_prime(capsys):
    assert main(["genus-two", "--prime", "2"]) == 2
    assert "odd prime" in capsys.readouterr().err


def test_version(capsys):
    with pytest.raises(SystemExit):
        main(["--version"])
    assert __version__ in capsys.readouterr().out


@pytest.mark.slow
def test_selftest_command(capsys):
    assert main(["selftest", "--count", "10"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("Self-test seed=")
    assert "[FAIL]" not in out


@pytest.mark.slow
def test_mutated_selftest_fails(capsys):
    assert main(["selftest", "--count", "20", "--mutate"]) == 3
    assert "Counterexample for component_group_oracle:" in capsys.readouterr().out
