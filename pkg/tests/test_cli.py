import json

import pytest

from cspec.cli import EXIT_INPUT, EXIT_OK, EXIT_VIOLATION, main
from cspec.io import bundled


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_con(capsys):
    code, out, _ = run(capsys, "con", "@z6ring")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["schema"] == "cspec/1" and len(data["congruences"]) == 4
    assert {"lower": 0, "upper": 1} in data["covers"]


def test_con_from_path(tmp_path, capsys):
    path = tmp_path / "z4.alg"
    path.write_text(bundled("z4ring"))
    code, out, _ = run(capsys, "con", str(path))
    assert code == EXIT_OK and json.loads(out)["algebra"] == "Z4ring"


def test_commutator(capsys):
    code, out, _ = run(capsys, "commutator", "@z4ring", "--alpha", "0-2", "--beta", "0-2")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["commutator"] == [[0], [1], [2], [3]]
    assert data["meet"] == [[0, 2], [1, 3]]
    assert data["flags"]["top_neutral"] is True


def test_spectrum_text(capsys):
    code, out, _ = run(capsys, "spectrum", "@@z6ring", "--format", "text")
    assert code == EXIT_OK
    assert "semiprime: true" in out and "max_in_spec: true" in out


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "@z4ring")
    rep = json.loads(out)["classification"]
    assert code == EXIT_OK
    assert rep["hyperarchimedean"] is True and rep["strongly_baer"] is False


def test_extension_exit_codes(capsys):
    code, out, _ = run(capsys, "extension", "@z6ring", "--sub", "0,3")
    assert code == EXIT_OK
    assert json.loads(out)["extension"]["admissible"] is False
    code, out, _ = run(capsys, "extension", "@n5", "--sub", "0,a")  # element names win over indices
    assert code == EXIT_VIOLATION
    code, _, err = run(capsys, "extension", "@z6ring", "--sub", "1")
    assert code == EXIT_INPUT and "not closed" in err


def test_export_dot(capsys):
    code, out, _ = run(capsys, "export-dot", "@n5", "--points", "min")
    assert code == EXIT_OK and out.startswith('digraph "min(N5)"')
    code, _, err = run(capsys, "export-dot", "@s3group", "--points", "max")
    assert code == EXIT_INPUT and "Max(A)" in err


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["con", "@nope"], "unknown fixture"),
        (["con", "@@nope"], "no bundled algebra"),
        (["con", "/nonexistent/file.alg"], "No such file"),
        (["commutator", "@z4ring", "--alpha", "0-9", "--beta", "0-2"], "unknown element"),
        (["commutator", "@z4ring", "--alpha", "02", "--beta", "0-2"], "not of the form"),
    ],
)
def test_input_errors(capsys, argv, needle):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_INPUT and out == ""
    assert needle in err


def test_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.alg"
    path.write_text("algebra X\nsize 2\nop f 1\n0 5\n")
    code, _, err = run(capsys, "con", str(path))
    assert code == EXIT_INPUT and "line 4, column 3" in err


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--max-size", "3", "--random", "5")
    data = json.loads(out)
    assert data["command"] == "verify" and data["seed"] == 42
    assert code == (EXIT_VIOLATION if data["violations"] else EXIT_OK)
