"""Command line surface: subcommands, exit codes, determinism."""

import json

import pytest

from hyprep.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def write_json(path, data):
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture
def quartic_file(tmp_path):
    return write_json(tmp_path / "quartic.json",
                      {"n": 4, "c": [-26.0, 72.0], "c0": -72.0, "ct0": 0.0})


@pytest.fixture
def shift_file(tmp_path):
    return write_json(tmp_path / "shift.json",
                      {"n": 4, "weights": [[4, 0], [4, 0], [6, 0], [6, 0]]})


def test_dims(capsys):
    code, out = run_cli(capsys, "dims", "--n", "5")
    assert code == 0
    assert out == '{"invariant_dim":5,"eigenspace_dims":[3,3,3,3,3]}\n'


def test_check(capsys, quartic_file):
    code, out = run_cli(capsys, "check", "--input", quartic_file)
    assert code == 0
    data = json.loads(out)
    assert data["hyperbolic"] and data["kind"] == "Singular"
    assert data["witnesses"]["minus"] is True


def test_check_nonhyperbolic(capsys, tmp_path):
    path = write_json(tmp_path / "bad.json", {"n": 3, "c": [0.0], "c0": 1.0, "ct0": 0.0})
    code, out = run_cli(capsys, "check", "--input", path)
    assert code == 1
    assert json.loads(out) == {"hyperbolic": False}


def test_represent_verify_realize_flow(capsys, tmp_path, quartic_file):
    out_path = tmp_path / "shift_out.json"
    code, out = run_cli(capsys, "represent", "--input", quartic_file,
                        "--output", str(out_path))
    assert code == 0
    report = json.loads(out)
    assert report["verify"]["max_abs_err"] <= 1e-6

    code, out = run_cli(capsys, "verify", "--form", quartic_file,
                        "--shift", str(out_path))
    assert code == 0
    assert json.loads(out)["dihedral"] is True

    code, out = run_cli(capsys, "realize", "--input", str(out_path))
    assert code == 0
    weights = json.loads(out)["weights"]
    assert all(abs(im) == 0.0 for _, im in weights)


def test_verify_mismatch_exit_code(capsys, quartic_file, tmp_path):
    wrong = write_json(tmp_path / "wrong.json",
                       {"n": 4, "weights": [[4, 0], [4, 0], [6, 0], [5, 0]]})
    code, _ = run_cli(capsys, "verify", "--form", quartic_file, "--shift", wrong)
    assert code == 1


def test_forward(capsys, shift_file):
    code, out = run_cli(capsys, "forward", "--input", shift_file)
    assert code == 0
    data = json.loads(out)
    assert data["c"] == [-26.0, 72.0]
    assert data["c0"] == -72.0


def test_points(capsys, quartic_file):
    code, out = run_cli(capsys, "points", "--input", quartic_file)
    assert code == 0
    data = json.loads(out)
    assert len(data["reps"]) == 2
    assert data["at_infinity"] == [False, True]
    total = sum(e["mult"] for e in data["S"]) + sum(e["mult"] for e in data["Sbar"])
    assert total == 12


def test_numrange_csv_and_equality(capsys, tmp_path, shift_file):
    other = write_json(tmp_path / "other.json", {
        "n": 4,
        "weights": [[4, 0],
                    [4 * 0.9659258262890683, 4 * 0.25881904510252074],
                    [6 * 0.7071067811865476, 6 * 0.7071067811865476],
                    [6 * 0.5, -6 * 0.8660254037844386]],
    })
    csv_path = tmp_path / "range.csv"
    code, out = run_cli(capsys, "numrange", "--input", shift_file,
                        "--angles", "90", "--csv", str(csv_path),
                        "--against", other)
    assert code == 0
    assert json.loads(out)["range_equal"] is True
    assert csv_path.read_text().splitlines()[0] == "theta,h,x,y"


def test_curve(capsys, tmp_path, quartic_file):
    csv_path = tmp_path / "curve.csv"
    svg_path = tmp_path / "curve.svg"
    code, out = run_cli(capsys, "curve", "--input", quartic_file,
                        "--angles", "60", "--csv", str(csv_path),
                        "--svg", str(svg_path))
    assert code == 0
    assert json.loads(out)["points"] > 0
    assert svg_path.read_text().startswith("<svg")


def test_missing_file_is_input_error(capsys, tmp_path):
    code, _ = run_cli(capsys, "check", "--input", str(tmp_path / "nope.json"))
    assert code == 2


def test_malformed_form_is_input_error(capsys, tmp_path):
    path = write_json(tmp_path / "bad.json", {"n": 4, "c": [1.0], "c0": 0, "ct0": 0})
    code, _ = run_cli(capsys, "check", "--input", path)
    assert code == 2


def test_byte_identical_reruns(capsys, quartic_file):
    _, first = run_cli(capsys, "represent", "--input", quartic_file, "--seed", "5")
    _, second = run_cli(capsys, "represent", "--input", quartic_file, "--seed", "5")
    assert first == second


def test_config_file_and_flag_override(capsys, tmp_path, quartic_file):
    cfg = write_json(tmp_path / "cfg.json", {"seed": 11, "tol_final": 1e-5})
    code, _ = run_cli(capsys, "represent", "--input", quartic_file, "--config", cfg)
    assert code == 0
    bad = write_json(tmp_path / "bad_cfg.json", {"sneed": 11})
    code, _ = run_cli(capsys, "represent", "--input", quartic_file, "--config", bad)
    assert code == 2


def test_seventeen_digit_floats(capsys, tmp_path):
    path = write_json(tmp_path / "f.json",
                      {"n": 3, "c": [-1.0 / 3.0], "c0": 0.05, "ct0": 0.0})
    code, out = run_cli(capsys, "check", "--input", path)
    assert code == 0
    assert "0.050000000000000003" in out      # s echoed with 17 significant digits


def test_represent_nonhyperbolic_is_numerical_failure(capsys, tmp_path):
    path = write_json(tmp_path / "nh.json", {"n": 3, "c": [0.0], "c0": 1.0, "ct0": 0.0})
    code, _ = run_cli(capsys, "represent", "--input", path)
    assert code == 3


def test_realize_nondihedral_is_verification_failure(capsys, tmp_path):
    path = write_json(tmp_path / "nd.json",
                      {"n": 3, "weights": [[1, 0], [1, 0], [0, 1]]})
    code, _ = run_cli(capsys, "realize", "--input", path)
    assert code == 1
