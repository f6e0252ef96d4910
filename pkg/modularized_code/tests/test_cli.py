import json

import pytest

import main
from modules import demos
from modules.gabor import make_spec
from modules.lambda_set import LambdaPoint, validate_params
from modules.sequences import delta, norm, scale, subtract
from modules.system_io import load_signal, load_system, signal_to_dict, system_to_dict
from utils.helpers import canonical_json

FAST = ["--grid", "16", "--trials", "5"]


@pytest.fixture
def reference_path(tmp_path):
    path = tmp_path / "example-3.4.json"
    assert main.main(["export-demo", "example-3.4", str(path)]) == 0
    return path


@pytest.fixture
def perturbed_path(tmp_path):
    path = tmp_path / "example-4.2.json"
    assert main.main(["export-demo", "example-4.2", str(path)]) == 0
    return path


@pytest.fixture
def signal_path(tmp_path):
    Z = delta(demos.reference_params(), 2, point=LambdaPoint(1, 1), k=1, value=1 - 2j)
    path = tmp_path / "signal.json"
    path.write_text(canonical_json(signal_to_dict(Z)))
    return path


def _read(path):
    return json.loads(path.read_text())


def test_bounds_report_is_reproducible(tmp_path, reference_path):
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    assert main.main(["bounds", str(reference_path), *FAST, "--json", str(first)]) == 0
    assert main.main(["bounds", str(reference_path), *FAST, "--json", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    report = _read(first)
    assert report["command"] == "bounds"
    assert report["grid"] == 16
    assert report["results"]["verdict"] == "Frame"
    assert report["results"]["A_est"] == pytest.approx(4.0, abs=1e-9)
    assert report["results"]["B_est"] == pytest.approx(4.0, abs=1e-9)
    assert report["results"]["stable"]


def test_bounds_writes_to_stdout_and_csv(tmp_path, reference_path, capsys):
    trace = tmp_path / "trace.csv"
    assert main.main(["bounds", str(reference_path), *FAST, "--csv", str(trace)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert len(report["config_digest"]) == 64
    lines = trace.read_text().splitlines()
    assert lines[0] == "xi,sigma_min,sigma_max"
    assert len(lines) == 17


def test_bessel_only_system_exits_with_not_frame(tmp_path):
    params = validate_params(1, 1)
    spec = make_spec(params, 1, [delta(params, 1)])
    path = tmp_path / "single.json"
    path.write_text(canonical_json(system_to_dict(spec)))
    out = tmp_path / "report.json"
    assert main.main(["bounds", str(path), *FAST, "--json", str(out)]) == 2
    assert _read(out)["results"]["verdict"] == "BesselOnly"


def test_zero_system_is_trivial(tmp_path, capsys):
    params = validate_params(1, 1)
    spec = make_spec(params, 1, [delta(params, 1, value=0)])
    path = tmp_path / "zero.json"
    path.write_text(canonical_json(system_to_dict(spec)))
    assert main.main(["validate", str(path)]) == 0
    assert "identically zero" in capsys.readouterr().err
    out = tmp_path / "report.json"
    assert main.main(["bounds", str(path), *FAST, "--json", str(out)]) == 2
    assert _read(out)["results"]["verdict"] == "NotBessel-trivial"


def test_invalid_config_exits_with_usage_error(tmp_path, reference_path):
    data = _read(reference_path)
    data["r"] = 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    assert main.main(["validate", str(bad)]) == 1
    assert main.main(["bounds", str(tmp_path / "missing.json")]) == 1


def test_argument_errors_exit_with_one(reference_path):
    with pytest.raises(SystemExit) as excinfo:
        main.main(["bounds"])
    assert excinfo.value.code == 1
    with pytest.raises(SystemExit) as excinfo:
        main.main(["demo", "no-such-demo"])
    assert excinfo.value.code == 1
    with pytest.raises(SystemExit) as excinfo:
        main.main(["bounds", str(reference_path), "--grid", "many"])
    assert excinfo.value.code == 1


def test_validate_echoes_canonical_config(tmp_path, reference_path):
    out = tmp_path / "echo.json"
    assert main.main(["validate", str(reference_path), "--json", str(out)]) == 0
    assert out.read_bytes() == reference_path.read_bytes()


def test_analyze_then_synthesize_applies_frame_operator(tmp_path, reference_path, signal_path):
    coefficients = tmp_path / "coefficients.json"
    synthesized = tmp_path / "synthesized.json"
    assert main.main(["analyze", str(reference_path), str(signal_path), "--json", str(coefficients)]) == 0
    assert _read(coefficients)["coefficients"]
    assert main.main(["synthesize", str(reference_path), str(coefficients), "--json", str(synthesized)]) == 0
    spec = load_system(str(reference_path))
    Z = load_signal(str(signal_path), spec)
    result = load_signal(str(synthesized), spec)
    assert norm(subtract(result, scale(Z, 4))) <= 1e-10


def test_reconstruct_recovers_signal(tmp_path, reference_path, signal_path):
    out = tmp_path / "reconstruct.json"
    assert main.main(["reconstruct", str(reference_path), str(signal_path), "--json", str(out)]) == 0
    results = _read(out)["results"]
    assert results["max_error"] <= 1e-8
    assert results["relative_error"] <= 1e-8


def test_perturb_certifies_demo_pair(tmp_path, reference_path, perturbed_path):
    out = tmp_path / "perturb.json"
    args = ["perturb", str(reference_path), str(perturbed_path), "--A0", "4", "--B0", "4096",
            "--grid", "64", "--trials", "10", "--json", str(out)]
    assert main.main(args) == 0
    results = _read(out)["results"]
    assert results["certified"]
    assert results["theta"] == pytest.approx(1 / 17, abs=1e-9)
    assert results["lower"] == pytest.approx(4 / 289, rel=1e-9)
    assert results["verification"]["passed"]


def test_perturb_rejects_far_systems(tmp_path, reference_path):
    out = tmp_path / "perturb.json"
    args = ["perturb", str(reference_path), str(reference_path), "--A0", "4", "--B0", "4096",
            "--grid", "64", "--json", str(out)]
    assert main.main(args) == 2
    assert not _read(out)["results"]["certified"]


def test_reduce_mean_writes_derived_system(tmp_path, reference_path):
    derived = tmp_path / "mean.json"
    out = tmp_path / "reduce.json"
    args = ["reduce", str(reference_path), "--mode", "mean", *FAST, "--out", str(derived), "--json", str(out)]
    assert main.main(args) == 0
    report = _read(out)["results"]
    assert report["report"]["A_est"] == pytest.approx(2.0, abs=1e-9)
    assert report["report"]["B_est"] == pytest.approx(2.0, abs=1e-9)
    assert load_system(str(derived)).S == 1
    assert _read(derived) == report["derived_system"]


def test_reduce_row_and_entries(tmp_path, reference_path):
    row = tmp_path / "row.json"
    assert main.main(["reduce", str(reference_path), "--mode", "row:1", *FAST, "--json", str(row)]) == 0
    assert _read(row)["results"]["report"]["A_est"] >= 4 - 1e-6
    entries = tmp_path / "entries.json"
    assert main.main(["reduce", str(reference_path), "--mode", "entries", *FAST, "--json", str(entries)]) == 0
    results = _read(entries)["results"]
    assert len(results["entries"]) == 16
    assert results["aggregate_bound"] == pytest.approx(16 * results["beta0"])
    assert results["bessel"]


@pytest.mark.parametrize("mode", ["row:x", "row:3", "columns"])
def test_reduce_rejects_bad_modes(reference_path, mode):
    assert main.main(["reduce", str(reference_path), "--mode", mode, *FAST]) == 1


def test_demo_list_and_run(capsys):
    assert main.main(["demo", "--list"]) == 0
    listing = capsys.readouterr().out
    for name in ("example-3.4", "matrix-identity", "tight-3.10", "perturb-4.2", "mean-5.1", "rows-5.2"):
        assert name in listing
    assert main.main(["demo", "tight-3.10", "--grid", "32", "--trials", "10"]) == 0
    output = capsys.readouterr().out
    assert "tight-3.10: PASS" in output
    assert "FAIL" not in output
    assert main.main(["demo", "bessel-3.4", "--grid", "256", "--trials", "5"]) == 0


@pytest.mark.parametrize("name", sorted(demos.EXPORTS))
def test_exported_systems_are_stable_under_refinement(tmp_path, name):
    path = tmp_path / f"{name}.json"
    out = tmp_path / "report.json"
    assert main.main(["export-demo", name, str(path)]) == 0
    assert main.main(["bounds", str(path), "--grid", "256", "--trials", "5", "--json", str(out)]) == 0
    results = _read(out)["results"]
    assert results["resolution"] == 256
    assert results["refined_resolution"] == 512
    assert results["refined_verdict"] == "Frame"
    assert results["stable"]


def test_unbounded_window_exits_with_not_frame(tmp_path):
    params = validate_params(1, 1)
    spec = make_spec(params, 1, [delta(params, 1, value=float("inf"))])
    path = tmp_path / "unbounded.json"
    path.write_text(canonical_json(system_to_dict(spec)))
    out = tmp_path / "report.json"
    assert main.main(["bounds", str(path), *FAST, "--json", str(out)]) == 2
    results = _read(out)["results"]
    assert results["verdict"] == "NotBessel"
    assert results["bessel"] is False
