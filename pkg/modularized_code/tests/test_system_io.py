import json

import pytest

from modules import demos
from modules.errors import ConfigError, NonOdd
from modules.gabor import CoefficientKey
from modules.lambda_set import LambdaPoint
from modules.sequences import delta
from modules.system_io import (coefficients_to_dict, load_json, load_system, parse_coefficients, parse_signal,
                               parse_system, signal_to_dict, system_to_dict)
from utils.helpers import canonical_json, digest


def _reference_dict():
    return system_to_dict(demos.reference_spec())


def test_reference_system_round_trip(tmp_path):
    data = _reference_dict()
    assert data["N"] == 2 and data["r"] == 1 and data["P"] == 7 and len(data["windows"]) == 8
    assert data["windows"][4][0] == {"n": 0, "eps": 1, "value": [[1.0, 0.0], [0.0, 0.0]]}
    path = tmp_path / "system.json"
    path.write_text(canonical_json(data))
    spec = load_system(str(path))
    assert all(a == b for a, b in zip(spec.windows, demos.reference_spec().windows))
    assert canonical_json(system_to_dict(spec)) == canonical_json(data)
    assert digest(system_to_dict(spec)) == digest(data)


def test_even_r_is_rejected():
    data = _reference_dict()
    data["r"] = 2
    with pytest.raises(NonOdd):
        parse_system(data)


def test_wrong_vector_length_names_the_field():
    data = _reference_dict()
    data["windows"][3][1]["value"] = [[1, 0]]
    with pytest.raises(ConfigError) as excinfo:
        parse_system(data)
    assert excinfo.value.field == "$.windows[3][1].value"


@pytest.mark.parametrize("mutate, field", [
    (lambda d: d.pop("M"), "$.M"),
    (lambda d: d.update(N=2.0), "$.N"),
    (lambda d: d.update(P=3), "$.windows"),
    (lambda d: d.update(M=0), "$.M"),
    (lambda d: d["windows"][0][0].update(eps=2), "$.windows[0][0].eps"),
    (lambda d: d["windows"][0][0].update(value=[[1, 0, 0], [0, 0]]), "$.windows[0][0].value[0]"),
    (lambda d: d["windows"][0].append(dict(d["windows"][0][0])), "$.windows[0][2]"),
])
def test_structural_errors(mutate, field):
    data = _reference_dict()
    mutate(data)
    with pytest.raises(ConfigError) as excinfo:
        parse_system(data)
    assert excinfo.value.field == field
    assert str(excinfo.value).startswith(field)


def test_load_json_errors(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(ConfigError):
        load_json(str(broken))
    with pytest.raises(ConfigError):
        load_json(str(tmp_path / "missing.json"))
    listing = tmp_path / "list.json"
    listing.write_text("[]")
    with pytest.raises(ConfigError):
        load_json(str(listing))


def test_signal_round_trip(reference_spec):
    Z = delta(reference_spec.params, 2, point=LambdaPoint(-1, 1), k=2, value=2 - 1j)
    data = signal_to_dict(Z)
    assert data["entries"] == [{"n": -1, "eps": 1, "value": [[0.0, 0.0], [2.0, -1.0]]}]
    assert parse_signal(json.loads(json.dumps(data)), reference_spec) == Z
    data["S"] = 3
    with pytest.raises(ConfigError):
        parse_signal(data, reference_spec)


def test_coefficient_round_trip(reference_spec):
    coefficients = {CoefficientKey(LambdaPoint(1, 0), 1, 7): 0.5j, CoefficientKey(LambdaPoint(0, 0), 0, 0): 2.0}
    data = coefficients_to_dict(coefficients)
    assert data["coefficients"][0]["j"] == 0
    parsed = parse_coefficients(json.loads(json.dumps(data)), reference_spec)
    assert parsed == coefficients
    data["coefficients"][0]["m"] = 5
    with pytest.raises(ConfigError) as excinfo:
        parse_coefficients(data, reference_spec)
    assert excinfo.value.field == "$.coefficients[0].m"
