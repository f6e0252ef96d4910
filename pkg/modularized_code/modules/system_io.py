"""
System, signal and coefficient file module for the DVNUG frame toolkit.

Files are JSON. Lattice parameters are integers, complex numbers are [re, im]
pairs and support entries are {"n": int, "eps": 0|1, "value": [...]}. Every
validation failure raises ConfigError naming the offending field.
"""
import json
import logging

from modules.errors import ConfigError
from modules.gabor import CoefficientKey, make_spec
from modules.lambda_set import LambdaPoint, validate_params
from modules.sequences import NuSequence
from utils.helpers import print_with_timestamp

logger = logging.getLogger(__name__)


def load_json(path):
    """
    Read a JSON document.

    Args:
        path (str): File path

    Returns:
        dict: Parsed document

    Raises:
        ConfigError: If the file cannot be read or parsed
    """
    logger.info(f"Loading {path}")
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as e:
        raise ConfigError("$", f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise ConfigError("$", f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
    if not isinstance(data, dict):
        raise ConfigError("$", "top-level value must be an object")
    return data


def _integer(data, key, path):
    if key not in data:
        raise ConfigError(f"{path}.{key}", "missing field")
    value = data[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigError(f"{path}.{key}", f"must be an integer, got {value!r}")
    return value


def _complex(value, path):
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if (isinstance(value, list) and len(value) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)):
        return complex(value[0], value[1])
    raise ConfigError(path, f"complex numbers are [re, im] pairs, got {value!r}")


def encode_complex(value):
    value = complex(value)
    return [value.real, value.imag]


def _entries(items, S, path):
    if not isinstance(items, list):
        raise ConfigError(path, "must be an array of support entries")
    entries = {}
    for i, item in enumerate(items):
        item_path = f"{path}[{i}]"
        if not isinstance(item, dict):
            raise ConfigError(item_path, "support entry must be an object")
        n = _integer(item, "n", item_path)
        eps = _integer(item, "eps", item_path)
        if eps not in (0, 1):
            raise ConfigError(f"{item_path}.eps", f"must be 0 or 1, got {eps}")
        value = item.get("value")
        if not isinstance(value, list) or len(value) != S:
            length = len(value) if isinstance(value, list) else "no"
            raise ConfigError(f"{item_path}.value", f"expected {S} components, got {length}")
        point = LambdaPoint(n, eps)
        if point in entries:
            raise ConfigError(item_path, f"duplicate support point (n={n}, eps={eps})")
        entries[point] = [_complex(v, f"{item_path}.value[{k}]") for k, v in enumerate(value)]
    return entries


def _encode_entries(sequence):
    return [
        {"n": point.n, "eps": point.eps, "value": [encode_complex(v) for v in value]}
        for point, value in sequence
    ]


def parse_system(data):
    """
    Build a GaborSpec from a system document.

    Args:
        data (dict): Document with N, r, M, P, S and windows

    Returns:
        GaborSpec: Validated system

    Raises:
        ConfigError: On structural problems
        ParameterError: If N and r are not valid lattice parameters
    """
    N = _integer(data, "N", "$")
    r = _integer(data, "r", "$")
    M = _integer(data, "M", "$")
    P = _integer(data, "P", "$")
    S = _integer(data, "S", "$")
    params = validate_params(N, r)
    if M < 1:
        raise ConfigError("$.M", f"must be positive, got {M}")
    if S < 1:
        raise ConfigError("$.S", f"must be positive, got {S}")
    windows = data.get("windows")
    if not isinstance(windows, list):
        raise ConfigError("$.windows", "missing array of windows")
    if len(windows) != P + 1:
        raise ConfigError("$.windows", f"P={P} requires {P + 1} windows, got {len(windows)}")
    sequences = [
        NuSequence(params, S, _entries(window, S, f"$.windows[{j}]"))
        for j, window in enumerate(windows)
    ]
    return make_spec(params, M, sequences)


def system_to_dict(spec):
    return {
        "N": spec.params.N,
        "r": spec.params.r,
        "M": spec.M,
        "P": spec.P,
        "S": spec.S,
        "windows": [_encode_entries(w) for w in spec.windows],
    }


def parse_signal(data, spec):
    """
    Build a signal on the lattice of spec.

    The document may repeat N, r and S; when present they must match the system.

    Args:
        data (dict): Document with "entries"
        spec (GaborSpec): System the signal belongs to

    Returns:
        NuSequence: The signal
    """
    for key, expected in (("N", spec.params.N), ("r", spec.params.r), ("S", spec.S)):
        if key in data and data[key] != expected:
            raise ConfigError(f"$.{key}", f"signal has {key}={data[key]!r}, system has {expected}")
    return NuSequence(spec.params, spec.S, _entries(data.get("entries", []), spec.S, "$.entries"))


def signal_to_dict(Z):
    return {"N": Z.params.N, "r": Z.params.r, "S": Z.S, "entries": _encode_entries(Z)}


def parse_coefficients(data, spec):
    """
    Read a coefficient map keyed by (λ, m, j).

    Args:
        data (dict): Document with "coefficients": [{n, eps, m, j, value}]
        spec (GaborSpec): System the coefficients refer to

    Returns:
        dict: CoefficientKey -> complex
    """
    items = data.get("coefficients")
    if not isinstance(items, list):
        raise ConfigError("$.coefficients", "missing array of coefficients")
    coefficients = {}
    for i, item in enumerate(items):
        path = f"$.coefficients[{i}]"
        if not isinstance(item, dict):
            raise ConfigError(path, "coefficient must be an object")
        eps = _integer(item, "eps", path)
        if eps not in (0, 1):
            raise ConfigError(f"{path}.eps", f"must be 0 or 1, got {eps}")
        m = _integer(item, "m", path)
        if not 0 <= m < spec.M:
            raise ConfigError(f"{path}.m", f"must lie in [0, {spec.M - 1}], got {m}")
        j = _integer(item, "j", path)
        if not 0 <= j <= spec.P:
            raise ConfigError(f"{path}.j", f"must lie in [0, {spec.P}], got {j}")
        key = CoefficientKey(LambdaPoint(_integer(item, "n", path), eps), m, j)
        coefficients[key] = _complex(item.get("value"), f"{path}.value")
    return dict(sorted(coefficients.items()))


def coefficients_to_dict(coefficients):
    return {
        "coefficients": [
            {"n": key.lam.n, "eps": key.lam.eps, "m": key.m, "j": key.j, "value": encode_complex(a)}
            for key, a in sorted(coefficients.items())
        ]
    }


def load_system(path):
    spec = parse_system(load_json(path))
    print_with_timestamp(f"Loaded system N={spec.params.N}, r={spec.params.r}, M={spec.M}, P={spec.P}, S={spec.S}")
    return spec


def load_signal(path, spec):
    return parse_signal(load_json(path), spec)


def load_coefficients(path, spec):
    return parse_coefficients(load_json(path), spec)
