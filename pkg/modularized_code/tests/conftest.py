import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

import numpy as np
import pytest

from modules import demos
from modules.gabor import make_spec, window_numerators
from modules.lambda_set import make_grid, validate_params
from modules.sequences import random_sequence

# (N, r) pairs with r odd, 1 <= r <= 2N-1 and gcd(r, N) = 1
VALID_PARAMS = [(1, 1), (2, 1), (2, 3), (3, 1), (3, 5)]


def _random_spec(rng, N=None, r=None, S=None, M=None, P=None, max_support=6):
    if N is None:
        N, r = VALID_PARAMS[int(rng.integers(len(VALID_PARAMS)))]
    params = validate_params(N, r)
    S = int(rng.integers(1, 3)) if S is None else S
    M = int(rng.integers(1, 3)) if M is None else M
    P = int(rng.integers(0, 3)) if P is None else P
    windows = [
        random_sequence(params, S, rng, radius=3, max_support=max_support, outlier_probability=0.0)
        for _ in range(P + 1)
    ]
    return make_spec(params, M, windows)


def _random_signal(spec, rng, max_support=6):
    return random_sequence(spec.params, spec.S, rng, centers=window_numerators(spec), radius=4,
                           max_support=max_support, outlier_probability=0.25, outlier_distance=16)


@pytest.fixture
def random_spec():
    return _random_spec


@pytest.fixture
def random_signal():
    return _random_signal


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def reference_spec():
    return demos.reference_spec()


@pytest.fixture(scope="session")
def reference_grid():
    return make_grid(demos.reference_params(), 256)
