import numpy as np
import pytest

from modules import demos
from modules.bounds import frame_bounds_grid
from modules.lambda_set import make_grid


@pytest.mark.parametrize("name", sorted(demos.DEMOS))
def test_demo_passes(name):
    result = demos.run_demo(name, resolution=256, trials=50, seed=0)
    failed = [check for check in result.checks if not check.passed]
    assert not failed, failed
    assert result.name == name


@pytest.mark.parametrize("name", ["tight-3.10", "mean-5.1", "rows-5.2"])
def test_demo_is_stable_under_refinement(name):
    assert demos.run_demo(name, resolution=512, trials=10, seed=1).passed


def test_alias_resolves():
    assert demos.resolve("bessel-3.4") == "example-3.4"
    assert demos.run_demo("bessel-3.4", resolution=256, trials=5).name == "example-3.4"
    with pytest.raises(KeyError):
        demos.run_demo("no-such-demo")


def test_exports_build_matching_systems():
    W = demos.EXPORTS["example-3.4"]()
    V = demos.EXPORTS["example-4.2"]()
    assert (W.params, W.M, W.S, W.P) == (V.params, V.M, V.S, V.P)
    for j, (w, v) in enumerate(zip(W.windows, V.windows)):
        assert w.support.keys() == v.support.keys()
        if j >= 4:
            assert all((v[point] == -w[point]).all() for point in w.support)
        else:
            np.testing.assert_allclose(v[demos.ZERO], -16 / 17 * w[demos.ZERO], rtol=0, atol=1e-15)
            np.testing.assert_array_equal(v[demos.FOUR], -w[demos.FOUR])


def test_perturbed_reference_is_a_frame():
    spec = demos.perturbed_reference_spec()
    A_est, B_est = frame_bounds_grid(spec, make_grid(spec.params, 128))
    assert 4 / 289 - 1e-9 <= A_est <= B_est <= 2048 / 289 + 8192
