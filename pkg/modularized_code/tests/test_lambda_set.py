from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from modules.errors import FrequencyNotInLambda, NonOdd, NonPositive, NotCoprime, OutOfRange, ParameterError
from modules.lambda_set import LambdaPoint, lambda_value, make_grid, translate_point, validate_params


def test_validate_params_accepts_reference_lattice():
    params = validate_params(2, 1)
    assert params.N == 2 and params.r == 1
    assert params.period == 4


@pytest.mark.parametrize("N, r, error", [
    (0, 1, NonPositive),
    (-3, 1, NonPositive),
    (2, 2, NonOdd),
    (2, 5, OutOfRange),
    (3, 3, NotCoprime),
])
def test_validate_params_rejects(N, r, error):
    with pytest.raises(error):
        validate_params(N, r)


def test_parameter_errors_are_value_errors():
    with pytest.raises(ValueError):
        validate_params(2, 4)
    assert issubclass(NonOdd, ParameterError)


def test_uniform_lattice_is_integers():
    params = validate_params(1, 1)
    assert params.is_uniform
    values = sorted(lambda_value(LambdaPoint(n, eps), params)[0] for n in range(-2, 3) for eps in (0, 1))
    assert values == list(range(-4, 6))


@pytest.mark.parametrize("point, expected", [
    (LambdaPoint(2, 0), Fraction(4)),
    (LambdaPoint(0, 1), Fraction(1, 2)),
    (LambdaPoint(2, 1), Fraction(9, 2)),
    (LambdaPoint(-1, 1), Fraction(-3, 2)),
])
def test_lambda_value_reference_points(point, expected):
    exact, approx = lambda_value(point, validate_params(2, 1))
    assert exact == expected
    assert approx == float(expected)


def test_decode_rejects_numerators_outside_lambda():
    params = validate_params(2, 1)
    with pytest.raises(FrequencyNotInLambda):
        params.decode(2)
    assert not params.contains_numerator(3)
    assert params.contains_numerator(5)


@given(n=st.integers(-10 ** 6, 10 ** 6), eps=st.integers(0, 1),
       params_index=st.integers(0, 4))
def test_numerator_decode_is_bijective(n, eps, params_index):
    N, r = [(1, 1), (2, 1), (2, 3), (3, 1), (3, 5)][params_index]
    params = validate_params(N, r)
    point = LambdaPoint(n, eps)
    assert params.decode(params.numerator(point)) == point


@given(n=st.integers(-1000, 1000), eps=st.integers(0, 1),
       shift_n=st.integers(-1000, 1000), shift_eps=st.integers(0, 1))
def test_translation_keeps_eps_and_adds_2N_lambda(n, eps, shift_n, shift_eps):
    params = validate_params(3, 5)
    point, shift = LambdaPoint(n, eps), LambdaPoint(shift_n, shift_eps)
    moved = translate_point(point, shift, params)
    assert moved.eps == eps
    assert lambda_value(moved, params)[0] == lambda_value(point, params)[0] + 2 * 3 * lambda_value(shift, params)[0]


def test_omega_has_unit_measure():
    for N in (1, 2, 5):
        intervals = validate_params(N, 1).omega_intervals()
        assert sum(b - a for a, b in intervals) == 1
        assert intervals[1][0] == Fraction(N, 2)


def test_grid_translates_tile_omega():
    params = validate_params(2, 1)
    grid = make_grid(params, 16)
    assert grid.points.shape == (16, 8)
    assert np.all(grid.base < 1 / 8)
    cells = grid.cell_intervals()
    assert sum(b - a for a, b in cells) == 1
    assert cells[0][0] == 0 and cells[-1][1] == Fraction(3, 2)
    assert grid.base_fraction(0) == Fraction(1, 256)
    assert grid.base[0] == float(grid.base_fraction(0))


@pytest.mark.parametrize("Q", [0, -1, 2.5])
def test_grid_rejects_bad_resolution(Q):
    with pytest.raises(NonPositive):
        make_grid(validate_params(1, 1), Q)
