import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modules.demos import reference_windows
from utils.helpers import unit_phase
from modules.errors import DimensionMismatch, OutOfRange
from modules.lambda_set import LambdaPoint, lambda_value, validate_params
from modules.sequences import (NuSequence, add, arithmetic_mean, coordinate, delta, inner_product, lift, modulate,
                               norm, random_sequence, scale, shift, subtract, zeros)

PARAMS = validate_params(2, 1)


def test_exact_zero_entries_are_dropped():
    Z = NuSequence(PARAMS, 2, {LambdaPoint(0, 0): [0, 0], LambdaPoint(1, 0): [1, 0]})
    assert list(Z.support) == [LambdaPoint(1, 0)]
    assert np.array_equal(Z[LambdaPoint(0, 0)], np.zeros(2))


def test_sequences_are_immutable():
    Z = delta(PARAMS, 2)
    with pytest.raises(AttributeError):
        Z.S = 3
    with pytest.raises(ValueError):
        Z[LambdaPoint(0, 0)][0] = 5


def test_wrong_vector_length_is_rejected():
    with pytest.raises(DimensionMismatch):
        NuSequence(PARAMS, 2, {LambdaPoint(0, 0): [1, 2, 3]})


def test_reference_window_inner_products():
    W = reference_windows()
    assert inner_product(W[0], W[0]) == 2
    assert inner_product(W[0], W[1]) == 0
    assert inner_product(W[0], W[4]) == 0


def test_inner_product_rejects_mismatched_sequences():
    with pytest.raises(DimensionMismatch):
        inner_product(delta(PARAMS, 1), delta(PARAMS, 2))
    with pytest.raises(DimensionMismatch):
        inner_product(delta(PARAMS, 1), delta(validate_params(1, 1), 1))


def test_modulation_of_half_point():
    W4 = reference_windows()[4]
    E = modulate(W4, 1, 2)
    np.testing.assert_allclose(E[LambdaPoint(0, 1)], [1j, 0], atol=0)
    np.testing.assert_allclose(E[LambdaPoint(2, 1)], [1j, 0], atol=0)
    assert modulate(W4, 0, 2) is W4


@pytest.mark.parametrize("m, M", [(2, 2), (-1, 3), (0, 0)])
def test_modulation_index_range(m, M):
    with pytest.raises(OutOfRange):
        modulate(delta(PARAMS, 1), m, M)


def test_shift_moves_by_2N_lambda():
    Z = delta(PARAMS, 1)
    moved = shift(Z, LambdaPoint(0, 1))
    # 2N·(1/2) = 2 is the point n=1, eps=0
    assert list(moved.support) == [LambdaPoint(1, 0)]


def test_arithmetic_mean_of_reference_window():
    mu = arithmetic_mean(reference_windows()[0])
    assert mu.S == 1
    assert mu[LambdaPoint(0, 0)][0] == 0.5
    scalar = delta(PARAMS, 1)
    assert arithmetic_mean(scalar) is scalar


def test_coordinates_and_lift_round_trip():
    W = reference_windows()[2]
    x = coordinate(W, 2)
    assert lift(x, 2, coords=[2]) == W
    with pytest.raises(OutOfRange):
        coordinate(W, 3)
    witness = lift(delta(PARAMS, 1), 3, coords=[1, 2], signs=[1, -1])
    np.testing.assert_array_equal(witness[LambdaPoint(0, 0)], [1, -1, 0])


def test_add_subtract_and_zero():
    W = reference_windows()
    assert subtract(W[0], W[0]).is_zero()
    assert add(W[0], W[1]) == scale(NuSequence(PARAMS, 2, {LambdaPoint(0, 0): [1, 0]}), 2)
    assert zeros(PARAMS, 2).is_zero()
    assert norm(zeros(PARAMS, 2)) == 0.0


def test_random_sequence_is_reproducible():
    first = random_sequence(PARAMS, 2, np.random.default_rng(7))
    second = random_sequence(PARAMS, 2, np.random.default_rng(7))
    assert first == second
    assert not first.is_zero()


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(-50, 50), eps=st.integers(0, 1),
       m=st.integers(0, 4))
def test_shift_and_modulation_are_unitary(seed, n, eps, m):
    rng = np.random.default_rng(seed)
    Z = random_sequence(PARAMS, 2, rng)
    W = random_sequence(PARAMS, 2, rng)
    lam = LambdaPoint(n, eps)
    assert inner_product(shift(Z, lam), shift(W, lam)) == pytest.approx(inner_product(Z, W), abs=1e-12)
    assert norm(modulate(Z, m, 5)) == pytest.approx(norm(Z), rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_cauchy_schwarz(seed):
    rng = np.random.default_rng(seed)
    Z = random_sequence(PARAMS, 3, rng)
    W = random_sequence(PARAMS, 3, rng)
    assert abs(inner_product(Z, W)) <= norm(Z) * norm(W) * (1 + 1e-12)
    assert inner_product(W, Z) == pytest.approx(np.conj(inner_product(Z, W)), abs=1e-12)


def test_opposite_coordinates_cancel_exactly(rng):
    for _ in range(200):
        a = complex(*rng.standard_normal(2))
        c = complex(*rng.standard_normal(2))
        Z = NuSequence(PARAMS, 3, {LambdaPoint(0, 1): [a, -a, 0]})
        W = NuSequence(PARAMS, 3, {LambdaPoint(0, 1): [c, c, c], LambdaPoint(4, 0): [1, 2, 3]})
        assert inner_product(Z, W) == 0j
        assert inner_product(W, Z) == 0j


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), S=st.integers(1, 4))
def test_arithmetic_mean_is_linear(seed, S):
    rng = np.random.default_rng(seed)
    Z = random_sequence(PARAMS, S, rng)
    W = random_sequence(PARAMS, S, rng)
    c = complex(*rng.standard_normal(2))
    combined = arithmetic_mean(add(Z, scale(W, c)))
    separate = add(arithmetic_mean(Z), scale(arithmetic_mean(W), c))
    assert norm(subtract(combined, separate)) <= 1e-12 * (1 + norm(Z) + abs(c) * norm(W))


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(-20, 20), eps=st.integers(0, 1),
       m=st.integers(0, 3), params_index=st.integers(0, 2))
def test_modulated_shift_entrywise(seed, n, eps, m, params_index):
    params = [PARAMS, validate_params(3, 5), validate_params(1, 1)][params_index]
    Z = random_sequence(params, 2, np.random.default_rng(seed))
    lam = LambdaPoint(n, eps)
    moved = modulate(shift(Z, lam), m, 4)
    assert len(moved) == len(Z)
    offset = 2 * params.N * params.numerator(lam)
    for point, value in Z:
        target = params.decode(params.numerator(point) + offset)
        exact, _ = lambda_value(target, params)
        phase = unit_phase(m * exact / 4)
        np.testing.assert_allclose(moved[target], phase * value, rtol=0, atol=1e-12)
