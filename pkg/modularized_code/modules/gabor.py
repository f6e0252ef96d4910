"""
Gabor system module for the DVNUG frame toolkit.

The system {E_{m/M} R_{2Nλ} W_j : λ ∈ Λ, m ∈ T_1, j ∈ T_2} acts on finitely
supported signals, so every λ-sum is exactly finite: only the shifts that make
a translated window overlap the signal contribute.
"""
import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

import config
from modules.errors import DimensionMismatch, NonPositive, NotAFrameSuspected, OutOfRange
from modules.lambda_set import LambdaPoint
from modules.sequences import (NuSequence, add, inner_product, modulate, norm, random_sequence, scale,
                               shift, subtract)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GaborSpec:
    """
    Full DVNUG system parameterization.

    Attributes:
        params (LambdaParams): Lattice parameters
        M (int): Modulation count, T_1 = {0..M-1}
        windows (tuple): Window sequences W_0..W_P
    """
    params: object
    M: int
    windows: tuple

    @property
    def P(self):
        return len(self.windows) - 1

    @property
    def S(self):
        return self.windows[0].S

    def is_zero(self):
        return all(w.is_zero() for w in self.windows)


class CoefficientKey(NamedTuple):
    lam: LambdaPoint
    m: int
    j: int


def make_spec(params, M, windows):
    """
    Build and validate a GaborSpec.

    All-zero window families are accepted so the trivial verdicts can be reported.

    Args:
        params (LambdaParams): Lattice parameters
        M (int): Modulation count
        windows (list): NuSequences W_0..W_P

    Returns:
        GaborSpec: Validated system

    Raises:
        NonPositive: If M < 1 or no windows are given
        DimensionMismatch: If windows disagree on params or S
    """
    if M < 1:
        raise NonPositive(f"modulation count M must be positive, got {M}")
    windows = tuple(windows)
    if not windows:
        raise NonPositive("at least one window (P >= 0) is required")
    S = windows[0].S
    for j, window in enumerate(windows):
        if window.params != params or window.S != S:
            raise DimensionMismatch(
                f"window {j} has (N={window.params.N}, r={window.params.r}, S={window.S}), "
                f"expected (N={params.N}, r={params.r}, S={S})"
            )
    return GaborSpec(params, M, windows)


def replace_windows(spec, windows):
    return make_spec(spec.params, spec.M, windows)


def scale_windows(spec, c):
    return replace_windows(spec, [scale(w, c) for w in spec.windows])


def _check_signal(spec, Z):
    if Z.params != spec.params or Z.S != spec.S:
        raise DimensionMismatch(
            f"signal has (N={Z.params.N}, r={Z.params.r}, S={Z.S}), "
            f"system has (N={spec.params.N}, r={spec.params.r}, S={spec.S})"
        )


def frame_element(spec, lam, m, j):
    """
    The frame element E_{m/M} R_{2Nλ} W_j.

    Args:
        spec (GaborSpec): System
        lam (LambdaPoint): Shift λ
        m (int): Modulation index in T_1
        j (int): Window index in T_2

    Returns:
        NuSequence: The element
    """
    if not 0 <= j <= spec.P:
        raise OutOfRange(f"window index j must lie in [0, {spec.P}], got {j}")
    return modulate(shift(spec.windows[j], lam), m, spec.M)


def _active_shifts_for_window(params, signal_numerators, window):
    period = params.period
    shifts = set()
    for w in window.numerators():
        for z in signal_numerators:
            difference = z - w
            if difference % period == 0 and params.contains_numerator(difference // period):
                shifts.add(params.decode(difference // period))
    return sorted(shifts)


def active_shift_range(spec, Z):
    """
    Every λ for which supp(Z) meets supp(W_j) + 2Nλ for some j.

    Outside this list every analysis coefficient is exactly zero.

    Args:
        spec (GaborSpec): System
        Z (NuSequence): Signal

    Returns:
        list: Sorted LambdaPoints
    """
    _check_signal(spec, Z)
    signal_numerators = Z.numerators()
    shifts = set()
    for window in spec.windows:
        shifts.update(_active_shifts_for_window(spec.params, signal_numerators, window))
    return sorted(shifts)


def analysis(spec, Z, shifts=None):
    """
    Analysis operator: coefficients ⟨Z, E_{m/M} R_{2Nλ} W_j⟩.

    Args:
        spec (GaborSpec): System
        Z (NuSequence): Signal
        shifts (list): Optional explicit shift list (default: the exact active range per window)

    Returns:
        dict: CoefficientKey -> complex, in sorted key order
    """
    _check_signal(spec, Z)
    signal_numerators = Z.numerators()
    coefficients = {}
    for j, window in enumerate(spec.windows):
        window_shifts = shifts if shifts is not None else _active_shifts_for_window(
            spec.params, signal_numerators, window)
        for lam in window_shifts:
            translated = shift(window, lam)
            for m in range(spec.M):
                coefficients[CoefficientKey(lam, m, j)] = inner_product(Z, modulate(translated, m, spec.M))
    logger.debug(f"Analysis produced {len(coefficients)} coefficients for a signal with {len(Z)} support points")
    return dict(sorted(coefficients.items()))


def synthesis(spec, coefficients):
    """
    Pre-frame operator: Σ a_{λ,m,j} E_{m/M} R_{2Nλ} W_j.

    Args:
        spec (GaborSpec): System
        coefficients (dict): CoefficientKey (or (λ, m, j) tuple) -> complex

    Returns:
        NuSequence: The linear combination

    Raises:
        DimensionMismatch: If a key lies outside T_1 x T_2
    """
    entries = {}
    for key, a in sorted(coefficients.items()):
        lam, m, j = key
        if not (0 <= m < spec.M and 0 <= j <= spec.P):
            raise DimensionMismatch(f"coefficient key (m={m}, j={j}) outside T_1 x T_2 (M={spec.M}, P={spec.P})")
        if a == 0:
            continue
        for point, value in frame_element(spec, LambdaPoint(*lam), m, j):
            if point in entries:
                entries[point] = entries[point] + a * value
            else:
                entries[point] = a * value
    return NuSequence(spec.params, spec.S, entries)


def coefficient_inner_product(c, d):
    """⟨c, d⟩ = Σ c conj(d) in ℓ²(Λ, T_1, T_2, C)."""
    return complex(sum((a * np.conj(d[key]) for key, a in c.items() if key in d), 0j))


def frame_operator_apply(spec, Z):
    """Frame operator Ξ(Z) = synthesis(analysis(Z))."""
    return synthesis(spec, analysis(spec, Z))


def energy(spec, Z):
    """
    Σ_{λ,m,j} |⟨Z, E_{m/M} R_{2Nλ} W_j⟩|², an exact finite sum.

    Args:
        spec (GaborSpec): System
        Z (NuSequence): Signal

    Returns:
        float: The energy
    """
    coefficients = analysis(spec, Z)
    return float(sum(abs(a) ** 2 for a in coefficients.values()))


def window_numerators(spec):
    return sorted({p for w in spec.windows for p in w.numerators()}) or [0]


def empirical_frame_ratio(spec, trials=None, seed=None):
    """
    Randomized bracket of the optimal frame bounds.

    Args:
        spec (GaborSpec): System
        trials (int): Number of random signals
        seed (int): Generator seed

    Returns:
        tuple: (min_ratio, max_ratio) of energy(Z)/‖Z‖²
    """
    trials = config.DEFAULT_TRIALS if trials is None else trials
    seed = config.DEFAULT_SEED if seed is None else seed
    if trials < 1:
        raise NonPositive(f"trials must be positive, got {trials}")
    rng = np.random.default_rng(seed)
    centers = window_numerators(spec)
    ratios = []
    for _ in range(trials):
        Z = random_sequence(
            spec.params, spec.S, rng, centers=centers,
            max_support=config.RANDOM_MAX_SUPPORT,
            outlier_probability=config.RANDOM_OUTLIER_PROBABILITY,
            outlier_distance=config.RANDOM_OUTLIER_DISTANCE,
        )
        ratios.append(energy(spec, Z) / norm(Z) ** 2)
    logger.info(f"Empirical frame ratios over {trials} trials (seed {seed}): [{min(ratios)}, {max(ratios)}]")
    return min(ratios), max(ratios)


def frame_operator_inverse(spec, Y, tol=None, maxiter=None):
    """
    Solve Ξ X = Y by conjugate gradient on finitely supported sequences.

    Iterations stop once ‖Y - ΞX‖/‖Y‖ < tol.

    Args:
        spec (GaborSpec): System
        Y (NuSequence): Right-hand side
        tol (float): Relative residual tolerance (default config.CG_TOL)
        maxiter (int): Iteration cap (default CG_MAXITER_FACTOR x active dimension)

    Returns:
        tuple: (X, iterations)

    Raises:
        NotAFrameSuspected: On nonpositive curvature or stagnation
    """
    _check_signal(spec, Y)
    tol = config.CG_TOL if tol is None else tol
    if Y.is_zero():
        return Y, 0
    if maxiter is None:
        reach = set(Y.support) | set(frame_operator_apply(spec, Y).support)
        maxiter = config.CG_MAXITER_FACTOR * spec.S * max(len(reach), 1)

    x = NuSequence(spec.params, spec.S)
    residual = Y
    direction = Y
    reference = norm(Y) ** 2
    residual_sq = reference
    for iteration in range(1, maxiter + 1):
        image = frame_operator_apply(spec, direction)
        curvature = inner_product(direction, image).real
        if curvature <= 0:
            raise NotAFrameSuspected(f"frame operator is not positive definite on the Krylov space (iteration {iteration})")
        alpha = residual_sq / curvature
        x = add(x, scale(direction, alpha))
        residual = subtract(residual, scale(image, alpha))
        new_residual_sq = norm(residual) ** 2
        if new_residual_sq / reference < tol ** 2:
            logger.debug(f"Conjugate gradient converged in {iteration} iterations")
            return x, iteration
        direction = add(residual, scale(direction, new_residual_sq / residual_sq))
        residual_sq = new_residual_sq

    raise NotAFrameSuspected(
        f"conjugate gradient stagnated after {maxiter} iterations "
        f"(relative residual {np.sqrt(residual_sq / reference):.3e})"
    )


def reconstruct(spec, coefficients, tol=None):
    """
    Canonical-dual reconstruction Ξ^{-1} 𝒯 c.

    Args:
        spec (GaborSpec): System
        coefficients (dict): Coefficients, e.g. from analysis()
        tol (float): CG tolerance

    Returns:
        NuSequence: Reconstructed signal
    """
    signal, iterations = frame_operator_inverse(spec, synthesis(spec, coefficients), tol=tol)
    logger.info(f"Reconstructed signal with {len(signal)} support points in {iterations} CG iterations")
    return signal
