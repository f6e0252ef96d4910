"""
Finitely supported vector-valued sequences on Λ for the DVNUG frame toolkit.

A NuSequence is a sparse map LambdaPoint -> C^S. Absent points are the zero
vector and stored vectors are never exactly zero. Coordinates are numbered
1..S in the public API.
"""
import logging
from fractions import Fraction
from types import MappingProxyType

import numpy as np

from modules.errors import DimensionMismatch, OutOfRange
from modules.lambda_set import LambdaPoint, translate_point
from utils.helpers import unit_phase

logger = logging.getLogger(__name__)


class NuSequence:
    """
    Immutable finitely supported sequence Z: Λ -> C^S.

    Args:
        params (LambdaParams): Lattice parameters
        S (int): Vector length
        entries (dict): LambdaPoint -> sequence of S complex numbers
    """

    __slots__ = ("params", "S", "_support")

    def __init__(self, params, S, entries=None):
        if S < 1:
            raise DimensionMismatch(f"vector length S must be positive, got {S}")
        support = {}
        for point, value in (entries or {}).items():
            vector = np.array(value, dtype=complex).reshape(-1)
            if vector.shape != (S,):
                raise DimensionMismatch(f"entry at {tuple(point)} has {vector.size} components, expected {S}")
            if np.any(vector != 0):
                vector.flags.writeable = False
                support[LambdaPoint(int(point[0]), int(point[1]))] = vector
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "_support", dict(sorted(support.items())))

    def __setattr__(self, name, value):
        raise AttributeError("NuSequence is immutable")

    @property
    def support(self):
        return MappingProxyType(self._support)

    def __len__(self):
        return len(self._support)

    def __iter__(self):
        return iter(self._support.items())

    def __getitem__(self, point):
        return self._support.get(point, np.zeros(self.S, dtype=complex))

    def is_zero(self):
        return not self._support

    def numerators(self):
        return [self.params.numerator(point) for point in self._support]

    def __eq__(self, other):
        if not isinstance(other, NuSequence):
            return NotImplemented
        if self.params != other.params or self.S != other.S or self._support.keys() != other._support.keys():
            return False
        return all(np.array_equal(v, other._support[k]) for k, v in self._support.items())

    __hash__ = None

    def __repr__(self):
        return f"NuSequence(N={self.params.N}, r={self.params.r}, S={self.S}, support={len(self)} points)"


def _check_compatible(Z, W):
    if Z.params != W.params or Z.S != W.S:
        raise DimensionMismatch(
            f"sequences differ: (N={Z.params.N}, r={Z.params.r}, S={Z.S}) vs "
            f"(N={W.params.N}, r={W.params.r}, S={W.S})"
        )


def zeros(params, S):
    return NuSequence(params, S)


def delta(params, S, point=LambdaPoint(0, 0), k=1, value=1.0):
    """
    Unit impulse at a point in coordinate k.

    Args:
        params (LambdaParams): Lattice parameters
        S (int): Vector length
        point (LambdaPoint): Location
        k (int): Coordinate 1..S
        value (complex): Amplitude

    Returns:
        NuSequence: The impulse
    """
    if not 1 <= k <= S:
        raise OutOfRange(f"coordinate k must lie in [1, {S}], got {k}")
    vector = np.zeros(S, dtype=complex)
    vector[k - 1] = value
    return NuSequence(params, S, {point: vector})


def inner_product(Z, W):
    """
    ⟨Z, W⟩ = Σ_λ Σ_k [Z(λ)]_k conj([W(λ)]_k).

    Args:
        Z (NuSequence): First argument (linear)
        W (NuSequence): Second argument (conjugate-linear)

    Returns:
        complex: The inner product
    """
    _check_compatible(Z, W)
    total = 0j
    smaller, other, flip = (Z, W, False) if len(Z) <= len(W) else (W, Z, True)
    for point, value in smaller:
        partner = other.support.get(point)
        if partner is not None:
            # [a, -a] against [c, c] must give exactly 0
            total += np.sum(value * np.conj(partner)) if not flip else np.sum(partner * np.conj(value))
    return complex(total)


def norm(Z):
    return float(np.sqrt(sum(float(np.vdot(v, v).real) for _, v in Z)))


def shift(Z, lam):
    """
    Shift operator (R_{2Nλ}Z)(λ') = Z(λ' - 2Nλ).

    Args:
        Z (NuSequence): Sequence
        lam (LambdaPoint): λ

    Returns:
        NuSequence: Shifted sequence
    """
    return NuSequence(Z.params, Z.S, {translate_point(point, lam, Z.params): value for point, value in Z})


def _check_modulation(m, M):
    if M < 1:
        raise OutOfRange(f"modulation count M must be positive, got {M}")
    if not 0 <= m <= M - 1:
        raise OutOfRange(f"modulation index m must lie in [0, {M - 1}], got {m}")


def modulation_phase(p, m, M, N):
    """e^{2πi(m/M)(p/N)} evaluated from the exact rational."""
    return unit_phase(Fraction(m * p, M * N))


def modulate(Z, m, M):
    """
    Modulation operator (E_{m/M}Z)(λ') = e^{2πi(m/M)λ'} Z(λ').

    Args:
        Z (NuSequence): Sequence
        m (int): Index 0..M-1
        M (int): Modulation count

    Returns:
        NuSequence: Modulated sequence
    """
    _check_modulation(m, M)
    if m == 0:
        return Z
    N = Z.params.N
    return NuSequence(Z.params, Z.S, {
        point: modulation_phase(Z.params.numerator(point), m, M, N) * value for point, value in Z
    })


def arithmetic_mean(Z):
    """
    Scalar sequence μ_Z(λ) = (1/S) Σ_k [Z(λ)]_k.

    Args:
        Z (NuSequence): Sequence

    Returns:
        NuSequence: Scalar (S = 1) sequence
    """
    if Z.S == 1:
        return Z
    return NuSequence(Z.params, 1, {point: [value.sum() / Z.S] for point, value in Z})


def add(Z, W):
    _check_compatible(Z, W)
    entries = dict(Z.support)
    for point, value in W:
        entries[point] = entries[point] + value if point in entries else value
    return NuSequence(Z.params, Z.S, entries)


def subtract(Z, W):
    return add(Z, scale(W, -1))


def scale(Z, c):
    return NuSequence(Z.params, Z.S, {point: c * value for point, value in Z})


def coordinate(Z, k):
    """
    The k-th coordinate sequence of Z (k = 1..S) as a scalar sequence.
    """
    if not 1 <= k <= Z.S:
        raise OutOfRange(f"coordinate k must lie in [1, {Z.S}], got {k}")
    return NuSequence(Z.params, 1, {point: [value[k - 1]] for point, value in Z})


def lift(x, S, coords=None, signs=None):
    """
    Place a scalar sequence x into coordinates of an S-vector sequence.

    Args:
        x (NuSequence): Scalar sequence
        S (int): Target vector length
        coords (list): 1-based coordinates receiving x (default: all)
        signs (list): Optional complex factor per listed coordinate

    Returns:
        NuSequence: The lifted sequence
    """
    if x.S != 1:
        raise DimensionMismatch(f"lift expects a scalar sequence, got S={x.S}")
    coords = list(range(1, S + 1)) if coords is None else list(coords)
    signs = [1] * len(coords) if signs is None else list(signs)
    pattern = np.zeros(S, dtype=complex)
    for k, sign in zip(coords, signs):
        if not 1 <= k <= S:
            raise OutOfRange(f"coordinate k must lie in [1, {S}], got {k}")
        pattern[k - 1] = sign
    return NuSequence(x.params, S, {point: value[0] * pattern for point, value in x})


def random_sequence(params, S, rng, centers=None, radius=6, max_support=8,
                    outlier_probability=0.25, outlier_distance=64):
    """
    Draw a random nonzero finitely supported sequence.

    Support points are drawn near the given center numerators, with an
    occasional far outlier so both overlapping and disjoint shift regimes occur.

    Args:
        params (LambdaParams): Lattice parameters
        S (int): Vector length
        rng (numpy.random.Generator): Seeded generator
        centers (list): Numerators to cluster around (default [0])
        radius (int): Spread of clustered points in units of 2
        max_support (int): Largest support size
        outlier_probability (float): Chance that a point is placed far away
        outlier_distance (int): Spread of outliers in units of 2

    Returns:
        NuSequence: Random sequence with at least one nonzero entry
    """
    centers = list(centers) if centers else [0]
    size = int(rng.integers(1, max_support + 1))
    entries = {}
    while len(entries) < size:
        anchor = centers[int(rng.integers(len(centers)))]
        base_n = (anchor - anchor % params.period) // params.period
        spread = outlier_distance if rng.random() < outlier_probability else radius
        point = LambdaPoint(base_n + int(rng.integers(-spread, spread + 1)), int(rng.integers(2)))
        entries[point] = rng.standard_normal(S) + 1j * rng.standard_normal(S)
    return NuSequence(params, S, entries)
