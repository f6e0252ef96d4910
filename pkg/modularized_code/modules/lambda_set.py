"""
Nonuniform index set module for the DVNUG frame toolkit.

Λ = {0, r/N} + 2ℤ is carried exactly: a point λ = 2n + eps·r/N is stored as the
pair (n, eps) and converted to the integer numerator p = 2nN + eps·r of λ = p/N
whenever arithmetic is needed. The spectral domain is
Ω = [0, 1/2) ∪ [N/2, (N+1)/2).
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from modules.errors import FrequencyNotInLambda, NonOdd, NonPositive, NotCoprime, OutOfRange

logger = logging.getLogger(__name__)


class LambdaPoint(NamedTuple):
    """A point 2n + eps·r/N of Λ."""
    n: int
    eps: int


ORIGIN = LambdaPoint(0, 0)


@dataclass(frozen=True)
class LambdaParams:
    N: int
    r: int

    @property
    def period(self):
        """Residues of numerators are taken mod 2N."""
        return 2 * self.N

    @property
    def is_uniform(self):
        return self.N == 1

    def numerator(self, point):
        """
        Integer numerator p of λ = p/N.

        Args:
            point (LambdaPoint): Point of Λ

        Returns:
            int: 2nN + eps·r
        """
        return 2 * point.n * self.N + point.eps * self.r

    def contains_numerator(self, p):
        residue = p % self.period
        return residue == 0 or residue == self.r % self.period

    def decode(self, p):
        """
        Inverse of numerator().

        Args:
            p (int): Candidate numerator

        Returns:
            LambdaPoint: The unique point with numerator p

        Raises:
            FrequencyNotInLambda: If p/N is not a point of Λ
        """
        residue = p % self.period
        if residue == 0:
            return LambdaPoint((p // self.period), 0)
        if residue == self.r % self.period:
            return LambdaPoint((p - self.r) // self.period, 1)
        raise FrequencyNotInLambda(f"{p}/{self.N} is not a point of Λ (N={self.N}, r={self.r})")

    def omega_intervals(self):
        """
        The two half-open intervals of Ω with exact endpoints.

        Returns:
            list: [(a, b), (a, b)] as Fractions
        """
        half = Fraction(1, 2)
        return [(Fraction(0), half), (Fraction(self.N, 2), Fraction(self.N + 1, 2))]

    def translate_offsets(self):
        """
        The 4N offsets t/4N and N/2 + t/4N, t = 0..2N-1, in matrix row order.

        Returns:
            list: Fractions
        """
        first = [Fraction(t, 4 * self.N) for t in range(2 * self.N)]
        second = [Fraction(self.N, 2) + Fraction(t, 4 * self.N) for t in range(2 * self.N)]
        return first + second


def validate_params(N, r):
    """
    Validate the lattice parameters N and r.

    Args:
        N (int): Positive integer
        r (int): Odd integer, 1 <= r <= 2N-1, coprime with N

    Returns:
        LambdaParams: Validated parameters

    Raises:
        NonPositive, NonOdd, OutOfRange, NotCoprime
    """
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise NonPositive(f"N must be a positive integer, got {N!r}")
    if not isinstance(r, int) or isinstance(r, bool):
        raise NonOdd(f"r must be an odd integer, got {r!r}")
    if r % 2 == 0:
        raise NonOdd(f"r must be odd, got {r}")
    if not 1 <= r <= 2 * N - 1:
        raise OutOfRange(f"r must lie in [1, {2 * N - 1}], got {r}")
    if math.gcd(r, N) != 1:
        raise NotCoprime(f"gcd(r, N) must be 1, got gcd({r}, {N}) = {math.gcd(r, N)}")
    return LambdaParams(N, r)


def lambda_value(point, params):
    """
    Value of a Λ point, exactly and as a float.

    Args:
        point (LambdaPoint): Point of Λ
        params (LambdaParams): Lattice parameters

    Returns:
        tuple: (Fraction, float)
    """
    exact = Fraction(params.numerator(point), params.N)
    return exact, float(exact)


def translate_point(point, shift_lambda, params):
    """
    The point λ' + 2Nλ_shift.

    2Nλ_shift is an even integer, so the eps component is preserved.

    Args:
        point (LambdaPoint): λ'
        shift_lambda (LambdaPoint): λ_shift
        params (LambdaParams): Lattice parameters

    Returns:
        LambdaPoint: The translated point
    """
    p = params.numerator(point) + params.period * params.numerator(shift_lambda)
    return params.decode(p)


@dataclass(frozen=True, eq=False)
class XiGrid:
    """
    Midpoint samples of [0, 1/4N) together with their 4N translates covering Ω.

    Attributes:
        params (LambdaParams): Lattice parameters
        resolution (int): Number Q of base points
        base (numpy.ndarray): Shape (Q,) base points (q + 1/2)/(4NQ)
        offsets (tuple): 4N exact Fraction offsets
        points (numpy.ndarray): Shape (Q, 4N) translate points base + offset
    """
    params: LambdaParams
    resolution: int
    base: np.ndarray
    offsets: tuple
    points: np.ndarray

    def base_fraction(self, q):
        return Fraction(2 * q + 1, 8 * self.params.N * self.resolution)

    def cell_intervals(self):
        """
        The 4N intervals [o, o + 1/4N) tiling Ω.

        Returns:
            list: (a, b) Fraction pairs sorted by a
        """
        width = Fraction(1, 4 * self.params.N)
        return sorted((o, o + width) for o in self.offsets)


def make_grid(params, Q):
    """
    Build the sampling grid over Ω.

    Args:
        params (LambdaParams): Lattice parameters
        Q (int): Number of base points in [0, 1/4N)

    Returns:
        XiGrid: The grid

    Raises:
        NonPositive: If Q < 1
    """
    if not isinstance(Q, (int, np.integer)) or Q < 1:
        raise NonPositive(f"grid resolution must be a positive integer, got {Q!r}")
    Q = int(Q)
    base = (np.arange(Q) + 0.5) / (4 * params.N * Q)
    offsets = tuple(params.translate_offsets())
    points = base[:, None] + np.array([float(o) for o in offsets])[None, :]
    logger.debug(f"Built grid with Q={Q}, {points.size} points over Ω for N={params.N}")
    return XiGrid(params, Q, base, offsets, points)
