"""
Reduction module for the DVNUG frame toolkit.

Scalar systems derived from a vector-valued one: the arithmetic-mean system,
the row systems of the window matrix and its single-entry Bessel systems.
"""
import logging
from typing import NamedTuple

import numpy as np

from modules.bounds import frame_bounds_grid
from modules.errors import DimensionMismatch, OutOfRange, PreconditionError
from modules.gabor import make_spec, replace_windows
from modules.lambda_set import ORIGIN
from modules.sequences import NuSequence, arithmetic_mean, coordinate, delta, lift

logger = logging.getLogger(__name__)


class WindowMatrix:
    """
    The S x (P+1) window matrix at every support point.

    Entry (l, l') at λ is [W_{l'-1}(λ)]_l, both indices 1-based.

    Args:
        spec (GaborSpec): System
    """

    def __init__(self, spec):
        self.params = spec.params
        self.S = spec.S
        self.P = spec.P
        points = sorted({point for window in spec.windows for point in window.support})
        self.entries = {
            point: np.stack([window[point] for window in spec.windows], axis=1)
            for point in points
        }

    def column(self, l_prime):
        """Window W_{l'-1} reassembled from column l'."""
        if not 1 <= l_prime <= self.P + 1:
            raise OutOfRange(f"column l' must lie in [1, {self.P + 1}], got {l_prime}")
        return NuSequence(self.params, self.S, {p: m[:, l_prime - 1] for p, m in self.entries.items()})

    def entry(self, l, l_prime):
        """Scalar sequence λ -> [W_{l'-1}(λ)]_l."""
        if not 1 <= l <= self.S:
            raise OutOfRange(f"row l must lie in [1, {self.S}], got {l}")
        return coordinate(self.column(l_prime), l)

    def row(self, l):
        return [self.entry(l, l_prime) for l_prime in range(1, self.P + 2)]


class CounterExample(NamedTuple):
    spec: object
    witness: NuSequence


class EntryBesselReport(NamedTuple):
    entries: dict
    beta0: float
    aggregate: float
    bessel: bool


def mean_system(spec):
    """
    Scalar system generated by the arithmetic means μ_{W_j}.

    Args:
        spec (GaborSpec): System

    Returns:
        GaborSpec: S = 1 system with the same N, r, M, P
    """
    if spec.S == 1:
        return spec
    return replace_windows(spec, [arithmetic_mean(w) for w in spec.windows])


def row_system(spec, l0):
    """
    Scalar system generated by row l0 of the window matrix.

    Args:
        spec (GaborSpec): System
        l0 (int): Row 1..S

    Returns:
        GaborSpec: S = 1 system with windows [W_0]_{l0} .. [W_P]_{l0}

    Raises:
        OutOfRange: If l0 is outside 1..S
    """
    if not 1 <= l0 <= spec.S:
        raise OutOfRange(f"row l0 must lie in [1, {spec.S}], got {l0}")
    if spec.S == 1:
        return spec
    return replace_windows(spec, WindowMatrix(spec).row(l0))


def converse_counterexample(scalar_spec, z=None):
    """
    Three-coordinate system whose rows are frames but which is not a frame.

    Windows are [w_j; w_j; w_j]; the witness [z; -z; 0] is orthogonal to every
    frame element.

    Args:
        scalar_spec (GaborSpec): S = 1 system
        z (NuSequence): Nonzero scalar sequence (default: δ at the origin)

    Returns:
        CounterExample: (spec with S = 3, witness)

    Raises:
        DimensionMismatch: If scalar_spec is not scalar
        PreconditionError: If z is zero
    """
    if scalar_spec.S != 1:
        raise DimensionMismatch(f"converse counterexample needs a scalar system, got S={scalar_spec.S}")
    z = delta(scalar_spec.params, 1, ORIGIN) if z is None else z
    if z.is_zero():
        raise PreconditionError("witness sequence z must be nonzero")
    windows = [lift(w, 3) for w in scalar_spec.windows]
    spec = make_spec(scalar_spec.params, scalar_spec.M, windows)
    witness = lift(z, 3, coords=[1, 2], signs=[1, -1])
    return CounterExample(spec, witness)


def entry_bessel_report(spec, grid):
    """
    Grid Bessel bounds of every single-entry system of the window matrix.

    The full system is Bessel iff every entry system is, with aggregate bound
    β0·2^{S-1}·(P+1) where β0 is the largest entry bound.

    Args:
        spec (GaborSpec): System
        grid (XiGrid): Sampling grid

    Returns:
        EntryBesselReport: Bounds keyed by (l, l'), β0, aggregate, verdict
    """
    matrix = WindowMatrix(spec)
    entries = {}
    for l in range(1, spec.S + 1):
        for l_prime in range(1, spec.P + 2):
            entry_spec = make_spec(spec.params, spec.M, [matrix.entry(l, l_prime)])
            entries[(l, l_prime)] = frame_bounds_grid(entry_spec, grid)[1]
    beta0 = max(entries.values())
    aggregate = float(beta0 * 2 ** (spec.S - 1) * (spec.P + 1))
    bessel = all(np.isfinite(b) for b in entries.values())
    logger.info(f"Entry Bessel bounds: beta0={beta0}, aggregate={aggregate}")
    return EntryBesselReport(entries, float(beta0), aggregate, bool(bessel))
