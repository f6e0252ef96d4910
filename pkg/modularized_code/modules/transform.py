"""
Fourier transform module for the DVNUG frame toolkit.

Λ ⊂ (1/N)ℤ, so the transform of a finitely supported sequence is a Laurent
polynomial in w = e^{2πiξ/N}: F_k(ξ) = Σ_p c_{k,p} e^{2πi(p/N)ξ}. Coefficients
are keyed by the integer frequency p, which for a forward transform is the
numerator of the Λ point carrying the value.
"""
import logging
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from modules.errors import DimensionMismatch, FrequencyNotInLambda
from modules.sequences import NuSequence, modulate
from utils.helpers import unit_phase

logger = logging.getLogger(__name__)


class Interval(NamedTuple):
    """Half-open integration interval [a, b) with rational endpoints."""
    a: Fraction
    b: Fraction


def make_interval(a, b):
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError(f"interval endpoints must satisfy a < b, got [{a}, {b})")
    return Interval(a, b)


def omega_domain(params):
    """Ω as two exact intervals."""
    return [Interval(a, b) for a, b in params.omega_intervals()]


class LaurentPolynomial:
    """
    Scalar trigonometric polynomial Σ_p c_p e^{2πi(p/N)ξ}.

    Args:
        N (int): Frequency denominator
        coeffs (dict): Integer frequency -> complex coefficient
    """

    __slots__ = ("N", "coeffs")

    def __init__(self, N, coeffs=None):
        self.N = N
        self.coeffs = {int(p): complex(c) for p, c in sorted((coeffs or {}).items()) if c != 0}

    def is_zero(self):
        return not self.coeffs

    def frequencies(self):
        return np.fromiter(self.coeffs.keys(), dtype=np.int64, count=len(self.coeffs))

    def values(self):
        return np.fromiter(self.coeffs.values(), dtype=complex, count=len(self.coeffs))

    def evaluate(self, xi):
        """
        Evaluate at real points.

        Args:
            xi (float | numpy.ndarray): Points

        Returns:
            complex | numpy.ndarray: Values with the shape of xi
        """
        xi = np.asarray(xi, dtype=float)
        if not self.coeffs:
            return np.zeros(xi.shape, dtype=complex) if xi.shape else 0j
        kernel = np.exp(2j * np.pi * np.multiply.outer(xi, self.frequencies()) / self.N)
        return kernel @ self.values()

    def conjugate(self):
        """Pointwise complex conjugate on real ξ (frequencies reflect)."""
        return LaurentPolynomial(self.N, {-p: c.conjugate() for p, c in self.coeffs.items()})

    def translate(self, tau):
        """
        The polynomial ξ -> F(ξ + τ) for an exact rational τ.
        """
        tau = Fraction(tau)
        return LaurentPolynomial(self.N, {
            p: c * unit_phase(p * tau / self.N) for p, c in self.coeffs.items()
        })

    def periodize(self, offsets):
        """
        Σ_τ F(ξ + τ) over exact rational offsets.

        Phases are reduced in integer arithmetic, one vectorized pass per offset.
        """
        if not self.coeffs:
            return LaurentPolynomial(self.N)
        p = self.frequencies()
        weights = np.zeros(p.shape, dtype=complex)
        for tau in offsets:
            tau = Fraction(tau)
            modulus = self.N * tau.denominator
            weights += np.exp(2j * np.pi * np.mod(p * tau.numerator, modulus) / modulus)
        return LaurentPolynomial(self.N, dict(zip(p.tolist(), self.values() * weights)))

    def times_monomial(self, q, factor=1.0):
        """Multiply by factor·e^{2πi(q/N)ξ}."""
        return LaurentPolynomial(self.N, {p + q: factor * c for p, c in self.coeffs.items()})

    def scaled(self, factor):
        return LaurentPolynomial(self.N, {p: factor * c for p, c in self.coeffs.items()})

    def __add__(self, other):
        coeffs = dict(self.coeffs)
        for p, c in other.coeffs.items():
            coeffs[p] = coeffs.get(p, 0j) + c
        return LaurentPolynomial(self.N, coeffs)

    def __mul__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return self.scaled(other)
        coeffs = {}
        for p, c in self.coeffs.items():
            for q, d in other.coeffs.items():
                coeffs[p + q] = coeffs.get(p + q, 0j) + c * d
        return LaurentPolynomial(self.N, coeffs)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.N == other.N and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        return f"LaurentPolynomial(N={self.N}, {len(self.coeffs)} terms)"


class LaurentVector:
    """
    S-component transform, one LaurentPolynomial per coordinate.

    Args:
        params (LambdaParams): Lattice parameters
        components (list): S LaurentPolynomials
    """

    __slots__ = ("params", "components")

    def __init__(self, params, components):
        self.params = params
        self.components = tuple(components)

    @property
    def S(self):
        return len(self.components)

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    def __eq__(self, other):
        if not isinstance(other, LaurentVector):
            return NotImplemented
        return self.params == other.params and self.components == other.components

    __hash__ = None

    def __repr__(self):
        terms = sum(len(c.coeffs) for c in self.components)
        return f"LaurentVector(N={self.params.N}, r={self.params.r}, S={self.S}, {terms} terms)"


def forward(Z):
    """
    Fourier transform 𝓕(Z)(ξ) = Σ_λ Z(λ) e^{2πiλξ} as a LaurentVector.

    Args:
        Z (NuSequence): Finitely supported sequence

    Returns:
        LaurentVector: Exact transform
    """
    N = Z.params.N
    components = [{} for _ in range(Z.S)]
    for point, value in Z:
        p = Z.params.numerator(point)
        for k in range(Z.S):
            if value[k] != 0:
                components[k][p] = value[k]
    return LaurentVector(Z.params, [LaurentPolynomial(N, c) for c in components])


def inverse(F):
    """
    Inverse transform by exact coefficient extraction.

    Args:
        F (LaurentVector): Transform with frequencies in 2Nℤ ∪ (r + 2Nℤ)

    Returns:
        NuSequence: The sequence whose transform is F

    Raises:
        FrequencyNotInLambda: If some frequency is not a numerator of Λ
    """
    params = F.params
    entries = {}
    for k, component in enumerate(F.components):
        for p, c in component.coeffs.items():
            point = params.decode(p)
            entries.setdefault(point, np.zeros(F.S, dtype=complex))[k] = c
    return NuSequence(params, F.S, entries)


def evaluate(F, xi):
    """
    Evaluate every component at ξ.

    Args:
        F (LaurentVector): Transform
        xi (float | numpy.ndarray): Points

    Returns:
        numpy.ndarray: Shape xi.shape + (S,)
    """
    return np.stack([np.asarray(c.evaluate(xi), dtype=complex) for c in F.components], axis=-1)


def modulated_transform(W, m, M):
    """𝓕(E_{m/M}W), the coefficient at p picking up e^{2πi(m/M)(p/N)}."""
    return forward(modulate(W, m, M))


def frequency_shift(F, q):
    """Multiply every component by e^{2πi(q/N)ξ}."""
    return LaurentVector(F.params, [c.times_monomial(q) for c in F.components])


def _interval_kernel(q, interval, N):
    """
    Exact ∫_a^b e^{2πi(q/N)ξ} dξ for an integer array q.

    Phases are reduced mod 1 in integer arithmetic before exponentiation.
    """
    q = np.asarray(q, dtype=np.int64)
    result = np.full(q.shape, float(interval.b - interval.a), dtype=complex)
    nonzero = q != 0
    if np.any(nonzero):
        qn = q[nonzero]
        phases = []
        for endpoint in (interval.b, interval.a):
            modulus = N * endpoint.denominator
            turns = np.mod(qn * endpoint.numerator, modulus) / modulus
            phases.append(np.exp(2j * np.pi * turns))
        result[nonzero] = N * (phases[0] - phases[1]) / (2j * np.pi * qn)
    return result


def integrate_scalar_product(f, g, domain):
    """
    Exact ∫_domain f(ξ) conj(g(ξ)) dξ for scalar Laurent polynomials.
    """
    if f.is_zero() or g.is_zero():
        return 0j
    q = np.subtract.outer(f.frequencies(), g.frequencies())
    weights = np.outer(f.values(), g.values().conj())
    total = 0j
    for interval in domain:
        total += complex(np.sum(weights * _interval_kernel(q, interval, f.N)))
    return total


def integrate_product(F, G, domain):
    """
    Σ_k ∫_domain [F]_k conj([G]_k) dξ by closed-form integration.

    Args:
        F (LaurentVector): First argument
        G (LaurentVector): Second argument (conjugated)
        domain (list): Intervals

    Returns:
        complex: The integral

    Raises:
        DimensionMismatch: If the vector lengths differ
    """
    if F.S != G.S or F.params.N != G.params.N:
        raise DimensionMismatch(f"transforms differ: S={F.S} vs S={G.S}")
    return sum((integrate_scalar_product(f, g, domain) for f, g in zip(F.components, G.components)), 0j)


def l2_inner_product(F, G):
    """⟨F, G⟩ in L²(Ω, C^S)."""
    return integrate_product(F, G, omega_domain(F.params))


def l2_norm(F):
    return float(np.sqrt(max(l2_inner_product(F, F).real, 0.0)))


def sup_norm_on_grid(F, grid):
    """
    Grid estimate (a lower bound) of the essential sup of ‖F(ξ)‖_{C^S} over Ω.

    Args:
        F (LaurentVector): Transform
        grid (XiGrid): Sampling grid

    Returns:
        float: Max over every translate point of the grid
    """
    if F.is_zero():
        return 0.0
    values = evaluate(F, grid.points)
    return float(np.max(np.linalg.norm(values, axis=-1)))
