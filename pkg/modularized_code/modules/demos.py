"""
Built-in example systems and end-to-end demo runs for the DVNUG frame toolkit.

The reference system lives on Λ = {0, 1/2} + 2ℤ (N=2, r=1) with S=2, M=2 and
eight windows supported on {0, 4} or {1/2, 9/2}. It is a tight frame with
bound 4. The perturbed windows replace the entry at 0 of the first four windows
by -16/17 and negate everything else.
"""
import logging
from fractions import Fraction
from typing import NamedTuple

import numpy as np

import config
from modules import bounds, gabor, perturb, reductions
from modules.lambda_set import LambdaPoint, make_grid, validate_params
from modules.sequences import NuSequence, lift, random_sequence

logger = logging.getLogger(__name__)

# (n, eps) of the support points 0, 4, 1/2, 9/2 for N=2, r=1
ZERO, FOUR = LambdaPoint(0, 0), LambdaPoint(2, 0)
HALF, NINE_HALVES = LambdaPoint(0, 1), LambdaPoint(2, 1)

# Coordinate patterns of W_0..W_3 at the (first, second) support point
PATTERNS = [
    ([1, 0], [1, 0]),
    ([1, 0], [-1, 0]),
    ([0, 1], [0, 1]),
    ([0, 1], [0, -1]),
]

PERTURBED_ENTRY = Fraction(-16, 17)


class DemoCheck(NamedTuple):
    label: str
    expected: float
    actual: float
    passed: bool


class DemoResult(NamedTuple):
    name: str
    checks: list

    @property
    def passed(self):
        return all(check.passed for check in self.checks)


def reference_params():
    return validate_params(2, 1)


def reference_windows():
    """W_0..W_7 of the tight reference frame."""
    params = reference_params()
    windows = []
    for first, second in ((ZERO, FOUR), (HALF, NINE_HALVES)):
        for a, b in PATTERNS:
            windows.append(NuSequence(params, 2, {first: a, second: b}))
    return windows


def reference_spec():
    return gabor.make_spec(reference_params(), 2, reference_windows())


def perturbed_windows():
    """V_0..V_7: -W_j except that the entry at 0 of V_0..V_3 is -16/17."""
    params = reference_params()
    windows = []
    for j, window in enumerate(reference_windows()):
        entries = {point: -value for point, value in window}
        if j < 4:
            entries[ZERO] = float(PERTURBED_ENTRY) * np.array(PATTERNS[j][0], dtype=complex)
        windows.append(NuSequence(params, 2, entries))
    return windows


def perturbed_reference_spec():
    return perturb.perturbed_spec(reference_spec(), perturbed_windows())


def orthonormal_spec():
    """δ_0 and δ_{1} on ℤ (N=1, r=1): every integer is reached exactly once."""
    params = validate_params(1, 1)
    windows = [NuSequence(params, 1, {LambdaPoint(0, 0): [1]}), NuSequence(params, 1, {LambdaPoint(0, 1): [1]})]
    return gabor.make_spec(params, 1, windows)


EXPORTS = {
    "example-3.4": reference_spec,
    "example-4.2": perturbed_reference_spec,
}


def _close(label, expected, actual, tol):
    return DemoCheck(label, float(expected), float(actual), bool(abs(actual - expected) <= tol))


def run_bessel(grid, tol, trials, seed):
    spec = reference_spec()
    B0 = bounds.grid_B0(spec, grid)
    necessary = bounds.bessel_necessary_check(spec, 4.0, grid)
    return [
        _close("grid_B0", 2.0, B0, 1e-3),
        _close("bessel_sufficient_bound(B0=2)", 4096.0, bounds.bessel_sufficient_bound(spec, 2.0), 0.0),
        DemoCheck("necessary check with B=4", necessary.threshold, necessary.B0_grid, necessary.passed),
    ]


def run_matrix_identity(grid, tol, trials, seed):
    check = bounds.verify_matrix_identity(reference_spec(), grid, constant=16.0)
    return [DemoCheck("max |M M* - 16 δ I|", 0.0, check.max_deviation, check.max_deviation < 1e-10)]


def run_tight(grid, tol, trials, seed):
    spec = reference_spec()
    A_est, B_est = bounds.frame_bounds_grid(spec, grid)
    low, high = gabor.empirical_frame_ratio(spec, trials=trials, seed=seed)
    return [
        _close("A_est", 4.0, A_est, tol),
        _close("B_est", 4.0, B_est, tol),
        _close("empirical min ratio", 4.0, low, tol),
        _close("empirical max ratio", 4.0, high, tol),
    ]


def run_perturb(grid, tol, trials, seed):
    specW = reference_spec()
    report = perturb.perturbation_report(specW, perturbed_windows(), grid, A0=4.0, B0=4096.0)
    checks = [
        _close("theta", 1 / 17, report.theta, 1e-6),
        _close("condition value", 1024 / 289, report.condition_value, 1e-9),
        DemoCheck("certified", 1.0, float(report.certified), report.certified),
        _close("lower bound", 4 / 289, report.lower, 1e-9),
        _close("upper bound", 2048 / 289 + 8192, report.upper, 1e-6),
    ]
    if report.certified:
        verified = perturb.verify_perturbed(perturbed_reference_spec(), report, trials=trials, seed=seed, tol=tol)
        checks.append(DemoCheck("empirical ratios inside bounds", report.lower, verified.empirical_min, verified.passed))
    return checks


def run_mean(grid, tol, trials, seed):
    spec = reference_spec()
    mean = reductions.mean_system(spec)
    A_mean, B_mean = bounds.frame_bounds_grid(mean, grid)
    low, high = gabor.empirical_frame_ratio(mean, trials=trials, seed=seed)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(50):
        x = random_sequence(mean.params, 1, rng, centers=[0, 1, 8, 9])
        parent = gabor.energy(spec, lift(x, spec.S))
        worst = max(worst, abs(parent - spec.S ** 2 * gabor.energy(mean, x)))
    return [
        _close("A_mean", 2.0, A_mean, tol),
        _close("B_mean", 2.0, B_mean, tol),
        _close("empirical min ratio", 2.0, low, tol),
        _close("empirical max ratio", 2.0, high, tol),
        DemoCheck("lift identity deviation", 0.0, worst, worst <= 1e-10),
    ]


def run_rows(grid, tol, trials, seed):
    spec = reference_spec()
    checks = []
    for l0 in range(1, spec.S + 1):
        A_row, _ = bounds.frame_bounds_grid(reductions.row_system(spec, l0), grid)
        checks.append(DemoCheck(f"row {l0} lower bound", 4.0, A_row, A_row >= 4.0 - 1e-6))
    counter = reductions.converse_counterexample(reductions.mean_system(spec))
    witness_energy = gabor.energy(counter.spec, counter.witness)
    checks.append(DemoCheck("converse witness energy", 0.0, witness_energy, witness_energy == 0.0))
    return checks


DEMOS = {
    "example-3.4": ("Bessel bounds of the reference system", run_bessel),
    "matrix-identity": ("M_{m,k} M*_{m,k'} = 16 δ_{kk'} I_8 on the grid", run_matrix_identity),
    "tight-3.10": ("reference system is a tight frame with bound 4", run_tight),
    "perturb-4.2": ("perturbed windows are certified as a frame", run_perturb),
    "mean-5.1": ("arithmetic-mean system is tight with bound 2", run_mean),
    "rows-5.2": ("row systems inherit the lower bound; converse fails", run_rows),
}

ALIASES = {"bessel-3.4": "example-3.4"}


def resolve(name):
    return ALIASES.get(name, name)


def run_demo(name, resolution=None, tol=None, trials=None, seed=None):
    """
    Run a named demo and compare against its expected values.

    Args:
        name (str): Demo name or alias
        resolution (int): Grid resolution Q
        tol (float): Tolerance for tight-bound comparisons
        trials (int): Empirical trials
        seed (int): Generator seed

    Returns:
        DemoResult: Checks with expected and actual values

    Raises:
        KeyError: If the name is unknown
    """
    name = resolve(name)
    _, runner = DEMOS[name]
    resolution = config.DEFAULT_GRID if resolution is None else resolution
    tol = config.DEFAULT_TOL if tol is None else tol
    trials = config.DEFAULT_TRIALS if trials is None else trials
    seed = config.DEFAULT_SEED if seed is None else seed
    logger.info(f"Running demo {name} at Q={resolution}")
    grid = make_grid(reference_params(), resolution)
    return DemoResult(name, runner(grid, tol, trials, seed))
