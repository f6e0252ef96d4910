"""
Perturbation module for the DVNUG frame toolkit.

Given a frame generated by windows W_j with bounds A0, B0 and new windows V_j,
θ bounds ‖𝓕E_{m/M}(W_j + V_j)(ξ)‖ and the V-system is a frame as soon as
2^{M+P}θ²S < A0.
"""
import logging
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

import config
from modules.bounds import frame_bounds_grid, grid_B0
from modules.errors import DimensionMismatch, InvalidBounds, PreconditionError
from modules.gabor import empirical_frame_ratio, make_spec
from modules.lambda_set import make_grid
from modules.sequences import add

logger = logging.getLogger(__name__)


@dataclass
class PerturbationReport:
    theta: float
    condition_value: float
    certified: bool
    lower: float
    upper: float
    A0: float
    B0: float
    chain_satisfied: bool
    resolution: int = 0
    refined_theta: float = None
    refined_certified: bool = None
    stable: bool = True

    def to_dict(self):
        return asdict(self)


class PerturbationCheck(NamedTuple):
    passed: bool
    empirical_min: float
    empirical_max: float


def perturbed_spec(specW, V):
    """
    The system generated by the windows V_j with the parameters of specW.

    Raises:
        DimensionMismatch: If V does not hold P+1 windows on the same lattice
    """
    V = list(V)
    if len(V) != specW.P + 1:
        raise DimensionMismatch(f"expected {specW.P + 1} perturbed windows, got {len(V)}")
    return make_spec(specW.params, specW.M, V)


def compute_theta(specW, V, grid):
    """
    Grid estimate of θ = sup ‖𝓕E_{m/M}(W_j + V_j)(ξ)‖ over m, j and Ω.

    Args:
        specW (GaborSpec): Unperturbed system
        V (list): Perturbed windows V_0..V_P
        grid (XiGrid): Sampling grid

    Returns:
        float: θ (a lower estimate of the essential sup)
    """
    specV = perturbed_spec(specW, V)
    sums = make_spec(specW.params, specW.M, [add(w, v) for w, v in zip(specW.windows, specV.windows)])
    theta = grid_B0(sums, grid)
    logger.debug(f"theta at Q={grid.resolution}: {theta}")
    return theta


def certify(theta, A0, B0, M, P, S):
    """
    Certification of the perturbed frame and its bounds.

    The condition checked is 2^{M+P}θ²S < A0. The stronger chain θ < 2^{M+P}θ²S
    is only recorded in chain_satisfied.

    Args:
        theta (float): Perturbation size
        A0 (float): Lower frame bound of the unperturbed system
        B0 (float): Upper frame bound of the unperturbed system
        M, P, S (int): System dimensions

    Returns:
        PerturbationReport: Report with bounds (√A0 - √c)² and 2c + 2B0

    Raises:
        InvalidBounds: If A0 <= 0, B0 < A0 or theta < 0
    """
    if A0 <= 0:
        raise InvalidBounds(f"A0 must be positive, got {A0}")
    if B0 < A0:
        raise InvalidBounds(f"B0 must be at least A0, got A0={A0}, B0={B0}")
    if theta < 0:
        raise InvalidBounds(f"theta must be nonnegative, got {theta}")
    condition_value = float(2 ** (M + P) * theta ** 2 * S)
    certified = condition_value < A0
    lower = float((np.sqrt(A0) - np.sqrt(condition_value)) ** 2) if certified else 0.0
    upper = float(2 * condition_value + 2 * B0)
    return PerturbationReport(
        theta=float(theta),
        condition_value=condition_value,
        certified=certified,
        lower=lower,
        upper=upper,
        A0=float(A0),
        B0=float(B0),
        chain_satisfied=bool(theta < condition_value < A0),
    )


def perturbation_report(specW, V, grid, A0=None, B0=None):
    """
    θ, certification and bounds, with θ rechecked at twice the resolution.

    Args:
        specW (GaborSpec): Unperturbed frame
        V (list): Perturbed windows
        grid (XiGrid): Sampling grid
        A0 (float): Lower bound of specW (default: grid estimate)
        B0 (float): Upper bound of specW (default: grid estimate)

    Returns:
        PerturbationReport: The report
    """
    if A0 is None or B0 is None:
        A_est, B_est = frame_bounds_grid(specW, grid)
        A0 = A_est if A0 is None else A0
        B0 = B_est if B0 is None else B0
    logger.info(f"Certifying perturbation with A0={A0}, B0={B0} at Q={grid.resolution}")
    theta = compute_theta(specW, V, grid)
    report = certify(theta, A0, B0, specW.M, specW.P, specW.S)
    report.resolution = grid.resolution

    refined_theta = compute_theta(specW, V, make_grid(specW.params, 2 * grid.resolution))
    refined = certify(refined_theta, A0, B0, specW.M, specW.P, specW.S)
    report.refined_theta = refined.theta
    report.refined_certified = refined.certified
    report.stable = refined.certified == report.certified
    if not report.stable:
        logger.warning(f"Certification changed under refinement: theta {theta} -> {refined_theta}")
        report.certified = False
    logger.info(f"theta={theta}, condition={report.condition_value}, certified={report.certified}")
    return report


def verify_perturbed(specV, report, trials=None, seed=None, tol=None):
    """
    Check the certified bounds against empirical ratios of the perturbed system.

    Args:
        specV (GaborSpec): Perturbed system
        report (PerturbationReport): Certified report
        trials (int): Number of random signals
        seed (int): Generator seed
        tol (float): Slack on both bounds

    Returns:
        PerturbationCheck: (passed, empirical_min, empirical_max)

    Raises:
        PreconditionError: If the report is not certified
    """
    if not report.certified:
        raise PreconditionError("perturbed system can only be verified against a certified report")
    tol = config.DEFAULT_TOL if tol is None else tol
    low, high = empirical_frame_ratio(specV, trials=trials, seed=seed)
    passed = report.lower - tol <= low and high <= report.upper + tol
    return PerturbationCheck(bool(passed), low, high)
