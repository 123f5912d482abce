"""
Entanglement criteria for the isotropic state
PPT, symmetric Gaussian steering and CCNR (realignment), each with a
quantitative margin. Points within 1e-12 of a boundary count as NOT
entangled / NOT steerable / NOT detected.
"""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq

from src.gaussian.errors import NumericalError
from src.gaussian.states import GIParams, gamma_gi, symplectic_nu_tilde
from src.gaussian.symplectic import Mode, partial_transpose, steering_matrix, symplectic_eigenvalues
from src.settings import TOLERANCES

logger = logging.getLogger(__name__)

BOUNDARY_TOL = TOLERANCES["boundary"]
_CROSS_CHECK_TOL = 1e-9


class PPTResult(NamedTuple):
    entangled: bool
    margin: float
    nu_tilde: float


class SteeringResult(NamedTuple):
    steerable: bool
    threshold: float
    margin: float


class CCNRResult(NamedTuple):
    detected: bool
    norm: float
    threshold: float


def ppt(params: GIParams, cross_check: bool = True) -> PPTResult:
    """
    Peres-Horodecki test: entangled iff nu_tilde < 1, i.e. p > tanh r for r > 0

    Args:
        params: State coordinates
        cross_check: Also diagonalise the partially transposed CM and compare

    Returns:
        PPTResult(entangled, margin = tanh r - p, nu_tilde)
    """
    r, p = params.r, params.p
    margin = math.tanh(r) - p
    nu_tilde = symplectic_nu_tilde(params)

    # nu_tilde - 1 = sinh 2r * (tanh r - p)
    scale = max(1.0, math.cosh(2 * r))
    if abs((nu_tilde - 1.0) - math.sinh(2 * r) * margin) > BOUNDARY_TOL * scale:
        raise NumericalError(f"PPT forms disagree at r={r}, p={p}")

    if cross_check:
        numeric = symplectic_eigenvalues(partial_transpose(gamma_gi(params), Mode.B)).min
        if abs(numeric - nu_tilde) > _CROSS_CHECK_TOL * scale:
            raise NumericalError(f"nu_tilde {nu_tilde} does not match spectrum {numeric} at r={r}, p={p}")

    # the margin is negative at r = 0 for any p > 0, while nu_tilde stays 1
    return PPTResult(nu_tilde - 1.0 < -BOUNDARY_TOL, margin, nu_tilde)


def steering_threshold(r: float) -> float:
    """Closed-form steering threshold 1/sqrt(1 + 1/cosh 2r)"""
    return 1.0 / math.sqrt(1.0 + 1.0 / math.cosh(2 * r))


def steering_margin(params: GIParams) -> float:
    """
    Schur-complement margin of gamma + i(0 + Omega_B)

    cosh 2r - p^2 sinh^2 2r / cosh 2r - 1; negative means steerable.
    Evaluated as (1 + (1 - p^2) sinh^2 2r) / cosh 2r - 1.
    """
    s = math.sinh(2 * params.r)
    return (1.0 + (1.0 - params.p * params.p) * s * s) / math.cosh(2 * params.r) - 1.0


def steering_matrix_margin(params: GIParams, steered: Mode = Mode.B) -> float:
    """Minimum eigenvalue of gamma + i(0 + Omega) on the steered mode"""
    return float(np.linalg.eigvalsh(steering_matrix(gamma_gi(params), steered))[0])


def steerable(params: GIParams, cross_check: bool = True) -> SteeringResult:
    """
    Gaussian steerability (A -> B, equal to B -> A for this symmetric state)

    Steerable iff p > 1/sqrt(1 + 1/cosh 2r). The decision uses the Schur
    margin, which stays correct at r = 0 where the closed-form threshold
    drops below 1 but the state is a product of vacua.
    """
    margin = steering_margin(params)
    result = SteeringResult(margin < -BOUNDARY_TOL, steering_threshold(params.r), margin)

    if cross_check:
        matrix_margin = steering_matrix_margin(params)
        if (result.steerable and matrix_margin > _CROSS_CHECK_TOL) or (
            not result.steerable and matrix_margin < -_CROSS_CHECK_TOL
        ):
            raise NumericalError(
                f"steering matrix test ({matrix_margin:.3e}) disagrees with the closed form "
                f"at r={params.r}, p={params.p}"
            )
    return result


def steering_boundary_numeric(r: float) -> float:
    """
    Locate the steering boundary in p by root-finding on the matrix test

    Returns:
        The p at which the minimum eigenvalue of gamma + i(0 + Omega_B) crosses
        zero, or inf when no p in [0, 1] is steerable (r = 0)
    """
    def min_eig(p: float) -> float:
        return steering_matrix_margin(GIParams(r, p))

    if min_eig(1.0) >= -BOUNDARY_TOL:
        return math.inf
    root = brentq(min_eig, 0.0, 1.0, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    logger.debug("steering boundary at r=%s: p=%.15f", r, root)
    return float(root)


def ccnr_threshold(r: float) -> float:
    """Detection threshold (cosh 2r - 1/2)/sinh 2r = (coth r + 3 tanh r)/4; +inf at r = 0"""
    if r == 0:
        return math.inf
    return (math.cosh(2 * r) - 0.5) / math.sinh(2 * r)


def printed_ccnr_threshold(r: float) -> float:
    """
    The threshold as it is often quoted, coth(r)/4 + 3 tanh(r)

    Kept for reporting only; its grouping does not follow from the norm formula.
    """
    if r == 0:
        return math.inf
    return 0.25 / math.tanh(r) + 3.0 * math.tanh(r)


def ccnr(params: GIParams) -> CCNRResult:
    """
    Realignment criterion with norm 1/(2 nu_tilde) for standard-form CMs

    Detects entanglement iff the norm exceeds 1.
    """
    norm = 1.0 / (2.0 * symplectic_nu_tilde(params))
    return CCNRResult(norm - 1.0 > BOUNDARY_TOL, norm, ccnr_threshold(params.r))


@dataclass(frozen=True)
class CriteriaReport:
    ppt_entangled: bool
    ppt_margin: float
    nu_tilde: float
    steerable: bool
    steering_threshold: float
    steering_margin: float
    ccnr_detects: bool
    realigned_norm: float
    ccnr_threshold: float


def criteria_report(params: GIParams, cross_check: bool = True) -> CriteriaReport:
    """Run all three criteria and check the inclusions steering, CCNR within PPT"""
    ppt_result = ppt(params, cross_check=cross_check)
    steering_result = steerable(params, cross_check=cross_check)
    ccnr_result = ccnr(params)

    if (steering_result.steerable or ccnr_result.detected) and not ppt_result.entangled:
        raise NumericalError(f"criterion inclusion violated at r={params.r}, p={params.p}")

    return CriteriaReport(
        ppt_entangled=ppt_result.entangled,
        ppt_margin=ppt_result.margin,
        nu_tilde=ppt_result.nu_tilde,
        steerable=steering_result.steerable,
        steering_threshold=steering_result.threshold,
        steering_margin=steering_result.margin,
        ccnr_detects=ccnr_result.detected,
        realigned_norm=ccnr_result.norm,
        ccnr_threshold=ccnr_result.threshold,
    )
