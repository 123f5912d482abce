"""
Report payloads
Plain dicts shared by the CLI (text and JSON output) and the HTTP API.
"""

import math
from typing import Optional, Tuple

from src.gaussian.channel import ChoiChannel, InputKind, coherent_output, make_input, noise_verdict, thermal_variance
from src.gaussian.criteria import criteria_report, ppt, printed_ccnr_threshold
from src.gaussian.errors import TailError
from src.gaussian.fock import FockOperator, cm_from_fock, fock_gi, purity, select_cutoff
from src.gaussian.measures import measure_report
from src.gaussian.states import GIParams, gamma_gi, properties
from src.gaussian.symplectic import CovarianceMatrix
from src.settings import FOCK_CONFIG

NATS_PER_BIT = math.log(2.0)

CCNR_NOTE = (
    "threshold from the realigned-norm formula: (cosh 2r - 1/2)/sinh 2r = (coth r + 3 tanh r)/4; "
    "the often-quoted coth(r)/4 + 3 tanh(r) is mis-grouped"
)

# Tolerances for the Fock diagnostics
FOCK_CHECKS = {
    "trace": 1e-6,
    "purity": 1e-4,
    "covariance": 1e-6,
    "positivity": -1e-8,
    "ppt_gap": 0.02,
}


def _finite(value: float) -> Optional[float]:
    return value if math.isfinite(value) else None


def _matrix(gamma: CovarianceMatrix) -> list:
    return gamma.entries.tolist()


def _entropy(value: float, bits: bool) -> float:
    return value / NATS_PER_BIT if bits else value


def state_payload(params: GIParams, bits: bool = False) -> dict:
    props = properties(params)
    return {
        "r": params.r,
        "p": params.p,
        "covariance_matrix": _matrix(gamma_gi(params)),
        "nu": props.nu,
        "nu_tilde": props.nu_tilde,
        "purity": props.purity,
        "S": _entropy(props.von_neumann, bits),
        "S2": _entropy(props.renyi_2, bits),
        "local_entropy": _entropy(props.local_entropy, bits),
        "units": "bits" if bits else "nats",
    }


def criteria_payload(params: GIParams) -> dict:
    report = criteria_report(params)
    return {
        "r": params.r,
        "p": params.p,
        "ppt_entangled": report.ppt_entangled,
        "ppt_margin": report.ppt_margin,
        "nu_tilde": report.nu_tilde,
        "steerable": report.steerable,
        "steering_threshold": report.steering_threshold,
        "ccnr_detects": report.ccnr_detects,
        "realigned_norm": report.realigned_norm,
        "ccnr_threshold": _finite(report.ccnr_threshold),
        "printed_ccnr_threshold": _finite(printed_ccnr_threshold(params.r)),
        "ccnr_note": CCNR_NOTE,
    }


def measures_payload(params: GIParams, bits: bool = False) -> dict:
    report = measure_report(params)
    return {
        "r": params.r,
        "p": params.p,
        "eof": _entropy(report.eof, bits),
        "discord": _entropy(report.discord, bits),
        "mutual_information": _entropy(report.mutual_information, bits),
        "x": report.x,
        "eof_exceeds_half_mi": report.eof_exceeds_half_mi,
        "units": "bits" if bits else "nats",
    }


def channel_payload(params: GIParams, kind: InputKind, nbar: Optional[float] = None,
                    squeezing: Optional[float] = None) -> dict:
    gamma_in = make_input(kind, nbar=nbar, squeezing=squeezing)
    gamma_out = ChoiChannel.from_params(params).apply(gamma_in)
    payload = {
        "r": params.r,
        "p": params.p,
        "input": InputKind(kind).value,
        "input_cm": _matrix(gamma_in),
        "output_cm": _matrix(gamma_out),
        "input_variance": thermal_variance(gamma_in),
        "output_variance": thermal_variance(gamma_out),
        "verdict": noise_verdict(gamma_in, gamma_out).value,
    }
    if InputKind(kind) is InputKind.COHERENT:
        payload["closed_form_cm"] = _matrix(coherent_output(params))
    return payload


def default_cutoff(r: float) -> int:
    """
    Configured cutoff, raised to what the tail bound needs at r

    Raises:
        TailError: the tail bound needs more levels than max_cutoff allows
    """
    needed = select_cutoff(r)
    if needed > FOCK_CONFIG["max_cutoff"]:
        raise TailError(
            f"r={r:g} needs cutoff {needed} for the tail bound, above the supported maximum "
            f"{FOCK_CONFIG['max_cutoff']} (GI_FOCK_MAX_CUTOFF)"
        )
    return max(FOCK_CONFIG["cutoff"], needed)


def fock_diagnostics(params: GIParams, cutoff: Optional[int] = None) -> Tuple[dict, FockOperator]:
    """
    Truncated-Fock checks of the closed forms at one point

    Returns:
        (payload, operator); payload["passed"] is False if any check fails
    """
    cutoff = default_cutoff(params.r) if cutoff is None else cutoff
    op = fock_gi(params, cutoff)
    props = properties(params)

    trace_error = abs(op.trace() - 1.0)
    purity_error = abs(purity(op) - props.purity)
    cm_residual = float(abs(cm_from_fock(op).entries - gamma_gi(params).entries).max())
    min_eig = op.min_eigenvalue()
    min_pt_eig = op.partial_transpose().min_eigenvalue()

    ppt_result = ppt(params)
    decisive = abs(ppt_result.margin) > FOCK_CHECKS["ppt_gap"]
    npt = min_pt_eig < FOCK_CHECKS["positivity"]
    ppt_agrees = npt == ppt_result.entangled if decisive else None

    checks = {
        "trace": trace_error <= FOCK_CHECKS["trace"],
        "purity": purity_error <= FOCK_CHECKS["purity"],
        "covariance": cm_residual <= FOCK_CHECKS["covariance"],
        "positivity": min_eig >= FOCK_CHECKS["positivity"],
        "ppt": ppt_agrees is not False,
    }
    payload = {
        "r": params.r,
        "p": params.p,
        "cutoff": cutoff,
        "trace": op.trace(),
        "purity": purity(op),
        "purity_closed_form": props.purity,
        "cm_residual": cm_residual,
        "min_eigenvalue": min_eig,
        "min_pt_eigenvalue": min_pt_eig,
        "ppt_entangled": ppt_result.entangled,
        "ppt_agrees": ppt_agrees,
        "checks": checks,
        "passed": all(checks.values()),
    }
    return payload, op
