"""
Gaussian channel isomorphic to the isotropic state
The Choi state's CM Gamma = gamma_GI(r, p); its partial transpose on mode B
defines the map on single-mode input CMs

    gamma' = G11 - G12 (G22 + gamma)^-1 G12^T

Displacements are fixed to zero, so the map is only tracked at the CM level.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from src.gaussian.errors import DimensionError, DomainError, NumericalError
from src.gaussian.states import MAX_SQUEEZING, GIParams, gamma_gi
from src.gaussian.symplectic import CovarianceMatrix, Mode, is_physical, partial_transpose
from src.settings import TOLERANCES

logger = logging.getLogger(__name__)

# inputs noisier than this overflow the 2x2 contraction
MAX_INPUT_VARIANCE = 1e100


class InputKind(str, Enum):
    COHERENT = "coherent"
    THERMAL = "thermal"
    SQUEEZED = "squeezed"


class NoiseVerdict(str, Enum):
    LESS_NOISY = "less noisy"
    NOISIER = "noisier"
    EQUAL = "equal"


def _inverse_2x2(m: np.ndarray) -> np.ndarray:
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det) < TOLERANCES["singular"]:
        raise NumericalError(f"singular 2x2 matrix in channel contraction (det={det:.3e})")
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]]) / det


@dataclass(frozen=True)
class ChoiChannel:
    """Choi state CM and the blocks of its partial transpose"""
    gamma_big: CovarianceMatrix
    g11: np.ndarray
    g12: np.ndarray
    g22: np.ndarray

    @classmethod
    def from_state(cls, gamma_big: CovarianceMatrix) -> "ChoiChannel":
        if gamma_big.n_modes != 2:
            raise DimensionError("Choi state must be a two-mode covariance matrix")
        if not is_physical(gamma_big).physical:
            raise NumericalError("Choi state covariance matrix is not physical")
        pt = partial_transpose(gamma_big, Mode.B)
        return cls(gamma_big, pt.block(0, 0).copy(), pt.block(0, 1).copy(), pt.block(1, 1).copy())

    @classmethod
    def from_params(cls, params: GIParams) -> "ChoiChannel":
        return cls.from_state(gamma_gi(params))

    def pt_blocks(self) -> np.ndarray:
        """Reassembled partial transpose"""
        return np.block([[self.g11, self.g12], [self.g12.T, self.g22]])

    def apply(self, gamma_in: CovarianceMatrix) -> CovarianceMatrix:
        return apply(self, gamma_in)


def choi_channel(params: GIParams) -> ChoiChannel:
    return ChoiChannel.from_params(params)


def apply(channel: ChoiChannel, gamma_in: CovarianceMatrix) -> CovarianceMatrix:
    """
    Send a single-mode input CM through the channel

    Raises:
        DimensionError: input is not single-mode
        DomainError: input is not physical
        NumericalError: singular contraction or unphysical output
    """
    if gamma_in.n_modes != 1:
        raise DimensionError(f"channel input must be single-mode, got {gamma_in.n_modes} modes")
    if not is_physical(gamma_in).physical:
        raise DomainError("channel input covariance matrix is not physical")

    inverse = _inverse_2x2(channel.g22 + gamma_in.entries)
    out = channel.g11 - channel.g12 @ inverse @ channel.g12.T
    gamma_out = CovarianceMatrix(0.5 * (out + out.T))

    check = is_physical(gamma_out)
    if not check.physical:
        raise NumericalError(f"channel output is not physical (margin {check.margin:.3e})")
    return gamma_out


def coherent_output(params: GIParams) -> CovarianceMatrix:
    """Closed-form output for a coherent input: (p^2 + (1 - p^2) cosh 2r) * identity"""
    p2 = params.p * params.p
    return CovarianceMatrix((p2 + (1.0 - p2) * math.cosh(2 * params.r)) * np.eye(2))


def coherent_input() -> CovarianceMatrix:
    return CovarianceMatrix(np.eye(2))


def thermal_input(nbar: float) -> CovarianceMatrix:
    """Thermal state with mean photon number nbar, CM (2 nbar + 1) * identity"""
    variance = 2.0 * nbar + 1.0
    if not math.isfinite(nbar) or nbar < 0 or variance > MAX_INPUT_VARIANCE:
        raise DomainError(f"nbar must lie in [0, {(MAX_INPUT_VARIANCE - 1) / 2:.0e}], got {nbar!r}")
    return CovarianceMatrix(variance * np.eye(2))


def squeezed_input(s: float) -> CovarianceMatrix:
    """Squeezed vacuum, CM diag(e^-2s, e^2s)"""
    if not math.isfinite(s) or abs(s) > MAX_SQUEEZING:
        raise DomainError(f"squeezing must lie in [-{MAX_SQUEEZING:g}, {MAX_SQUEEZING:g}], got {s!r}")
    return CovarianceMatrix(np.diag([math.exp(-2 * s), math.exp(2 * s)]))


def make_input(kind: InputKind, nbar: Optional[float] = None, squeezing: Optional[float] = None) -> CovarianceMatrix:
    kind = InputKind(kind)
    if kind is InputKind.COHERENT:
        return coherent_input()
    if kind is InputKind.THERMAL:
        if nbar is None:
            raise DomainError("thermal input needs nbar")
        return thermal_input(nbar)
    if squeezing is None:
        raise DomainError("squeezed input needs a squeezing parameter")
    return squeezed_input(squeezing)


def thermal_variance(gamma: CovarianceMatrix) -> float:
    """Variance of the thermal state with the same symplectic eigenvalue, sqrt(det gamma)"""
    return math.sqrt(max(0.0, float(np.linalg.det(gamma.entries))))


def noise_verdict(gamma_in: CovarianceMatrix, gamma_out: CovarianceMatrix, tol: float = 1e-12) -> NoiseVerdict:
    v_in, v_out = thermal_variance(gamma_in), thermal_variance(gamma_out)
    if v_out < v_in - tol:
        return NoiseVerdict.LESS_NOISY
    if v_out > v_in + tol:
        return NoiseVerdict.NOISIER
    return NoiseVerdict.EQUAL
