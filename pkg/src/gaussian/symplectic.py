"""
Covariance-matrix core
Symplectic form, symplectic spectra, physicality, partial transposition and
the two-mode standard form.

Convention: quadratures ordered (x1, p1, ..., xN, pN) and the vacuum has the
identity as covariance matrix. Displacements are carried but always zero.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Union

import numpy as np

from src.gaussian.errors import DimensionError, DomainError, ShapeError
from src.settings import TOLERANCES

logger = logging.getLogger(__name__)

_OMEGA_BLOCK = np.array([[0.0, 1.0], [-1.0, 0.0]])


class Mode(str, Enum):
    """The two parties of a bipartite two-mode state"""
    A = "A"
    B = "B"

    @property
    def index(self) -> int:
        return 0 if self is Mode.A else 1


ModeLike = Union[Mode, str, int]


def _scale(entries: np.ndarray) -> float:
    return max(1.0, float(np.max(np.abs(entries)))) if entries.size else 1.0


def _readonly(values: np.ndarray) -> np.ndarray:
    values = np.array(values, dtype=float, copy=True)
    values.setflags(write=False)
    return values


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    """
    Real symmetric 2N x 2N second-moment matrix of a zero-mean Gaussian state

    Construction validates shape and symmetry only; physicality is a separate
    question answered by is_physical().
    """
    entries: np.ndarray
    n_modes: int = field(init=False)
    displacement: np.ndarray = field(init=False)

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DimensionError(f"covariance matrix must be square, got shape {entries.shape}")
        dim = entries.shape[0]
        if dim == 0 or dim % 2:
            raise DimensionError(f"covariance matrix needs an even positive dimension, got {dim}")
        if np.max(np.abs(entries - entries.T)) > TOLERANCES["symmetric"] * _scale(entries):
            raise DimensionError("covariance matrix is not symmetric")

        object.__setattr__(self, "entries", _readonly(entries))
        object.__setattr__(self, "n_modes", dim // 2)
        object.__setattr__(self, "displacement", _readonly(np.zeros(dim)))

    @classmethod
    def from_array(cls, entries) -> "CovarianceMatrix":
        return cls(np.asarray(entries, dtype=float))

    @property
    def dim(self) -> int:
        return 2 * self.n_modes

    def block(self, i: int, j: int) -> np.ndarray:
        """2x2 block coupling modes i and j"""
        return self.entries[2 * i:2 * i + 2, 2 * j:2 * j + 2]

    def allclose(self, other: "CovarianceMatrix", atol: float = 1e-12) -> bool:
        return self.n_modes == other.n_modes and np.allclose(self.entries, other.entries, rtol=0.0, atol=atol)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def __repr__(self) -> str:
        return f"CovarianceMatrix(n_modes={self.n_modes}, entries={self.entries.tolist()})"


class SymplecticSpectrum(NamedTuple):
    """Symplectic eigenvalues, sorted ascending"""
    values: tuple

    @property
    def min(self) -> float:
        return self.values[0]


class Physicality(NamedTuple):
    physical: bool
    margin: float


@dataclass(frozen=True)
class TwoModeStandardForm:
    """The quadruple (a, b, c1, c2) of a standard-form two-mode covariance matrix"""
    a: float
    b: float
    c1: float
    c2: float

    def to_covariance(self) -> CovarianceMatrix:
        a, b, c1, c2 = self.a, self.b, self.c1, self.c2
        return CovarianceMatrix(np.array([
            [a, 0.0, c1, 0.0],
            [0.0, a, 0.0, c2],
            [c1, 0.0, b, 0.0],
            [0.0, c2, 0.0, b],
        ]))


def _as_covariance(gamma) -> CovarianceMatrix:
    if isinstance(gamma, CovarianceMatrix):
        return gamma
    return CovarianceMatrix.from_array(gamma)


def _require_two_modes(gamma: CovarianceMatrix, what: str):
    if gamma.n_modes != 2:
        raise DimensionError(f"{what} needs a two-mode covariance matrix, got {gamma.n_modes} modes")


def _mode_index(mode: ModeLike, n_modes: int) -> int:
    if isinstance(mode, Mode):
        index = mode.index
    elif isinstance(mode, str):
        try:
            index = Mode(mode.upper()).index
        except ValueError:
            raise DomainError(f"unknown mode {mode!r}, expected 'A' or 'B'") from None
    elif isinstance(mode, (int, np.integer)) and not isinstance(mode, bool):
        index = int(mode)
    else:
        raise DomainError(f"unknown mode {mode!r}")
    if not 0 <= index < n_modes:
        raise DomainError(f"mode {mode!r} out of range for a {n_modes}-mode state")
    return index


def omega(n_modes: int) -> np.ndarray:
    """
    Symplectic form for n modes

    Args:
        n_modes: Number of modes (>= 1)

    Returns:
        Block-diagonal 2n x 2n matrix with blocks [[0, 1], [-1, 0]]
    """
    if int(n_modes) != n_modes or n_modes < 1:
        raise DomainError(f"n_modes must be a positive integer, got {n_modes!r}")
    return np.kron(np.eye(int(n_modes)), _OMEGA_BLOCK)


def symplectic_eigenvalues(gamma) -> SymplecticSpectrum:
    """
    Symplectic eigenvalues of a covariance matrix

    The spectrum of the real matrix Omega*gamma is purely imaginary and comes in
    pairs +/- i nu; sorting the moduli puts each pair side by side, so every
    second entry is kept.
    """
    gamma = _as_covariance(gamma)
    moduli = np.sort(np.abs(np.linalg.eigvals(omega(gamma.n_modes) @ gamma.entries)))
    return SymplecticSpectrum(tuple(float(v) for v in moduli[::2]))


def is_physical(gamma, tol: float = TOLERANCES["physical"]) -> Physicality:
    """
    Robertson-Schroedinger test gamma + i*Omega >= 0

    Returns:
        (physical, margin) where margin is the minimum eigenvalue of gamma + i*Omega
    """
    gamma = _as_covariance(gamma)
    margin = float(np.linalg.eigvalsh(gamma.entries + 1j * omega(gamma.n_modes))[0])
    return Physicality(margin >= -tol, margin)


def partial_transpose(gamma, mode: ModeLike = Mode.B) -> CovarianceMatrix:
    """Flip the sign of the chosen mode's momentum (row and column)"""
    gamma = _as_covariance(gamma)
    index = _mode_index(mode, gamma.n_modes)
    flip = np.ones(gamma.dim)
    flip[2 * index + 1] = -1.0
    return CovarianceMatrix(flip[:, None] * gamma.entries * flip[None, :])


def standard_form(gamma) -> TwoModeStandardForm:
    """
    Read (a, b, c1, c2) off a covariance matrix already in standard form

    Raises:
        ShapeError: if any entry outside the standard-form pattern is nonzero, or
            the local blocks are not multiples of the identity
    """
    gamma = _as_covariance(gamma)
    _require_two_modes(gamma, "standard_form")
    g = gamma.entries
    tol = TOLERANCES["symmetric"] * _scale(g)

    a, b, c1, c2 = g[0, 0], g[2, 2], g[0, 2], g[1, 3]
    expected = TwoModeStandardForm(a, b, c1, c2).to_covariance().entries
    if np.max(np.abs(g - expected)) > tol:
        raise ShapeError("covariance matrix is not in two-mode standard form")
    return TwoModeStandardForm(float(a), float(b), float(c1), float(c2))


def reduced_covariance(gamma, mode: ModeLike) -> CovarianceMatrix:
    """Local covariance matrix of one mode"""
    gamma = _as_covariance(gamma)
    index = _mode_index(mode, gamma.n_modes)
    return CovarianceMatrix(gamma.block(index, index))


def steering_matrix(gamma, steered: ModeLike = Mode.B) -> np.ndarray:
    """
    Hermitian matrix gamma + i(0 + Omega_steered)

    It is positive semidefinite iff the steered mode cannot be steered by
    Gaussian measurements on the other one.
    """
    gamma = _as_covariance(gamma)
    _require_two_modes(gamma, "steering_matrix")
    index = _mode_index(steered, 2)
    local = np.zeros((4, 4))
    local[2 * index:2 * index + 2, 2 * index:2 * index + 2] = _OMEGA_BLOCK
    return gamma.entries + 1j * local
