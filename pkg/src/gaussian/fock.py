"""
Truncated Fock-space engine
Closed-form coherent-state matrix elements of the isotropic state, the
number-basis operators built from them, and the numerical oracles that check
every closed form elsewhere in the package.

Index convention: |m, n> = |m>_A (x) |n>_B, flattened row-major to m*N + n, so
the operator tensor T[m, n, k, l] is <m, n| rho |k, l>.
"""

import logging
import math
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Union

import numpy as np
import scipy.sparse as sp
from numpy.polynomial.hermite import hermgauss
from scipy.special import entr, gammaln, xlogy

from src.gaussian.errors import (
    DimensionError,
    DomainError,
    ExtractionError,
    NumericalError,
    StateError,
    TailError,
)
from src.gaussian.states import GIParams
from src.gaussian.symplectic import CovarianceMatrix, Mode
from src.settings import FOCK_CONFIG

logger = logging.getLogger(__name__)

_HEADER = struct.Struct("<qq")


@dataclass(frozen=True)
class CoherentPoint:
    """Labels of the matrix element <mu, nu| rho |kappa, tau>"""
    mu: complex
    nu: complex
    kappa: complex
    tau: complex

    def swapped(self) -> "CoherentPoint":
        """Labels of the Hermitian-conjugate element <kappa, tau| rho |mu, nu>"""
        return CoherentPoint(self.kappa, self.tau, self.mu, self.nu)


@dataclass(frozen=True, eq=False)
class FockOperator:
    """Two-mode operator truncated to N levels per mode, stored as an N^2 x N^2 matrix"""
    cutoff: int
    entries: np.ndarray
    n_modes: int = 2

    def __post_init__(self):
        entries = np.ascontiguousarray(self.entries, dtype=complex)
        dim = self.cutoff ** self.n_modes
        if entries.shape != (dim, dim):
            raise DimensionError(f"expected a {dim}x{dim} matrix for cutoff {self.cutoff}, got {entries.shape}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_tensor(cls, tensor: np.ndarray) -> "FockOperator":
        n = tensor.shape[0]
        return cls(n, tensor.reshape(n * n, n * n))

    def to_tensor(self) -> np.ndarray:
        n = self.cutoff
        return self.entries.reshape(n, n, n, n)

    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def eigenvalues(self) -> np.ndarray:
        if not np.any(self.entries.imag):
            return np.linalg.eigvalsh(self.entries.real)
        return np.linalg.eigvalsh(self.entries)

    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues()[0])

    def partial_transpose(self) -> "FockOperator":
        """Transpose mode B's indices: T[m, n, k, l] -> T[m, l, k, n]"""
        return FockOperator.from_tensor(self.to_tensor().transpose(0, 3, 2, 1))

    def combine(self, other: "FockOperator", weight: float) -> "FockOperator":
        """weight * self + (1 - weight) * other"""
        if other.cutoff != self.cutoff:
            raise DimensionError("cannot mix operators with different cutoffs")
        return FockOperator(self.cutoff, weight * self.entries + (1.0 - weight) * other.entries)

    def dump(self, path: Union[str, Path]):
        """
        Write a flat row-major complex128 array after a 16-byte header

        Header: two little-endian int64 values, cutoff and n_modes.
        """
        with open(path, "wb") as fh:
            fh.write(_HEADER.pack(self.cutoff, self.n_modes))
            fh.write(self.entries.astype("<c16").tobytes(order="C"))

    @classmethod
    def load(cls, path: Union[str, Path]) -> "FockOperator":
        raw = Path(path).read_bytes()
        if len(raw) < _HEADER.size:
            raise DimensionError(f"{path}: file too short for a Fock operator header")
        cutoff, n_modes = _HEADER.unpack_from(raw)
        dim = cutoff ** n_modes
        data = np.frombuffer(raw, dtype="<c16", offset=_HEADER.size)
        if data.size != dim * dim:
            raise DimensionError(f"{path}: expected {dim * dim} entries, found {data.size}")
        return cls(int(cutoff), data.reshape(dim, dim).astype(complex), int(n_modes))


# ============================================================================
# Cutoffs
# ============================================================================

def thermal_ratio(r: float) -> float:
    """lambda = tanh^2 r, the geometric ratio of the thermal occupations"""
    return math.tanh(r) ** 2


def tail_mass(r: float, cutoff: int) -> float:
    """Single-mode thermal weight beyond the cutoff bound, lambda^N / (1 - lambda)"""
    lam = thermal_ratio(r)
    if lam == 0.0:
        return 0.0
    if lam >= 1.0:
        return math.inf
    return lam ** cutoff / (1.0 - lam)


def select_cutoff(r: float, tail_bound: float = FOCK_CONFIG["tail_bound"], floor: int = FOCK_CONFIG["min_cutoff"]) -> int:
    """Smallest cutoff >= floor whose tail mass is below tail_bound"""
    lam = thermal_ratio(r)
    if lam == 0.0:
        return floor
    if lam >= 1.0:
        raise TailError(f"tanh^2 r rounds to 1 at r={r:g}; no finite cutoff meets the tail bound")
    cutoff = max(floor, math.ceil(math.log(tail_bound * (1.0 - lam)) / math.log(lam)))
    while cutoff > floor and tail_mass(r, cutoff - 1) < tail_bound:
        cutoff -= 1
    while tail_mass(r, cutoff) >= tail_bound:
        cutoff += 1
    logger.debug("cutoff for r=%s: %d (tail %.3e)", r, cutoff, tail_mass(r, cutoff))
    return cutoff


def check_cutoff(r: float, cutoff: int, tail_bound: float = FOCK_CONFIG["tail_bound"]) -> int:
    if int(cutoff) != cutoff or cutoff < FOCK_CONFIG["min_cutoff"]:
        raise DomainError(f"cutoff must be an integer >= {FOCK_CONFIG['min_cutoff']}, got {cutoff!r}")
    if cutoff > FOCK_CONFIG["max_cutoff"]:
        raise DomainError(f"cutoff {cutoff} exceeds the supported maximum {FOCK_CONFIG['max_cutoff']} (GI_FOCK_MAX_CUTOFF)")
    tail = tail_mass(r, int(cutoff))
    if tail >= tail_bound:
        raise TailError(
            f"cutoff {cutoff} leaves tail mass {tail:.2e} >= {tail_bound:.0e} at r={r}; "
            f"need cutoff >= {select_cutoff(r, tail_bound)}"
        )
    return int(cutoff)


# ============================================================================
# Coherent-state matrix elements
# ============================================================================

def _coherent_kernel(r: float, p: float, mu, nu, kappa, tau):
    """Vectorised <mu nu| rho_GI |kappa tau>"""
    ch2 = math.cosh(r) ** 2
    t = math.tanh(r)
    q = ch2 - (p * math.sinh(r)) ** 2
    mu_c, nu_c = np.conj(mu), np.conj(nu)
    norm = np.abs(mu) ** 2 + np.abs(nu) ** 2 + np.abs(kappa) ** 2 + np.abs(tau) ** 2
    exponent = (
        -0.5 * norm
        + mu_c * kappa
        + nu_c * tau
        - kappa * mu_c / ch2
        - (nu_c - p * kappa * t) * (tau - p * mu_c * t) / q
    )
    return np.exp(exponent) / (ch2 * q)


def _thermal_element(r: float, alpha: complex, beta: complex) -> complex:
    """<alpha| rho_th |beta> of a single mode with occupation sinh^2 r"""
    return np.exp(-0.5 * (abs(alpha) ** 2 + abs(beta) ** 2) + np.conj(alpha) * beta * math.tanh(r) ** 2) / math.cosh(r) ** 2


def _tms_element(r: float, pt: CoherentPoint) -> complex:
    t = math.tanh(r)
    norm = abs(pt.mu) ** 2 + abs(pt.nu) ** 2 + abs(pt.kappa) ** 2 + abs(pt.tau) ** 2
    return np.exp(-0.5 * norm + t * (np.conj(pt.mu) * np.conj(pt.nu) + pt.kappa * pt.tau)) / math.cosh(r) ** 2


def coherent_element(params: GIParams, pt: CoherentPoint) -> complex:
    """
    Closed-form matrix element <mu, nu| rho_GI |kappa, tau>

    At p = 0 the result is compared with the product of two thermal elements,
    at p = 1 with the two-mode squeezed vacuum projector.
    """
    value = complex(_coherent_kernel(params.r, params.p, pt.mu, pt.nu, pt.kappa, pt.tau))

    if params.p in (0.0, 1.0):
        if params.p == 0.0:
            reference = _thermal_element(params.r, pt.mu, pt.kappa) * _thermal_element(params.r, pt.nu, pt.tau)
        else:
            reference = _tms_element(params.r, pt)
        if abs(value - reference) > 1e-12 * max(1.0, abs(reference)):
            raise NumericalError(f"coherent element disagrees with its p={params.p:g} limit")
    return value


def coherent_element_quadrature(params: GIParams, pt: CoherentPoint, nodes: int = FOCK_CONFIG["quadrature_nodes"]) -> complex:
    """
    Same element from the characteristic function by Gauss-Hermite quadrature

    After rescaling the displacement variables by cosh r the four-dimensional
    integral separates into a real-part and an imaginary-part integral, each a
    two-dimensional tensor Gauss-Hermite sum.
    """
    r, p = params.r, params.p
    c = math.cosh(r)
    g = 2.0 * p * math.tanh(r)
    mu_c, nu_c = np.conj(pt.mu), np.conj(pt.nu)

    a, a2 = (pt.kappa - mu_c) / c, (pt.tau - nu_c) / c
    b, b2 = -1j * (mu_c + pt.kappa) / c, -1j * (nu_c + pt.tau) / c

    x, w = hermgauss(nodes)
    outer = np.outer(x, x)
    x_part = w @ np.exp(a * x[:, None] + a2 * x[None, :] + g * outer) @ w
    y_part = w @ np.exp(b * x[:, None] + b2 * x[None, :] - g * outer) @ w

    norm = abs(pt.mu) ** 2 + abs(pt.nu) ** 2 + abs(pt.kappa) ** 2 + abs(pt.tau) ** 2
    prefactor = np.exp(-0.5 * norm + mu_c * pt.kappa + nu_c * pt.tau)
    return complex(prefactor * x_part * y_part / (math.pi ** 2 * c ** 4))


# ============================================================================
# Number-basis operators
# ============================================================================

def fock_tmt(r: float, cutoff: int) -> FockOperator:
    """Two identical thermal modes: diagonal (1 - lambda)^2 lambda^(m + n)"""
    cutoff = check_cutoff(r, cutoff)
    lam = thermal_ratio(r)
    single = (1.0 - lam) * lam ** np.arange(cutoff)
    return FockOperator(cutoff, np.diag(np.kron(single, single)).astype(complex))


def fock_tms(r: float, cutoff: int) -> FockOperator:
    """Two-mode squeezed vacuum projector, amplitudes sqrt(1 - lambda) tanh^m r on |m, m>"""
    cutoff = check_cutoff(r, cutoff)
    psi = np.zeros(cutoff * cutoff)
    levels = np.arange(cutoff)
    psi[levels * cutoff + levels] = math.sqrt(1.0 - thermal_ratio(r)) * math.tanh(r) ** levels
    return FockOperator(cutoff, np.outer(psi, psi).astype(complex))


def fock_mixture(params: GIParams, cutoff: int) -> FockOperator:
    """Non-Gaussian mixture p*rho_TMS + (1 - p)*rho_TMT; its CM equals gamma_GI"""
    return fock_tms(params.r, cutoff).combine(fock_tmt(params.r, cutoff), params.p)


class BilinearCoefficients(NamedTuple):
    """
    log of e^{|labels|^2/2} <mu nu|rho|kappa tau> as a form in u = (mu*, nu*, kappa, tau)

    log_c + a13 u1 u3 + a24 u2 u4 + b12 u1 u2 + b34 u3 u4
    """
    log_c: float
    a13: float
    a24: float
    b12: float
    b34: float
    residual: float


_BILINEAR_FREQS = {
    "log_c": (0, 0, 0, 0),
    "a13": (1, 0, 1, 0),
    "a24": (0, 1, 0, 1),
    "b12": (1, 1, 0, 0),
    "b34": (0, 0, 1, 1),
}


def extract_bilinear(
    params: GIParams,
    radius: float = FOCK_CONFIG["fourier_radius"],
    samples: int = FOCK_CONFIG["fourier_samples"],
) -> BilinearCoefficients:
    """
    Fourier coefficients of the log generating function on product circles

    The generating function is C*exp(bilinear form), so its logarithm has only
    five nonzero Fourier modes; everything else is reported as the residual.
    On the unit torus the bilinear form stays inside |Im| < pi, so the
    principal logarithm introduces no branch jumps.
    """
    if samples < 4:
        raise DomainError(f"need at least 4 samples per circle, got {samples}")
    theta = 2.0 * np.pi * np.arange(samples) / samples
    circle = radius * np.exp(1j * theta)
    u1, u2, u3, u4 = np.meshgrid(circle, circle, circle, circle, indexing="ij")

    values = _coherent_kernel(params.r, params.p, np.conj(u1), np.conj(u2), u3, u4) * np.exp(2.0 * radius ** 2)
    spectrum = np.fft.fftn(np.log(values)) / samples ** 4

    coeffs = {}
    mask = np.ones(spectrum.shape, dtype=bool)
    imag = 0.0
    for name, freq in _BILINEAR_FREQS.items():
        mask[freq] = False
        value = spectrum[freq] / radius ** sum(freq)
        coeffs[name] = float(value.real)
        imag = max(imag, abs(value.imag))

    residual = max(imag, float(np.max(np.abs(spectrum[mask]))) if mask.any() else 0.0)
    logger.debug("bilinear extraction at r=%s, p=%s: residual %.3e", params.r, params.p, residual)
    return BilinearCoefficients(residual=residual, **coeffs)


def _clip_nonnegative(name: str, value: float, tol: float) -> float:
    if value < 0:
        if value < -tol:
            raise ExtractionError(f"extracted coefficient {name}={value:.3e} is negative")
        return 0.0
    return value


def _series_tensor(coeffs: BilinearCoefficients, cutoff: int) -> np.ndarray:
    """
    Expand C*exp(bilinear form) into number-basis coefficients

    rho[m,n,k,l] = C sqrt(m! n! k! l!) sum_c a13^a a24^b b12^c b34^d / (a! b! c! d!)
    with a = m - c, b = n - c, d = c + k - m and l = n + k - m. Every term is
    nonnegative, so the sum is free of cancellation.
    """
    n = cutoff
    m_idx = np.arange(n)[:, None, None]
    n_idx = np.arange(n)[None, :, None]
    k_idx = np.arange(n)[None, None, :]
    l_idx = n_idx + k_idx - m_idx
    valid = (l_idx >= 0) & (l_idx < n)

    half = 0.5 * (gammaln(m_idx + 1) + gammaln(n_idx + 1) + gammaln(k_idx + 1) + gammaln(np.clip(l_idx, 0, None) + 1))
    total = np.zeros((n, n, n))

    with np.errstate(divide="ignore", invalid="ignore"):
        for c in range(n):
            a = m_idx - c
            b = n_idx - c
            d = c + k_idx - m_idx
            ok = valid & (a >= 0) & (b >= 0) & (d >= 0)
            if not ok.any():
                continue
            a, b, d = np.clip(a, 0, None), np.clip(b, 0, None), np.clip(d, 0, None)
            log_term = (
                xlogy(a, coeffs.a13) + xlogy(b, coeffs.a24) + xlogy(c, coeffs.b12) + xlogy(d, coeffs.b34)
                - gammaln(a + 1) - gammaln(b + 1) - gammaln(c + 1) - gammaln(d + 1)
            )
            total += np.exp(np.where(ok, log_term + half, -np.inf))

    tensor = np.zeros((n, n, n, n), dtype=complex)
    mm, nn, kk = np.nonzero(valid)
    tensor[mm, nn, kk, nn + kk - mm] = math.exp(coeffs.log_c) * total[mm, nn, kk]
    return tensor


def _resynthesise(tensor: np.ndarray, pt: CoherentPoint) -> complex:
    n = tensor.shape[0]

    def powers(u: complex) -> np.ndarray:
        vec = np.empty(n, dtype=complex)
        vec[0] = 1.0
        for m in range(1, n):
            vec[m] = vec[m - 1] * u / math.sqrt(m)
        return vec

    norm = abs(pt.mu) ** 2 + abs(pt.nu) ** 2 + abs(pt.kappa) ** 2 + abs(pt.tau) ** 2
    series = np.einsum(
        "mnkl,m,n,k,l->", tensor,
        powers(np.conj(pt.mu)), powers(np.conj(pt.nu)), powers(pt.kappa), powers(pt.tau),
        optimize=True,
    )
    return complex(np.exp(-0.5 * norm) * series)


def holdout_points(count: int = FOCK_CONFIG["holdout_points"], radius: float = FOCK_CONFIG["holdout_radius"],
                   seed: int = FOCK_CONFIG["holdout_seed"]) -> list:
    """Reproducible labels inside the disc |label| <= radius"""
    rng = np.random.default_rng(seed)
    mods = radius * np.sqrt(rng.uniform(size=(count, 4)))
    phases = rng.uniform(0.0, 2.0 * np.pi, size=(count, 4))
    labels = mods * np.exp(1j * phases)
    return [CoherentPoint(*(complex(z) for z in row)) for row in labels]


def fock_gi(params: GIParams, cutoff: int) -> FockOperator:
    """
    Number-basis operator of the isotropic state

    Raises:
        TailError: cutoff too small for the tail bound
        ExtractionError: the generating function is not recovered within 1e-6
    """
    cutoff = check_cutoff(params.r, cutoff)
    tol = FOCK_CONFIG["extraction_tolerance"]

    coeffs = extract_bilinear(params)
    if coeffs.residual > tol:
        raise ExtractionError(f"extraction residual {coeffs.residual:.3e} exceeds {tol:.0e}")
    coeffs = coeffs._replace(**{
        name: _clip_nonnegative(name, getattr(coeffs, name), tol) for name in ("a13", "a24", "b12", "b34")
    })

    tensor = _series_tensor(coeffs, cutoff)

    worst = 0.0
    for pt in holdout_points():
        worst = max(worst, abs(_resynthesise(tensor, pt) - coherent_element(params, pt)))
    if worst > tol:
        raise ExtractionError(f"re-synthesised coherent elements off by {worst:.3e} at held-out points")
    logger.debug("fock_gi r=%s p=%s N=%d: held-out error %.3e", params.r, params.p, cutoff, worst)

    return FockOperator.from_tensor(tensor)


# ============================================================================
# Oracles
# ============================================================================

def _ladder(cutoff: int) -> sp.csr_matrix:
    return sp.diags(np.sqrt(np.arange(1, cutoff)), offsets=1, format="csr")


def _quadratures(cutoff: int) -> list:
    a = _ladder(cutoff)
    eye = sp.identity(cutoff, format="csr")
    x = (a + a.T) / math.sqrt(2.0)
    p = -1j * (a - a.T) / math.sqrt(2.0)
    return [sp.kron(x, eye, format="csr"), sp.kron(p, eye, format="csr"),
            sp.kron(eye, x, format="csr"), sp.kron(eye, p, format="csr")]


def _expectation(rho: np.ndarray, operator) -> complex:
    """Tr[rho A] for sparse A"""
    coo = operator.tocoo()
    return complex(np.sum(coo.data * rho[coo.col, coo.row]))


def cm_from_fock(op: FockOperator) -> CovarianceMatrix:
    """
    Covariance matrix gamma_kl = <R_k R_l + R_l R_k> - 2<R_k><R_l> of a truncated state

    Raises:
        StateError: trace deviates from 1 by more than the configured tolerance
    """
    tr = op.trace()
    if abs(tr - 1.0) > FOCK_CONFIG["trace_tolerance"]:
        raise StateError(f"operator trace {tr:.9f} is not 1")

    rho = op.entries / tr
    quads = _quadratures(op.cutoff)
    means = np.array([_expectation(rho, q).real for q in quads])
    gamma = np.empty((4, 4))
    for k in range(4):
        for l in range(k, 4):
            value = _expectation(rho, quads[k] @ quads[l] + quads[l] @ quads[k]).real - 2.0 * means[k] * means[l]
            gamma[k, l] = gamma[l, k] = value
    return CovarianceMatrix(gamma)


def negativity_oracle(params: GIParams, cutoff: int) -> float:
    """Minimum eigenvalue of the partial transpose of fock_gi; negative iff NPT"""
    return fock_gi(params, cutoff).partial_transpose().min_eigenvalue()


def realigned_norm_oracle(op: FockOperator) -> float:
    """Trace norm of the realigned matrix R[(m,k),(n,l)] = rho[m,n,k,l]"""
    n = op.cutoff
    realigned = op.to_tensor().transpose(0, 2, 1, 3).reshape(n * n, n * n)
    return float(np.sum(np.linalg.svd(realigned, compute_uv=False)))


def partial_trace(op: FockOperator, keep: Mode) -> np.ndarray:
    """Reduced N x N density matrix of the kept mode"""
    tensor = op.to_tensor()
    if Mode(keep) is Mode.A:
        return np.einsum("mnkn->mk", tensor)
    return np.einsum("mnml->nl", tensor)


def von_neumann_entropy(rho: Union[FockOperator, np.ndarray]) -> float:
    """-Tr[rho ln rho] in nats, tiny negative eigenvalues clipped"""
    matrix = rho.entries if isinstance(rho, FockOperator) else np.asarray(rho)
    eigs = np.clip(np.linalg.eigvalsh(matrix), 0.0, None)
    return float(np.sum(entr(eigs)))


def purity(rho: Union[FockOperator, np.ndarray]) -> float:
    """Tr[rho^2], assuming Hermiticity"""
    matrix = rho.entries if isinstance(rho, FockOperator) else np.asarray(rho)
    return float(np.sum(np.abs(matrix) ** 2))
