"""
Gaussian state families
Two-mode squeezed vacuum (TMS), two-mode thermal (TMT) and their isotropic
mixture gamma_GI(r, p) = p*gamma_TMS + (1 - p)*gamma_TMT, plus the scalar
properties of the isotropic state. Entropies are in nats.
"""

import math
from dataclasses import dataclass

import numpy as np

from src.gaussian.errors import DomainError
from src.gaussian.symplectic import CovarianceMatrix, TwoModeStandardForm

_F_GUARD = 1e-12

# cosh 2r and sinh^2 2r stay finite well past this; beyond it they overflow
MAX_SQUEEZING = 100.0


@dataclass(frozen=True)
class GIParams:
    """Squeezing r >= 0 and mixing probability p in [0, 1]"""
    r: float
    p: float

    def __post_init__(self):
        r, p = float(self.r), float(self.p)
        if not math.isfinite(r) or not 0 <= r <= MAX_SQUEEZING:
            raise DomainError(f"squeezing r must lie in [0, {MAX_SQUEEZING:g}], got {self.r!r}")
        if not math.isfinite(p) or not 0.0 <= p <= 1.0:
            raise DomainError(f"mixing probability p must lie in [0, 1], got {self.p!r}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "p", p)


def _check_r(r: float) -> float:
    r = float(r)
    if not math.isfinite(r) or not 0 <= r <= MAX_SQUEEZING:
        raise DomainError(f"squeezing r must lie in [0, {MAX_SQUEEZING:g}], got {r!r}")
    return r


def gamma_tms(r: float) -> CovarianceMatrix:
    """Pure two-mode squeezed vacuum: a = b = cosh 2r, c1 = -c2 = sinh 2r"""
    r = _check_r(r)
    return TwoModeStandardForm(math.cosh(2 * r), math.cosh(2 * r), math.sinh(2 * r), -math.sinh(2 * r)).to_covariance()


def gamma_tmt(r: float) -> CovarianceMatrix:
    """Two identical thermal modes with mean occupation sinh^2 r each"""
    r = _check_r(r)
    return CovarianceMatrix(math.cosh(2 * r) * np.eye(4))


def gamma_gi(params: GIParams) -> CovarianceMatrix:
    """Isotropic state CM p*gamma_TMS + (1 - p)*gamma_TMT"""
    p = params.p
    return CovarianceMatrix(p * gamma_tms(params.r).entries + (1.0 - p) * gamma_tmt(params.r).entries)


def symplectic_nu(params: GIParams) -> float:
    """
    Doubly degenerate symplectic eigenvalue sqrt(cosh^2 2r - p^2 sinh^2 2r)

    Evaluated as sqrt(1 + (1 - p^2) sinh^2 2r), which never drops below 1.
    """
    s = math.sinh(2 * params.r)
    return math.sqrt(1.0 + (1.0 - params.p * params.p) * s * s)


def symplectic_nu_tilde(params: GIParams) -> float:
    """
    Smallest symplectic eigenvalue of the partial transpose, cosh 2r - p sinh 2r

    Evaluated as (1 - p) cosh 2r + p e^{-2r} so it stays positive at large r.
    """
    return (1.0 - params.p) * math.cosh(2 * params.r) + params.p * math.exp(-2 * params.r)


def entropy_function(nu: float) -> float:
    """
    Von Neumann entropy of a single-mode thermal state with symplectic eigenvalue nu

    f(nu) = ((nu+1)/2) ln((nu+1)/2) - ((nu-1)/2) ln((nu-1)/2), with the second
    term taken as its limit 0 at nu = 1.
    """
    if nu < 1.0 - 1e-9:
        raise DomainError(f"symplectic eigenvalue must be >= 1, got {nu!r}")
    nu = max(nu, 1.0)
    plus = (nu + 1.0) / 2.0
    if nu - 1.0 < _F_GUARD:
        return plus * math.log(plus)
    minus = (nu - 1.0) / 2.0
    if minus > 1.0:
        # plus - minus = 1; regrouped so the two large terms do not cancel
        return math.log(minus) + plus * math.log1p(1.0 / minus)
    return plus * math.log(plus) - minus * math.log(minus)


def renyi_function(nu: float, alpha: float) -> float:
    """F_alpha(nu) = ((nu+1)/2)^alpha - ((nu-1)/2)^alpha"""
    if alpha <= 0:
        raise DomainError(f"Renyi order must be > 0, got {alpha!r}")
    return ((nu + 1.0) / 2.0) ** alpha - max(0.0, (nu - 1.0) / 2.0) ** alpha


def local_entropy(r: float) -> float:
    """Entropy of either reduced state, 2cosh^2 r ln cosh r - 2sinh^2 r ln sinh r"""
    return entropy_function(math.cosh(2 * _check_r(r)))


def local_renyi(params: GIParams, alpha: float) -> float:
    """Renyi entropy of order alpha of either reduced state (independent of p)"""
    if alpha <= 0:
        raise DomainError(f"Renyi order must be > 0, got {alpha!r}")
    if alpha == 1:
        return local_entropy(params.r)
    ch2, sh2 = math.cosh(params.r) ** 2, math.sinh(params.r) ** 2
    return math.log(ch2 ** alpha - sh2 ** alpha) / (alpha - 1.0)


@dataclass(frozen=True)
class StateProperties:
    params: GIParams
    nu: float
    nu_tilde: float
    purity: float
    von_neumann: float
    local_entropy: float

    def renyi(self, alpha: float) -> float:
        """
        Renyi entropy of order alpha, 2 ln F_alpha(nu) / (alpha - 1)

        alpha = 1 returns the von Neumann entropy.
        """
        if alpha <= 0:
            raise DomainError(f"Renyi order must be > 0, got {alpha!r}")
        if alpha == 1:
            return self.von_neumann
        return 2.0 * math.log(renyi_function(self.nu, alpha)) / (alpha - 1.0)

    @property
    def renyi_2(self) -> float:
        return 2.0 * math.log(self.nu)

    def local_renyi(self, alpha: float) -> float:
        return local_renyi(self.params, alpha)


def properties(params: GIParams) -> StateProperties:
    """
    Scalar properties of gamma_GI(r, p)

    Args:
        params: State coordinates

    Returns:
        StateProperties with nu, nu_tilde, purity 1/nu^2, S = 2f(nu) and the local entropy
    """
    nu = symplectic_nu(params)
    return StateProperties(
        params=params,
        nu=nu,
        nu_tilde=symplectic_nu_tilde(params),
        purity=1.0 / (nu * nu),
        von_neumann=2.0 * entropy_function(nu),
        local_entropy=local_entropy(params.r),
    )
