"""
Correlation measures
Entanglement of formation, Gaussian quantum discord and quantum mutual
information of the isotropic state (all in nats).

The discord is the Gaussian discord: the optimisation over measurements is
restricted to Gaussian measurements, for which the closed form below is exact.
"""

import math
from dataclasses import dataclass

from src.gaussian.errors import DomainError, NumericalError
from src.gaussian.states import GIParams, entropy_function, gamma_gi, symplectic_nu, symplectic_nu_tilde
from src.gaussian.symplectic import standard_form
from src.settings import TOLERANCES

_X_GUARD = 1e-12


def eof_from_nu_tilde(nu_tilde: float) -> float:
    """
    EOF of a symmetric two-mode Gaussian state from its PT symplectic eigenvalue

    With x = min(1, nu_tilde):
        E = ((1+x)^2/4x) ln((1+x)^2/4x) - ((1-x)^2/4x) ln((1-x)^2/4x)
    """
    if not nu_tilde > 0:
        raise DomainError(f"nu_tilde must be positive, got {nu_tilde!r}")
    x = min(1.0, nu_tilde)
    if abs(1.0 - x) < _X_GUARD:
        return 0.0
    # (1+x)^2/4x and (1-x)^2/4x are the two halves of f at (1 + x^2)/2x
    return entropy_function(1.0 + (1.0 - x) ** 2 / (2.0 * x))


def eof(params: GIParams, check_symmetry: bool = False) -> float:
    """Entanglement of formation; zero on the PPT-separable region"""
    if check_symmetry:
        form = standard_form(gamma_gi(params))
        if abs(form.a - form.b) > TOLERANCES["symmetric"] * max(1.0, abs(form.a)):
            raise NumericalError("closed-form EOF needs a symmetric state (a == b)")
    return eof_from_nu_tilde(symplectic_nu_tilde(params))


def gaussian_discord(params: GIParams) -> float:
    """D = f(cosh 2r) + f(p^2 - (p^2 - 1) cosh 2r) - 2 f(nu)"""
    a = math.cosh(2 * params.r)
    p2 = params.p * params.p
    return entropy_function(a) + entropy_function(p2 - (p2 - 1.0) * a) - 2.0 * entropy_function(symplectic_nu(params))


def mutual_information(params: GIParams) -> float:
    """I = S_A + S_B - S = 2f(cosh 2r) - 2f(nu)"""
    return 2.0 * entropy_function(math.cosh(2 * params.r)) - 2.0 * entropy_function(symplectic_nu(params))


def eof_exceeds_half_mi(params: GIParams) -> bool:
    """Strict test eof > I/2; equality at the pure endpoint p = 1 is False"""
    return eof(params) - mutual_information(params) / 2.0 > TOLERANCES["boundary"]


@dataclass(frozen=True)
class MeasureReport:
    eof: float
    discord: float
    mutual_information: float
    x: float
    eof_exceeds_half_mi: bool


def measure_report(params: GIParams) -> MeasureReport:
    e = eof(params, check_symmetry=True)
    mi = mutual_information(params)
    return MeasureReport(
        eof=e,
        discord=gaussian_discord(params),
        mutual_information=mi,
        x=min(1.0, symplectic_nu_tilde(params)),
        eof_exceeds_half_mi=e - mi / 2.0 > TOLERANCES["boundary"],
    )
