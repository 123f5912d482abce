import math

import numpy as np
from hypothesis import given, settings
from hypothesis.strategies import floats
from pytest import approx, mark, raises

from src.gaussian.criteria import ppt
from src.gaussian.errors import DomainError
from src.gaussian.measures import (
    eof,
    eof_exceeds_half_mi,
    eof_from_nu_tilde,
    gaussian_discord,
    measure_report,
    mutual_information,
)
from src.gaussian.states import GIParams, entropy_function, local_entropy


def _pure_entropy(r):
    return 2 * math.cosh(r) ** 2 * math.log(math.cosh(r)) - 2 * math.sinh(r) ** 2 * math.log(math.sinh(r))


@mark.parametrize("r, p", [(1.0, 0.5), (0.5, 0.3), (2.0, math.tanh(2.0)), (0.0, 1.0)])
def test_eof_vanishes_on_separable_states(r, p):
    assert eof(GIParams(r, p)) == 0.0


def test_eof_reference_values():
    assert eof(GIParams(1.0, 1.0)) == approx(_pure_entropy(1.0), rel=1e-12)
    assert eof(GIParams(1.0, 0.9)) == approx(0.3957, abs=1e-3)
    assert eof(GIParams(1.0, 0.9), check_symmetry=True) == eof(GIParams(1.0, 0.9))


def test_eof_from_nu_tilde_guard():
    assert eof_from_nu_tilde(1.0) == 0.0
    assert eof_from_nu_tilde(1.0 - 1e-13) == 0.0
    assert eof_from_nu_tilde(3.0) == 0.0
    assert eof_from_nu_tilde(0.5) > 0
    with raises(DomainError):
        eof_from_nu_tilde(0.0)


@mark.parametrize("r", [10.0, 20.0, 60.0])
def test_pure_state_measures_stay_accurate_at_large_squeezing(r):
    params = GIParams(r, 1.0)
    assert eof(params) == approx(local_entropy(r), rel=1e-10)
    assert mutual_information(params) == approx(2 * local_entropy(r), rel=1e-12)
    assert eof(params) == approx(2 * r - 2 * math.log(2.0) + 1.0, rel=1e-6)


@mark.parametrize("r, p", [(1.0, 0.0), (0.0, 0.7), (0.0, 0.0), (1.8, 0.0)])
def test_discord_vanishes_on_the_edges(r, p):
    assert gaussian_discord(GIParams(r, p)) == approx(0.0, abs=1e-12)


def test_discord_reference_values():
    assert gaussian_discord(GIParams(1.0, 1.0)) == approx(_pure_entropy(1.0), rel=1e-12)
    a = math.cosh(2.0)
    nu = math.sqrt(a ** 2 - 0.25 * math.sinh(2.0) ** 2)
    expected = entropy_function(a) + entropy_function(0.25 + 0.75 * a) - 2 * entropy_function(nu)
    assert gaussian_discord(GIParams(1.0, 0.5)) == approx(expected, rel=1e-12)
    assert gaussian_discord(GIParams(1.0, 0.5)) > 0


def test_mutual_information_reference_values():
    assert mutual_information(GIParams(1.0, 0.0)) == approx(0.0, abs=1e-12)
    assert mutual_information(GIParams(1.0, 1.0)) == approx(2 * _pure_entropy(1.0), rel=1e-12)
    assert mutual_information(GIParams(1.0, 0.5)) == approx(0.2719, abs=2e-3)


@mark.parametrize("r", [0.25, 0.5, 1.0, 1.5])
def test_pure_state_degeneracy(r):
    params = GIParams(r, 1.0)
    expected = _pure_entropy(r)
    assert eof(params) == approx(expected, abs=1e-10)
    assert gaussian_discord(params) == approx(expected, abs=1e-10)
    assert mutual_information(params) / 2 == approx(expected, abs=1e-10)
    assert local_entropy(r) == approx(expected, abs=1e-10)
    assert not eof_exceeds_half_mi(params)


def test_eof_exceeds_half_mi_near_pure_states():
    assert eof_exceeds_half_mi(GIParams(1.0, 0.99))
    assert eof_exceeds_half_mi(GIParams(0.5, 0.99))
    assert not eof_exceeds_half_mi(GIParams(1.0, 0.5))


@settings(max_examples=80, deadline=None)
@given(floats(min_value=0, max_value=2), floats(min_value=0, max_value=1))
def test_eof_positive_iff_ppt_entangled(r, p):
    params = GIParams(r, p)
    result = ppt(params, cross_check=False)
    if abs(result.nu_tilde - 1.0) > 2e-12:
        assert (eof(params) > 0) == result.entangled
    assert gaussian_discord(params) >= -1e-12


def test_discord_strictly_positive_away_from_edges():
    for r in np.linspace(0.05, 2, 40):
        for p in np.linspace(0.05, 1, 40):
            assert gaussian_discord(GIParams(r, p)) > 0


@mark.parametrize("r", [0.5, 1.0])
def test_measures_are_nondecreasing_in_p(r):
    ps = np.linspace(0, 1, 200)
    eofs = [eof(GIParams(r, p)) for p in ps]
    discords = [gaussian_discord(GIParams(r, p)) for p in ps]
    assert all(b >= a - 1e-14 for a, b in zip(eofs, eofs[1:]))
    assert all(b >= a - 1e-14 for a, b in zip(discords, discords[1:]))
    for p, e, d in zip(ps, eofs, discords):
        if p < math.tanh(r):
            assert e == 0.0
        if p >= 0.05:
            assert d > 1e-4


def test_measure_report():
    report = measure_report(GIParams(1.0, 0.9))
    assert report.x == approx(0.4980213, abs=1e-7)
    assert report.eof == eof(GIParams(1.0, 0.9))
    assert report.eof_exceeds_half_mi == eof_exceeds_half_mi(GIParams(1.0, 0.9))
    assert measure_report(GIParams(1.0, 0.2)).x == 1.0
