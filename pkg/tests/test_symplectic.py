import math

import numpy as np
from hypothesis import given, settings
from hypothesis.strategies import floats
from pytest import approx, mark, raises

from src.gaussian.errors import DimensionError, DomainError, ShapeError
from src.gaussian.states import GIParams, gamma_gi, gamma_tms, gamma_tmt
from src.gaussian.symplectic import (
    CovarianceMatrix,
    Mode,
    TwoModeStandardForm,
    is_physical,
    omega,
    partial_transpose,
    reduced_covariance,
    standard_form,
    steering_matrix,
    symplectic_eigenvalues,
)


def test_omega_single_mode():
    assert np.array_equal(omega(1), [[0, 1], [-1, 0]])


@mark.parametrize("n", [1, 2, 3, 5])
def test_omega_is_orthogonal_and_squares_to_minus_identity(n):
    w = omega(n)
    assert np.allclose(w.T @ w, np.eye(2 * n))
    assert np.allclose(w @ w, -np.eye(2 * n))


def test_omega_two_modes_is_direct_sum():
    block = omega(1)
    expected = np.block([[block, np.zeros((2, 2))], [np.zeros((2, 2)), block]])
    assert np.array_equal(omega(2), expected)


@mark.parametrize("n", [0, -1, 1.5])
def test_omega_rejects_bad_mode_counts(n):
    with raises(DomainError):
        omega(n)


def test_covariance_matrix_rejects_bad_shapes():
    with raises(DimensionError):
        CovarianceMatrix(np.eye(3))
    with raises(DimensionError):
        CovarianceMatrix(np.ones((2, 4)))
    with raises(DimensionError):
        CovarianceMatrix(np.array([[1.0, 0.5], [0.0, 1.0]]))


def test_covariance_matrix_is_read_only_with_zero_displacement():
    gamma = gamma_tms(0.3)
    assert gamma.n_modes == 2
    assert np.array_equal(gamma.displacement, np.zeros(4))
    with raises(ValueError):
        gamma.entries[0, 0] = 5.0


def test_vacuum_spectrum():
    assert symplectic_eigenvalues(np.eye(4)).values == approx((1.0, 1.0))


def test_tmt_spectrum():
    spectrum = symplectic_eigenvalues(gamma_tmt(1.0))
    assert spectrum.values == approx((3.7621957, 3.7621957), abs=1e-7)


def test_gi_spectrum_matches_closed_form():
    spectrum = symplectic_eigenvalues(gamma_gi(GIParams(1.0, 0.5)))
    assert spectrum.values == approx((3.296299, 3.296299), abs=1e-6)
    closed = math.sqrt(math.cosh(2) ** 2 - 0.25 * math.sinh(2) ** 2)
    assert spectrum.min == approx(closed, rel=1e-12)


def test_spectrum_rejects_odd_dimension():
    with raises(DimensionError):
        symplectic_eigenvalues(np.eye(3))


def test_vacuum_is_physical_on_the_boundary():
    result = is_physical(np.eye(4))
    assert result.physical
    assert result.margin == approx(0.0, abs=1e-12)


def test_sub_vacuum_is_not_physical():
    assert not is_physical(0.5 * np.eye(4)).physical


@settings(max_examples=60, deadline=None)
@given(floats(min_value=0, max_value=2), floats(min_value=0, max_value=1))
def test_every_isotropic_state_is_physical(r, p):
    gamma = gamma_gi(GIParams(r, p))
    assert is_physical(gamma).physical
    assert symplectic_eigenvalues(gamma).min >= 1 - 1e-9


def test_partial_transpose_flips_momentum_correlation():
    r, p = 0.7, 0.4
    pt = partial_transpose(gamma_gi(GIParams(r, p)), Mode.B)
    c = p * math.sinh(2 * r)
    assert pt.entries[0, 2] == approx(c)
    assert pt.entries[1, 3] == approx(c)


def test_partial_transpose_leaves_products_alone():
    gamma = gamma_tmt(0.9)
    assert partial_transpose(gamma, "B").allclose(gamma, atol=0)


@settings(max_examples=40, deadline=None)
@given(floats(min_value=0, max_value=2), floats(min_value=0, max_value=1))
def test_partial_transpose_is_an_involution(r, p):
    gamma = gamma_gi(GIParams(r, p))
    twice = partial_transpose(partial_transpose(gamma, Mode.A), Mode.A)
    assert np.array_equal(twice.entries, gamma.entries)
    assert symplectic_eigenvalues(twice).values == approx(symplectic_eigenvalues(gamma).values, rel=1e-12)


@mark.parametrize("mode", ["C", 2, -1, None])
def test_partial_transpose_rejects_unknown_modes(mode):
    with raises(DomainError):
        partial_transpose(gamma_tms(0.5), mode)


def test_standard_form_of_the_three_families():
    r = 0.8
    c, s = math.cosh(2 * r), math.sinh(2 * r)
    assert standard_form(gamma_tms(r)) == TwoModeStandardForm(c, c, s, -s)
    assert standard_form(gamma_tmt(r)) == TwoModeStandardForm(c, c, 0.0, 0.0)
    form = standard_form(gamma_gi(GIParams(r, 0.3)))
    assert (form.a, form.b) == approx((c, c))
    assert (form.c1, form.c2) == approx((0.3 * s, -0.3 * s))


@mark.parametrize("quad", [(1.0, 1.0, 0.0, 0.0), (3.2, 1.7, 0.4, -1.1), (2.0, 2.0, 1.5, 1.5)])
def test_standard_form_round_trip_is_exact(quad):
    form = TwoModeStandardForm(*quad)
    assert standard_form(form.to_covariance()) == form


def test_standard_form_rejects_other_sparsity():
    gamma = np.eye(4)
    gamma[0, 1] = gamma[1, 0] = 0.2
    with raises(ShapeError):
        standard_form(gamma)
    with raises(DimensionError):
        standard_form(np.eye(2))


def test_reduced_covariance_is_independent_of_p():
    r = 1.1
    for p in (0.0, 0.3, 1.0):
        local = reduced_covariance(gamma_gi(GIParams(r, p)), Mode.A)
        assert np.allclose(local.entries, math.cosh(2 * r) * np.eye(2), atol=1e-12)


def test_det_equals_nu_to_the_fourth_on_a_grid():
    for r in np.linspace(0, 2, 50):
        for p in np.linspace(0, 1, 50):
            params = GIParams(r, p)
            nu = math.sqrt(math.cosh(2 * r) ** 2 - (p * math.sinh(2 * r)) ** 2)
            assert np.linalg.det(gamma_gi(params).entries) == approx(nu ** 4, rel=1e-10)


def test_steering_matrix_is_hermitian():
    m = steering_matrix(gamma_gi(GIParams(1.0, 0.5)))
    assert np.allclose(m, m.conj().T)
    assert np.allclose(m.imag[:2, :2], 0)
