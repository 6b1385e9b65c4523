from math import comb, pi, sqrt

import numpy as np
import pytest

from tfgrover import analytic as an
from tfgrover import chi, spectral
from tfgrover.errors import ConvergenceError, DomainError


def test_phi_start_and_periodicity():
    for n in (8, 16, 30):
        beta = an.root_solve(n)
        phi = an.phi_sequence(n, beta)
        assert phi[0] == 1
        assert abs(phi[n] - phi[0]) < 1e-10
    assert an.phi_sequence(6, 0.3 + 0.1j)[0] == 1


def test_phi_is_reflected_chi_of_eigenvector():
    # the recurrence runs in the opposite index direction to chi
    n = 8
    alpha, wa, wb = spectral.principal_pair(n, pi)
    beta = an.root_solve(n)
    target, _ = an.branch_match(beta, alpha)
    vec = wa if target == alpha else wb
    c = chi.chi_of_state(vec).values
    ratio = np.append(c, c[0])[::-1] / c[0]
    assert np.abs(an.phi_sequence(n, beta) - ratio).max() < 1e-8


@pytest.mark.parametrize("n", [4, 8, 20, 40])
def test_residual_at_minus_one(n):
    # the closed form is ~2^-n, so only an absolute bound survives double rounding
    assert abs(an.eigen_poly_residual(n, -1.0) - 2 * n / 2.0**n) < 1e-14 * n


@pytest.mark.parametrize("n", range(8, 41, 2))
def test_root(n):
    beta = an.root_solve(n)
    assert beta.real < 0 and beta.imag < 0
    assert abs(abs(beta) - 1) < 1e-10
    assert abs(an.eigen_poly_residual(n, beta)) < 1e-12
    assert abs(an.eigen_poly_residual(n, beta.conjugate())) < 1e-12
    alpha, _, _ = spectral.principal_pair(n, pi)
    assert an.branch_match(beta, alpha)[1] < 1e-8


def test_root_delta_n20():
    beta = an.root_solve(20)
    assert abs(-beta.imag / an.pred_delta(20) - 1) < 0.02


def test_root_arg_n26():
    beta = an.root_solve(26)
    alpha, _, _ = spectral.principal_pair(26, pi)
    assert abs(abs(np.angle(beta**2)) / np.angle(alpha) - 1) < 1e-6


def test_root_errors():
    with pytest.raises(DomainError):
        an.root_solve(42)
    with pytest.raises(ConvergenceError):
        an.root_solve(30, max_iter=1)
    with pytest.raises(DomainError):
        an.root_solve(10, chi.xi_table(12))


def test_newton_start():
    assert an.newton_start(20) == complex(-1, -2 * sqrt(2) / 1024)


def test_poly_coefficients():
    c = an.poly_coefficients(6)
    assert c[0] == 0.5 and c[-1] == 0.5 and len(c) == 7
    z = 0.3 - 0.8j
    assert abs(np.polyval(c, z) - an.eigen_poly_residual(6, z)) < 1e-15


def test_d():
    n = 20
    assert an.compute_d(n) == pytest.approx(11.52, rel=0.02)
    assert an.compute_d(n) == pytest.approx(an.pred_d(n), rel=0.02)
    for n in range(4, 41, 2):
        assert an.compute_d(n) > 0
    for n in range(20, 41, 2):
        assert abs(an.compute_d(n) / an.pred_d(n) - 1) < 0.02


def test_delta_formal_n24():
    beta = an.root_solve(24)
    assert abs(an.delta_formal(24) / -beta.imag - 1) < 0.01


def test_predictions():
    assert an.pred_arg_alpha(30) * 2**15 == pytest.approx(4 * sqrt(2) * (1 - pi**2 / 60) ** 0.25, rel=1e-14)
    assert an.pred_arg_alpha(30) * 2**15 == pytest.approx(5.414, rel=2e-3)
    assert an.pred_fid_target(10**8) == pytest.approx(1, abs=1e-7)
    rep = an.predictions(20)
    assert abs(rep.pred_fid_target - spectral.analyze(20, pi).fid_target) < 0.01
    assert abs(abs(rep.beta) - 1) < 1e-10
    assert abs(rep.delta / -rep.beta.imag - 1) < 1e-9
    assert rep.pred_fid_bplus == 1 - 2.0**-20
    assert rep.eta == pytest.approx((2 / pi) ** 0.25 * 20**0.75 / 1024)
    with pytest.raises(DomainError):
        an.predictions(6)


def test_pre_gaussian_sum_tracks_diagonalization():
    # the remaining gap to the large-n formula is the Gaussian step
    for n in (16, 20, 24, 30):
        assert abs(an.fid_target_from_sum(n) - spectral.analyze(n, pi).fid_target) < 1e-4


def _split(n):
    beta = an.root_solve(n)
    delta = -beta.imag
    phi = an.phi_sequence(n, beta)
    return delta, phi.real, 1j * phi.imag


@pytest.mark.parametrize("n", range(16, 41, 4))
def test_real_part_second_order(n):
    delta, plus, _ = _split(n)
    assert np.abs(plus - an.real_part_estimate(n)).max() <= n * delta**2


def test_real_part_fixed_bound():
    worst = max(np.abs(_split(n)[1] - an.real_part_estimate(n)).max() for n in range(16, 41, 2))
    assert worst < 1e-6


@pytest.mark.parametrize("n", range(16, 41, 4))
def test_imag_part_first_order(n):
    delta, _, minus = _split(n)
    assert np.abs(minus - an.imag_part_estimate(n, delta)).max() <= delta**2


@pytest.mark.parametrize("n", range(16, 41, 4))
def test_minus_recurrence_third_order(n):
    delta, plus, minus = _split(n)
    res = np.abs(minus[:-1] + minus[1:] + 1j * delta * plus[:-1]).max()
    assert res <= delta**3


def test_minus_recurrence_fixed_bound():
    worst = 0.0
    for n in range(16, 41, 2):
        delta, plus, minus = _split(n)
        worst = max(worst, np.abs(minus[:-1] + minus[1:] + 1j * delta * plus[:-1]).max())
    assert worst < 1e-8


@pytest.mark.parametrize("n", [20, 24, 30, 40])
def test_gaussian_approximation(n):
    worst = 0.0
    for j in range(-(n // 2), n // 2 + 1):
        if j % 2:
            continue  # j runs over B eigenvalues, which are even
        exact = comb(n, (n + j) // 2) / 2.0**n
        tau = j / (2 * n)
        worst = max(worst, abs(exact - 2 * np.exp(-2 * n * tau**2) / sqrt(2 * pi * n)))
    assert worst < 0.05 / sqrt(n)
