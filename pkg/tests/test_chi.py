from math import comb, pi, sqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_state, states
from tfgrover import chi, walk
from tfgrover.dicke import SymmetricState, b_index, expm_B, expm_C, special_state
from tfgrover.errors import DomainError


def dark_free(psi):
    bm = special_state(psi.n, "b_minus").amps
    return SymmetricState(psi.n, psi.amps - np.vdot(bm, psi.amps) * bm)


@pytest.mark.parametrize("n", [4, 10, 20])
def test_chi_of_special_states(n):
    k = np.arange(n)
    N = 2.0**n
    assert np.abs(chi.chi_of_state(special_state(n, "target")).values - chi.xi_table(n).xi).max() < 1e-12
    c = chi.chi_of_state(special_state(n, "b_plus"))
    assert np.abs(c.values - sqrt(2) * (-1.0) ** k / sqrt(N)).max() < 1e-12
    c = chi.chi_of_state(special_state(n, "psi_in"))
    assert np.abs(c.values - (-1.0) ** k / sqrt(N)).max() < 1e-12
    c = chi.chi_of_state(special_state(n, "b_zero"))
    assert np.abs(c.values - sqrt(comb(n, n // 2) / N)).max() < 1e-12


def test_chi_b_zero_stirling():
    c = chi.chi_of_state(special_state(16, "b_zero")).values
    assert abs(c[0] / (2 / (pi * 16)) ** 0.25 - 1) < 0.02


@given(states())
def test_periodic_boundary(psi):
    c = chi.chi_of_state(psi)
    assert abs(chi.chi_at(psi, 2 * pi) - c.values[0]) < 1e-12
    for k in (1, psi.n - 1):
        assert abs(chi.chi_at(psi, 2 * pi * k / psi.n) - c.values[k]) < 1e-12


def test_chi_definition_direct(rng):
    n = 8
    psi = random_state(rng, n)
    c = chi.chi_of_state(psi).values
    for k in range(n):
        direct = (expm_B(n, -2 * pi * k / n) @ psi).amps[0]
        assert abs(direct - c[k]) < 1e-12


def test_rotation(rng):
    n = 10
    psi = random_state(rng, n)
    c = chi.chi_of_state(psi)
    lhs = chi.chi_of_state(expm_B(n, 2 * pi / n) @ psi)
    rhs = chi.apply_rotation_chi(c)
    assert np.abs(lhs.values - rhs.values).max() < 1e-12
    assert abs(lhs.dark - rhs.dark) < 1e-12
    full = c
    for _ in range(n):
        full = chi.apply_rotation_chi(full)
    assert np.abs(full.values - c.values).max() == 0 and full.dark == c.dark


def test_rotation_flips_bplus_part_of_psi_in():
    n = 12
    # chi ignores the dark half of psi_in, so only the b+ half is seen
    c = chi.chi_of_state(special_state(n, "psi_in"))
    half = chi.chi_of_state(special_state(n, "b_plus") * sqrt(0.5))
    assert np.abs(half.values - c.values).max() < 1e-15
    assert np.abs(chi.apply_rotation_chi(half).values + c.values).max() < 1e-15


def test_oracle():
    n = 8
    xi = chi.xi_table(n)
    c = chi.ChiFunction(n, xi.xi)
    assert np.abs(chi.apply_oracle_chi(c, 0.0, xi).values - c.values).max() == 0
    assert np.abs(chi.apply_oracle_chi(c, pi, xi).values + xi.xi).max() < 1e-15
    with pytest.raises(DomainError):
        chi.apply_oracle_chi(c, pi, chi.xi_table(10))


def test_oracle_round_trip(rng):
    n = 12
    psi = random_state(rng, n)
    lhs = chi.chi_of_state(expm_C(n, 1.3) @ psi)
    rhs = chi.apply_oracle_chi(chi.chi_of_state(psi), 1.3, chi.xi_table(n))
    assert np.abs(lhs.values - rhs.values).max() < 1e-12


def test_oracle_scales_index_zero():
    n = 6
    c = chi.chi_of_state(special_state(n, "psi_in"))
    out = chi.apply_oracle_chi(c, 0.4, chi.xi_table(n))
    assert abs(out.values[0] - np.exp(0.4j) * c.values[0]) < 1e-15


def test_commuting_diagram_random():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(100):
        n = int(rng.choice([2, 4, 6, 8, 10, 12, 16]))
        psi = random_state(rng, n)
        g = rng.uniform(-pi, pi)
        steps = int(rng.integers(0, n))
        c = chi.chi_of_state(psi)
        for _ in range(steps):
            c = chi.apply_rotation_chi(c)
        c = chi.apply_oracle_chi(c, g, chi.xi_table(n))
        out = expm_C(n, g) @ (expm_B(n, 2 * pi * steps / n) @ psi)
        worst = max(worst, np.abs(chi.chi_of_state(out).values - c.values).max())
    assert worst < 1e-11


@pytest.mark.parametrize("gamma", [pi, pi / 2, 0.3])
def test_chi_space_evolution(gamma):
    n, t_max = 12, 200
    curve = walk.evolve_scan(n, gamma, t_max).curve
    xi = chi.xi_table(n)
    c = chi.chi_of_state(special_state(n, "psi_in"))
    for t in range(1, t_max + 1):
        c = chi.apply_period_chi(c, gamma, xi)
        assert abs(abs(c.values[0]) ** 2 - curve[t]) < 1e-9


def test_fourier_special():
    n = 8
    comps = chi.fourier_chi(chi.chi_of_state(special_state(n, "b_zero")))
    j = b_index(n)
    assert np.abs(comps[j != 0]).max() < 1e-14
    comps = chi.fourier_chi(chi.chi_of_state(special_state(n, "b_plus")))
    assert np.abs(comps[np.abs(j) != n]).max() < 1e-14
    assert abs(comps[-1] - comps[0]) < 1e-15


@given(states())
def test_fourier_identity(psi):
    n = psi.n
    comps = chi.fourier_chi(chi.chi_of_state(psi))
    for idx, j in enumerate(b_index(n)):
        if abs(j) == n:
            continue
        bj = special_state(n, "b_j", int(j)).amps
        assert abs(comps[idx] - bj[0] * np.vdot(bj, psi.amps)) < 1e-12


def test_bplus_component_from_fourier(rng):
    n = 10
    psi = random_state(rng, n)
    comps = chi.fourier_chi(chi.chi_of_state(psi))
    bp = special_state(n, "b_plus").amps
    assert abs(comps[-1] * sqrt(2.0**n / 2) - np.vdot(bp, psi.amps)) < 1e-12


def test_norm_examples():
    assert abs(chi.norm_from_chi(chi.chi_of_state(special_state(12, "b_plus"))) - 1) < 1e-12
    assert abs(chi.norm_from_chi(chi.chi_of_state(special_state(16, "target"))) - 1) < 1e-10
    c = chi.chi_of_state(special_state(8, "b_zero"))
    assert chi.norm_from_chi(2 * c) == pytest.approx(4 * chi.norm_from_chi(c), rel=1e-14)


@settings(max_examples=30)
@given(st.integers(1, 13).map(lambda h: 2 * h), st.integers(0, 2**32 - 1))
def test_norm_from_chi_matches(n, seed):
    psi = dark_free(random_state(np.random.default_rng(seed), n))
    assert abs(chi.norm_from_chi(chi.chi_of_state(psi)) - psi.norm_sq()) < 1e-10


def test_reconstruct_examples():
    b0 = special_state(8, "b_zero")
    assert np.abs(chi.reconstruct_from_chi(chi.chi_of_state(b0)).amps - b0.amps).max() < 1e-12
    zero = chi.reconstruct_from_chi(chi.ChiFunction(6, np.zeros(6)))
    assert np.abs(zero.amps).max() == 0
    n = 12
    psi = walk.build_W(n, pi) @ special_state(n, "psi_in")
    back = chi.reconstruct_from_chi(chi.chi_of_state(psi))
    assert np.abs(back.amps - psi.amps).max() < 1e-12


def test_reconstruct_without_dark_channel(rng):
    n = 8
    psi = dark_free(random_state(rng, n))
    c = chi.chi_of_state(psi)
    back = chi.reconstruct_from_chi(chi.ChiFunction(n, c.values))
    assert np.abs(back.amps - psi.amps).max() < 1e-12


@given(states())
def test_round_trips(psi):
    c = chi.chi_of_state(psi)
    back = chi.reconstruct_from_chi(c)
    assert np.abs(back.amps - psi.amps).max() < 1e-10
    again = chi.chi_of_state(back)
    assert np.abs(again.values - c.values).max() < 1e-10


def test_chi_function_validation():
    with pytest.raises(DomainError):
        chi.ChiFunction(4, np.zeros(5))
    a = chi.ChiFunction(4, np.ones(4), 1.0)
    with pytest.raises(DomainError):
        a + chi.ChiFunction(6, np.ones(6))
    s = a + 2 * a
    assert np.all(s.values == 3) and s.dark == 3


@pytest.mark.parametrize("n", range(2, 41, 2))
def test_xi_identities_double(n):
    t = chi.xi_table(n)
    N = 2.0**n
    assert abs(t.alternating_sum() - 2 * n / N) < 1e-14 * n
    assert abs(t.weighted_alternating_sum() - n * n / N) < 1e-12 * n * n


@pytest.mark.parametrize("n", range(2, 41, 2))
def test_xi_identities_high_precision(n):
    assert max(chi.xi_identity_errors(n)) < 1e-12


def test_double_precision_loses_relative_accuracy():
    # the sums are ~2^-n while the terms are O(1)
    small = max(chi.xi_identity_errors(8, dps=None))
    large = max(chi.xi_identity_errors(40, dps=None))
    assert small < 1e-12 < large


def test_xi_table_values():
    t = chi.xi_table(6)
    assert t.xi[0] == 1.0
    assert abs(t.xi[3]) < 1e-90  # cos(pi/2) rounds to 6e-17
    k = np.arange(6)
    assert np.abs(t.xi - np.cos(k * pi / 6) ** 6).max() < 1e-15
    with pytest.raises(ValueError):
        t.xi[0] = 2.0
