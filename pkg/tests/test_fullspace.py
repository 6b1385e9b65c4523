from math import pi, sqrt

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tfgrover import fullspace as fs
from conftest import random_state
from tfgrover.dicke import SymmetricState, expm_B, expm_C, special_state
from tfgrover.errors import DomainError
from tfgrover.walk import build_W, evolve_scan


def test_bit_string_convention():
    # char j is qubit j, bit j of the index is qubit j
    assert fs.bits_to_index("100", 3) == 1
    assert fs.bits_to_index([0, 0, 1], 3) == 4
    assert fs.index_to_bits(6, 3) == "011"
    for i in range(16):
        assert fs.bits_to_index(fs.index_to_bits(i, 4), 4) == i
    for bad in ("10", "1020", 16, -1):
        with pytest.raises(DomainError):
            fs.bits_to_index(bad, 4)


def test_size_cap():
    with pytest.raises(DomainError):
        fs.plus_state(15)
    with pytest.raises(DomainError):
        fs.full_curve(14, 0, pi, 1)


def test_oracle():
    psi = fs.plus_state(4)
    assert np.abs(fs.full_apply_oracle(psi, "0110", 2 * pi).amps - psi.amps).max() < 1e-15
    out = fs.full_apply_oracle(psi, "0110", pi).amps
    changed = np.flatnonzero(np.abs(out - psi.amps) > 1e-12)
    assert changed.tolist() == [fs.bits_to_index("0110", 4)]
    assert abs(out[changed[0]] + psi.amps[changed[0]]) < 1e-15
    with pytest.raises(DomainError):
        fs.full_apply_oracle(psi, "011", pi)


def test_oracle_projection():
    n = 10
    psi = special_state(n, "psi_in")
    out, leak = fs.project_symmetric(fs.full_apply_oracle(fs.embed_symmetric(psi), 0, 1.1))
    assert leak < 1e-12
    assert np.abs(out.amps - (expm_C(n, 1.1) @ psi).amps).max() < 1e-12


def test_transverse():
    n = 6
    psi = fs.plus_state(n)
    rot = fs.full_apply_transverse(fs.basis_state(n, 0), 2 * pi)
    assert np.abs(rot.amps - fs.basis_state(n, 0).amps).max() < 1e-12
    flipped = fs.full_apply_transverse(fs.basis_state(n, 0), pi)
    assert abs(flipped.amps[-1] - (-1j) ** n) < 1e-12
    # |+>^n is a B eigenstate
    out = fs.full_apply_transverse(psi, 0.4)
    assert abs(abs(np.vdot(psi.amps, out.amps)) - 1) < 1e-12


def test_transverse_projection():
    n = 8
    for k in range(n + 1):
        e = np.zeros(n + 1)
        e[k] = 1
        psi = SymmetricState(n, e)
        out, leak = fs.project_symmetric(fs.full_apply_transverse(fs.embed_symmetric(psi), 2 * pi / 8))
        assert leak < 1e-12
        assert np.abs(out.amps - (expm_B(n, 2 * pi / 8) @ psi).amps).max() < 1e-12


def test_projection_basics():
    n = 6
    proj, leak = fs.project_symmetric(fs.plus_state(n))
    assert leak < 1e-14
    assert np.abs(proj.amps - special_state(n, "psi_in").amps).max() < 1e-14
    _, leak = fs.project_symmetric(fs.basis_state(n, "010101"))
    assert leak > 0.5


def test_leakage_after_evolution():
    n = 10
    state = fs.full_evolve(n, pi, 50)
    _, leak = fs.project_symmetric(state)
    assert leak < 1e-12


def test_full_run_t0():
    assert fs.full_run(8, "01100101", pi, 0) == pytest.approx(1 / 256, abs=1e-16)


def test_full_run_matches_symmetric(rng):
    n = 10
    u = int(rng.integers(2**n))
    curve = fs.full_curve(n, u, pi, 60)
    ref = evolve_scan(n, pi, 60).curve
    assert np.abs(curve - ref).max() < 1e-10


def test_two_targets_identical():
    a = fs.full_curve(8, "00000000", pi / 2, 30)
    b = fs.full_curve(8, "11010010", pi / 2, 30)
    assert np.abs(a - b).max() < 1e-12


@given(st.integers(0, 2**6 - 1), st.floats(0.05, pi))
def test_u_independence_property(u, gamma):
    a = fs.full_curve(6, 0, gamma, 12)
    b = fs.full_curve(6, u, gamma, 12)
    assert np.abs(a - b).max() < 1e-12


def test_full_step_matches_W():
    n = 8
    w = build_W(n, 0.9)
    psi = special_state(n, "psi_in")
    full = fs.plus_state(n)
    for _ in range(20):
        psi = w @ psi
        full = fs.full_step(full, 0, 0.9)
    proj, leak = fs.project_symmetric(full)
    assert leak < 1e-12
    assert np.abs(proj.amps - psi.amps).max() < 1e-12


def test_embed_roundtrip(rng):
    psi = random_state(rng, 8)
    full = fs.embed_symmetric(psi)
    assert abs(full.norm_sq() - 1) < 1e-12
    back, leak = fs.project_symmetric(full)
    assert leak < 1e-14
    assert np.abs(back.amps - psi.amps).max() < 1e-14


def test_prob():
    n = 4
    assert fs.plus_state(n).prob("0101") == pytest.approx(1 / 16)
    assert fs.basis_state(n, "0101").prob(fs.bits_to_index("0101", 4)) == 1.0
    assert abs(sqrt(fs.basis_state(n, 3).norm_sq()) - 1) < 1e-15
