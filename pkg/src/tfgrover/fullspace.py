"""Brute-force 2^n statevector simulation, used as ground truth for small n.

Indexing is little-endian: bit j of an amplitude index is qubit j.  Bit
strings given as text are read the same way, so ``"100"`` is qubit 0 set,
index 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, sqrt

import numpy as np

from .dicke import SymmetricState
from .errors import DomainError

MAX_QUBITS = 14


@dataclass(frozen=True, eq=False)
class FullState:
    n: int
    amps: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n <= MAX_QUBITS:
            raise DomainError(f"full-space simulation supports 1..{MAX_QUBITS} qubits, got {self.n}")
        amps = np.array(self.amps, dtype=complex)
        if amps.shape != (2**self.n,):
            raise DomainError(f"expected {2 ** self.n} amplitudes, got shape {amps.shape}")
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    def norm_sq(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def prob(self, s) -> float:
        return float(abs(self.amps[bits_to_index(s, self.n)]) ** 2)


def bits_to_index(s, n: int) -> int:
    """Index of bit string ``s`` (str of 0/1, sequence of bits, or int)."""
    if isinstance(s, (int, np.integer)) and not isinstance(s, bool):
        if not 0 <= s < 2**n:
            raise DomainError(f"index {s} out of range for {n} qubits")
        return int(s)
    bits = [int(c) for c in s]
    if len(bits) != n or any(b not in (0, 1) for b in bits):
        raise DomainError(f"expected a bit string of length {n}, got {s!r}")
    return sum(b << j for j, b in enumerate(bits))


def index_to_bits(i: int, n: int) -> str:
    return "".join(str((i >> j) & 1) for j in range(n))


def _popcount(idx: np.ndarray) -> np.ndarray:
    w = np.zeros_like(idx)
    x = idx.copy()
    while x.any():
        w += x & 1
        x >>= 1
    return w


def basis_state(n: int, s) -> FullState:
    amps = np.zeros(2**n, dtype=complex)
    amps[bits_to_index(s, n)] = 1.0
    return FullState(n, amps)


def plus_state(n: int) -> FullState:
    """The even superposition of all bit strings."""
    return FullState(n, np.full(2**n, 1 / sqrt(2.0**n), dtype=complex))


def full_apply_oracle(state: FullState, u, gamma: float) -> FullState:
    """Apply ``exp(-i gamma C_u)`` with ``C_u = -|u><u|``."""
    i = bits_to_index(u, state.n)
    amps = state.amps.copy()
    amps[i] *= np.exp(1j * gamma)
    return FullState(state.n, amps)


def full_apply_qubit_rotation(state: FullState, q: int, theta: float) -> FullState:
    """Apply ``exp(-i theta X_q / 2)`` to qubit ``q`` only."""
    if not 0 <= q < state.n:
        raise DomainError(f"qubit index {q} out of range for {state.n} qubits")
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    a = state.amps.reshape(2 ** (state.n - q - 1), 2, 2**q)
    out = np.empty_like(a)
    out[:, 0, :] = c * a[:, 0, :] - 1j * s * a[:, 1, :]
    out[:, 1, :] = -1j * s * a[:, 0, :] + c * a[:, 1, :]
    return FullState(state.n, out.reshape(-1))


def full_apply_transverse(state: FullState, theta: float) -> FullState:
    """Apply ``exp(-i theta B / 2)`` as a product of single-qubit rotations."""
    for q in range(state.n):
        state = full_apply_qubit_rotation(state, q, theta)
    return state


def full_step(state: FullState, u, gamma: float) -> FullState:
    """One period ``W(gamma)`` with target ``u``, applied right to left."""
    theta = 2 * np.pi / state.n
    state = full_apply_oracle(state, u, gamma)
    state = full_apply_transverse(state, theta)
    state = full_apply_oracle(state, u, -gamma)
    return full_apply_transverse(state, theta)


def full_curve(n: int, u, gamma: float, t: int) -> np.ndarray:
    """``|<u|psi_t>|^2`` for ``t = 0..t``, starting from the even superposition."""
    if n > 12:
        raise DomainError(f"full_run is limited to n <= 12, got {n}")
    i = bits_to_index(u, n)
    state = plus_state(n)
    probs = np.empty(t + 1)
    probs[0] = abs(state.amps[i]) ** 2
    for step in range(1, t + 1):
        state = full_step(state, u, gamma)
        probs[step] = abs(state.amps[i]) ** 2
    return probs


def full_run(n: int, u, gamma: float, t: int) -> float:
    """Success probability after ``t`` periods with hidden string ``u``."""
    return float(full_curve(n, u, gamma, t)[-1])


def full_evolve(n: int, gamma: float, t: int, u=0) -> FullState:
    state = plus_state(n)
    for _ in range(t):
        state = full_step(state, u, gamma)
    return state


def project_symmetric(state: FullState) -> tuple[SymmetricState, float]:
    """Dicke amplitudes of ``state`` and the norm of its non-symmetric remainder."""
    n = state.n
    weights = _popcount(np.arange(2**n))
    scale = np.array([sqrt(comb(n, k)) for k in range(n + 1)])
    amps = np.bincount(weights, weights=state.amps.real, minlength=n + 1) + 1j * np.bincount(
        weights, weights=state.amps.imag, minlength=n + 1
    )
    amps = amps / scale
    embedded = amps[weights] / scale[weights]
    leakage = float(np.linalg.norm(state.amps - embedded))
    return SymmetricState(n, amps), leakage


def embed_symmetric(psi: SymmetricState) -> FullState:
    """Inverse of :func:`project_symmetric` on the symmetric subspace."""
    n = psi.n
    weights = _popcount(np.arange(2**n))
    scale = np.array([sqrt(comb(n, k)) for k in range(n + 1)])
    return FullState(n, psi.amps[weights] / scale[weights])
