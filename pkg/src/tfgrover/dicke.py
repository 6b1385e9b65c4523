"""Permutation-symmetric states of n qubits in the Dicke basis.

Basis state ``k`` is the unit-normalized symmetric superposition of all bit
strings with Hamming weight ``k``; index 0 is the all-zeros string, which is
the search target after the basis change that maps the hidden string to 0.

The transverse field ``B = sum_j X_j`` is tridiagonal in this basis and the
oracle ``C = -|0><0|`` is a single diagonal entry.  Matrix functions of B go
through a cached eigendecomposition.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, sqrt

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import DomainError

NORM_TOL = 1e-12
UNITARY_TOL = 1e-12


def check_n(n) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise DomainError(f"qubit count must be an integer, got {n!r}")
    n = int(n)
    if n < 2 or n % 2:
        raise DomainError(f"qubit count must be even and >= 2, got {n}")
    return n


def _frozen(a, dtype=complex) -> np.ndarray:
    a = np.array(a, dtype=dtype)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class SymmetricState:
    """Amplitudes over the n+1 Dicke states.

    ``normalized`` is a claim checked at construction, not a request to
    normalize.
    """

    n: int
    amps: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        object.__setattr__(self, "amps", _frozen(self.amps))
        if self.amps.shape != (self.n + 1,):
            raise DomainError(
                f"expected {self.n + 1} amplitudes for n={self.n}, got shape {self.amps.shape}"
            )
        if self.normalized and abs(self.norm_sq() - 1.0) > NORM_TOL:
            raise DomainError(f"state flagged normalized has norm^2 {self.norm_sq():.17g}")

    def norm_sq(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def __add__(self, other: SymmetricState) -> SymmetricState:
        _same_n(self, other)
        return SymmetricState(self.n, self.amps + other.amps)

    def __sub__(self, other: SymmetricState) -> SymmetricState:
        _same_n(self, other)
        return SymmetricState(self.n, self.amps - other.amps)

    def __mul__(self, c) -> SymmetricState:
        return SymmetricState(self.n, self.amps * c)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class SymmetricOperator:
    """Dense (n+1)x(n+1) operator on the symmetric subspace.

    ``A @ B`` composes, ``A @ psi`` applies.
    """

    n: int
    mat: np.ndarray
    unitary: bool = False

    def __post_init__(self):
        object.__setattr__(self, "mat", _frozen(self.mat))
        d = self.n + 1
        if self.mat.shape != (d, d):
            raise DomainError(f"expected {d}x{d} matrix, got {self.mat.shape}")
        if self.unitary:
            err = unitarity_error(self.mat)
            if err > UNITARY_TOL:
                raise DomainError(f"operator flagged unitary deviates by {err:.3g}")

    @property
    def dag(self) -> SymmetricOperator:
        return SymmetricOperator(self.n, self.mat.conj().T, self.unitary)

    def __matmul__(self, other):
        if isinstance(other, SymmetricOperator):
            _same_n(self, other)
            # skip re-validation: products of unitaries stay unitary to rounding
            out = SymmetricOperator(self.n, self.mat @ other.mat)
            object.__setattr__(out, "unitary", self.unitary and other.unitary)
            return out
        if isinstance(other, SymmetricState):
            _same_n(self, other)
            out = SymmetricState(self.n, self.mat @ other.amps)
            if self.unitary and other.normalized:
                object.__setattr__(out, "normalized", True)
            return out
        return NotImplemented


def unitarity_error(mat: np.ndarray) -> float:
    mat = np.asarray(mat)
    return float(np.abs(mat.conj().T @ mat - np.eye(mat.shape[0])).max())


def _same_n(a, b):
    if a.n != b.n:
        raise DomainError(f"qubit counts differ: {a.n} vs {b.n}")


def _ladder(n: int) -> np.ndarray:
    k = np.arange(n)
    return np.sqrt((k + 1.0) * (n - k))


def build_B(n: int) -> SymmetricOperator:
    """Transverse field ``sum_j X_j`` restricted to the symmetric subspace."""
    n = check_n(n)
    off = _ladder(n)
    return SymmetricOperator(n, np.diag(off, -1) + np.diag(off, 1))


def build_C(n: int) -> SymmetricOperator:
    """Oracle ``-|0><0|`` for the all-zeros target."""
    n = check_n(n)
    mat = np.zeros((n + 1, n + 1))
    mat[0, 0] = -1.0
    return SymmetricOperator(n, mat)


@lru_cache(maxsize=None)
def b_eigensystem(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues ``-n, -n+2, ..., n`` of B and orthonormal eigenvectors.

    Columns are ordered to match the eigenvalues and signed so that the
    overlap with the target state is positive.  Computed once per n.
    """
    n = check_n(n)
    w, v = eigh_tridiagonal(np.zeros(n + 1), _ladder(n))
    order = np.argsort(w)
    v = v[:, order]
    v *= np.sign(v[0])
    # the spectrum is known exactly; rounding in w would leak into every phase
    w = np.arange(-n, n + 1, 2, dtype=float)
    v.flags.writeable = False
    w.flags.writeable = False
    return w, v


def expm_B(n: int, theta: float) -> SymmetricOperator:
    """``exp(-i theta B / 2)``, a collective rotation of every qubit about x."""
    n = check_n(n)
    if not np.isfinite(theta):
        raise DomainError(f"rotation angle must be finite, got {theta}")
    w, v = b_eigensystem(n)
    mat = (v * np.exp(-0.5j * theta * w)) @ v.T
    return SymmetricOperator(n, mat, unitary=True)


def expm_C(n: int, gamma: float) -> SymmetricOperator:
    """``exp(-i gamma C) = I + (e^{i gamma} - 1)|0><0|``."""
    n = check_n(n)
    if not np.isfinite(gamma):
        raise DomainError(f"oracle angle must be finite, got {gamma}")
    mat = np.eye(n + 1, dtype=complex)
    mat[0, 0] = np.exp(1j * gamma)
    return SymmetricOperator(n, mat, unitary=True)


def hadamard_dicke_amps(n: int, j: int) -> np.ndarray:
    """Dicke-basis amplitudes of the B eigenstate with eigenvalue ``j``.

    This is the Dicke state with ``(n - j)/2`` minus signs in the Hadamard
    basis.  Its overlap with Dicke state k is a Krawtchouk polynomial,
    evaluated in exact integer arithmetic before the final scaling.
    """
    m = (n - j) // 2
    cm = comb(n, m)
    amps = np.empty(n + 1)
    for k in range(n + 1):
        kraw = sum((-1) ** i * comb(m, i) * comb(n - m, k - i) for i in range(min(k, m) + 1))
        amps[k] = kraw * sqrt(cm / comb(n, k))
    return amps / sqrt(2.0**n)


def b_index(n: int) -> np.ndarray:
    """The eigenvalue labels ``-n, -n+2, ..., n`` of B."""
    return np.arange(-n, n + 1, 2)


@lru_cache(maxsize=None)
def b_basis(n: int) -> np.ndarray:
    """Matrix whose columns are the closed-form B eigenstates, ordered like :func:`b_index`."""
    n = check_n(n)
    mat = np.column_stack([hadamard_dicke_amps(n, int(j)) for j in b_index(n)])
    mat.flags.writeable = False
    return mat


def special_state(n: int, which: str, j: int | None = None) -> SymmetricState:
    """Named states of the algorithm.

    ``which`` is one of ``target`` (all zeros), ``psi_in`` (|+>^n),
    ``b_plus``/``b_minus`` (the even/odd combinations of |+>^n and |->^n),
    ``b_zero`` (B eigenvalue 0) or ``b_j`` (B eigenvalue ``j``).
    """
    n = check_n(n)
    if which == "target":
        amps = np.zeros(n + 1)
        amps[0] = 1.0
    elif which == "psi_in":
        amps = hadamard_dicke_amps(n, n)
    elif which in ("b_plus", "b_minus"):
        sign = 1.0 if which == "b_plus" else -1.0
        amps = (hadamard_dicke_amps(n, n) + sign * hadamard_dicke_amps(n, -n)) / sqrt(2.0)
    elif which == "b_zero":
        amps = hadamard_dicke_amps(n, 0)
    elif which == "b_j":
        if j is None or isinstance(j, bool) or int(j) != j or abs(j) > n or (n - j) % 2:
            raise DomainError(f"B eigenvalue label must be in -n..n step 2, got {j!r}")
        amps = hadamard_dicke_amps(n, int(j))
    else:
        raise DomainError(f"unknown special state {which!r}")
    return SymmetricState(n, amps, normalized=True)


def overlap(a: SymmetricState, b: SymmetricState) -> complex:
    """``<a|b>``, conjugating ``a``."""
    _same_n(a, b)
    return complex(np.vdot(a.amps, b.amps))
