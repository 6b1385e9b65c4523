"""Discrete spin-coherent phase-space representation.

For a symmetric state psi, ``chi_k = <0| exp(i k pi B / n) |psi>`` for
``k = 0..n-1`` is its overlap with the k-th rotated copy of the target.
Both generators of the search act simply on these values: the rotation
``exp(-i pi B/n)`` shifts the index by one and the oracle adds a multiple
of the target's own values ``xi_k = cos(k pi / n)^n``.

The values determine psi up to its component along the dark state b-,
which is carried separately in ``ChiFunction.dark`` so that round trips are
exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb, pi

import mpmath
import numpy as np

from .dicke import SymmetricState, b_basis, b_eigensystem, b_index, check_n, special_state
from .errors import DomainError


@dataclass(frozen=True, eq=False)
class ChiFunction:
    n: int
    values: np.ndarray
    dark: complex = 0.0

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        if v.shape != (self.n,):
            raise DomainError(f"expected {self.n} chi values, got shape {v.shape}")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def __add__(self, other: ChiFunction) -> ChiFunction:
        if other.n != self.n:
            raise DomainError(f"qubit counts differ: {self.n} vs {other.n}")
        return ChiFunction(self.n, self.values + other.values, self.dark + other.dark)

    def __mul__(self, c) -> ChiFunction:
        return ChiFunction(self.n, self.values * c, self.dark * c)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class XiTable:
    """``xi_k = cos(k pi/n)^n`` for ``k = 0..n-1``, the chi values of the target."""

    n: int
    xi: np.ndarray

    def alternating_sum(self) -> float:
        """``sum_k (-1)^k xi_k``; equals ``2n/N`` for an untampered table."""
        return alternating_xi_sum(self.xi)

    def weighted_alternating_sum(self) -> float:
        """``n/2 + sum_{k>=1} (-1)^k (n-k) xi_k``; equals ``n^2/N``."""
        return weighted_alternating_xi_sum(self.n, self.xi)


def xi_table(n: int) -> XiTable:
    n = check_n(n)
    c = np.cos(np.arange(n) * pi / n)
    xi = np.zeros(n)
    nz = c != 0.0
    # sign * exp(n log|c|) stays accurate where c^n is deep in the 2^-n range
    xi[nz] = np.sign(c[nz]) ** n * np.exp(n * np.log(np.abs(c[nz])))
    xi.flags.writeable = False
    return XiTable(n, xi)


def alternating_xi_sum(xi):
    """``sum_k (-1)^k xi_k``."""
    return math.fsum((-1) ** k * float(x) for k, x in enumerate(xi))


def weighted_alternating_xi_sum(n: int, xi):
    """``n/2 + sum_{k>=1} (-1)^k (n-k) xi_k``."""
    return math.fsum([n / 2] + [(-1) ** k * (n - k) * float(xi[k]) for k in range(1, n)])


def xi_identity_errors(n: int, dps: int | None = 50) -> tuple[float, float]:
    """Relative errors of the two closed-form xi sums.

    ``sum_k (-1)^k xi_k = 2n/N`` and ``n/2 + sum_{k>=1} (-1)^k (n-k) xi_k =
    n^2/N``.  Both right-hand sides are ~2^-n while the terms are O(1), so
    double precision loses about n*log10(2) digits to cancellation; with
    ``dps`` set the table and the sums are evaluated in mpmath at that many
    digits instead.  ``dps=None`` checks the double-precision table.
    """
    n = check_n(n)
    if dps is None:
        t = xi_table(n)
        a, b = t.alternating_sum(), t.weighted_alternating_sum()
        return abs(a / (2 * n / 2.0**n) - 1), abs(b / (n * n / 2.0**n) - 1)
    with mpmath.workdps(dps):
        xi = [mpmath.cos(k * mpmath.pi / n) ** n for k in range(n)]
        big_n = mpmath.mpf(2) ** n
        a = mpmath.fsum((-1) ** k * xi[k] for k in range(n))
        b = mpmath.mpf(n) / 2 + mpmath.fsum((-1) ** k * (n - k) * xi[k] for k in range(1, n))
        return float(abs(a / (2 * n / big_n) - 1)), float(abs(b / (n * n / big_n) - 1))


def chi_of_state(psi: SymmetricState) -> ChiFunction:
    n = check_n(psi.n)
    w, v = b_eigensystem(n)
    coeffs = v.T @ psi.amps
    k = np.arange(n)
    phases = np.exp(1j * pi * np.outer(k, w) / n)
    values = phases @ (v[0] * coeffs)
    dark = complex(np.vdot(special_state(n, "b_minus").amps, psi.amps))
    return ChiFunction(n, values, dark)


def chi_at(psi: SymmetricState, theta: float) -> complex:
    """Continuous ``<0| exp(i theta B/2) |psi>``, for sampling plots."""
    w, v = b_eigensystem(psi.n)
    return complex(np.sum(v[0] * np.exp(0.5j * theta * w) * (v.T @ psi.amps)))


def apply_rotation_chi(chi: ChiFunction) -> ChiFunction:
    """Action of ``exp(-i pi B/n)``: ``chi_k -> chi_{k-1}``, periodic in k."""
    return ChiFunction(chi.n, np.roll(chi.values, 1), -chi.dark)


def apply_oracle_chi(chi: ChiFunction, gamma: float, xi: XiTable) -> ChiFunction:
    """Action of ``exp(-i gamma C)``: ``chi_k + (e^{i gamma} - 1) chi_0 xi_k``."""
    if xi.n != chi.n:
        raise DomainError(f"xi table is for n={xi.n}, chi for n={chi.n}")
    values = chi.values + (np.exp(1j * gamma) - 1) * chi.values[0] * xi.xi
    return ChiFunction(chi.n, values, chi.dark)


def apply_period_chi(chi: ChiFunction, gamma: float, xi: XiTable) -> ChiFunction:
    """One application of W(gamma), entirely in chi space."""
    chi = apply_oracle_chi(chi, gamma, xi)
    chi = apply_rotation_chi(chi)
    chi = apply_oracle_chi(chi, -gamma, xi)
    return apply_rotation_chi(chi)


def fourier_chi(chi: ChiFunction) -> np.ndarray:
    """Components over ``j = -n, -n+2, ..., n`` (see :func:`dicke.b_index`).

    ``(1/n) sum_k chi_k exp(-i j k pi / n)`` equals ``<0|b_j><b_j|psi>`` for
    ``|j| < n``.  On the n-point grid ``j = -n`` and ``j = n`` alias to one
    combined component, stored at both ends.
    """
    n = chi.n
    k = np.arange(n)
    kernel = np.exp(-1j * pi * np.outer(b_index(n), k) / n)
    return kernel @ chi.values / n


def _target_weights(n: int) -> np.ndarray:
    """``|<0|b_j>|^2 = binom(n, (n+j)/2) / 2^n`` over :func:`dicke.b_index`."""
    return np.array([comb(n, (n + int(j)) // 2) for j in b_index(n)]) / 2.0**n


def norm_from_chi(chi: ChiFunction) -> float:
    """``<psi|psi>`` from chi values alone; the dark component is not counted."""
    comps = fourier_chi(chi)
    inner = slice(1, -1)
    return float(
        2.0**chi.n / 2 * abs(comps[-1]) ** 2
        + np.sum(np.abs(comps[inner]) ** 2 / _target_weights(chi.n)[inner])
    )


def reconstruct_from_chi(chi: ChiFunction) -> SymmetricState:
    n = chi.n
    comps = fourier_chi(chi)
    basis = b_basis(n)
    coeffs = comps / np.sqrt(_target_weights(n))
    amps = basis[:, 1:-1] @ coeffs[1:-1]
    amps = amps + comps[-1] * np.sqrt(2.0**n / 2) * special_state(n, "b_plus").amps
    amps = amps + chi.dark * special_state(n, "b_minus").amps
    return SymmetricState(n, amps)
