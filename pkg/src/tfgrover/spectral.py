"""Diagonalization of W(gamma) and the principal conjugate eigenpair.

W is unitary, so a complex Schur decomposition is diagonal up to rounding
and its Schur vectors are an orthonormal eigenbasis.  The eigenvalue 1 of
the dark state is filtered out; the principal pair is the next-closest
conjugate pair ``(alpha, alpha*)`` with ``Im(alpha) > 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import pi

import numpy as np
from scipy.linalg import schur

from .dicke import SymmetricState, check_n, expm_B, special_state
from .errors import AmbiguityError
from .walk import build_W

EPS_DARK = 1e-9
TIE_TOL = 1e-12
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class EigenReport:
    n: int
    gamma: float
    alpha: complex
    arg_alpha: float
    w_plus: SymmetricState
    w_minus: SymmetricState
    fid_target: float
    fid_bplus: float


def eigensystem(n: int, gamma: float) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and orthonormal eigenvectors (columns) of W(gamma)."""
    t, z = schur(build_W(n, gamma).mat, output="complex")
    return np.diag(t).copy(), z


def principal_pair(n: int, gamma: float) -> tuple[complex, SymmetricState, SymmetricState]:
    """``(alpha, w_alpha, w_alpha*)`` for the eigenvalues nearest to, but not at, 1."""
    n = check_n(n)
    w = build_W(n, gamma).mat
    vals, vecs = eigensystem(n, gamma)
    args = np.angle(vals)
    cand = np.flatnonzero((np.abs(args) > EPS_DARK) & (args > 0))
    order = cand[np.argsort(args[cand])]
    if len(order) > 1 and args[order[1]] - args[order[0]] < TIE_TOL:
        raise AmbiguityError(
            f"two eigenphases within {TIE_TOL}: {args[order[0]]!r}, {args[order[1]]!r}"
        )
    i = order[0]
    alpha = vals[i]
    j = int(np.argmin(np.abs(vals - np.conj(alpha))))
    out = []
    for idx in (i, j):
        v = vecs[:, idx]
        res = np.linalg.norm(w @ v - vals[idx] * v)
        if res > RESIDUAL_TOL:
            raise ArithmeticError(f"eigenvector residual {res:.3g} exceeds {RESIDUAL_TOL}")
        out.append(SymmetricState(n, v / np.linalg.norm(v), normalized=True))
    return complex(alpha), out[0], out[1]


def make_w_pm(
    w_alpha: SymmetricState, w_alpha_star: SymmetricState
) -> tuple[SymmetricState, SymmetricState]:
    """``w+- = (w_alpha +- w_alpha*) / sqrt 2`` with fixed phases.

    Each eigenvector is rotated so its target overlap is real and
    nonnegative.  This puts all of the pair's target weight on ``w+`` (and
    none on ``w-``, since the two overlaps have equal modulus by the
    time-reversal symmetry), leaving ``<0|w+>`` real and maximal.
    """
    a = w_alpha.amps * _unphase(w_alpha.amps[0])
    b = w_alpha_star.amps * _unphase(w_alpha_star.amps[0])
    s = np.sqrt(0.5)
    n = w_alpha.n
    return (
        SymmetricState(n, s * (a + b), normalized=True),
        SymmetricState(n, s * (a - b), normalized=True),
    )


def _unphase(z: complex) -> complex:
    return np.exp(-1j * np.angle(z)) if z != 0 else 1.0


def fidelities(report: EigenReport) -> tuple[float, float]:
    """``(|<0|w+>|, |<b+|w->|)``."""
    return _fidelities(report.w_plus, report.w_minus)


def _fidelities(w_plus: SymmetricState, w_minus: SymmetricState) -> tuple[float, float]:
    bp = special_state(w_plus.n, "b_plus").amps
    return float(abs(w_plus.amps[0])), float(abs(np.vdot(bp, w_minus.amps)))


def analyze(n: int, gamma: float = pi) -> EigenReport:
    alpha, wa, wb = principal_pair(n, gamma)
    wp, wm = make_w_pm(wa, wb)
    ft, fb = _fidelities(wp, wm)
    return EigenReport(
        n=n,
        gamma=float(gamma),
        alpha=alpha,
        arg_alpha=float(np.angle(alpha)),
        w_plus=wp,
        w_minus=wm,
        fid_target=ft,
        fid_bplus=fb,
    )


def restricted_matrix(report: EigenReport, gamma: float | None = None) -> np.ndarray:
    """2x2 matrix ``<w_a|W|w_b>`` in the basis ``(w+, w-)``."""
    w = build_W(report.n, report.gamma if gamma is None else gamma).mat
    basis = np.column_stack([report.w_plus.amps, report.w_minus.amps])
    return basis.conj().T @ w @ basis


def z_parity(n: int) -> np.ndarray:
    """``Z_1 ... Z_n`` in the Dicke basis: ``(-1)^k`` on weight k."""
    return np.diag((-1.0) ** np.arange(n + 1))


def symmetry_check(n: int, gamma: float) -> float:
    """``max |L W L^+ - W^+|`` for ``L = exp(-i pi B/n) Z_1...Z_n``."""
    n = check_n(n)
    lam = expm_B(n, 2 * pi / n).mat @ z_parity(n)
    w = build_W(n, gamma).mat
    return float(np.abs(lam @ w @ lam.conj().T - w.conj().T).max())
