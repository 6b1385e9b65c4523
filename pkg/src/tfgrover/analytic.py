"""Principal eigenpair at gamma = pi from the chi representation, without diagonalizing.

An eigenvector of the half period ``V = exp(-i pi B/n) exp(i pi C)`` with
eigenvalue beta has chi values fixed (up to scale) by a first-order
recurrence in k.  Periodicity in k turns that recurrence into a degree-n
polynomial in beta with the xi table as coefficients.  The relevant root
sits just below -1 on the unit circle, ``beta ~ -1 - i delta``, and
``beta^2`` is the principal eigenvalue alpha of ``W(pi)``.

Only gamma = pi is treated here; other gammas go through :mod:`spectral`.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import pi, sqrt

import numpy as np

from .chi import XiTable, xi_table
from .dicke import check_n
from .errors import ConvergenceError, DomainError

MAX_NEWTON_ITER = 200


@dataclass(frozen=True)
class AnalyticReport:
    n: int
    beta: complex
    delta: float
    d: float
    delta_formal: float
    pred_arg_alpha: float
    pred_fid_target: float
    pred_fid_bplus: float
    eta: float


def _xi(n: int, xi: XiTable | None) -> np.ndarray:
    if xi is None:
        return xi_table(n).xi
    if xi.n != n:
        raise DomainError(f"xi table is for n={xi.n}, expected {n}")
    return xi.xi


def phi_sequence(n: int, beta: complex, xi: XiTable | None = None) -> np.ndarray:
    """``phi_k = beta^k + 2 sum_{l=1..k} beta^(k-l) xi_l`` for ``k = 0..n``.

    ``xi_n = xi_0 = 1`` closes the sequence.  At a root of
    :func:`eigen_poly_residual` it is periodic, ``phi_n = phi_0 = 1``.
    """
    n = check_n(n)
    x = np.append(_xi(n, xi), 1.0)
    phi = np.empty(n + 1, dtype=complex)
    phi[0] = 1.0
    for k in range(1, n + 1):
        phi[k] = beta * phi[k - 1] + 2 * x[k]
    return phi


def poly_coefficients(n: int, xi: XiTable | None = None) -> np.ndarray:
    """Coefficients of the eigenvalue polynomial, highest power first."""
    x = _xi(check_n(n), xi)
    return np.concatenate([[0.5], x[1:], [0.5]])


def _horner(coeffs: np.ndarray, z: complex) -> tuple[complex, complex]:
    p = 0j
    dp = 0j
    for c in coeffs:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def eigen_poly_residual(n: int, beta: complex, xi: XiTable | None = None) -> complex:
    """``(1 + beta^n)/2 + sum_{k=1}^{n-1} beta^(n-k) xi_k``."""
    return _horner(poly_coefficients(n, xi), complex(beta))[0]


def newton_start(n: int) -> complex:
    return complex(-1.0, -2 * sqrt(2) * 2 ** (-n / 2))


def root_solve(n: int, xi: XiTable | None = None, max_iter: int = MAX_NEWTON_ITER) -> complex:
    """Root of the eigenvalue polynomial with negative real and imaginary parts.

    Damped Newton from the large-n estimate ``-1 - 2i sqrt(2/N)``: a step is
    halved until the residual decreases.  The conjugate root is ``beta*``.
    """
    n = check_n(n)
    if n > 40:
        raise DomainError(f"root_solve supports n <= 40, got {n}")
    coeffs = poly_coefficients(n, xi)
    z = newton_start(n)
    p, dp = _horner(coeffs, z)
    for _ in range(max_iter):
        if dp == 0:
            break
        step = p / dp
        lam = 1.0
        while True:
            z_new = z - lam * step
            p_new, dp_new = _horner(coeffs, z_new)
            if abs(p_new) < abs(p) or lam < 1e-6:
                break
            lam /= 2
        if abs(z_new - z) <= 4e-16 * abs(z) or p_new == 0:
            z, p = z_new, p_new
            break
        if abs(p_new) >= abs(p):
            # no further descent available at working precision
            break
        z, p, dp = z_new, p_new, dp_new
    else:
        raise ConvergenceError(f"Newton did not converge in {max_iter} iterations (n={n})")
    if not (z.real < 0 and z.imag < 0):
        raise ConvergenceError(f"Newton left the expected quadrant: beta={z!r}")
    return z


def branch_match(beta: complex, alpha: complex) -> tuple[complex, float]:
    """Whichever of ``alpha``, ``alpha*`` is closer to ``beta^2``, and the distance."""
    b2 = beta * beta
    best = min((alpha, alpha.conjugate()), key=lambda a: abs(b2 - a))
    return best, abs(b2 - best)


def compute_d(n: int, xi: XiTable | None = None) -> float:
    """``n^2/2 + sum_{k=1}^{n-1} (-1)^k (n-k)^2 xi_k``."""
    n = check_n(n)
    x = _xi(n, xi)
    k = np.arange(1, n)
    return float(n * n / 2 + np.sum((-1.0) ** k * (n - k) ** 2 * x[1:]))


def delta_formal(n: int, d: float | None = None) -> float:
    """``2 sqrt(n/d) N^(-1/2)``."""
    if d is None:
        d = compute_d(n)
    return 2 * sqrt(n / d) * 2 ** (-n / 2)


def finite_size(n: int) -> float:
    return 1 - pi**2 / (2 * n)


def pred_fid_target(n: int) -> float:
    return finite_size(n) ** 0.25


def pred_arg_alpha(n: int) -> float:
    return 4 * sqrt(2) * 2 ** (-n / 2) * finite_size(n) ** 0.25


def pred_delta(n: int) -> float:
    return 2 * sqrt(2) * 2 ** (-n / 2) * finite_size(n) ** 0.25


def pred_d(n: int) -> float:
    return n / 2 * finite_size(n) ** -0.5


def pred_fid_bplus(n: int) -> float:
    return 1 - 2.0**-n


def predictions(n: int) -> AnalyticReport:
    n = check_n(n)
    if n < 8:
        raise DomainError(f"large-n predictions need n >= 8, got {n}")
    beta = root_solve(n)
    d = compute_d(n)
    return AnalyticReport(
        n=n,
        beta=beta,
        delta=-beta.imag,
        d=d,
        delta_formal=delta_formal(n, d),
        pred_arg_alpha=pred_arg_alpha(n),
        pred_fid_target=pred_fid_target(n),
        pred_fid_bplus=pred_fid_bplus(n),
        eta=(2 / pi) ** 0.25 * n**0.75 * 2 ** (-n / 2),
    )


def fid_target_from_sum(n: int) -> float:
    """Target fidelity before the Gaussian step: ``(sum_j 2|<0|b_j>|^2 / (1 + cos(j pi/n)))^(-1/2)``."""
    from math import comb

    total = 0.0
    for j in range(-n + 2, n, 2):
        w = comb(n, (n + j) // 2) / 2.0**n
        total += 2 * w / (1 + np.cos(j * pi / n))
    return total**-0.5


def real_part_estimate(n: int, xi: XiTable | None = None) -> np.ndarray:
    """Leading-order real part ``(-1)^k + 2 sum_l (-1)^(k-l) xi_l`` of phi, ``k = 0..n``."""
    return phi_sequence(n, -1.0, xi).real


def imag_part_estimate(n: int, delta: float, xi: XiTable | None = None) -> np.ndarray:
    """First-order imaginary part ``i delta ((-1)^k k + 2 sum_l (-1)^(k-l) (k-l) xi_l)``."""
    n = check_n(n)
    x = np.append(_xi(n, xi), 1.0)
    out = np.empty(n + 1, dtype=complex)
    for k in range(n + 1):
        l = np.arange(1, k + 1)
        out[k] = 1j * delta * ((-1) ** k * k + 2 * np.sum((-1.0) ** (k - l) * (k - l) * x[l]))
    return out
