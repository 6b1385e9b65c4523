"""The period unitary W(gamma), its half-period V, and the search evolution."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, pi

import numpy as np

from .dicke import SymmetricOperator, check_n, expm_B, expm_C, special_state
from .errors import DomainError


def check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not 0.0 < gamma <= pi:
        raise DomainError(f"gamma must lie in (0, pi], got {gamma!r}")
    return gamma


def build_W(n: int, gamma: float) -> SymmetricOperator:
    """``W = R O(-gamma) R O(gamma)`` with ``R = exp(-i pi B/n)``, ``O(g) = exp(-i g C)``."""
    n = check_n(n)
    gamma = check_gamma(gamma)
    rot = expm_B(n, 2 * pi / n)
    return rot @ expm_C(n, -gamma) @ rot @ expm_C(n, gamma)


def build_V(n: int) -> SymmetricOperator:
    """Half period at gamma = pi: ``exp(-i pi B/n) exp(i pi C)``; ``V @ V == W(pi)``."""
    n = check_n(n)
    return expm_B(n, 2 * pi / n) @ expm_C(n, -pi)


def default_t_max(n: int) -> int:
    return ceil(4 * 2 ** (n / 2))


@dataclass(frozen=True)
class RunRecord:
    n: int
    gamma: float
    t_star: int
    success_prob: float
    oracle_queries: int
    curve: np.ndarray = field(repr=False)
    truncated: bool = False

    @property
    def peak_overlap_curve(self) -> list[tuple[int, float]]:
        return list(enumerate(self.curve.tolist()))

    @property
    def expected_queries(self) -> float:
        """Queries per success when failed runs are repeated (geometric retries)."""
        return self.oracle_queries / self.success_prob


PEAK_TIE_RTOL = 1e-3


def find_peak(curve: np.ndarray, rtol: float = PEAK_TIE_RTOL) -> int:
    """Earliest local maximum within ``rtol`` of the global maximum.

    Later revivals of the closed transition differ from the first one only
    by the small off-pair eigencomponents, so they count as ties.
    """
    curve = np.asarray(curve)
    top = curve.max()
    left = np.r_[-np.inf, curve[:-1]]
    right = np.r_[curve[1:], -np.inf]
    peaks = np.flatnonzero((curve >= left) & (curve >= right) & (curve >= top * (1 - rtol)))
    return int(peaks[0])


def evolve_scan(n: int, gamma: float, t_max: int | None = None) -> RunRecord:
    """Apply W(gamma) to the even superposition up to ``t_max`` times.

    The peak is the maximum of the target probability over ``0..t_max``,
    earliest among near-ties (see :func:`find_peak`).  A peak sitting on the
    last step means the scan may have stopped on the rise; the record is
    then ``truncated``.
    """
    n = check_n(n)
    if t_max is None:
        t_max = default_t_max(n)
    if t_max < 1:
        raise DomainError(f"t_max must be >= 1, got {t_max}")
    w = build_W(n, gamma).mat
    psi = special_state(n, "psi_in").amps.astype(complex)
    curve = np.empty(t_max + 1)
    curve[0] = abs(psi[0]) ** 2
    for t in range(1, t_max + 1):
        psi = w @ psi
        curve[t] = abs(psi[0]) ** 2
    curve.flags.writeable = False
    t_star = find_peak(curve)
    return RunRecord(
        n=n,
        gamma=float(gamma),
        t_star=t_star,
        success_prob=float(curve[t_star]),
        oracle_queries=2 * t_star,
        curve=curve,
        truncated=t_star == t_max,
    )


def eta_exact(n: int) -> float:
    """Small-gamma coupling ``n <b+|0> <b0|0>`` between b+ and b0."""
    n = check_n(n)
    bp = special_state(n, "b_plus").amps[0].real
    b0 = special_state(n, "b_zero").amps[0].real
    return float(n * bp * b0)


def eta_asymptotic(n: int) -> float:
    """``(2/pi)^(1/4) n^(3/4) N^(-1/2)``.

    Inserting ``<b+|0> = sqrt(2/N)`` and the Stirling form of ``|<b0|0>|``
    into :func:`eta_exact` gives sqrt(2) times this.
    """
    return (2 / pi) ** 0.25 * n**0.75 * 2 ** (-n / 2)


def small_gamma_transition(n: int, gamma: float) -> float:
    """``|<b0| W(gamma)^(n/2) |b+>|``; close to ``gamma * eta`` for small gamma."""
    n = check_n(n)
    if not 0.0 < gamma <= 0.1:
        raise DomainError(f"small-gamma picture needs 0 < gamma <= 0.1, got {gamma}")
    w = build_W(n, gamma).mat
    psi = special_state(n, "b_plus").amps.astype(complex)
    for _ in range(n // 2):
        psi = w @ psi
    return abs(np.vdot(special_state(n, "b_zero").amps, psi))


def queries_from_arg(arg_alpha: float) -> float:
    """Average query count ``2 pi / arg(alpha)``; folds in the ~1/2 success rate."""
    if arg_alpha <= 0:
        raise DomainError(f"arg(alpha) must be positive, got {arg_alpha}")
    return 2 * pi / arg_alpha


def grover_like_queries(n: int) -> float:
    """Reference count ``(pi / 2 sqrt 2) 2^(n/2)``."""
    return pi / (2 * np.sqrt(2)) * 2 ** (n / 2)


def query_complexity(n: int, gamma: float = pi) -> float:
    from .spectral import principal_pair

    alpha, _, _ = principal_pair(n, gamma)
    return queries_from_arg(float(np.angle(alpha)))


def peak_time(arg_alpha: float) -> float:
    """Number of periods for a quarter rotation of the closed transition."""
    return pi / (2 * arg_alpha)

