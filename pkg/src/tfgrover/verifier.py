"""Checking a measured bit string against the oracle with a pi/2-pulse test.

One round on qubit q: prepare |s>, rotate qubit q by ``exp(-i pi X_q / 4)``
so the register is an even superposition of s and s with bit q flipped,
call ``exp(i pi C_u)`` once (a sign flip on u), rotate back and measure.
If u is one of the two strings the readout is the flipped string with
certainty, otherwise it is s.  A second round on another qubit separates
``u = s`` from ``u = s xor e_q``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import pi

import numpy as np

from .errors import DomainError
from .fullspace import (
    FullState,
    basis_state,
    bits_to_index,
    full_apply_oracle,
    full_apply_qubit_rotation,
    index_to_bits,
)

DETERMINISM_TOL = 1e-10


class Oracle:
    """Phase oracle for a hidden string; counts its own calls."""

    def __init__(self, n: int, u):
        self.n = n
        self._u = bits_to_index(u, n)
        self.calls = 0

    def apply(self, state: FullState, gamma: float) -> FullState:
        """``exp(-i gamma C_u) |state>``."""
        if state.n != self.n:
            raise DomainError(f"oracle is for {self.n} qubits, state has {state.n}")
        self.calls += 1
        return full_apply_oracle(state, self._u, gamma)

    def reveal(self) -> str:
        """The hidden string; for scoring tests, never used by the protocol."""
        return index_to_bits(self._u, self.n)


class Round(enum.Enum):
    FLIPPED = "flipped"
    UNFLIPPED = "unflipped"


class Verdict(enum.Enum):
    IS_TARGET = "is_target"
    IS_FLIPPED_PARTNER = "is_flipped_partner"
    NOT_IN_PAIR = "not_in_pair"


@dataclass(frozen=True)
class CheckOutcome:
    candidate: str
    verdict: Verdict
    rounds_used: int
    oracle_calls: int
    target: str | None = None


def round_distribution(s, q: int, oracle: Oracle) -> np.ndarray:
    """Outcome probabilities over all bit strings after one round."""
    state = basis_state(oracle.n, s)
    state = full_apply_qubit_rotation(state, q, pi / 2)
    state = oracle.apply(state, -pi)
    state = full_apply_qubit_rotation(state, q, -pi / 2)
    return np.abs(state.amps) ** 2


def check_round(s, q: int, oracle: Oracle) -> Round:
    n = oracle.n
    if not 0 <= q < n:
        raise DomainError(f"qubit index {q} out of range for {n} qubits")
    probs = round_distribution(s, q, oracle)
    outcome = int(np.argmax(probs))
    if probs[outcome] < 1 - DETERMINISM_TOL:
        raise ArithmeticError(f"round outcome not deterministic: max probability {probs[outcome]}")
    flipped = bits_to_index(s, n) ^ (1 << q)
    return Round.FLIPPED if outcome == flipped else Round.UNFLIPPED


def classify(s, oracle: Oracle) -> CheckOutcome:
    """Decide whether ``s`` is the target, its neighbour across qubit 0, or neither."""
    n = oracle.n
    if n < 2:
        raise DomainError("classification needs at least 2 qubits")
    s_bits = index_to_bits(bits_to_index(s, n), n)
    start = oracle.calls
    if check_round(s_bits, 0, oracle) is Round.UNFLIPPED:
        return CheckOutcome(s_bits, Verdict.NOT_IN_PAIR, 1, oracle.calls - start)
    if check_round(s_bits, 1, oracle) is Round.FLIPPED:
        # u is in {s, s^e0} and in {s, s^e1}
        return CheckOutcome(s_bits, Verdict.IS_TARGET, 2, oracle.calls - start, s_bits)
    partner = index_to_bits(bits_to_index(s_bits, n) ^ 1, n)
    return CheckOutcome(s_bits, Verdict.IS_FLIPPED_PARTNER, 2, oracle.calls - start, partner)


def ground_truth(s, u, n: int) -> Verdict:
    si, ui = bits_to_index(s, n), bits_to_index(u, n)
    if si == ui:
        return Verdict.IS_TARGET
    if si ^ ui == 1:
        return Verdict.IS_FLIPPED_PARTNER
    return Verdict.NOT_IN_PAIR
