"""Discrete transverse-field search in the symmetric subspace of n qubits."""
from .errors import AmbiguityError, ConvergenceError, DomainError

__version__ = "0.1.0"
