import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from tfgrover.dicke import SymmetricState

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

even_n = st.integers(1, 10).map(lambda h: 2 * h)
angles = st.floats(-2 * np.pi, 2 * np.pi, allow_nan=False)
gammas = st.floats(1e-3, np.pi, allow_nan=False)


@st.composite
def states(draw, n=None, normalized=True):
    if n is None:
        n = draw(even_n)
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    if normalized:
        amps /= np.linalg.norm(amps)
    return SymmetricState(n, amps, normalized=normalized)


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


def random_state(rng, n, normalized=True):
    amps = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    if normalized:
        amps /= np.linalg.norm(amps)
    return SymmetricState(n, amps, normalized=normalized)
