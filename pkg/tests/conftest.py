import numpy as np
import pytest
from scipy.linalg import expm


def tridiagonal_generator(n, J, g=0.0):
    """Single-particle H/hbar written out element by element."""
    h = np.zeros((n, n))
    for j in range(n):
        h[j, j] = g
        if j + 1 < n:
            h[j, j + 1] = h[j + 1, j] = J
    return h


def expm_propagator(n, J, g, t):
    return expm(-1j * t * tridiagonal_generator(n, J, g))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
