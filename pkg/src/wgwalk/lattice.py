r"""Single-photon dynamics of a uniform array of coupled waveguides.

The array Hamiltonian

.. math::

    H/\hbar = g \sum_j a_j^\dagger a_j + J \sum_{j=1}^{N-1}
              (a_j^\dagger a_{j+1} + a_{j+1}^\dagger a_j)

is diagonalized by the discrete sine transform. The Heisenberg solution
:math:`a_j(t) = \sum_l A_{j,l}(t) a_l(0)` is evaluated here as an explicit
sum over normal modes; no matrix exponential is taken.

Guide and mode indices in the public functions are 1-based, matching the
physical labelling of the guides. Matrices are plain numpy arrays, so
``A.entries[j - 1, l - 1]`` is the amplitude :math:`A_{j,l}`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError
from .series import TimeSeries


@dataclass(frozen=True)
class WaveguideArray:
    """Static parameters of the array.

    Parameters
    ----------
    n_guides : int
        Number of guides N.
    coupling : float
        Nearest-neighbour coupling rate J. ``J = 0`` is accepted as a
        degenerate case in which every guide only picks up the phase ``g t``.
    detuning : float
        Common propagation constant g (a pure phase, default 0).
    """

    n_guides: int
    coupling: float = 1.0
    detuning: float = 0.0

    def __post_init__(self):
        if int(self.n_guides) != self.n_guides or self.n_guides < 1:
            raise DomainError(f"n_guides must be a positive integer, got {self.n_guides!r}")
        if not (math.isfinite(self.coupling) and math.isfinite(self.detuning)):
            raise DomainError("coupling and detuning must be finite")
        if self.coupling < 0:
            raise DomainError(f"coupling must be non-negative, got {self.coupling}")
        object.__setattr__(self, "n_guides", int(self.n_guides))

    def check_guide(self, j: int, name: str = "guide") -> int:
        if int(j) != j or not 1 <= j <= self.n_guides:
            raise DomainError(f"{name} index {j!r} outside 1..{self.n_guides}")
        return int(j)

    def coupling_matrix(self) -> np.ndarray:
        """Single-particle Hamiltonian ``g I + J tridiag(1, 0, 1)``."""
        n = self.n_guides
        h = self.detuning * np.eye(n)
        off = self.coupling * np.ones(n - 1)
        return h + np.diag(off, 1) + np.diag(off, -1)


@dataclass(frozen=True)
class EigenMode:
    index: int
    eigenshift: float
    profile: np.ndarray


@dataclass(frozen=True)
class PropagatorMatrix:
    """Heisenberg coefficients :math:`A_{j,l}(t)` at a fixed time."""

    time: float
    entries: np.ndarray

    @property
    def n_guides(self) -> int:
        return self.entries.shape[0]

    def amplitude(self, j: int, l: int) -> complex:
        return complex(self.entries[j - 1, l - 1])

    def __matmul__(self, other: "PropagatorMatrix") -> "PropagatorMatrix":
        return PropagatorMatrix(self.time + other.time, self.entries @ other.entries)


def _check_time(t) -> float:
    t = float(t)
    if not math.isfinite(t):
        raise DomainError(f"time must be finite, got {t}")
    return t


def mode_profiles(array: WaveguideArray) -> np.ndarray:
    """Matrix ``S[j-1, p-1] = S(j, p)``; symmetric and orthogonal."""
    n = array.n_guides
    k = np.arange(1, n + 1)
    return math.sqrt(2.0 / (n + 1)) * np.sin(np.outer(k, k) * math.pi / (n + 1))


def eval_mode_profile(array: WaveguideArray, j: int, p: int) -> float:
    """Sine-transform amplitude S(j, p) of normal mode p on guide j."""
    j = array.check_guide(j)
    p = array.check_guide(p, "mode")
    n = array.n_guides
    return math.sqrt(2.0 / (n + 1)) * math.sin(j * p * math.pi / (n + 1))


def eigen_shifts(array: WaveguideArray) -> np.ndarray:
    """Coupling-induced shifts ``beta_p = 2 J cos(p pi / (N + 1))``, p = 1..N."""
    n = array.n_guides
    p = np.arange(1, n + 1)
    return 2.0 * array.coupling * np.cos(p * math.pi / (n + 1))


def eigenmodes(array: WaveguideArray) -> list[EigenMode]:
    s = mode_profiles(array)
    beta = eigen_shifts(array)
    return [EigenMode(p + 1, float(beta[p]), s[:, p].copy()) for p in range(array.n_guides)]


def propagator(array: WaveguideArray, t: float) -> PropagatorMatrix:
    r"""Evaluate :math:`A_{j,l}(t) = \sum_p e^{-i(g+\beta_p)t} S(l,p) S(j,p)`.

    Parameters
    ----------
    array : WaveguideArray
    t : float
        Propagation time (inverse units of ``array.coupling``).

    Returns
    -------
    PropagatorMatrix
        Unitary and symmetric; ``A(0)`` is the identity.
    """
    t = _check_time(t)
    s = mode_profiles(array)
    phases = np.exp(-1j * (array.detuning + eigen_shifts(array)) * t)
    return PropagatorMatrix(t, (s * phases) @ s.T)


def transport_intensity(
    array: WaveguideArray, input_guide: int, t_grid: Sequence[float]
) -> TimeSeries:
    """Fraction ``|A_{j,l}(t)|^2`` of the light launched in guide ``l`` found in guide ``j``.

    Each row of the returned series is one time point; columns ``I_1..I_N``
    sum to one.
    """
    l = array.check_guide(input_guide, "input guide")
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.size == 0:
        raise DomainError("t_grid must be a non-empty 1-d sequence")
    rows = np.empty((t_grid.size, array.n_guides + 1))
    rows[:, 0] = t_grid
    for i, t in enumerate(t_grid):
        rows[i, 1:] = np.abs(propagator(array, t).entries[:, l - 1]) ** 2
    columns = ["t"] + [f"I_{j}" for j in range(1, array.n_guides + 1)]
    return TimeSeries(columns, rows)
