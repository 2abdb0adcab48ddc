r"""Brute-force evolution in a truncated multimode Fock space.

This is the independent oracle for everything the closed forms predict.
States are expanded on occupation vectors :math:`|n_1, \ldots, n_N\rangle`
with total photon number at most ``max_total``. The Hamiltonian conserves
photon number, so each sector is diagonalized separately and evolution is
exact up to eigensolver round-off; there is no time stepping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .errors import DomainError
from .lattice import WaveguideArray, _check_time, propagator


def _sector_states(n_modes: int, total: int):
    """Occupation vectors with the given total, in descending lexicographic order."""
    if n_modes == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _sector_states(n_modes - 1, total - first):
            yield (first,) + rest


class FockBasis:
    """Occupation-number basis of ``n_modes`` modes truncated at ``max_total`` photons.

    States are ordered by total photon number, then in descending
    lexicographic order within a sector, so for two modes and two photons
    the sector reads ``|2,0>, |1,1>, |0,2>``.
    """

    def __init__(self, n_modes: int, max_total: int):
        if n_modes < 1 or max_total < 0:
            raise DomainError(f"invalid basis size n_modes={n_modes}, max_total={max_total}")
        self.n_modes = int(n_modes)
        self.max_total = int(max_total)
        states = []
        self._sectors = []
        for n in range(self.max_total + 1):
            start = len(states)
            states.extend(_sector_states(self.n_modes, n))
            self._sectors.append(slice(start, len(states)))
        self.states = tuple(states)
        self.occupations = np.array(states, dtype=int).reshape(len(states), self.n_modes)
        self._index = {s: i for i, s in enumerate(states)}

    def __len__(self):
        return len(self.states)

    def __eq__(self, other):
        if not isinstance(other, FockBasis):
            return NotImplemented
        return (self.n_modes, self.max_total) == (other.n_modes, other.max_total)

    def __hash__(self):
        return hash((FockBasis, self.n_modes, self.max_total))

    def __repr__(self):
        return f"FockBasis(n_modes={self.n_modes}, max_total={self.max_total})"

    def index(self, occupations: Sequence[int]) -> int:
        key = tuple(int(n) for n in occupations)
        if len(key) != self.n_modes or min(key) < 0:
            raise DomainError(f"occupation vector {key} invalid for {self.n_modes} modes")
        if sum(key) > self.max_total:
            raise DomainError(
                f"occupation vector {key} exceeds truncation max_total={self.max_total}"
            )
        return self._index[key]

    def sector(self, n: int) -> slice:
        """Basis positions holding exactly ``n`` photons."""
        return self._sectors[n]

    @property
    def sectors(self) -> list[slice]:
        return list(self._sectors)


@lru_cache(maxsize=32)
def annihilation_operator(basis: FockBasis, mode: int) -> sp.csr_matrix:
    """Sparse matrix of :math:`a_{mode}` (1-based mode) on the truncated basis."""
    if not 1 <= mode <= basis.n_modes:
        raise DomainError(f"mode {mode} outside 1..{basis.n_modes}")
    m = mode - 1
    rows, cols, vals = [], [], []
    for col, state in enumerate(basis.states):
        n = state[m]
        if n == 0:
            continue
        lowered = state[:m] + (n - 1,) + state[m + 1:]
        rows.append(basis._index[lowered])
        cols.append(col)
        vals.append(math.sqrt(n))
    dim = len(basis)
    return sp.csr_matrix((vals, (rows, cols)), shape=(dim, dim))


def creation_operator(basis: FockBasis, mode: int) -> sp.csr_matrix:
    """Matrix of :math:`a^\\dagger_{mode}`; amplitude pushed past the truncation is dropped."""
    return annihilation_operator(basis, mode).T.tocsr()


def build_hamiltonian_matrix(array: WaveguideArray, basis: FockBasis) -> sp.csr_matrix:
    """Matrix of H/hbar in the occupation basis (real symmetric, sparse).

    The diagonal carries ``g * sum(n)``; each neighbouring pair contributes
    hopping elements ``J sqrt((n_j + 1) n_k)`` between states that differ by
    one photon moved from guide k to guide j.
    """
    if basis.n_modes != array.n_guides:
        raise DomainError(
            f"basis has {basis.n_modes} modes but array has {array.n_guides} guides"
        )
    J, g = array.coupling, array.detuning
    rows, cols, vals = [], [], []
    for col, state in enumerate(basis.states):
        if g != 0.0:
            rows.append(col)
            cols.append(col)
            vals.append(g * sum(state))
        if J == 0.0:
            continue
        for j in range(array.n_guides - 1):
            for src, dst in ((j + 1, j), (j, j + 1)):
                if state[src] == 0:
                    continue
                moved = list(state)
                moved[src] -= 1
                moved[dst] += 1
                rows.append(basis._index[tuple(moved)])
                cols.append(col)
                vals.append(J * math.sqrt(state[dst] + 1) * math.sqrt(state[src]))
    dim = len(basis)
    return sp.csr_matrix((vals, (rows, cols)), shape=(dim, dim))


@lru_cache(maxsize=32)
def _sector_spectra(array: WaveguideArray, basis: FockBasis):
    h = build_hamiltonian_matrix(array, basis)
    spectra = []
    for sl in basis.sectors:
        block = h[sl, sl].toarray()
        energies, vectors = np.linalg.eigh(block)
        spectra.append((sl, energies, vectors))
    return spectra


@dataclass(frozen=True)
class FockStateVector:
    basis: FockBasis
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (len(self.basis),):
            raise DomainError(f"amplitude vector of shape {amps.shape} does not fit {self.basis}")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "FockStateVector":
        norm = self.norm
        if norm == 0.0:
            raise DomainError("cannot normalize the zero vector")
        return FockStateVector(self.basis, self.amplitudes / norm)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def amplitude(self, occupations: Sequence[int]) -> complex:
        return complex(self.amplitudes[self.basis.index(occupations)])

    def probability(self, occupations: Sequence[int]) -> float:
        return abs(self.amplitude(occupations)) ** 2

    def sector_weights(self) -> np.ndarray:
        p = self.probabilities()
        return np.array([p[sl].sum() for sl in self.basis.sectors])

    @property
    def tail_mass(self) -> float:
        """Weight on the highest retained photon-number sector."""
        return float(self.sector_weights()[-1])

    def is_trusted(self, tail_tolerance: float = 1e-8) -> bool:
        return self.tail_mass < tail_tolerance

    def mean_occupations(self) -> np.ndarray:
        return self.probabilities() @ self.basis.occupations

    def apply(self, operator) -> "FockStateVector":
        return FockStateVector(self.basis, operator @ self.amplitudes)


def vacuum_state(basis: FockBasis) -> FockStateVector:
    amps = np.zeros(len(basis), dtype=complex)
    amps[0] = 1.0
    return FockStateVector(basis, amps)


def fock_input_state(basis: FockBasis, occupations: Sequence[int]) -> FockStateVector:
    """Unit vector on a single occupation state."""
    amps = np.zeros(len(basis), dtype=complex)
    amps[basis.index(occupations)] = 1.0
    return FockStateVector(basis, amps)


def evolve(state: FockStateVector, array: WaveguideArray, t: float) -> FockStateVector:
    """Apply U(t) = exp(-i H t / hbar) sector by sector."""
    t = _check_time(t)
    out = np.zeros_like(state.amplitudes)
    for sl, energies, vectors in _sector_spectra(array, state.basis):
        psi = state.amplitudes[sl]
        if not psi.any():
            continue
        out[sl] = vectors @ (np.exp(-1j * energies * t) * (vectors.T @ psi))
    return FockStateVector(state.basis, out)


def mapped_fock_state(
    array: WaveguideArray, occupations: Sequence[int], t: float, basis: FockBasis | None = None
) -> FockStateVector:
    r"""Evolved Fock state built from the Heisenberg coefficients.

    Implements :math:`|n_1..n_N\rangle \to \prod_j
    (\sum_l A^*_{j,l}(-t) a_l^\dagger)^{n_j} / \sqrt{n_j!}\,|0\rangle`.
    Because the coupling matrix is real symmetric, :math:`A^*_{j,l}(-t) =
    A_{j,l}(t)` and the product is the Schroedinger-picture state itself,
    including its phase.
    """
    occupations = tuple(int(n) for n in occupations)
    if basis is None:
        basis = FockBasis(array.n_guides, sum(occupations))
    if len(occupations) != basis.n_modes:
        raise DomainError(f"expected {basis.n_modes} occupations, got {len(occupations)}")
    coeffs = np.conj(propagator(array, -t).entries)
    creators = [creation_operator(basis, l) for l in range(1, basis.n_modes + 1)]
    psi = vacuum_state(basis).amplitudes
    for j, n in enumerate(occupations):
        if n == 0:
            continue
        field = sum(coeffs[j, l] * creators[l] for l in range(basis.n_modes))
        for _ in range(n):
            psi = field @ psi
        psi = psi / math.sqrt(math.factorial(n))
    return FockStateVector(basis, psi)


def _two_photon_occupations(n_modes: int, a: int, b: int) -> tuple[int, ...]:
    occ = [0] * n_modes
    occ[a - 1] += 1
    occ[b - 1] += 1
    return tuple(occ)


def two_photon_joint_probability(
    array: WaveguideArray, inputs: tuple[int, int], outputs: tuple[int, int], t: float
) -> float:
    """Probability of detecting photons in guides ``outputs`` given single photons in ``inputs``.

    For distinct input and distinct output guides this is the interference
    of the two exchange paths, ``|A_ik A_jl + A_il A_jk|^2``. When either
    pair coincides the bosonic normalization matters, so the probability is
    read off the Fock-space evolution instead.
    """
    i, j = (array.check_guide(x, "input guide") for x in inputs)
    k, l = (array.check_guide(x, "output guide") for x in outputs)
    if i != j and k != l:
        A = propagator(array, t).entries
        amp = A[i - 1, k - 1] * A[j - 1, l - 1] + A[i - 1, l - 1] * A[j - 1, k - 1]
        return float(abs(amp) ** 2)
    basis = FockBasis(array.n_guides, 2)
    psi0 = fock_input_state(basis, _two_photon_occupations(array.n_guides, i, j))
    psi = evolve(psi0, array, t)
    return psi.probability(_two_photon_occupations(array.n_guides, k, l))


@dataclass(frozen=True)
class HomScanPoint:
    theta: float
    theta0: float
    coincidence: float


def _require_pair(array: WaveguideArray):
    if array.n_guides != 2:
        raise DomainError(f"HOM protocol needs exactly 2 guides, got {array.n_guides}")


def hom_coincidence(array: WaveguideArray, theta: float, theta0: float) -> HomScanPoint:
    """Closed-form coincidence ``cos^2(2 theta - theta0) / (1 + sin^2 theta0)``.

    ``theta = J t`` is the detection time and ``theta0 = J T`` the delay
    after which the second photon is injected into guide 2.
    """
    _require_pair(array)
    p = math.cos(2 * theta - theta0) ** 2 / (1 + math.sin(theta0) ** 2)
    return HomScanPoint(float(theta), float(theta0), p)


_HOM_BASIS = FockBasis(2, 2)


def hom_coincidence_oracle(array: WaveguideArray, t: float, T: float) -> float:
    """Delayed-injection protocol run literally in Fock space.

    A photon enters guide 1, evolves for ``T``, a second photon is created in
    guide 2, the state is renormalized and evolved to ``t``; the return value
    is the probability of ``|1,1>``.
    """
    _require_pair(array)
    t, T = _check_time(t), _check_time(T)
    if T < 0 or T > t:
        raise DomainError(f"injection delay must satisfy 0 <= T <= t, got T={T}, t={t}")
    basis = _HOM_BASIS
    psi = fock_input_state(basis, (1, 0))
    psi = evolve(psi, array, T)
    psi = psi.apply(creation_operator(basis, 2)).normalized()
    psi = evolve(psi, array, t - T)
    return psi.probability((1, 1))


def squeezed_vacuum_state(
    basis: FockBasis, guide: int, r: float, phi: float, normalize: bool = True
) -> FockStateVector:
    r"""Single-mode squeezed vacuum in ``guide``, truncated to the basis.

    Uses :math:`\cosh(r)^{-1/2} \sum_n \sqrt{(2n)!}/(2^n n!)
    (-e^{i\phi}\tanh r)^n |2n\rangle`. Check ``tail_mass`` of the result to
    judge whether ``basis.max_total`` is large enough.
    """
    if not 1 <= guide <= basis.n_modes:
        raise DomainError(f"guide {guide} outside 1..{basis.n_modes}")
    if not (math.isfinite(r) and r >= 0):
        raise DomainError(f"squeezing magnitude must be finite and >= 0, got {r}")
    amps = np.zeros(len(basis), dtype=complex)
    x = -np.exp(1j * phi) * math.tanh(r)
    # log-space coefficient: sqrt((2n)!) / (2^n n!)
    for n in range(basis.max_total // 2 + 1):
        occ = [0] * basis.n_modes
        occ[guide - 1] = 2 * n
        log_c = 0.5 * math.lgamma(2 * n + 1) - n * math.log(2) - math.lgamma(n + 1)
        amps[basis.index(occ)] = math.exp(log_c) * x**n / math.sqrt(math.cosh(r))
    state = FockStateVector(basis, amps)
    return state.normalized() if normalize else state
