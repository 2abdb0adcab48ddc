r"""Second-moment propagation of a squeezed vacuum through the array.

A zero-mean Gaussian state is fixed by the normal moments
:math:`N_{jk} = \langle a_j^\dagger a_k\rangle` and the anomalous moments
:math:`M_{jk} = \langle a_j a_k\rangle`. The array acts linearly on the
mode operators, so both matrices transform with the propagator alone.

Quadratures are :math:`q = (a + a^\dagger)/\sqrt2` and
:math:`p = (a - a^\dagger)/(\sqrt2 i)`, with vacuum variance 1/2. The
squeezing factors are the variances minus 1/2,

.. math::

    s_j(q) = N_{jj} + \mathrm{Re}\,M_{jj}, \qquad
    s_j(p) = N_{jj} - \mathrm{Re}\,M_{jj}.

Moment convention for a squeezed vacuum of magnitude r and orientation phi:
expanding the input state on even Fock states with ratio
:math:`-e^{i\phi}\tanh r` between successive two-photon terms gives
:math:`\langle a^2\rangle = -e^{i\phi}\sinh r\cosh r` and
:math:`\langle a^\dagger a\rangle = \sinh^2 r`. With these values the
per-guide squeezing reduces to
:math:`|A_{jl}|^2\sinh^2 r \mp \tfrac14\sinh 2r\,(A_{jl}^2 e^{i\phi} + c.c.)`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .fock import FockStateVector, annihilation_operator
from .lattice import PropagatorMatrix


@dataclass(frozen=True)
class SqueezedInput:
    guide: int
    magnitude: float
    phase: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.magnitude) and self.magnitude >= 0):
            raise DomainError(f"squeezing magnitude must be finite and >= 0, got {self.magnitude}")
        if not math.isfinite(self.phase):
            raise DomainError("squeezing phase must be finite")
        object.__setattr__(self, "phase", float(self.phase) % (2 * math.pi))

    @property
    def f(self) -> float:
        """Initial q-squeezing factor ``sinh r (sinh r - cos phi cosh r)``."""
        r, phi = self.magnitude, self.phase
        return math.sinh(r) * (math.sinh(r) - math.cos(phi) * math.cosh(r))


@dataclass(frozen=True)
class SqueezingRecord:
    guide: int
    s_q: float
    s_p: float

    @property
    def uncertainty_product(self) -> float:
        return (self.s_q + 0.5) * (self.s_p + 0.5)


@dataclass(frozen=True)
class GaussianMoments:
    normal: np.ndarray
    anomalous: np.ndarray
    means: np.ndarray | None = None

    def __post_init__(self):
        normal = np.asarray(self.normal, dtype=complex)
        anomalous = np.asarray(self.anomalous, dtype=complex)
        n = normal.shape[0]
        if normal.shape != (n, n) or anomalous.shape != (n, n):
            raise DomainError("moment matrices must be square and of equal size")
        means = np.zeros(n, dtype=complex) if self.means is None else np.asarray(self.means, dtype=complex)
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "anomalous", anomalous)
        object.__setattr__(self, "means", means)

    @property
    def n_modes(self) -> int:
        return self.normal.shape[0]

    def photon_numbers(self) -> np.ndarray:
        return self.normal.diagonal().real.copy()

    def covariance(self) -> np.ndarray:
        """Symmetrized quadrature covariance in ``(q_1..q_N, p_1..p_N)`` order."""
        N, M = self.normal, self.anomalous
        half = 0.5 * np.eye(self.n_modes)
        vqq = N.real + M.real + half
        vpp = N.real - M.real + half
        vqp = N.imag + M.imag
        return np.block([[vqq, vqp], [vqp.T, vpp]])

    def symplectic_eigenvalues(self) -> np.ndarray:
        n = self.n_modes
        omega = np.block([[np.zeros((n, n)), np.eye(n)], [-np.eye(n), np.zeros((n, n))]])
        nu = np.abs(np.linalg.eigvals(1j * omega @ self.covariance()))
        return np.sort(nu)[::2]

    def is_physical(self, atol: float = 1e-10) -> bool:
        hermitian = np.allclose(self.normal, self.normal.conj().T, atol=atol)
        symmetric = np.allclose(self.anomalous, self.anomalous.T, atol=atol)
        psd = np.linalg.eigvalsh(0.5 * (self.normal + self.normal.conj().T)).min() >= -atol
        bound = self.symplectic_eigenvalues().min() >= 0.5 - atol
        return bool(hermitian and symmetric and psd and bound)


def vacuum_moments(n_modes: int) -> GaussianMoments:
    z = np.zeros((n_modes, n_modes), dtype=complex)
    return GaussianMoments(z, z.copy())


def initial_moments(squeezed: SqueezedInput, n_modes: int) -> GaussianMoments:
    if not 1 <= squeezed.guide <= n_modes:
        raise DomainError(f"input guide {squeezed.guide} outside 1..{n_modes}")
    r, phi = squeezed.magnitude, squeezed.phase
    l = squeezed.guide - 1
    moments = vacuum_moments(n_modes)
    moments.normal[l, l] = math.sinh(r) ** 2
    moments.anomalous[l, l] = -np.exp(1j * phi) * math.sinh(r) * math.cosh(r)
    return moments


def propagate_moments(moments: GaussianMoments, A: PropagatorMatrix) -> GaussianMoments:
    """Push moments through ``a_j -> sum_l A_jl a_l``."""
    U = A.entries if isinstance(A, PropagatorMatrix) else np.asarray(A)
    if U.shape != (moments.n_modes, moments.n_modes):
        raise DomainError(
            f"propagator of shape {U.shape} does not act on {moments.n_modes} modes"
        )
    normal = U.conj() @ moments.normal @ U.T
    anomalous = U @ moments.anomalous @ U.T
    return GaussianMoments(normal, anomalous, U @ moments.means)


def squeezing_factors(moments: GaussianMoments) -> list[SqueezingRecord]:
    n = moments.photon_numbers()
    m = moments.anomalous.diagonal().real
    return [
        SqueezingRecord(j + 1, float(n[j] + m[j]), float(n[j] - m[j]))
        for j in range(moments.n_modes)
    ]


def transfer_squeezing(A: PropagatorMatrix, squeezed: SqueezedInput) -> list[SqueezingRecord]:
    """Per-guide squeezing written directly in terms of the column ``A[:, l]``."""
    r, phi = squeezed.magnitude, squeezed.phase
    col = A.entries[:, squeezed.guide - 1]
    base = np.abs(col) ** 2 * math.sinh(r) ** 2
    cross = 0.25 * math.sinh(2 * r) * 2 * (col**2 * np.exp(1j * phi)).real
    return [
        SqueezingRecord(j + 1, float(base[j] - cross[j]), float(base[j] + cross[j]))
        for j in range(col.size)
    ]


def entanglement_witness(moments: GaussianMoments, j: int, k: int) -> float:
    """Pairwise witness ``<a_j+ a_j> + <a_k+ a_k> + <a_j a_k> + <a_j+ a_k+>``.

    A negative value certifies entanglement between guides ``j`` and ``k``.
    """
    n = moments.n_modes
    if j == k:
        raise DomainError("entanglement witness needs two distinct guides")
    for x in (j, k):
        if not 1 <= x <= n:
            raise DomainError(f"guide {x} outside 1..{n}")
    N, M = moments.normal, moments.anomalous
    value = N[j - 1, j - 1] + N[k - 1, k - 1] + M[j - 1, k - 1] + np.conj(M[j - 1, k - 1])
    if abs(value.imag) > 1e-12:
        raise DomainError(f"witness has imaginary part {value.imag:.3e}; moments are not Hermitian")
    return float(value.real)


def _check_closed_form_size(n_guides):
    if n_guides not in (2, 3):
        raise DomainError(f"closed forms exist only for 2 or 3 guides, got {n_guides}")


def closed_form_squeezing(n_guides: int, r: float, phi: float, jt: float) -> dict[tuple[int, str], float]:
    """Analytic squeezing factors for input in guide 1 of a 2- or 3-guide array.

    Keys are ``(guide, quadrature)``. For two guides ``s_1(q) = f cos^2(Jt)``
    and ``s_2(p) = f sin^2(Jt)``; for three, ``s_1(q) = f cos^4(Jt/sqrt2)``,
    ``s_3(q) = f sin^4(Jt/sqrt2)``, ``s_2(p) = (f/2) sin^2(sqrt2 Jt)``.
    """
    _check_closed_form_size(n_guides)
    f = SqueezedInput(1, r, phi).f
    if n_guides == 2:
        return {(1, "q"): f * math.cos(jt) ** 2, (2, "p"): f * math.sin(jt) ** 2}
    x = jt / math.sqrt(2)
    return {
        (1, "q"): f * math.cos(x) ** 4,
        (3, "q"): f * math.sin(x) ** 4,
        (2, "p"): 0.5 * f * math.sin(math.sqrt(2) * jt) ** 2,
    }


def closed_form_witness(n_guides: int, r: float, phi: float, jt: float, pair: tuple[int, int]) -> float:
    _check_closed_form_size(n_guides)
    pair = tuple(pair)
    supported = {2: [(1, 2)], 3: [(1, 2), (1, 3)]}[n_guides]
    if pair not in supported:
        raise DomainError(f"no closed form for pair {pair} with {n_guides} guides")
    sh2 = math.sinh(r) ** 2
    s2r = math.sinh(2 * r)
    if n_guides == 2:
        return 0.5 * s2r * (math.tanh(r) - math.sin(2 * jt) * math.sin(phi))
    x = math.sqrt(2) * jt
    if pair == (1, 2):
        return 0.5 * math.cos(jt / math.sqrt(2)) ** 2 * (
            (3 - math.cos(x)) * sh2 - math.sqrt(2) * math.sin(phi) * s2r * math.sin(x)
        )
    return 0.25 * (math.cos(phi) * s2r * math.sin(x) ** 2 + (3 + math.cos(2 * x)) * sh2)


def moments_from_fock(state: FockStateVector) -> GaussianMoments:
    """Evaluate the second moments of a (possibly truncated) Fock-space state."""
    basis = state.basis
    psi = state.amplitudes
    lowered = np.column_stack(
        [annihilation_operator(basis, m) @ psi for m in range(1, basis.n_modes + 1)]
    )
    normal = lowered.conj().T @ lowered
    anomalous = np.empty((basis.n_modes, basis.n_modes), dtype=complex)
    for j in range(basis.n_modes):
        anomalous[j] = psi.conj() @ (annihilation_operator(basis, j + 1) @ lowered)
    means = lowered.T @ psi.conj()
    return GaussianMoments(normal, anomalous, means)
