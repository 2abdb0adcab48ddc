import itertools
import math

import numpy as np
import pytest

from wgwalk import (
    DomainError,
    FockBasis,
    WaveguideArray,
    build_hamiltonian_matrix,
    evolve,
    fock_input_state,
    hom_coincidence,
    hom_coincidence_oracle,
    mapped_fock_state,
    propagator,
    squeezed_vacuum_state,
    two_photon_joint_probability,
)
from wgwalk.fock import annihilation_operator, creation_operator

R2 = math.sqrt(2)


@pytest.mark.parametrize("n_modes,n_max", [(1, 0), (1, 5), (2, 2), (3, 4), (5, 3)])
def test_basis_complete_and_unique(n_modes, n_max):
    basis = FockBasis(n_modes, n_max)
    brute = {s for s in itertools.product(range(n_max + 1), repeat=n_modes) if sum(s) <= n_max}
    assert set(basis.states) == brute
    assert len(basis.states) == len(brute) == math.comb(n_modes + n_max, n_max)
    for i, s in enumerate(basis.states):
        assert basis.index(s) == i


def test_basis_ordering():
    basis = FockBasis(2, 2)
    assert basis.states == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))
    totals = basis.occupations.sum(axis=1)
    assert np.all(np.diff(totals) >= 0)


def test_ladder_operators():
    basis = FockBasis(2, 3)
    a1 = annihilation_operator(basis, 1).toarray()
    a2 = annihilation_operator(basis, 2).toarray()
    assert a1[basis.index((1, 1)), basis.index((2, 1))] == pytest.approx(R2)
    assert a2[basis.index((2, 0)), basis.index((2, 1))] == pytest.approx(1.0)
    # commutator is the identity away from the truncated top sector
    comm = a1 @ a1.T - a1.T @ a1
    low = slice(0, basis.sector(2).stop)
    np.testing.assert_allclose(comm[low, low], np.eye(low.stop), atol=1e-14)
    np.testing.assert_allclose(a1 @ a2, a2 @ a1, atol=1e-14)


def test_hamiltonian_single_photon_block():
    J = 1.3
    basis = FockBasis(2, 1)
    h = build_hamiltonian_matrix(WaveguideArray(2, J), basis).toarray()
    sl = basis.sector(1)
    np.testing.assert_allclose(h[sl, sl], [[0, J], [J, 0]])


def test_hamiltonian_two_photon_block():
    J = 0.6
    basis = FockBasis(2, 2)
    h = build_hamiltonian_matrix(WaveguideArray(2, J), basis).toarray()
    sl = basis.sector(2)
    expected = J * np.array([[0, R2, 0], [R2, 0, R2], [0, R2, 0]])
    np.testing.assert_allclose(h[sl, sl], expected, atol=1e-15)


def test_hamiltonian_detuning_only():
    basis = FockBasis(3, 1)
    h = build_hamiltonian_matrix(WaveguideArray(3, 0.0, 2.0), basis).toarray()
    sl = basis.sector(1)
    np.testing.assert_allclose(h[sl, sl], np.diag([2.0, 2.0, 2.0]))


def test_hamiltonian_hermitian_and_number_conserving():
    basis = FockBasis(4, 4)
    h = build_hamiltonian_matrix(WaveguideArray(4, 0.7, 0.2), basis).toarray()
    np.testing.assert_allclose(h, h.T.conj())
    totals = basis.occupations.sum(axis=1)
    rows, cols = np.nonzero(h)
    assert np.all(totals[rows] == totals[cols])


def test_hamiltonian_matches_ladder_construction():
    J, g = 0.9, -0.4
    basis = FockBasis(3, 3)
    a = [annihilation_operator(basis, m).toarray() for m in (1, 2, 3)]
    built = g * sum(x.T @ x for x in a) + J * sum(a[j].T @ a[j + 1] + a[j + 1].T @ a[j] for j in range(2))
    h = build_hamiltonian_matrix(WaveguideArray(3, J, g), basis).toarray()
    # the ladder route is wrong in the top sector, where a^dagger is truncated
    low = slice(0, basis.sector(2).stop)
    np.testing.assert_allclose(h[low, low], built[low, low], atol=1e-14)


def test_hamiltonian_mode_mismatch():
    with pytest.raises(DomainError):
        build_hamiltonian_matrix(WaveguideArray(3), FockBasis(2, 2))


def test_fock_input_state():
    basis = FockBasis(2, 2)
    psi = fock_input_state(basis, (1, 1))
    assert psi.norm == 1.0
    assert psi.amplitude((1, 1)) == 1.0
    assert fock_input_state(FockBasis(3, 2), (0, 2, 0)).probability((0, 2, 0)) == 1.0
    with pytest.raises(DomainError):
        fock_input_state(basis, (3, 0))
    with pytest.raises(DomainError):
        fock_input_state(basis, (1, 0, 0))


def test_evolve_single_photon_transfer():
    array = WaveguideArray(2, 1.0)
    psi = evolve(fock_input_state(FockBasis(2, 1), (1, 0)), array, math.pi / 2)
    assert psi.probability((0, 1)) == pytest.approx(1.0, abs=1e-12)
    assert psi.amplitude((0, 1)) == pytest.approx(-1j, abs=1e-12)


def test_evolve_zero_time_is_identity(rng):
    basis = FockBasis(3, 3)
    amps = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
    from wgwalk import FockStateVector

    psi = FockStateVector(basis, amps / np.linalg.norm(amps))
    out = evolve(psi, WaveguideArray(3, 1.1, 0.3), 0.0)
    np.testing.assert_allclose(out.amplitudes, psi.amplitudes, atol=1e-13)


def test_evolve_hom_dip():
    psi = evolve(fock_input_state(FockBasis(2, 2), (1, 1)), WaveguideArray(2, 1.0), math.pi / 4)
    assert psi.probability((1, 1)) < 1e-24
    assert psi.probability((2, 0)) == pytest.approx(0.5, abs=1e-12)


def test_evolve_rejects_non_finite():
    with pytest.raises(DomainError):
        evolve(fock_input_state(FockBasis(2, 1), (1, 0)), WaveguideArray(2), math.nan)


def test_evolve_conserves_sectors_and_norm(rng):
    from wgwalk import FockStateVector

    basis = FockBasis(4, 4)
    array = WaveguideArray(4, 0.8, 0.1)
    amps = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
    psi = FockStateVector(basis, amps / np.linalg.norm(amps))
    for t in (0.3, 4.0, 19.0):
        out = evolve(psi, array, t)
        np.testing.assert_allclose(out.sector_weights(), psi.sector_weights(), atol=1e-12)
        assert abs(out.norm - 1) < 1e-10


def test_single_photon_sector_equals_propagator(rng):
    for _ in range(15):
        n = int(rng.integers(1, 9))
        array = WaveguideArray(n, rng.uniform(0.2, 2), rng.uniform(-1, 1))
        t = rng.uniform(0, 20) / array.coupling
        basis = FockBasis(n, 1)
        A = propagator(array, t).entries
        sl = basis.sector(1)
        for l in range(n):
            occ = [0] * n
            occ[l] = 1
            out = evolve(fock_input_state(basis, occ), array, t)
            # |e_l> -> sum_j A_{j,l} |e_j>
            np.testing.assert_allclose(out.amplitudes[sl], A[:, l], atol=1e-10)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_product_form_matches_oracle(n):
    array = WaveguideArray(n, 1.0, 0.25)
    basis = FockBasis(n, 2)
    for occ in basis.states[basis.sector(2)]:
        for t in (0.4, 1.9, 7.3):
            oracle = evolve(fock_input_state(basis, occ), array, t)
            mapped = mapped_fock_state(array, occ, t, basis)
            np.testing.assert_allclose(mapped.amplitudes, oracle.amplitudes, atol=1e-8)


def test_product_form_three_photons():
    array = WaveguideArray(3, 0.7)
    basis = FockBasis(3, 3)
    for occ in [(3, 0, 0), (1, 1, 1), (0, 2, 1)]:
        oracle = evolve(fock_input_state(basis, occ), array, 2.2)
        mapped = mapped_fock_state(array, occ, 2.2, basis)
        np.testing.assert_allclose(mapped.amplitudes, oracle.amplitudes, atol=1e-8)


def test_joint_probability_closed_form_two_guides():
    array = WaveguideArray(2, 1.0)
    for t in np.linspace(0, 3, 13):
        p = two_photon_joint_probability(array, (1, 2), (1, 2), t)
        assert p == pytest.approx(math.cos(2 * t) ** 2, abs=1e-12)
    assert two_photon_joint_probability(array, (1, 2), (1, 2), 0.0) == pytest.approx(1.0)


def test_joint_probability_matches_oracle_three_guides():
    array = WaveguideArray(3, 1.0)
    basis = FockBasis(3, 2)
    for t in (0.05, 0.2, 0.6):
        out = evolve(fock_input_state(basis, (1, 0, 1)), array, t)
        for k, l in [(1, 2), (1, 3), (2, 3)]:
            occ = [0, 0, 0]
            occ[k - 1] += 1
            occ[l - 1] += 1
            p = two_photon_joint_probability(array, (1, 3), (k, l), t)
            assert p == pytest.approx(out.probability(occ), abs=1e-10)


def test_joint_probability_coincident_guides():
    # |2,0> -> |1,1> amplitude is sqrt(2) A_11 A_21 for the bosonic pair
    array = WaveguideArray(2, 1.0)
    t = 0.37
    A = propagator(array, t).entries
    p = two_photon_joint_probability(array, (1, 1), (1, 2), t)
    assert p == pytest.approx(2 * abs(A[0, 0] * A[1, 0]) ** 2, abs=1e-12)
    q = two_photon_joint_probability(array, (1, 2), (2, 2), t)
    assert q == pytest.approx(2 * abs(A[1, 0] * A[1, 1]) ** 2, abs=1e-12)


def test_joint_probabilities_sum_to_one():
    array = WaveguideArray(4, 1.0)
    outputs = [(k, l) for k in range(1, 5) for l in range(k, 5)]
    total = sum(two_photon_joint_probability(array, (2, 3), out, 1.3) for out in outputs)
    assert total == pytest.approx(1.0, abs=1e-12)


def test_joint_probability_index_errors():
    with pytest.raises(DomainError):
        two_photon_joint_probability(WaveguideArray(2), (1, 3), (1, 2), 0.1)


def test_hom_closed_form_points():
    array = WaveguideArray(2, 1.0)
    assert hom_coincidence(array, 0.0, 0.0).coincidence == 1.0
    assert hom_coincidence(array, math.pi / 2, math.pi / 2).coincidence == pytest.approx(0.0, abs=1e-30)
    assert hom_coincidence(array, 0.5, 2 * 0.5 - math.pi / 2).coincidence < 1e-30
    with pytest.raises(DomainError):
        hom_coincidence(WaveguideArray(3), 0.1, 0.0)


def test_hom_oracle_points():
    array = WaveguideArray(2, 1.0)
    assert hom_coincidence_oracle(array, 0.0, 0.0) == pytest.approx(1.0, abs=1e-15)
    assert hom_coincidence_oracle(array, math.pi / 4, 0.0) < 1e-20
    assert hom_coincidence_oracle(array, math.pi / 2, math.pi / 4) == pytest.approx(1 / 3, abs=1e-12)
    with pytest.raises(DomainError):
        hom_coincidence_oracle(array, 0.1, 0.2)


@pytest.mark.parametrize("J,g", [(1.0, 0.0), (2.5, 0.0), (1.0, 1.7)])
def test_hom_oracle_matches_closed_form(J, g):
    array = WaveguideArray(2, J, g)
    for theta in np.linspace(0, math.pi, 12):
        for theta0 in np.linspace(0, theta, 7):
            p = hom_coincidence(array, theta, theta0).coincidence
            q = hom_coincidence_oracle(array, theta / J, theta0 / J)
            assert abs(p - q) < 1e-10


def test_squeezed_vacuum_expansion():
    basis = FockBasis(1, 40)
    psi = squeezed_vacuum_state(basis, 1, 0.4, 0.3, normalize=False)
    assert psi.norm == pytest.approx(1.0, abs=1e-12)
    assert psi.tail_mass < 1e-12
    mean_n = psi.mean_occupations()[0]
    assert mean_n == pytest.approx(math.sinh(0.4) ** 2, abs=1e-12)
    # odd photon numbers never appear
    assert np.all(psi.amplitudes[1::2] == 0)


def test_squeezed_vacuum_tail_mass_flags_truncation():
    psi = squeezed_vacuum_state(FockBasis(1, 6), 1, 1.2, 0.0)
    assert not psi.is_trusted()
    assert squeezed_vacuum_state(FockBasis(2, 20), 1, 0.3, 0.0).is_trusted()


def test_squeezed_vacuum_matches_operator_exponential():
    from scipy.linalg import expm

    r, phi = 0.5, 1.1
    basis = FockBasis(1, 60)
    a = annihilation_operator(basis, 1).toarray()
    ad = creation_operator(basis, 1).toarray()
    # unitary S with S^dagger a S = a cosh r - e^{i phi} a^dagger sinh r
    gen = 0.5 * r * (np.exp(-1j * phi) * a @ a - np.exp(1j * phi) * ad @ ad)
    exact = expm(gen)[:, 0]
    psi = squeezed_vacuum_state(basis, 1, r, phi)
    np.testing.assert_allclose(psi.amplitudes[:30], exact[:30], atol=1e-10)
