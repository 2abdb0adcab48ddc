"""Quantum walks of nonclassical light in arrays of coupled waveguides.

``lattice`` holds the exact single-photon propagator, ``fock`` the
truncated Fock-space oracle, ``gaussian`` the squeezed-vacuum moment
engine and ``experiments`` the figure scenarios behind the ``wgwalk`` CLI.
"""

from .errors import ConfigError, DomainError
from .lattice import (
    EigenMode,
    PropagatorMatrix,
    WaveguideArray,
    eigen_shifts,
    eigenmodes,
    eval_mode_profile,
    mode_profiles,
    propagator,
    transport_intensity,
)
from .fock import (
    FockBasis,
    FockStateVector,
    HomScanPoint,
    build_hamiltonian_matrix,
    evolve,
    fock_input_state,
    hom_coincidence,
    hom_coincidence_oracle,
    mapped_fock_state,
    squeezed_vacuum_state,
    two_photon_joint_probability,
)
from .gaussian import (
    GaussianMoments,
    SqueezedInput,
    SqueezingRecord,
    closed_form_squeezing,
    closed_form_witness,
    entanglement_witness,
    initial_moments,
    moments_from_fock,
    propagate_moments,
    squeezing_factors,
    transfer_squeezing,
)
from .series import TimeSeries

__version__ = "0.1.0"
