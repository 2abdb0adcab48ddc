"""
Squeezing transfer
------------------
Squeezed vacuum launched into one guide carries its squeezing to the other
guides. Second moments are propagated exactly; a truncated Fock expansion
evolved by brute force gives the same numbers.
"""
import numpy as np

from wgwalk import (
    FockBasis,
    SqueezedInput,
    WaveguideArray,
    closed_form_squeezing,
    evolve,
    initial_moments,
    moments_from_fock,
    propagate_moments,
    propagator,
    squeezed_vacuum_state,
    squeezing_factors,
)

source = SqueezedInput(guide=1, magnitude=0.7, phase=0.0)
print("initial q-squeezing f =", source.f)

#%%
# Three guides: complete transfer from guide 1 to guide 3 at J t = pi / sqrt(2).
array = WaveguideArray(3)
m0 = initial_moments(source, 3)
for jt in np.linspace(0, np.pi / np.sqrt(2), 5):
    recs = squeezing_factors(propagate_moments(m0, propagator(array, jt)))
    ref = closed_form_squeezing(3, 0.7, 0.0, jt)
    print(f"Jt={jt:5.3f}  s1q={recs[0].s_q:+.5f} ({ref[(1, 'q')]:+.5f})"
          f"  s3q={recs[2].s_q:+.5f} ({ref[(3, 'q')]:+.5f})  s2p={recs[1].s_p:+.5f}")

#%%
# Five guides, input in the center: the pattern is mirror symmetric.
center = initial_moments(SqueezedInput(3, 0.7, 0.0), 5)
recs = squeezing_factors(propagate_moments(center, propagator(WaveguideArray(5), 1.0)))
print("s_q:", np.round([r.s_q for r in recs], 5))

#%%
# Brute-force check with a truncated Fock expansion (r = 0.3, 24 photons).
small = SqueezedInput(1, 0.3, 0.0)
basis = FockBasis(3, 24)
psi = squeezed_vacuum_state(basis, 1, small.magnitude, small.phase)
print("tail mass of truncated input:", psi.tail_mass)
fock = squeezing_factors(moments_from_fock(evolve(psi, array, 1.3)))
gauss = squeezing_factors(propagate_moments(initial_moments(small, 3), propagator(array, 1.3)))
print("max difference:", max(abs(a.s_q - b.s_q) for a, b in zip(fock, gauss)))
