"""
Entanglement between guides
---------------------------
The witness M(j, k) is negative only if guides j and k are entangled. A
single squeezed input is enough to entangle pairs of guides once the phase
of the squeezing is chosen appropriately.
"""
import numpy as np

from wgwalk import SqueezedInput, WaveguideArray, closed_form_witness, entanglement_witness
from wgwalk import initial_moments, propagate_moments, propagator
from wgwalk.experiments import default_config, run_fig4

#%%
# Two guides: entangled exactly when sin(2 J t) sin(phi) > tanh(r).
r, phi = 0.6, np.pi / 2
m0 = initial_moments(SqueezedInput(1, r, phi), 2)
for jt in np.linspace(0, np.pi / 2, 5):
    m = entanglement_witness(propagate_moments(m0, propagator(WaveguideArray(2), jt)), 1, 2)
    print(f"Jt={jt:5.3f}  M(1,2)={m:+.5f}  closed={closed_form_witness(2, r, phi, jt, (1, 2)):+.5f}")

#%%
# Six guides, two parameter sets; report the most negative witness per pair.
for label, series in run_fig4(default_config("fig4")).items():
    print(f"set {label} ({series.metadata['witness_input']}):")
    for name in series.columns[1:]:
        col = series.column(name)
        i = int(np.argmin(col))
        print(f"  {name}: min {col[i]:+.4f} at tau={series.data[i, 0]:.3f}")
