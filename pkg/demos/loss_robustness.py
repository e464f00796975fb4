"""
Intrinsic coupler loss
======================

With loss inside the coupler the delivered pair is mixed, so entanglement
is tracked with the logarithmic negativity instead of the entropy. The
single band still clears the lossless baseline at 30 % loss; the dual band
keeps doing so at 55 %.
"""

import numpy as np

from crossband import ProtocolParams, run
from crossband.closed_form import de_entropy, strong_squeezing_limit

eta = 0.01
baseline = de_entropy(eta)
gains_db = np.array([0, 3, 6, 10, 15, 20], dtype=float)

for kappa_e in (0.30, 0.55):
    print(f"kappa_E = {kappa_e:.2f} (baseline {baseline:.5f} ebits)")
    print(" G_dB   single   dual     N_S(dual)  gamma(dual)")
    for g_db in gains_db:
        g = 10 ** (g_db / 10)
        single = run("single_band_EA", ProtocolParams(eta=eta, kappa_e=kappa_e, g=g))
        dual = run("dual_band", ProtocolParams(eta=eta, kappa_e=kappa_e, g=g, g_s=g))
        s, d = single.measures["SA"], dual.measures["SA"]
        print(f"{g_db:5.1f}  {s.log_negativity_ebits:7.4f}  {d.log_negativity_ebits:7.4f}  "
              f"{d.n_photons:9.4f}  {d.gamma:10.6f}")
    print()

# The photon number grows linearly in G while the effective transmissivity
# settles, so the negativity saturates. The strong-squeezing limit:

for kappa_e in (0.0, 0.30, 0.55):
    chi, ratio, gamma = strong_squeezing_limit(eta, kappa_e)
    print(f"kappa_E = {kappa_e:.2f}: N_S/G -> {ratio:.6f}, gamma -> {gamma:.6f}")
