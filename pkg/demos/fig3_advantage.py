"""
Entanglement assistance without loss
====================================

Walk the probe-band squeezing gain from 0 to 20 dB at a one-percent
transducer and compare three ways of sharing microwave-optical
entanglement: direct entanglement (no assistance), the single-band
squeezer/antisqueezer sandwich and the dual-band protocol that also
squeezes the signal band.
"""

import numpy as np

from crossband import ProtocolParams, run
from crossband.closed_form import de_entropy

eta = 0.01

# The unassisted baseline does not depend on the squeezer at all.
baseline = de_entropy(eta)
print(f"direct entanglement at eta = {eta}: {baseline:.5f} ebits")

print()
print(" G_dB   single   dual     dual-single")
for g_db in np.arange(0.0, 20.1, 2.5):
    g = 10 ** (g_db / 10)
    single = run("single_band_EA", ProtocolParams(eta=eta, g=g)).measures["SA"]
    dual = run("dual_band", ProtocolParams(eta=eta, g=g, g_s=g)).measures["SA"]
    print(f"{g_db:5.1f}  {single.entropy_ebits:7.4f}  {dual.entropy_ebits:7.4f}  "
          f"{dual.entropy_ebits - single.entropy_ebits:7.4f}")

# At 20 dB the dual-band pair carries about 2.77 ebits more, and its EPR
# variance is more than 8 dB further below the vacuum level.
single = run("single_band_EA", ProtocolParams(eta=eta, g=100.0)).measures["SA"]
dual = run("dual_band", ProtocolParams(eta=eta, g=100.0, g_s=100.0)).measures["SA"]
print()
print(f"EPR variance at 20 dB: single {single.epr_variance:.6f}, dual {dual.epr_variance:.6f}")
print(f"EPR advantage: {10 * np.log10(single.epr_variance / dual.epr_variance):.2f} dB")

# Already at about 3 dB the dual band overtakes the baseline.
dual_3db = run("dual_band", ProtocolParams(eta=eta, g=2.0, g_s=2.0)).measures["SA"]
print(f"dual band at G = 2: {dual_3db.entropy_ebits:.4f} ebits vs baseline {baseline:.5f}")
