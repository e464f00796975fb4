"""
Unequal squeezing in the two bands
==================================

Scan both gains of the dual-band protocol. The (S, A) and (P, B) pairs
swap roles when the two gains are exchanged, and squeezing the signal band
alone does not help: S is already tied to its own ancilla B.
"""

import numpy as np

from crossband import ProtocolParams, run
from crossband.sweep import epr_grid

g_db, gs_db, sa = epr_grid("SA", points=5)
_, _, pb = epr_grid("PB", points=5)
squeeze_sa = 10 * np.log10(0.5 / sa)

print("EPR squeezing of (S, A) in dB; rows G_dB, columns G_S_dB")
print("        " + "".join(f"{v:8.1f}" for v in gs_db))
for i, row in enumerate(squeeze_sa):
    print(f"{g_db[i]:6.1f}  " + "".join(f"{v:8.3f}" for v in row))

print()
print(f"(P, B) grid is the transpose of (S, A): max gap {np.max(np.abs(sa - pb.T)):.1e}")

# Strong probe squeezing with weak signal squeezing beats the reverse.

probe_heavy = run("dual_band", ProtocolParams(eta=0.01, g=100.0, g_s=2.0)).measures["SA"]
signal_heavy = run("dual_band", ProtocolParams(eta=0.01, g=2.0, g_s=100.0)).measures["SA"]
print(f"(G, G_S) = (100, 2): {probe_heavy.epr_squeezing_db:.3f} dB")
print(f"(G, G_S) = (2, 100): {signal_heavy.epr_squeezing_db:.3f} dB")
