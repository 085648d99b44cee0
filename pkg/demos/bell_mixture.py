"""
D, G and negativity of a Bell mixture
=====================================

rho_b(p) = p|b1><b1| + (1-p)|b2><b2| mixes two Bell states. Both entropic
measures equal 1 - H(p); negativity is |2p - 1|/2. At p = 1/2 the state has
a product eigenbasis {|++>, |-->} and everything vanishes.
"""

import numpy as np

from qcorr import bell_mixture, compute_G, estimate_D, negativity
from qcorr.entropy import binary_entropy

print(f"{'p':>5} {'1-H(p)':>10} {'D':>10} {'G':>10} {'N':>8}  D found by")
for p in np.linspace(0, 1, 11):
    rho = bell_mixture(p)
    d = estimate_D(rho, trials=40_000, seed=0)
    g = compute_G(rho)
    print(f"{p:5.2f} {1 - binary_entropy(p):10.6f} {d.value:10.6f} {g.value:10.6f} {negativity(rho):8.4f}  {d.source}")

# D is an upper bound from a search; the basis that achieved it is kept
d = estimate_D(bell_mixture(0.3), trials=40_000, seed=0)
print("\nbest local unitaries at p=0.3:")
for u in d.best_basis.unitaries:
    print(np.round(u, 4))
