"""
Pseudo-GHZ states on three and four qubits
==========================================

p|GHZ><GHZ| + (1-p)I/2^n. G follows 1 - H((1+p)/2) for any n >= 3, while
the negativity depends on how the qubits are split in two.
"""

import numpy as np

from qcorr import compute_G, estimate_D, negativity_extremes, pseudo_ghz
from qcorr.entropy import binary_entropy

print(f"{'p':>5} {'G':>9} {'closed':>9} {'D(n=3)':>9} {'N min':>8} {'N max':>8}")
for p in np.linspace(0, 1, 6):
    rho = pseudo_ghz(p, 3)
    ext = negativity_extremes(rho)
    d = estimate_D(rho, trials=50_000, seed=0).value
    print(f"{p:5.2f} {compute_G(rho).value:9.5f} {1 - binary_entropy((1 + p) / 2):9.5f} {d:9.5f} {ext.min:8.4f} {ext.max:8.4f}")

# four qubits: seven 1|3 and 2|2 splittings
ext = negativity_extremes(pseudo_ghz(0.6, 4))
for split, value in ext.values.items():
    print(split, round(value, 6))
print("G, four qubits, p=0.6:", round(compute_G(pseudo_ghz(0.6, 4)).value, 6))
