"""
How the randomized D search converges
=====================================

D is a minimum over product bases, estimated by warm starts plus random
local unitaries. The estimate can only go down as trials are added, and a
given (state, trials, seed) always gives the same number.
"""

import os

from qcorr import estimate_D, pseudo_pure
from qcorr.states import BELL_PHI_PLUS

rho = pseudo_pure(BELL_PHI_PLUS, 0.5, (2, 2))

print("random trials only:")
for n in (10, 100, 1000, 10_000, 40_000):
    est = estimate_D(rho, trials=n, seed=0, warm_start=False)
    print(f"  {n:>6} trials  D <= {est.value:.6f}  (best trial {est.best_trial})")

# the warm starts are deterministic candidates tried before the random ones
est = estimate_D(rho, trials=0)
for name, h in est.warm_starts.items():
    print(f"  warm start {name:<20} diagonal entropy {h:.6f}")
print("with warm starts and no trials: D <=", round(est.value, 6))

# worker count changes speed, not the answer
os.environ["QCORR_THREADS"] = "1"
a = estimate_D(rho, trials=20_000, seed=3).value
os.environ["QCORR_THREADS"] = "4"
b = estimate_D(rho, trials=20_000, seed=3).value
print("1 thread vs 4 threads identical:", a == b)
