"""
A bound entangled state: PPT, yet nonclassically correlated
===========================================================

The 2x4 Horodecki family sigma_b has a positive partial transpose, so the
negativity is blind to it. It still has no product eigenbasis for b > 0,
and D and G pick that up. The same 8x8 matrix can be read as three qubits.
"""

from qcorr import compute_G, estimate_D, horodecki_2x4, negativity_extremes

for dims in ((2, 4), (2, 2, 2)):
    print(f"\ndims {dims}")
    print(f"{'b':>5} {'D':>9} {'G':>9} {'N min':>8} {'N max':>8}")
    for b in (0.05, 0.1, 0.2, 0.5, 1.0):
        rho = horodecki_2x4(b, dims)
        d = estimate_D(rho, trials=100_000, seed=0).value  # upper bound
        g = compute_G(rho).value
        n = negativity_extremes(rho)
        print(f"{b:5.2f} {d:9.4f} {g:9.5f} {n.min:8.4f} {n.max:8.4f}")

# as two parties the split A|B is PPT; as three qubits some splits are not
ext = negativity_extremes(horodecki_2x4(0.3, (2, 2, 2)))
for split, value in ext.values.items():
    print(split, round(value, 6))
