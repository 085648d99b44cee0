"""
The eigenvalue-partitioning game behind G
=========================================

For a two-qubit pseudo-pure state the four global eigenvalues are
(1+3p)/4 once and (1-p)/4 three times. Splitting them into two pairs
and summing gives a "mimic" reduced spectrum; G measures how far the
best mimic stays from the genuine reduced spectrum {1/2, 1/2}.
"""

from qcorr import compute_G, enumerate_partitions, mimic_spectrum, partition_count, pseudo_ghz, pseudo_pure
from qcorr.entropy import binary_entropy, shannon
from qcorr.states import BELL_PHI_PLUS

p = 0.6
rho = pseudo_pure(BELL_PHI_PLUS, p, (2, 2))
spec = rho.spectrum()
print("global spectrum:", spec.round(4))

# every way to split four eigenvalues into two pairs
for part in enumerate_partitions(4, 2):
    mimic = mimic_spectrum(spec, part)
    print(part, "->", mimic.round(4), f"gap {abs(shannon(mimic) - 1):.6f}")

g = compute_G(rho)
print(f"\nG = {g.value:.6f}, closed form 1 - H((1+p)/2) = {1 - binary_entropy((1 + p) / 2):.6f}")

# the search space grows fast, but repeated eigenvalues collapse it
print("\ncanonical partitions: n=8,k=2:", partition_count(8, 2), " n=16,k=2:", partition_count(16, 2))
for n in (3, 4):
    full = compute_G(pseudo_ghz(0.5, n), prune=False)
    pruned = compute_G(pseudo_ghz(0.5, n))
    print(f"pseudo-GHZ, {n} qubits: {sum(full.candidates)} partitions walked vs {sum(pruned.candidates)} after pruning, G = {pruned.value:.6f}")
