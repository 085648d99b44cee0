import math
from itertools import permutations

import numpy as np
import pytest

from conftest import conjugate_locally, haar_unitary, random_density
from qcorr.entropy import binary_entropy as H
from qcorr.errors import PartitionBudgetExceeded
from qcorr.linalg import DensityMatrix, kron
from qcorr.measure_g import (
    F_k,
    _groups,
    compute_G,
    enumerate_multiset_partitions,
    enumerate_partitions,
    g_from_spectra,
    mimic_spectrum,
    partition_count,
)
from qcorr.states import BELL_PHI_PLUS, bell_mixture, classical_state, horodecki_2x4, pseudo_ghz, pseudo_pure, sigma_p


def brute_partitions(n, k):
    """Every equal-block partition, found by chunking all permutations."""
    s = n // k
    out = set()
    for perm in permutations(range(n)):
        blocks = frozenset(frozenset(perm[i * s : (i + 1) * s]) for i in range(k))
        out.add(blocks)
    return out


def np_entropy(p):
    p = np.asarray(p, dtype=float)
    p = p[p > 1e-300]
    return float(-np.sum(p * np.log2(p)))


def brute_G(mat, dims):
    """G from numpy spectra and a permutation search over block assignments."""
    spec = np.clip(np.linalg.eigvalsh(mat), 0, None)
    n = len(spec)
    t = mat.reshape(tuple(dims) * 2)
    fs = []
    for k, dk in enumerate(dims):
        m = len(dims)
        axes = [i for i in range(m) if i != k]
        red = t
        for i in sorted(axes, reverse=True):
            red = np.trace(red, axis1=i, axis2=i + red.ndim // 2)
        target = np_entropy(np.clip(np.linalg.eigvalsh(red), 0, None))
        s = n // dk
        best = math.inf
        for perm in permutations(range(n)):
            sums = [sum(spec[list(perm[i * s : (i + 1) * s])]) for i in range(dk)]
            best = min(best, abs(np_entropy(sums) - target))
        fs.append(best)
    return max(fs)


@pytest.mark.parametrize("n, k", [(4, 2), (4, 4), (6, 2), (6, 3), (8, 2), (8, 4), (4, 1)])
def test_enumeration_matches_brute_force(n, k):
    ours = list(enumerate_partitions(n, k))
    assert len(ours) == partition_count(n, k)
    as_sets = {frozenset(frozenset(b) for b in p) for p in ours}
    assert len(as_sets) == len(ours)
    assert as_sets == brute_partitions(n, k)
    for p in ours:
        assert all(len(b) == n // k for b in p)
        assert list(p) == sorted(p, key=min)
    assert ours == sorted(ours)


def test_partition_counts():
    assert [tuple(map(tuple, p)) for p in enumerate_partitions(4, 2)] == [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]
    assert len(list(enumerate_partitions(4, 4))) == 1
    assert partition_count(8, 4) == 105 == len(list(enumerate_partitions(8, 4)))
    assert partition_count(8, 4) == math.comb(8, 2) * math.comb(6, 2) * math.comb(4, 2) // math.factorial(4)
    assert partition_count(16, 4) == 2627625
    with pytest.raises(ValueError):
        partition_count(6, 4)
    with pytest.raises(ValueError):
        list(enumerate_partitions(6, 4))


@pytest.mark.parametrize(
    "values, k",
    [
        ([0.4, 0.3, 0.3, 0.0], 2),
        ([0.5, 0.5, 0.0, 0.0], 2),
        ([0.3, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.0], 2),
        ([0.3, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.0], 4),
        ([0.2, 0.2, 0.2, 0.1, 0.1, 0.1, 0.05, 0.05], 4),
        ([1 / 8] * 8, 2),
    ],
)
def test_multiset_enumeration_visits_each_value_pattern_once(values, k):
    vals = np.array(values)
    groups = _groups(vals)

    def pattern(part):
        return tuple(sorted(tuple(sorted(vals[list(b)])) for b in part))

    expected = {pattern(p) for p in enumerate_partitions(len(vals), k)}
    got = [pattern(p) for p in enumerate_multiset_partitions(groups, k)]
    assert len(got) == len(set(got))
    assert set(got) == expected


def test_mimic_spectrum():
    np.testing.assert_allclose(mimic_spectrum([0.25] * 4, ((0, 3), (1, 2))), [0.5, 0.5])
    p = 0.3
    np.testing.assert_allclose(mimic_spectrum([1 - p, p, 0, 0], ((0, 2), (1, 3))), [1 - p, p])
    q = 0.6
    spec = [(1 + 3 * q) / 4] + [(1 - q) / 4] * 3
    multisets = {tuple(sorted(np.round(mimic_spectrum(spec, part), 12))) for part in enumerate_partitions(4, 2)}
    assert multisets == {tuple(sorted(np.round([(1 + q) / 2, (1 - q) / 2], 12)))}
    with pytest.raises(ValueError):
        mimic_spectrum([0.5, 0.5, 0, 0], ((0, 1), (1, 2)))


@pytest.mark.parametrize("p", [0.0, 0.2, 0.5, 0.9])
def test_F_bell_mixture(p):
    rho = bell_mixture(p)
    for k in (0, 1):
        assert F_k(rho, k).value == pytest.approx(1 - H(p), abs=1e-12)


def test_F_product_state_is_zero(rng):
    a = random_density((2,), rng)
    b = random_density((3,), rng)
    rho = DensityMatrix(kron(a.mat, b.mat), (2, 3))
    assert F_k(rho, 0).value <= 1e-12
    assert F_k(rho, 1).value <= 1e-12


def test_F_horodecki_tripartite_first_subsystem():
    b = 0.3
    rho = horodecki_2x4(b, (2, 2, 2))
    spec = rho.spectrum()
    target = [4 * b / (7 * b + 1), (3 * b + 1) / (7 * b + 1)]
    best = min(
        abs(H(min(1.0, sum(spec[list(part[0])]))) - H(target[0]))
        for part in enumerate_partitions(8, 2)
    )
    res = F_k(rho, 0, prune=False)
    assert res.candidates == 35
    assert res.value == pytest.approx(best, abs=1e-12)


def test_closed_forms():
    for p in (0.0, 0.35, 1.0):
        assert compute_G(pseudo_pure(BELL_PHI_PLUS, p, (2, 2))).value == pytest.approx(1 - H((1 + p) / 2), abs=1e-12)
        assert compute_G(pseudo_ghz(p, 3)).value == pytest.approx(1 - H((1 + p) / 2), abs=1e-12)
    for p in (0.0, 0.1, 0.25, 0.33, 0.5):
        assert compute_G(sigma_p(p)).value == pytest.approx(min(1 - H(0.5 + p), 1 - H(2 * p)), abs=1e-12)


@pytest.mark.parametrize("dims", [(2, 2), (2, 2, 2), (2, 4)])
def test_G_matches_brute_force_oracle(dims, rng):
    for rank in (1, 3, None):
        rho = random_density(dims, rng, rank=rank)
        assert compute_G(rho).value == pytest.approx(brute_G(rho.mat, dims), abs=1e-10)


def test_G_local_unitary_invariance(rng):
    for rho in (bell_mixture(0.3), sigma_p(0.4), horodecki_2x4(0.3, (2, 2, 2)), random_density((2, 3), rng)):
        rot = conjugate_locally(rho, [haar_unitary(d, rng) for d in rho.dims])
        assert abs(compute_G(rot).value - compute_G(rho).value) <= 1e-9


def test_G_zero_on_classical(rng):
    for dims in ((2, 2), (2, 3), (2, 2, 2)):
        for _ in range(5):
            c = rng.dirichlet(np.ones(int(np.prod(dims))))
            rho = classical_state(c, [haar_unitary(d, rng) for d in dims])
            assert compute_G(rho).value <= 1e-9


def test_pruned_equals_unpruned(rng):
    for _ in range(20):
        rho = random_density((2, 2, 2), rng, rank=int(rng.integers(1, 9)))
        a = compute_G(rho, prune=True)
        b = compute_G(rho, prune=False)
        assert a.value == b.value
        assert a.per_subsystem == b.per_subsystem
    # degenerate spectra collapse the search but not the answer
    for rho in (pseudo_ghz(0.4, 3), horodecki_2x4(0.6, (2, 2, 2)), pseudo_ghz(0.7, 4)):
        a, b = compute_G(rho), compute_G(rho, prune=False)
        assert a.value == pytest.approx(b.value, abs=1e-14)
        assert sum(a.candidates) < sum(b.candidates)


def test_best_partition_reproduces_value():
    rho = sigma_p(0.1)
    res = compute_G(rho)
    spec = rho.spectrum()
    for k, part in enumerate(res.best_partitions):
        mimic = mimic_spectrum(spec, part)
        assert abs(np_entropy(mimic) - 1.0) == pytest.approx(res.per_subsystem[k], abs=1e-12)
    assert res.value == max(res.per_subsystem)
    assert res.argmax_subsystem == int(np.argmax(res.per_subsystem))


def test_tie_break_is_lexicographic():
    # all three 2|2 splits of a degenerate pseudo-pure spectrum tie; the lowest wins
    res = compute_G(pseudo_pure(BELL_PHI_PLUS, 0.5, (2, 2)), prune=False)
    assert res.best_partitions[0] == ((0, 1), (2, 3))


def test_budget_guard():
    rho = pseudo_ghz(0.5, 4)
    with pytest.raises(PartitionBudgetExceeded):
        compute_G(rho, budget=100, prune=False)
    with pytest.raises(PartitionBudgetExceeded):
        compute_G(horodecki_2x4(0.3, (2, 2, 2)), budget=3)
    assert compute_G(rho, budget=100).value == pytest.approx(1 - H(0.75), abs=1e-12)


def test_g_from_spectra_and_errors():
    res = g_from_spectra([0.7, 0.3, 0, 0], [[0.5, 0.5], [0.5, 0.5]])
    assert res.value == pytest.approx(1 - H(0.3), abs=1e-12)
    with pytest.raises(ValueError):
        compute_G(DensityMatrix(np.eye(4) / 4, (4,)))


def test_submaximizable_exact():
    sigma, tau = bell_mixture(0.3), bell_mixture(0.7)
    joint = DensityMatrix(kron(sigma.mat, tau.mat), sigma.dims + tau.dims)
    g = compute_G(joint).value
    gs, gt = compute_G(sigma).value, compute_G(tau).value
    assert g <= max(gs, gt) + 1e-12
    assert g <= gs + gt + 1e-12


def test_subadditive_with_grouped_subsystems():
    # reading sigma x tau as (A1 A2) | (B1 B2): 16 eigenvalues into 4 blocks of 4
    sigma, tau = bell_mixture(0.3), bell_mixture(0.8)
    m = kron(sigma.mat, tau.mat).reshape((2,) * 8)
    m = m.transpose(0, 2, 1, 3, 4, 6, 5, 7).reshape(16, 16)
    joint = DensityMatrix(m, (4, 4))
    g = compute_G(joint).value
    assert g <= compute_G(sigma).value + compute_G(tau).value + 1e-12


def test_grouped_reading_is_additive_on_bell_mixtures():
    # with (A1 A2) | (B1 B2) as two parties the bound is attained: G = G(sigma) + G(tau) > max
    sigma, tau = bell_mixture(0.3), bell_mixture(0.7)
    m = kron(sigma.mat, tau.mat).reshape((2,) * 8).transpose(0, 2, 1, 3, 4, 6, 5, 7).reshape(16, 16)
    g = compute_G(DensityMatrix(m, (4, 4))).value
    gs, gt = compute_G(sigma).value, compute_G(tau).value
    assert g == pytest.approx(gs + gt, abs=1e-12)
    assert g > max(gs, gt)
