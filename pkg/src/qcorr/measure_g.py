"""Measure G: the eigenvalue-partitioning game.

For subsystem ``k`` of dimension ``d_k`` the ``d_tot`` global eigenvalues are
split into ``d_k`` blocks of equal size ``d_tot/d_k``; block sums are the
"mimic" reduced spectrum. ``F_k`` is the smallest achievable
``|H(mimic) - H(reduced spectrum of k)|`` and ``G = max_k F_k``.

Two enumeration routes are provided. The plain route walks every canonical
partition of the index set. The pruned route groups numerically equal
eigenvalues and walks each distinct multiset partition once, which is what
makes spectra with large zero or degenerate eigenspaces tractable. Both
give the same value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from qcorr.entropy import _shannon, probability_vector
from qcorr.errors import PartitionBudgetExceeded
from qcorr.linalg import DensityMatrix, clamp_spectrum, partial_trace

DEFAULT_BUDGET = 10**8
GROUP_TOL = 1e-12

Partition = tuple[tuple[int, ...], ...]


def partition_count(n: int, k: int) -> int:
    """Number of canonical partitions of ``n`` items into ``k`` unlabeled blocks of size ``n/k``."""
    if k <= 0 or n % k:
        raise ValueError(f"{k} blocks do not divide {n} items evenly")
    s = n // k
    return math.factorial(n) // (math.factorial(s) ** k * math.factorial(k))


def enumerate_partitions(n: int, k: int) -> Iterator[Partition]:
    """Yield every partition of ``range(n)`` into ``k`` equal blocks exactly once.

    Blocks are sorted internally and ordered by their smallest element, and
    partitions come out in lexicographic order of that canonical form.
    """
    if k <= 0 or n % k:
        raise ValueError(f"{k} blocks do not divide {n} items evenly")
    s = n // k

    def rec(remaining: tuple[int, ...]) -> Iterator[Partition]:
        if not remaining:
            yield ()
            return
        first, rest = remaining[0], remaining[1:]
        for others in combinations(rest, s - 1):
            block = (first,) + others
            left = tuple(i for i in rest if i not in others)
            for tail in rec(left):
                yield (block,) + tail

    yield from rec(tuple(range(n)))


def _groups(values: np.ndarray, tol: float = GROUP_TOL) -> list[list[int]]:
    """Index groups of numerically equal values (``values`` sorted descending)."""
    groups: list[list[int]] = []
    for i, v in enumerate(values):
        if groups and values[groups[-1][0]] - v <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _compositions(counts: tuple[int, ...], size: int, upper: tuple[int, ...] | None) -> Iterator[tuple[int, ...]]:
    """Vectors ``x <= counts`` summing to ``size``, lexicographically <= ``upper``, descending."""
    g = len(counts)
    suffix = [0] * (g + 1)
    for i in range(g - 1, -1, -1):
        suffix[i] = suffix[i + 1] + counts[i]

    def rec(i: int, left: int, tight: bool, prefix: list[int]) -> Iterator[tuple[int, ...]]:
        if i == g:
            if left == 0:
                yield tuple(prefix)
            return
        hi = min(counts[i], left)
        if tight:
            hi = min(hi, upper[i])
        lo = max(0, left - suffix[i + 1])
        for x in range(hi, lo - 1, -1):
            prefix.append(x)
            yield from rec(i + 1, left - x, tight and x == upper[i], prefix)
            prefix.pop()

    yield from rec(0, size, upper is not None, [])


def enumerate_multiset_partitions(groups: Sequence[Sequence[int]], k: int) -> Iterator[Partition]:
    """Yield one index partition per distinct multiset partition.

    ``groups`` lists interchangeable indices. Each multiset partition is
    materialized by handing every block the lowest unused indices of each
    group, then put into canonical form.
    """
    counts = tuple(len(g) for g in groups)
    n = sum(counts)
    if k <= 0 or n % k:
        raise ValueError(f"{k} blocks do not divide {n} items evenly")
    s = n // k

    def rec(remaining: tuple[int, ...], blocks_left: int, upper: tuple[int, ...] | None, acc: list[tuple[int, ...]]):
        if blocks_left == 1:
            if upper is None or remaining <= upper:
                yield acc + [remaining]
            return
        for comp in _compositions(remaining, s, upper):
            rest = tuple(r - c for r, c in zip(remaining, comp))
            yield from rec(rest, blocks_left - 1, comp, acc + [comp])

    for comps in rec(counts, k, None, []):
        used = [0] * len(groups)
        blocks = []
        for comp in comps:
            block = []
            for gi, c in enumerate(comp):
                block.extend(groups[gi][used[gi] : used[gi] + c])
                used[gi] += c
            blocks.append(tuple(sorted(block)))
        yield tuple(sorted(blocks))


def mimic_spectrum(spectrum: Sequence[float], partition: Partition) -> np.ndarray:
    """Block sums of ``spectrum`` under ``partition``, in block order."""
    spec = np.asarray(spectrum, dtype=float)
    seen = sorted(i for block in partition for i in block)
    if seen != list(range(len(spec))):
        raise ValueError("partition does not cover the spectrum indices exactly once")
    return probability_vector([math.fsum(spec[i] for i in block) for block in partition])


@dataclass
class FResult:
    value: float
    best_partition: Partition
    candidates: int


@dataclass
class GResult:
    """Outcome of :func:`compute_G`. Subsystem indices are 0-based."""

    value: float
    per_subsystem: list[float]
    argmax_subsystem: int
    best_partitions: list[Partition]
    candidates: list[int] = field(default_factory=list)


def _f_from_spectra(
    global_spec: np.ndarray,
    reduced_spec: np.ndarray,
    n_blocks: int,
    budget: int,
    prune: bool,
) -> FResult:
    n = len(global_spec)
    target = _shannon(reduced_spec)
    groups = _groups(global_spec)
    # eigenvalues within GROUP_TOL are treated as one value by both routes
    global_spec = np.array(global_spec, dtype=float)
    for g in groups:
        global_spec[g] = math.fsum(global_spec[g]) / len(g)
    if prune:
        candidates = enumerate_multiset_partitions(groups, n_blocks)
    else:
        total = partition_count(n, n_blocks)
        if total > budget:
            raise PartitionBudgetExceeded(
                f"{total} partitions of {n} eigenvalues into {n_blocks} blocks exceed the budget of {budget}"
            )
        candidates = enumerate_partitions(n, n_blocks)

    best = math.inf
    best_part: Partition = ()
    seen: dict[tuple[float, ...], float] = {}
    count = 0
    for part in candidates:
        count += 1
        if count > budget:
            raise PartitionBudgetExceeded(
                f"more than {budget} candidate partitions of {n} eigenvalues into {n_blocks} blocks"
            )
        sums = sorted(math.fsum(global_spec[i] for i in block) for block in part)
        key = tuple(round(x, 12) for x in sums) if prune else None
        if key is not None and key in seen:
            gap = seen[key]
        else:
            gap = abs(_shannon(np.array(sums)) - target)
            if key is not None:
                seen[key] = gap
        if gap < best or (gap == best and part < best_part):
            best, best_part = gap, part
    return FResult(best, best_part, count)


def F_k(
    rho: DensityMatrix,
    k: int,
    *,
    budget: int = DEFAULT_BUDGET,
    prune: bool = True,
    global_spectrum: np.ndarray | None = None,
) -> FResult:
    """Minimum entropy gap between mimic and genuine spectra for subsystem ``k``."""
    if not 0 <= k < rho.n_subsystems:
        raise IndexError(f"subsystem index {k} out of range for {rho.n_subsystems} subsystems")
    spec = rho.spectrum() if global_spectrum is None else global_spectrum
    reduced = partial_trace(rho, [k]).spectrum()
    return _f_from_spectra(spec, reduced, rho.dims[k], budget, prune)


def g_from_spectra(
    global_spectrum: Sequence[float],
    reduced_spectra: Sequence[Sequence[float]],
    *,
    budget: int = DEFAULT_BUDGET,
    prune: bool = True,
) -> GResult:
    """G from a global spectrum and per-subsystem reduced spectra."""
    spec = clamp_spectrum(global_spectrum)
    results = [
        _f_from_spectra(spec, clamp_spectrum(red), len(red), budget, prune) for red in reduced_spectra
    ]
    values = [r.value for r in results]
    arg = int(np.argmax(values))
    return GResult(values[arg], values, arg, [r.best_partition for r in results], [r.candidates for r in results])


def compute_G(rho: DensityMatrix, *, budget: int = DEFAULT_BUDGET, prune: bool = True) -> GResult:
    """Exact G of ``rho``; deterministic and free of sampling.

    Raises:
        PartitionBudgetExceeded: when a subsystem needs more than ``budget``
            candidate partitions. The search is never truncated.
    """
    if rho.n_subsystems < 2:
        raise ValueError("G needs at least two subsystems")
    reduced = [partial_trace(rho, [k]).spectrum() for k in range(rho.n_subsystems)]
    return g_from_spectra(rho.spectrum(), reduced, budget=budget, prune=prune)
