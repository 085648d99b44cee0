"""Negativity across bipartitions of a multipartite state."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from qcorr.linalg import CLAMP_BAND, DensityMatrix, hermitian_eig, partial_transpose


@dataclass(frozen=True)
class Bipartition:
    """Split of subsystems ``0..m-1`` into two nonempty sides.

    Canonical splits have subsystem 0 on ``side_a``; :meth:`of` normalizes.
    """

    side_a: tuple[int, ...]
    side_b: tuple[int, ...]

    @classmethod
    def of(cls, side_b: Iterable[int], m: int) -> "Bipartition":
        b = tuple(sorted(set(int(i) for i in side_b)))
        if any(not 0 <= i < m for i in b):
            raise IndexError(f"subsystem index out of range for {m} subsystems: {list(b)}")
        a = tuple(i for i in range(m) if i not in b)
        if not a or not b:
            raise ValueError("both sides of a bipartition must be nonempty")
        if 0 in b:
            a, b = b, a
        return cls(a, b)

    def __str__(self) -> str:
        return "".join(map(str, self.side_a)) + "|" + "".join(map(str, self.side_b))


def bipartitions(m: int) -> list[Bipartition]:
    """All ``2**(m-1) - 1`` canonical bipartitions of ``m`` subsystems."""
    if m < 2:
        raise ValueError("need at least two subsystems")
    out = []
    for size in range(1, m):
        for b in combinations(range(1, m), size):
            out.append(Bipartition.of(b, m))
    return out


def negativity(rho: DensityMatrix, split: Bipartition | None = None) -> float:
    """``(||rho^{T_B}||_1 - 1)/2``, the summed magnitude of negative eigenvalues of the partial transpose.

    ``split`` defaults to the last subsystem against the rest.
    """
    if split is None:
        split = Bipartition.of([rho.n_subsystems - 1], rho.n_subsystems)
    vals = hermitian_eig(partial_transpose(rho, split.side_b))[0]
    neg = -float(np.sum(vals[vals < 0.0]))
    return 0.0 if neg <= CLAMP_BAND else neg


@dataclass
class NegativityExtremes:
    min: float
    max: float
    argmin: Bipartition
    argmax: Bipartition
    values: dict[str, float]


def negativity_extremes(rho: DensityMatrix) -> NegativityExtremes:
    """Smallest and largest negativity over all bipartitions (first split wins ties)."""
    splits = bipartitions(rho.n_subsystems)
    vals = [negativity(rho, s) for s in splits]
    lo = int(np.argmin(vals))
    hi = int(np.argmax(vals))
    return NegativityExtremes(vals[lo], vals[hi], splits[lo], splits[hi], {str(s): v for s, v in zip(splits, vals)})
