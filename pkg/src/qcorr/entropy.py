"""Entropy functions, all in bits."""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from qcorr.linalg import CLAMP_BAND, DensityMatrix

PROB_SUM_TOL = 1e-9


def probability_vector(probs: Iterable[float]) -> np.ndarray:
    """Validate and clamp a probability vector.

    Entries in ``[-1e-9, 0)`` are set to 0; anything more negative, any entry
    above 1, or a total more than ``1e-9`` away from 1 raises ``ValueError``.
    """
    p = np.asarray(list(probs) if not isinstance(probs, np.ndarray) else probs, dtype=float).ravel()
    if p.size == 0:
        raise ValueError("empty probability vector")
    if not np.all(np.isfinite(p)):
        raise ValueError("probability vector has non-finite entries")
    if np.any(p < -CLAMP_BAND):
        raise ValueError(f"negative probability {p.min():.3e}")
    p = np.where(p < 0.0, 0.0, p)
    if np.any(p > 1.0 + CLAMP_BAND):
        raise ValueError(f"probability {p.max():.6g} exceeds 1")
    total = p.sum()
    if abs(total - 1.0) > PROB_SUM_TOL:
        raise ValueError(f"probabilities sum to {total:.12g}, not 1")
    return p


def _shannon(p: np.ndarray) -> float:
    nz = p[p > 0.0]
    h = -float(np.dot(nz, np.log2(nz)))
    return h if h > 0.0 else 0.0


def shannon(probs: Iterable[float]) -> float:
    """Shannon entropy ``-sum p log2 p`` with ``0 log 0 = 0``."""
    return _shannon(probability_vector(probs))


def binary_entropy(x: float) -> float:
    """``H(x) = -x log2 x - (1-x) log2(1-x)`` for ``0 <= x <= 1``."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"binary entropy argument {x!r} outside [0, 1]")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def vn_entropy(rho: DensityMatrix) -> float:
    """Von Neumann entropy of ``rho`` in bits."""
    return _shannon(rho.spectrum())


def shannon_rows(probs: np.ndarray) -> np.ndarray:
    """Row-wise Shannon entropy of a batch of (already clamped) distributions."""
    p = np.asarray(probs, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0.0, p * np.log2(np.where(p > 0.0, p, 1.0)), 0.0)
    return -terms.sum(axis=-1)
