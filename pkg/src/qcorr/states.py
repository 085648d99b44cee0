"""Density-matrix families used throughout the package.

Every constructor returns a validated :class:`~qcorr.linalg.DensityMatrix`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from qcorr.errors import InvalidStateError
from qcorr.linalg import DensityMatrix, kron

FAMILIES = ("pseudo_pure", "bell_mixture", "sigma_p", "horodecki_2x4", "pseudo_ghz", "classical", "file")

SQRT_HALF = np.sqrt(0.5)
# |b1> = (|00> + |11>)/sqrt2, |b2> = (|01> + |10>)/sqrt2
BELL_PHI_PLUS = np.array([1, 0, 0, 1], dtype=complex) * SQRT_HALF
BELL_PSI_PLUS = np.array([0, 1, 1, 0], dtype=complex) * SQRT_HALF


def _check_unit_interval(name: str, x: float, hi: float = 1.0) -> float:
    x = float(x)
    if not 0.0 <= x <= hi:
        raise ValueError(f"{name}={x!r} outside [0, {hi:g}]")
    return x


def ghz_vector(n: int) -> np.ndarray:
    """(|0...0> + |1...1>)/sqrt2 on ``n`` qubits."""
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = psi[-1] = SQRT_HALF
    return psi


def projector(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).ravel()
    return np.outer(psi, psi.conj())


def pseudo_pure(psi: np.ndarray, p: float, dims: Sequence[int]) -> DensityMatrix:
    """``p |psi><psi| + (1-p) I/d``."""
    p = _check_unit_interval("p", p)
    psi = np.asarray(psi, dtype=complex).ravel()
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"state vector is not normalized (norm {norm:.12g})")
    d = psi.size
    if int(np.prod(dims)) != d:
        raise ValueError(f"dims {list(dims)} do not match a state vector of length {d}")
    return DensityMatrix(p * projector(psi) + (1.0 - p) * np.eye(d) / d, dims)


def bell_mixture(p: float) -> DensityMatrix:
    """``p |b1><b1| + (1-p) |b2><b2|`` on two qubits."""
    p = _check_unit_interval("p", p)
    return DensityMatrix(p * projector(BELL_PHI_PLUS) + (1.0 - p) * projector(BELL_PSI_PLUS), (2, 2))


def sigma_p(p: float) -> DensityMatrix:
    """Two-qubit mixture of |00>, |11> and (|01>+|10>)/sqrt2, for ``0 <= p <= 1/2``.

    Separable exactly when ``p <= 1/4``.
    """
    p = _check_unit_interval("p", p, 0.5)
    m = np.diag([0.5 - p, p, p, 0.5 - p]).astype(complex)
    m[1, 2] = m[2, 1] = p
    return DensityMatrix(m, (2, 2))


def horodecki_2x4(b: float, dims: Sequence[int] = (2, 4)) -> DensityMatrix:
    """Horodecki's 2x4 bound-entangled family, optionally read as three qubits.

    The matrix is the same for ``dims=(2, 4)`` and ``dims=(2, 2, 2)``; only
    the subsystem metadata differs.
    """
    b = _check_unit_interval("b", b)
    dims = tuple(int(d) for d in dims)
    if dims not in ((2, 4), (2, 2, 2)):
        raise ValueError(f"horodecki_2x4 supports dims (2, 4) or (2, 2, 2), got {list(dims)}")
    m = np.zeros((8, 8), dtype=complex)
    for i in (0, 1, 2, 3, 5, 6):
        m[i, i] = b
    for i, j in ((0, 5), (1, 6), (2, 7)):
        m[i, j] = m[j, i] = b
    m[4, 4] = m[7, 7] = (1.0 + b) / 2.0
    m[4, 7] = m[7, 4] = np.sqrt(1.0 - b * b) / 2.0
    return DensityMatrix(m / (7.0 * b + 1.0), dims)


def pseudo_ghz(p: float, n: int = 3) -> DensityMatrix:
    """``p |GHZ_n><GHZ_n| + (1-p) I/2^n``."""
    if n < 3:
        raise ValueError(f"pseudo-GHZ needs at least 3 qubits, got {n}")
    return pseudo_pure(ghz_vector(n), p, (2,) * n)


def classical_state(coeffs: np.ndarray, local_bases: Sequence[np.ndarray]) -> DensityMatrix:
    """State with a product eigenbasis.

    ``coeffs`` is a tensor of weights with one axis per subsystem (or a flat
    vector in big-endian order); column ``j`` of ``local_bases[k]`` is the
    ``j``-th basis vector of subsystem ``k``.
    """
    bases = [np.asarray(u, dtype=complex) for u in local_bases]
    dims = tuple(u.shape[0] for u in bases)
    for k, u in enumerate(bases):
        if u.shape != (dims[k], dims[k]):
            raise ValueError(f"local basis {k} is not square: {u.shape}")
        err = np.max(np.abs(u.conj().T @ u - np.eye(dims[k])))
        if err > 1e-10:
            raise ValueError(f"local basis {k} is not unitary (max|U^H U - I| = {err:.3e})")
    c = np.asarray(coeffs, dtype=float).ravel()
    if c.size != int(np.prod(dims)):
        raise ValueError(f"{c.size} coefficients for dims {list(dims)}")
    if np.any(c < 0.0) or abs(c.sum() - 1.0) > 1e-10:
        raise InvalidStateError("classical-state weights must be nonnegative and sum to 1")
    u = kron(*bases)
    return DensityMatrix((u * c) @ u.conj().T, dims)


@dataclass(frozen=True)
class StateSpec:
    """Declarative description of a state, as taken by the CLI and sweeps.

    ``parameter`` is ``p`` or ``b`` depending on the family. ``dims`` is only
    consulted where the family allows a choice (``horodecki_2x4``) and
    ``n_qubits`` only for ``pseudo_ghz``.
    """

    family: str
    parameter: float | None = None
    dims: tuple[int, ...] | None = None
    n_qubits: int = 3
    source_path: str | None = None

    def build(self) -> DensityMatrix:
        return build_state(self)

    def with_parameter(self, value: float) -> "StateSpec":
        return StateSpec(self.family, value, self.dims, self.n_qubits, self.source_path)


def build_state(spec: StateSpec) -> DensityMatrix:
    fam = spec.family
    if fam not in FAMILIES:
        raise ValueError(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")
    if fam == "file":
        from qcorr.textio import load_density

        if spec.source_path is None:
            raise ValueError("family 'file' needs a source path")
        return load_density(spec.source_path)
    if fam == "classical":
        raise ValueError("the classical family is built with classical_state(), not from a parameter")
    if spec.parameter is None:
        raise ValueError(f"family {fam!r} needs a parameter")
    x = spec.parameter
    if fam == "pseudo_pure":
        return pseudo_pure(BELL_PHI_PLUS, x, (2, 2))
    if fam == "bell_mixture":
        return bell_mixture(x)
    if fam == "sigma_p":
        return sigma_p(x)
    if fam == "horodecki_2x4":
        return horodecki_2x4(x, spec.dims or (2, 4))
    return pseudo_ghz(x, spec.n_qubits)
