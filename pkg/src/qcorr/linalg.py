"""Dense complex linear algebra for multipartite density matrices.

Subsystem 0 is the leftmost tensor factor, and a global row index
decomposes big-endian over ``dims`` (the last subsystem varies fastest),
which is the ordering produced by :func:`numpy.kron`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from qcorr.errors import ConvergenceError, InvalidStateError

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9
CLAMP_BAND = 1e-9

_MAX_SWEEPS = 60


def kron(*mats: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more matrices, leftmost factor outermost."""
    return reduce(np.kron, (np.asarray(m, dtype=complex) for m in mats))


def hermiticity_residual(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def hermitian_eig(m: np.ndarray, tol: float = HERMITIAN_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi rotations.

    Args:
        m: square Hermitian matrix.
        tol: allowed ``max|m - m^H|`` before the input is rejected.

    Returns:
        ``(values, vectors)`` with real eigenvalues sorted descending and the
        matching orthonormal eigenvectors as the columns of ``vectors``.

    Raises:
        ValueError: if ``m`` is not square or not Hermitian within ``tol``.
        ConvergenceError: if the off-diagonal mass does not vanish within the
            sweep budget.
    """
    a = np.array(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    res = hermiticity_residual(a)
    if res > tol:
        raise ValueError(f"matrix is not Hermitian (max|M - M^H| = {res:.3e})")
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)

    scale = np.linalg.norm(a)
    if n < 2 or scale == 0.0:
        return _sorted(np.real(np.diag(a)).copy(), v)
    target = np.finfo(float).eps * scale

    for _ in range(_MAX_SWEEPS):
        off = _off_norm(a)
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = abs(a[p, q])
                if g <= 1e-3 * target / n:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                phase = a[p, q] / g
                theta = (aqq - app) / (2.0 * g)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = app - t * g
                a[q, q] = aqq + t * g
                v[:, idx] = v[:, idx] @ rot
    else:
        off = _off_norm(a)
        if off > 1e3 * target:
            raise ConvergenceError(
                f"Jacobi iteration did not converge in {_MAX_SWEEPS} sweeps "
                f"(off-diagonal norm {off:.3e})"
            )
    return _sorted(np.real(np.diag(a)).copy(), v)


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a[~np.eye(a.shape[0], dtype=bool)]))


def _sorted(values: np.ndarray, vectors: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(-values, kind="stable")
    return values[order], vectors[:, order]


def clamp_spectrum(values: Iterable[float], band: float = CLAMP_BAND) -> np.ndarray:
    """Sort descending and clamp values in ``[-band, 0)`` to zero.

    Raises:
        InvalidStateError: on a value below ``-band``.
    """
    vals = np.sort(np.asarray(list(values), dtype=float))[::-1]
    if vals.size and vals[-1] < -band:
        raise InvalidStateError(
            f"spectrum has a negative value {vals[-1]:.3e} beyond the clamp band"
        )
    return np.where(vals < 0.0, 0.0, vals)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated density matrix of a multipartite system.

    Construction checks shape, finiteness, Hermiticity, unit trace and
    positive semidefiniteness, then stores the symmetrized matrix
    ``(M + M^H)/2`` as a read-only array.
    """

    mat: np.ndarray
    dims: tuple[int, ...]

    def __init__(self, mat: np.ndarray, dims: Sequence[int] | None = None, *, _checked: bool = True):
        m = np.array(mat, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidStateError(f"density matrix must be square, got shape {m.shape}")
        if dims is None:
            dims = (m.shape[0],)
        dims = tuple(int(d) for d in dims)
        if any(d < 2 for d in dims):
            raise InvalidStateError(f"subsystem dimensions must be >= 2, got {list(dims)}")
        if int(np.prod(dims)) != m.shape[0]:
            raise InvalidStateError(
                f"dims {list(dims)} multiply to {int(np.prod(dims))}, "
                f"but the matrix is {m.shape[0]}x{m.shape[0]}"
            )
        if _checked:
            check_density(m)
        m = 0.5 * (m + m.conj().T)
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)
        object.__setattr__(self, "dims", dims)

    @classmethod
    def trusted(cls, mat: np.ndarray, dims: Sequence[int]) -> "DensityMatrix":
        """Wrap a matrix known to be a density matrix, skipping the PSD/trace checks."""
        return cls(mat, dims, _checked=False)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)

    def eig(self) -> tuple[np.ndarray, np.ndarray]:
        return hermitian_eig(self.mat)

    def spectrum(self) -> np.ndarray:
        """Eigenvalues sorted descending, clamped at zero."""
        return clamp_spectrum(self.eig()[0])

    def with_dims(self, dims: Sequence[int]) -> "DensityMatrix":
        return DensityMatrix.trusted(self.mat, dims)

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim}, dims={list(self.dims)})"


def density_residuals(m: np.ndarray) -> dict[str, float]:
    """Hermiticity, trace and PSD residuals of a candidate density matrix.

    ``psd`` is the magnitude of the most negative eigenvalue (0 when PSD).
    """
    herm = hermiticity_residual(m)
    trace = abs(np.trace(m) - 1.0)
    if herm > HERMITIAN_TOL:
        # eigenvalues of a non-Hermitian matrix are meaningless here
        psd = float("nan")
    else:
        lowest = hermitian_eig(m)[0][-1]
        psd = max(0.0, -float(lowest))
    return {"hermitian": herm, "trace": float(trace), "psd": psd}


def check_density(m: np.ndarray) -> None:
    if not np.all(np.isfinite(m)):
        raise InvalidStateError("density matrix has non-finite entries")
    res = density_residuals(m)
    if res["hermitian"] > HERMITIAN_TOL:
        raise InvalidStateError(
            f"not Hermitian: max|M - M^H| = {res['hermitian']:.3e} > {HERMITIAN_TOL:g}"
        )
    if res["trace"] > TRACE_TOL:
        raise InvalidStateError(f"trace residual |Tr M - 1| = {res['trace']:.3e} > {TRACE_TOL:g}")
    if res["psd"] > PSD_TOL:
        raise InvalidStateError(
            f"not positive semidefinite: smallest eigenvalue = {-res['psd']:.3e} (PSD residual {res['psd']:.3e})"
        )


def _check_indices(indices: Iterable[int], m: int) -> list[int]:
    idx = sorted(set(int(k) for k in indices))
    for k in idx:
        if not 0 <= k < m:
            raise IndexError(f"subsystem index {k} out of range for {m} subsystems")
    return idx


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Reduced density matrix on the subsystems in ``keep`` (order of ``keep`` is ignored)."""
    m = rho.n_subsystems
    keep = _check_indices(keep, m)
    if not keep:
        raise ValueError("keep must name at least one subsystem")
    dims = rho.dims
    t = rho.mat.reshape(dims + dims)
    if m > 26:
        raise ValueError("partial_trace supports at most 26 subsystems")
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    rows = [letters[k] for k in range(m)]
    cols = [letters[k] if k not in keep else letters[m + k] for k in range(m)]
    out = "".join(rows[k] for k in keep) + "".join(cols[k] for k in keep)
    reduced = np.einsum("".join(rows) + "".join(cols) + "->" + out, t)
    kept_dims = tuple(dims[k] for k in keep)
    d = int(np.prod(kept_dims))
    return DensityMatrix.trusted(reduced.reshape(d, d), kept_dims)


def partial_transpose(
    rho: DensityMatrix | np.ndarray,
    subsystems: int | Iterable[int],
    dims: Sequence[int] | None = None,
) -> np.ndarray:
    """Transpose the factors in ``subsystems`` and leave the others alone.

    ``rho`` may be a :class:`DensityMatrix` or a bare matrix with ``dims``.
    The result is a plain array since it need not be positive.
    """
    if isinstance(rho, DensityMatrix):
        mat, dims = rho.mat, rho.dims
    else:
        mat = np.asarray(rho)
        if dims is None:
            raise ValueError("dims are required for a bare matrix")
        dims = tuple(dims)
    if isinstance(subsystems, (int, np.integer)):
        subsystems = [subsystems]
    m = len(dims)
    targets = _check_indices(subsystems, m)
    t = mat.reshape(tuple(dims) + tuple(dims))
    axes = list(range(2 * m))
    for k in targets:
        axes[k], axes[m + k] = axes[m + k], axes[k]
    return np.ascontiguousarray(t.transpose(axes)).reshape(mat.shape)
