"""Measure D: minimum Shannon entropy of product-basis measurement outcomes
minus the von Neumann entropy, estimated by randomized search.

The search evaluates a handful of deterministic warm-start bases and then
``trials`` random product bases. Since every candidate is a valid product
basis, the returned value is an upper bound on the true minimum.

Randomness for trial ``i`` depends only on ``(seed, i)``: trials are grouped
into fixed chunks of :data:`CHUNK` and chunk ``c`` draws from a Philox
stream keyed by ``(seed, c)`` in trial-major order. Running more trials
therefore only appends candidates, and the result does not depend on how
many worker threads evaluate the chunks.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from qcorr.entropy import probability_vector, shannon_rows, vn_entropy
from qcorr.linalg import CLAMP_BAND, DensityMatrix, hermitian_eig, kron, partial_trace

CHUNK = 1024
RESTART_NORM = 1e-8
UNITARY_TOL = 1e-10


@dataclass(frozen=True)
class LocalBasis:
    """One unitary per subsystem; column ``j`` of ``unitaries[k]`` is basis vector ``j`` of subsystem ``k``."""

    unitaries: tuple[np.ndarray, ...]

    def __post_init__(self):
        us = tuple(np.asarray(u, dtype=complex) for u in self.unitaries)
        for k, u in enumerate(us):
            if u.ndim != 2 or u.shape[0] != u.shape[1]:
                raise ValueError(f"unitary {k} is not square: {u.shape}")
            err = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
            if err > UNITARY_TOL:
                raise ValueError(f"matrix {k} is not unitary (max|U^H U - I| = {err:.3e})")
        object.__setattr__(self, "unitaries", us)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(u.shape[0] for u in self.unitaries)

    def product(self) -> np.ndarray:
        return kron(*self.unitaries)

    @classmethod
    def identity(cls, dims: Sequence[int]) -> "LocalBasis":
        return cls(tuple(np.eye(d, dtype=complex) for d in dims))


@dataclass
class DEstimate:
    """Result of :func:`estimate_D`.

    ``value`` is ``min_diag_entropy - vn`` with values in ``[-1e-9, 0)``
    reported as 0. ``best_trial`` is the index of the winning random trial,
    or ``None`` when a warm start won (``source`` names which).
    """

    value: float
    min_diag_entropy: float
    vn: float
    best_basis: LocalBasis
    trials_used: int
    seed: int
    best_trial: int | None = None
    source: str = ""
    warm_starts: dict[str, float] = field(default_factory=dict)


def default_trials(d_tot: int) -> int:
    """4e4 trials up to two qubits, 4e5 at dimension 8, ten times more per extra qubit."""
    if d_tot <= 4:
        return 40_000
    return 40_000 * 10 ** (math.ceil(math.log2(d_tot)) - 2)


def _orthonormalize(z: np.ndarray, redraw: Callable[[int, int, int], np.ndarray]) -> np.ndarray:
    """Modified Gram-Schmidt over the columns of a batch ``z`` of shape ``(n, d, d)``.

    Each column gets a second orthogonalization pass. A column whose norm
    before normalization falls below :data:`RESTART_NORM` is replaced by
    ``redraw(row, column, attempt)`` and processed again.
    """
    z = np.array(z, dtype=complex)
    n, d, _ = z.shape
    q = np.empty_like(z)
    for j in range(d):
        rows = np.arange(n)
        attempt = 0
        while rows.size:
            v = z[rows, :, j]
            for _ in range(2):
                for i in range(j):
                    qi = q[rows, :, i]
                    v = v - np.sum(qi.conj() * v, axis=1, keepdims=True) * qi
            norms = np.linalg.norm(v, axis=1)
            ok = norms >= RESTART_NORM
            q[rows[ok], :, j] = v[ok] / norms[ok, None]
            rows = rows[~ok]
            attempt += 1
            for r in rows:
                z[r, :, j] = redraw(int(r), j, attempt)
    return q


def _complex_normals(rng: np.random.Generator, shape) -> np.ndarray:
    x = rng.standard_normal(tuple(shape) + (2,))
    return x[..., 0] + 1j * x[..., 1]


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Random ``d x d`` unitary from Gram-Schmidt on a complex Gaussian matrix."""
    z = _complex_normals(rng, (1, d, d))
    return _orthonormalize(z, lambda r, j, a: _complex_normals(rng, (d,)))[0]


def random_local_basis(dims: Sequence[int], rng: np.random.Generator) -> LocalBasis:
    """Independent random unitary for each subsystem."""
    return LocalBasis(tuple(random_unitary(int(d), rng) for d in dims))


def _chunk_rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=key)))


def trial_unitaries(dims: Sequence[int], seed: int, start: int, stop: int) -> list[np.ndarray]:
    """Per-subsystem unitary batches for trials ``start <= i < stop``.

    The range must lie inside one chunk. Trial ``i`` always receives the
    same unitaries, whatever range it is requested in.
    """
    c = start // CHUNK
    if stop <= start or (stop - 1) // CHUNK != c:
        raise ValueError("trial range must be nonempty and within a single chunk")
    rng = _chunk_rng(seed, c)
    offset = start - c * CHUNK
    per_trial = sum(2 * d * d for d in dims)
    raw = rng.standard_normal((stop - c * CHUNK, per_trial))[offset:]
    out = []
    pos = 0
    for k, d in enumerate(dims):
        block = raw[:, pos : pos + 2 * d * d].reshape(-1, d, d, 2)
        pos += 2 * d * d
        z = block[..., 0] + 1j * block[..., 1]

        def redraw(row: int, col: int, attempt: int, k=k, d=d) -> np.ndarray:
            r = _chunk_rng(seed, c, offset + row, k, col, attempt)
            return _complex_normals(r, (d,))

        out.append(_orthonormalize(z, redraw))
    return out


def _batch_product(unitaries: Sequence[np.ndarray]) -> np.ndarray:
    u = unitaries[0]
    for v in unitaries[1:]:
        n = u.shape[0]
        u = np.einsum("nij,nkl->nikjl", u, v).reshape(n, u.shape[1] * v.shape[1], u.shape[2] * v.shape[2])
    return u


def _diagonals(mat: np.ndarray, u: np.ndarray) -> np.ndarray:
    # p_i = (U^H rho U)_ii, only the diagonal is formed
    p = np.einsum("nji,nji->ni", u.conj(), np.matmul(mat, u)).real
    return np.where(p < 0.0, 0.0, p)


def projected_distribution(rho: DensityMatrix, basis: LocalBasis) -> np.ndarray:
    """Outcome distribution of measuring every subsystem in ``basis``."""
    if basis.dims != rho.dims:
        raise ValueError(f"basis dims {list(basis.dims)} do not match state dims {list(rho.dims)}")
    u = basis.product()[None]
    return probability_vector(_diagonals(rho.mat, u)[0])


def gell_mann(d: int) -> list[np.ndarray]:
    """Generalized Gell-Mann matrices: ``d*d - 1`` traceless Hermitian matrices, ``Tr(l_i l_j) = 2 delta_ij``."""
    out = []
    for j in range(d):
        for k in range(j + 1, d):
            s = np.zeros((d, d), dtype=complex)
            s[j, k] = s[k, j] = 1.0
            a = np.zeros((d, d), dtype=complex)
            a[j, k] = -1j
            a[k, j] = 1j
            out += [s, a]
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1.0
        diag[l] = -l
        out.append(np.diag(diag * np.sqrt(2.0 / (l * (l + 1)))).astype(complex))
    return out


def correlation_axis_basis(rho: DensityMatrix, k: int) -> np.ndarray:
    """Eigenbasis of the local observable on subsystem ``k`` most correlated with the rest.

    For each traceless Hermitian ``L`` on ``k`` let ``M(L) = Tr_k[(L x I) rho]``;
    the leading eigenvector of the Gram form
    ``Tr(M(L) M(L')) - Tr M(L) Tr M(L') / d_rest`` picks the observable.
    For two qubits this is the leading left singular vector of the
    correlation matrix ``T_ij = Tr(rho s_i x s_j)`` (with local Bloch terms
    folded in).
    """
    dims = rho.dims
    m = len(dims)
    dk = dims[k]
    d_rest = rho.dim // dk
    order = [k] + [i for i in range(m) if i != k]
    t = rho.mat.reshape(dims + dims).transpose(order + [m + i for i in order])
    r = t.reshape(dk, d_rest, dk, d_rest)
    lams = gell_mann(dk)
    ms = [np.einsum("ac,cbad->bd", lam, r) for lam in lams]
    traces = np.array([np.trace(x) for x in ms])
    flat = np.array([x.ravel() for x in ms])
    # Tr(M_i M_j) = sum_bd M_i[b,d] M_j[d,b]
    gram = np.einsum("ibd,jdb->ij", flat.reshape(-1, d_rest, d_rest), flat.reshape(-1, d_rest, d_rest))
    gram = (gram - np.outer(traces, traces) / d_rest).real
    gram = 0.5 * (gram + gram.T)
    _, vecs = hermitian_eig(gram.astype(complex), tol=1e-8)
    axis = vecs[:, 0].real
    if np.linalg.norm(axis) < 1e-12:
        axis = vecs[:, 0].imag
    obs = sum(w * lam for w, lam in zip(axis, lams))
    return hermitian_eig(obs)[1]


def warm_start_bases(rho: DensityMatrix) -> list[tuple[str, LocalBasis]]:
    """Deterministic candidates evaluated before the random trials.

    The identity basis, then every per-subsystem combination of the
    reduced-state eigenbasis and the correlation-axis basis.
    """
    dims = rho.dims
    cands = [("identity", LocalBasis.identity(dims))]
    reduced = [partial_trace(rho, [k]).eig()[1] for k in range(len(dims))]
    if rho.dim <= 256:
        corr = [correlation_axis_basis(rho, k) for k in range(len(dims))]
    else:
        corr = reduced
    for choice in itertools.product((0, 1), repeat=len(dims)):
        us = tuple(reduced[k] if c == 0 else corr[k] for k, c in enumerate(choice))
        if all(c == 0 for c in choice):
            name = "reduced-eigenbasis"
        elif all(c == 1 for c in choice):
            name = "correlation-axis"
        else:
            name = "mixed:" + "".join("rc"[c] for c in choice)
        cands.append((name, LocalBasis(us)))
    return cands


def _worker_count() -> int:
    env = os.environ.get("QCORR_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return max(1, min(8, os.cpu_count() or 1))


def _search_chunk(mat: np.ndarray, dims: tuple[int, ...], seed: int, start: int, stop: int):
    us = trial_unitaries(dims, seed, start, stop)
    ents = shannon_rows(_diagonals(mat, _batch_product(us)))
    i = int(np.argmin(ents))
    return float(ents[i]), start + i, tuple(u[i] for u in us)


def random_search(rho: DensityMatrix, trials: int, seed: int, workers: int | None = None):
    """Best ``(entropy, trial_index, unitaries)`` over random trials ``0..trials-1``.

    Exact ties go to the lowest trial index. Returns ``None`` for zero trials.
    """
    if trials <= 0:
        return None
    ranges = [(s, min(s + CHUNK, trials)) for s in range(0, trials, CHUNK)]
    workers = _worker_count() if workers is None else max(1, workers)
    if workers == 1 or len(ranges) == 1:
        results = [_search_chunk(rho.mat, rho.dims, seed, a, b) for a, b in ranges]
    else:
        with ThreadPoolExecutor(max_workers=min(workers, len(ranges))) as pool:
            results = list(pool.map(lambda ab: _search_chunk(rho.mat, rho.dims, seed, *ab), ranges))
    return min(results, key=lambda r: (r[0], r[1]))


def estimate_D(
    rho: DensityMatrix,
    trials: int | None = None,
    seed: int = 0,
    *,
    workers: int | None = None,
    warm_start: bool = True,
) -> DEstimate:
    """Upper-bound estimate of D by warm starts plus random product bases.

    Args:
        rho: the state.
        trials: number of random product bases; ``None`` uses
            :func:`default_trials` for the state's dimension.
        seed: stream key; the estimate is a pure function of ``(rho, trials, seed)``.
        workers: thread count, defaulting to ``$QCORR_THREADS`` or the CPU count (max 8).
        warm_start: evaluate the deterministic warm-start bases first.
    """
    if trials is None:
        trials = default_trials(rho.dim)
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    vn = vn_entropy(rho)

    best_h = math.inf
    best_basis: LocalBasis | None = None
    source = ""
    warm: dict[str, float] = {}
    if warm_start:
        for name, basis in warm_start_bases(rho):
            h = float(shannon_rows(_diagonals(rho.mat, basis.product()[None]))[0])
            warm[name] = h
            if h < best_h:
                best_h, best_basis, source = h, basis, name
    best_trial = None
    found = random_search(rho, trials, seed, workers)
    if found is not None and found[0] < best_h:
        best_h, best_trial = found[0], found[1]
        best_basis = LocalBasis(found[2])
        source = "random"
    if best_basis is None:
        best_basis = LocalBasis.identity(rho.dims)
        best_h = float(shannon_rows(_diagonals(rho.mat, best_basis.product()[None]))[0])
        source = "identity"

    value = best_h - vn
    if -CLAMP_BAND <= value < 0.0:
        value = 0.0
    return DEstimate(value, best_h, vn, best_basis, trials, seed, best_trial, source, warm)


def sweep_D(spec):
    """Sweep rows carrying only the D column; see :func:`qcorr.sweep.run_sweep`."""
    from dataclasses import replace

    from qcorr.sweep import run_sweep

    return run_sweep(replace(spec, measures=("D",)))
