"""Plain-text density-matrix and state-vector files.

Grammar (``#`` starts a comment anywhere on a line; blank lines are
skipped)::

    file    := header row*
    header  := ["vec"] dim+            # subsystem dimensions, each >= 2
    row     := (re im){d}              # density matrix: d rows of d entries
             | re im                   # "vec" file: d rows, one amplitude each

where ``d`` is the product of the header dimensions. Numbers are written
with 17 significant digits so a save/load round trip is exact.
"""

from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from qcorr.errors import ParseError
from qcorr.linalg import DensityMatrix

_FMT = "%.17g"


def _content_lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line.split()))
    return out


def _floats(tokens: list[str], lineno: int, path: str | None) -> list[float]:
    vals = []
    for tok in tokens:
        try:
            vals.append(float(tok))
        except ValueError:
            raise ParseError(f"non-numeric token {tok!r}", lineno, path) from None
    return vals


def parse_text(text: str, path: str | None = None) -> tuple[np.ndarray, tuple[int, ...], bool]:
    """Parse file contents into ``(array, dims, is_vector)`` without validating physics."""
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty file: missing dimension header", None, path)
    head_no, head = lines[0]
    is_vec = head[0] == "vec"
    if is_vec:
        head = head[1:]
    if not head:
        raise ParseError("header lists no subsystem dimensions", head_no, path)
    try:
        dims = tuple(int(t) for t in head)
    except ValueError:
        raise ParseError(f"malformed header {' '.join(head)!r}: expected integer dimensions", head_no, path) from None
    if any(d < 2 for d in dims):
        raise ParseError(f"subsystem dimensions must be >= 2, got {list(dims)}", head_no, path)
    d = int(np.prod(dims))
    body = lines[1:]
    width = 2 if is_vec else 2 * d
    what = "amplitude" if is_vec else "matrix"
    if len(body) != d:
        where = body[d][0] if len(body) > d else (body[-1][0] if body else head_no)
        raise ParseError(
            f"dims {list(dims)} need {d} {what} rows, found {len(body)}", where, path
        )
    rows = []
    for lineno, toks in body:
        if len(toks) != width:
            raise ParseError(
                f"dims {list(dims)} need {width} numbers per row ({width // 2} complex entries), found {len(toks)}",
                lineno,
                path,
            )
        vals = _floats(toks, lineno, path)
        rows.append(np.array(vals[0::2]) + 1j * np.array(vals[1::2]))
    arr = np.array(rows, dtype=complex)
    if is_vec:
        arr = arr.ravel()
    if not np.all(np.isfinite(arr)):
        raise ParseError("non-finite entry", None, path)
    return arr, dims, is_vec


def read_matrix(path: str | os.PathLike) -> tuple[np.ndarray, tuple[int, ...]]:
    """Read a density-matrix file without checking Hermiticity, trace or positivity."""
    with open(path) as fh:
        arr, dims, is_vec = parse_text(fh.read(), str(path))
    if is_vec:
        raise ParseError("expected a density matrix, found a 'vec' file", 1, str(path))
    return arr, dims


def load_density(path: str | os.PathLike) -> DensityMatrix:
    """Read and validate a density-matrix file.

    Raises:
        ParseError: malformed content, with the offending line number.
        InvalidStateError: the matrix is not a density matrix; the message
            names the failing residual.
    """
    arr, dims = read_matrix(path)
    return DensityMatrix(arr, dims)


def load_vector(path: str | os.PathLike) -> tuple[np.ndarray, tuple[int, ...]]:
    with open(path) as fh:
        arr, dims, is_vec = parse_text(fh.read(), str(path))
    if not is_vec:
        raise ParseError("expected a 'vec' header", 1, str(path))
    return arr, dims


def format_density(mat: np.ndarray, dims: Sequence[int], comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend("# " + c for c in comment.splitlines())
    lines.append(" ".join(str(int(d)) for d in dims))
    for row in np.asarray(mat, dtype=complex):
        lines.append(" ".join(f"{_FMT % z.real} {_FMT % z.imag}" for z in row))
    return "\n".join(lines) + "\n"


def save_density(rho: DensityMatrix, path: str | os.PathLike, comment: str | None = None) -> None:
    with open(path, "w") as fh:
        fh.write(format_density(rho.mat, rho.dims, comment))


def save_vector(psi: np.ndarray, dims: Sequence[int], path: str | os.PathLike) -> None:
    lines = ["vec " + " ".join(str(int(d)) for d in dims)]
    lines += [f"{_FMT % z.real} {_FMT % z.imag}" for z in np.asarray(psi, dtype=complex).ravel()]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
