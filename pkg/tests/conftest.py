import numpy as np
import pytest

from qcorr.linalg import DensityMatrix

ACCEPTANCE_LINES: list[str] = []


def haar_unitary(d, rng):
    """Independent oracle sampler: QR of a complex Gaussian with phase fix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(dims, rng, rank=None):
    d = int(np.prod(dims))
    rank = d if rank is None else rank
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real, dims)


def random_hermitian(d, rng):
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return a + a.conj().T


def conjugate_locally(rho, unitaries):
    from qcorr.linalg import kron

    u = kron(*unitaries)
    return DensityMatrix(u @ rho.mat @ u.conj().T, rho.dims)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
