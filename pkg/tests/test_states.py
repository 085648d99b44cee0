import numpy as np
import pytest

from conftest import haar_unitary
from qcorr.entropy import vn_entropy
from qcorr.errors import InvalidStateError, ParseError
from qcorr.linalg import DensityMatrix, kron, partial_trace
from qcorr.states import (
    BELL_PHI_PLUS,
    BELL_PSI_PLUS,
    StateSpec,
    bell_mixture,
    classical_state,
    ghz_vector,
    horodecki_2x4,
    projector,
    pseudo_ghz,
    pseudo_pure,
    sigma_p,
)
from qcorr.textio import format_density, load_density, load_vector, parse_text, read_matrix, save_density, save_vector

PLUS_MINUS = np.array([[1, 1], [1, -1]]) / np.sqrt(2)


def test_pseudo_pure_limits(rng):
    psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    psi /= np.linalg.norm(psi)
    assert np.allclose(pseudo_pure(psi, 0, (2, 2)).mat, np.eye(4) / 4)
    pure = pseudo_pure(BELL_PHI_PLUS, 1, (2, 2))
    assert np.allclose(pure.mat, projector(BELL_PHI_PLUS))
    assert vn_entropy(pure) == 0.0


@pytest.mark.parametrize("p", [0.0, 0.2, 0.5, 0.77, 1.0])
def test_pseudo_pure_spectrum(p):
    spec = pseudo_pure(BELL_PHI_PLUS, p, (2, 2)).spectrum()
    np.testing.assert_allclose(spec, [(1 + 3 * p) / 4] + [(1 - p) / 4] * 3, atol=1e-12)


def test_pseudo_pure_errors():
    with pytest.raises(ValueError, match="normalized"):
        pseudo_pure(np.array([1, 1, 0, 0]), 0.5, (2, 2))
    with pytest.raises(ValueError):
        pseudo_pure(BELL_PHI_PLUS, 1.5, (2, 2))


def test_bell_mixture():
    half = bell_mixture(0.5)
    pp = np.kron(PLUS_MINUS[:, 0], PLUS_MINUS[:, 0])
    mm = np.kron(PLUS_MINUS[:, 1], PLUS_MINUS[:, 1])
    assert np.max(np.abs(half.mat - 0.5 * (projector(pp) + projector(mm)))) <= 1e-12
    assert np.allclose(bell_mixture(1).mat, projector(BELL_PHI_PLUS))
    np.testing.assert_allclose(bell_mixture(0.3).spectrum(), [0.7, 0.3, 0, 0], atol=1e-12)
    with pytest.raises(ValueError):
        bell_mixture(-0.1)


def test_sigma_p():
    assert np.allclose(sigma_p(0).mat, np.diag([0.5, 0, 0, 0.5]))
    for p in (0.0, 0.1, 0.25, 0.4, 0.5):
        np.testing.assert_allclose(
            sigma_p(p).spectrum(), sorted([0, 0.5 - p, 0.5 - p, 2 * p], reverse=True), atol=1e-12
        )
    with pytest.raises(ValueError):
        sigma_p(0.6)


def test_horodecki_structure():
    for b in np.linspace(0, 1, 21):
        rho = horodecki_2x4(b)
        assert abs(np.trace(rho.mat) - 1) <= 1e-12
        assert np.sum(rho.spectrum() <= 1e-12) >= 3
    assert horodecki_2x4(0.4, (2, 2, 2)).dims == (2, 2, 2)
    assert np.array_equal(horodecki_2x4(0.4, (2, 2, 2)).mat, horodecki_2x4(0.4).mat)
    with pytest.raises(ValueError):
        horodecki_2x4(0.4, (4, 2))


def test_horodecki_at_zero_is_pure():
    # b = 0 leaves the (1+b)/2 and sqrt(1-b^2)/2 entries: the pure state |1>(|00>+|11>)/sqrt2
    rho = horodecki_2x4(0)
    expected = np.zeros((8, 8))
    expected[4, 4] = expected[7, 7] = expected[4, 7] = expected[7, 4] = 0.5
    assert np.array_equal(rho.mat.real, expected)
    np.testing.assert_allclose(rho.spectrum(), [1] + [0] * 7, atol=1e-14)


def test_horodecki_at_one_trace():
    rho = horodecki_2x4(1)
    assert rho.mat[4, 7] == 0
    assert abs(np.trace(rho.mat) - 1) <= 1e-15


def test_pseudo_ghz():
    for p in (0.0, 0.3, 1.0):
        rho = pseudo_ghz(p, 3)
        np.testing.assert_allclose(rho.spectrum(), [(1 + 7 * p) / 8] + [(1 - p) / 8] * 7, atol=1e-12)
        for k in range(3):
            np.testing.assert_allclose(partial_trace(rho, [k]).spectrum(), [0.5, 0.5], atol=1e-12)
    assert np.allclose(pseudo_ghz(0, 3).mat, np.eye(8) / 8)
    assert ghz_vector(4)[0] == ghz_vector(4)[15]
    with pytest.raises(ValueError):
        pseudo_ghz(0.5, 2)


def test_classical_state_examples(rng):
    bases = [haar_unitary(2, rng), haar_unitary(2, rng)]
    assert np.allclose(classical_state(np.full(4, 0.25), bases).mat, np.eye(4) / 4)
    c = np.array([0.1, 0.2, 0.3, 0.4])
    assert np.allclose(classical_state(c, [np.eye(2), np.eye(2)]).mat, np.diag(c))
    eq4 = classical_state([0.5, 0, 0, 0.5], [PLUS_MINUS, PLUS_MINUS])
    assert np.max(np.abs(eq4.mat - bell_mixture(0.5).mat)) <= 1e-12


def test_classical_state_dephasing_invariant(rng):
    for dims in ((2, 2), (2, 3), (2, 2, 2)):
        bases = [haar_unitary(d, rng) for d in dims]
        c = rng.dirichlet(np.ones(int(np.prod(dims))))
        rho = classical_state(c.reshape(dims), bases)
        u = kron(*bases)
        back = u.conj().T @ rho.mat @ u
        assert np.max(np.abs(back - np.diag(np.diag(back)))) <= 1e-12
        np.testing.assert_allclose(np.diag(back).real, c, atol=1e-12)


def test_classical_state_errors(rng):
    with pytest.raises(InvalidStateError):
        classical_state([0.5, 0.6, -0.1, 0], [np.eye(2), np.eye(2)])
    with pytest.raises(ValueError, match="unitary"):
        classical_state([0.25] * 4, [np.eye(2) * 2, np.eye(2)])


def test_state_spec_build():
    assert np.allclose(StateSpec("bell_mixture", 0.3).build().mat, bell_mixture(0.3).mat)
    assert StateSpec("horodecki_2x4", 0.3, (2, 2, 2)).build().dims == (2, 2, 2)
    assert StateSpec("pseudo_ghz", 0.3, n_qubits=4).build().dims == (2, 2, 2, 2)
    assert np.allclose(StateSpec("pseudo_pure", 1.0).build().mat, projector(BELL_PHI_PLUS))
    with pytest.raises(ValueError):
        StateSpec("nope", 0.3).build()
    with pytest.raises(ValueError):
        StateSpec("sigma_p").build()


# ---- text format ----


def test_round_trip(tmp_path, rng):
    path = tmp_path / "id.dm"
    rho = DensityMatrix(np.eye(4) / 4, (2, 2))
    save_density(rho, path)
    back = load_density(path)
    assert back.dims == (2, 2)
    assert np.array_equal(back.mat, rho.mat)
    for _ in range(5):
        g = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        m = g @ g.conj().T
        rho = DensityMatrix(m / np.trace(m).real, (2, 3))
        save_density(rho, path, comment="random\nstate")
        assert np.max(np.abs(load_density(path).mat - rho.mat)) <= 1e-15


def test_trace_violation_reported(tmp_path):
    path = tmp_path / "bad.dm"
    path.write_text(format_density(np.eye(4) * 0.9 / 4, (2, 2)))
    with pytest.raises(InvalidStateError, match="trace residual"):
        load_density(path)


def test_comments_and_blank_lines():
    text = "# header comment\n2 2   # dims\n\n" + "\n".join(
        " ".join("0.25 0" if i == j else "0 0" for j in range(4)) for i in range(4)
    )
    arr, dims, is_vec = parse_text(text)
    assert dims == (2, 2) and not is_vec
    assert np.allclose(arr, np.eye(4) / 4)


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("", None, "missing dimension header"),
        ("two two\n", 1, "malformed header"),
        ("2 3\n" + "0 0 " * 5 + "\n", 2, "need 6 matrix rows"),
        ("2\n1 0 0 0\n0 0 x 0\n", 3, "non-numeric token 'x'"),
        ("2\n1 0 0\n0 0 0 0\n", 2, "need 4 numbers per row"),
        ("1 2\n", 1, ">= 2"),
    ],
)
def test_parse_errors(text, line, fragment):
    with pytest.raises(ParseError, match=fragment) as info:
        parse_text(text, "m.dm")
    assert info.value.line == line


def test_dims_mismatch_with_5x5_body(tmp_path):
    path = tmp_path / "m.dm"
    body = "\n".join(" ".join(["0.2 0"] * 5) for _ in range(5))
    path.write_text("2 3\n" + body + "\n")
    with pytest.raises(ParseError, match=r"dims \[2, 3\] need 6 matrix rows, found 5"):
        read_matrix(path)


def test_vector_files(tmp_path):
    path = tmp_path / "psi.vec"
    save_vector(BELL_PSI_PLUS, (2, 2), path)
    psi, dims = load_vector(path)
    assert dims == (2, 2)
    assert np.array_equal(psi, BELL_PSI_PLUS)
    with pytest.raises(ParseError):
        read_matrix(path)
