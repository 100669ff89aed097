import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.linalg import expm as scipy_expm

from qstate.algebra import dagger, expm, herm_eig, kron, propagator_factory, psd_sqrt
from qstate.erros import DimensionError, NotHermitianError, NotPositiveError


def _hermitiana(rng, n):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (g + g.conj().T)


def test_kron_convencao_de_indices():
    a = np.array([[1, 2], [3, 4]])
    b = np.array([[0, 1], [1, 0]])
    k = kron(a, b)
    # entrada (i·2 + k, j·2 + l) = A(i, j)·B(k, l)
    assert k.shape == (4, 4)
    assert k[0, 1] == 1
    assert k[2, 3] == 4
    assert k[3, 2] == 4
    assert k[1, 1] == 0


@pytest.mark.parametrize("n", [2, 3, 7, 16])
def test_herm_eig_reconstroi_a_matriz(n):
    rng = np.random.default_rng(n)
    h = _hermitiana(rng, n)
    autovalores, v = herm_eig(h)

    assert np.all(np.diff(autovalores) >= 0.0)
    assert_allclose(v @ np.diag(autovalores) @ dagger(v), h, atol=1e-9)
    assert_allclose(dagger(v) @ v, np.eye(n), atol=1e-9)
    assert np.sum(autovalores) == pytest.approx(np.trace(h).real, abs=1e-10)


@pytest.mark.parametrize("n", [2, 4, 9])
def test_jacobi_concorda_com_lapack(n):
    rng = np.random.default_rng(100 + n)
    h = _hermitiana(rng, n)
    lapack, _ = herm_eig(h, method="lapack")
    jacobi, v = herm_eig(h, method="jacobi")

    assert_allclose(jacobi, lapack, atol=1e-9)
    assert_allclose(h @ v, v @ np.diag(jacobi), atol=1e-9)


def test_herm_eig_rejeita_entradas_invalidas():
    with pytest.raises(NotHermitianError):
        herm_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(DimensionError):
        herm_eig(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        herm_eig(np.eye(2), method="qr")


def test_psd_sqrt_e_truncamento():
    rng = np.random.default_rng(7)
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = g @ g.conj().T
    s = psd_sqrt(rho)
    assert_allclose(s @ s, rho, atol=1e-9)
    assert_allclose(s, s.conj().T, atol=1e-12)

    # arredondamento negativo pequeno vira zero
    quase = np.diag([0.5, 0.5, -1e-12]).astype(complex)
    assert_allclose(psd_sqrt(quase) @ psd_sqrt(quase), np.diag([0.5, 0.5, 0.0]), atol=1e-12)

    with pytest.raises(NotPositiveError):
        psd_sqrt(np.diag([1.0, -1e-6]))


def test_expm_unitaria_e_lei_de_grupo():
    rng = np.random.default_rng(11)
    for _ in range(20):
        n = int(rng.integers(2, 13))
        h = _hermitiana(rng, n)
        t1, t2 = rng.uniform(-2.0, 2.0, size=2)
        u = expm(h, t1)
        assert_allclose(dagger(u) @ u, np.eye(n), atol=1e-9)
        assert_allclose(expm(h, t1) @ expm(h, t2), expm(h, t1 + t2), atol=1e-9)


def test_expm_confere_com_scipy():
    rng = np.random.default_rng(12)
    h = _hermitiana(rng, 6)
    assert_allclose(expm(h, 0.8, scale=2.0), scipy_expm(-1j * 1.6 * h), atol=1e-9)
    assert_allclose(expm(h, 0.8, method="jacobi"), scipy_expm(-1j * 0.8 * h), atol=1e-9)


def test_propagator_factory_reusa_a_diagonalizacao():
    rng = np.random.default_rng(13)
    h = _hermitiana(rng, 5)
    propagador = propagator_factory(h)
    for t in (0.0, 0.3, 5.0):
        assert_allclose(propagador(t), expm(h, t), atol=1e-12)
