import numpy as np
import pytest
from numpy.testing import assert_allclose

from dynamics.banhos import (
    AmplitudePair,
    Comb,
    Markovian,
    SingleMode,
    amplitude_pair,
    amplitude_pairs,
    annihilation,
    build_hamiltonian,
    chi_phase,
    number,
    sigma_minus,
    sigma_plus,
    sigma_z,
)
from qstate.erros import DimensionError, NormalizationError, TangleSimError


def test_operadores_locais():
    # índice 0 = |↑⟩
    assert sigma_minus()[1, 0] == 1.0
    assert_allclose(sigma_plus() @ sigma_minus(), np.diag([1.0, 0.0]))
    assert_allclose(sigma_z(), np.diag([1.0, -1.0]))
    c = annihilation(3)
    assert_allclose(c.conj().T @ c, number(3))
    assert c[1, 2] == pytest.approx(np.sqrt(2.0))


def test_banhos_validam_parametros():
    with pytest.raises(TangleSimError):
        SingleMode(0.0)
    with pytest.raises(TangleSimError):
        Markovian(-1.0)
    with pytest.raises(TangleSimError):
        Comb(n_modes=0)
    with pytest.raises(TangleSimError):
        amplitude_pair(-0.1, SingleMode())


@pytest.mark.parametrize("t", [0.0, 0.7, 2.0, 5.5])
def test_modo_unico_e_markoviano(t):
    par = amplitude_pair(t, SingleMode(1.0))
    assert par.xi == pytest.approx(np.cos(t))
    assert par.chi == pytest.approx(-1j * np.sin(t))
    assert abs(par.xi) ** 2 + abs(par.chi) ** 2 == pytest.approx(1.0, abs=1e-9)

    par = amplitude_pair(t, Markovian(2.0))
    assert par.xi == pytest.approx(np.exp(-t))
    assert abs(par.chi) ** 2 == pytest.approx(1.0 - np.exp(-2.0 * t))


def test_par_de_amplitudes():
    with pytest.raises(NormalizationError):
        AmplitudePair(xi=0.8, chi=0.8)
    par = AmplitudePair.from_z(0.6, chi_phase(SingleMode()))
    assert par.z == pytest.approx(0.6)
    assert par.xi == pytest.approx(0.8)
    assert par.chi == pytest.approx(-0.6j)
    assert chi_phase(Markovian()) == 1.0
    with pytest.raises(TangleSimError):
        AmplitudePair.from_z(1.2)


def test_pente_de_um_modo_igual_ao_modo_unico():
    pente = Comb(n_modes=1, g=1.0, spacing=1.0)
    a, b = amplitude_pair(0.7, pente), amplitude_pair(0.7, SingleMode(1.0))
    assert abs(a.xi - b.xi) < 1e-9
    assert abs(a.chi - b.chi) < 1e-9


def test_pente_regra_de_ouro_e_recorrencia():
    pente = Comb.from_markov_rate(1.0)
    assert pente.n_modes == 201
    assert pente.markov_rate() == pytest.approx(1.0)
    assert pente.recurrence_time() == pytest.approx(2.0 * np.pi / 0.25)
    assert pente.detunings()[100] == pytest.approx(0.0)

    for par, t in zip(amplitude_pairs([0.5, 1.5, 3.0], pente), [0.5, 1.5, 3.0]):
        assert np.sum(np.abs(par.bath_amplitudes) ** 2) == pytest.approx(abs(par.chi) ** 2, abs=1e-9)
        assert abs(par.xi) == pytest.approx(np.exp(-t / 2.0), rel=0.05)


def test_hamiltoniano_do_modo_unico():
    h = build_hamiltonian(SingleMode(0.5), 4)
    assert h.matrix.shape == (8, 8)
    assert h.layout.labels == ("A", "C")
    assert_allclose(h.matrix, h.matrix.conj().T)
    comutador = h.matrix @ h.excitations - h.excitations @ h.matrix
    assert np.max(np.abs(comutador)) <= 1e-12
    # ⟨↓,1|H|↑,0⟩ = g
    assert h.matrix[4 + 1, 0] == pytest.approx(0.5)


def test_hamiltoniano_do_pente():
    pente = Comb(n_modes=5, g=0.1, spacing=0.5)
    h = build_hamiltonian(pente, 2, omega_a=1.0)
    assert h.matrix.shape == (7, 7)
    assert h.layout is None
    assert h.basis[:2] == ("↓,vac", "↑,vac")
    assert_allclose(h.matrix, h.matrix.conj().T)
    assert np.max(np.abs(h.matrix @ h.excitations - h.excitations @ h.matrix)) <= 1e-12


def test_truncamento_insuficiente():
    with pytest.raises(DimensionError):
        build_hamiltonian(SingleMode(), 1)
    with pytest.raises(DimensionError):
        build_hamiltonian(SingleMode(), 2, initial_photons=1)
    with pytest.raises(TangleSimError):
        build_hamiltonian(Markovian(), 3)
