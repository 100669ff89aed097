import numpy as np
import pytest

from dynamics.cenarios import Scenario, ScenarioSpec, closed_form_concurrences, evolve_jc_one_photon
from measures.concorrencia import pair_concurrence
from measures.convex_roof import roof_concurrence_rank2, weighted_pure_concurrence
from qstate.erros import DimensionError, RankError
from qstate.estados import DensityMatrix, SubsystemLayout, reduced_density

DOIS = SubsystemLayout.of(A=2, B=2)


def _bell_diagonal(p):
    phi = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
    psi = np.array([0.0, 1.0, 1.0, 0.0]) / np.sqrt(2.0)
    return DensityMatrix(p * np.outer(phi, phi) + (1.0 - p) * np.outer(psi, psi), DOIS)


def test_concorrencia_pura_ponderada():
    bell = (np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)).reshape(2, 2)
    assert weighted_pure_concurrence(bell) == pytest.approx(1.0)
    # peso p entra linearmente
    assert weighted_pure_concurrence(np.sqrt(0.3) * bell) == pytest.approx(0.3)
    produto = np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    assert weighted_pure_concurrence(produto) == pytest.approx(0.0)


def test_roof_mistura_de_bell():
    resultado = roof_concurrence_rank2(_bell_diagonal(0.7), ("A",))
    assert resultado.value == pytest.approx(0.4, abs=1e-4)
    assert resultado.value <= resultado.eigen_average + 1e-12
    assert sum(resultado.weights) == pytest.approx(1.0, abs=1e-9)
    assert resultado.evaluations > 0


def test_roof_estado_separavel():
    # |↑⟩⟨↑| ⊗ I/2
    rho = DensityMatrix(np.diag([0.5, 0.5, 0.0, 0.0]), DOIS)
    assert roof_concurrence_rank2(rho, ("A",)).value == pytest.approx(0.0, abs=1e-7)


def test_roof_cenario_2_no_ponto_exato():
    alpha, beta = 1.0 / np.sqrt(10.0), 3.0 / np.sqrt(10.0)
    psi = evolve_jc_one_photon(np.pi / 2.0, alpha, beta)
    rho_ac = reduced_density(psi, ("A", "C"))
    assert rho_ac.layout.dims == (2, 3)

    resultado = roof_concurrence_rank2(rho_ac, ("A",))
    assert resultado.value == pytest.approx(0.8675, abs=2e-3)
    assert pair_concurrence(psi, ("A", "C")) == pytest.approx(resultado.value, abs=1e-9)


def test_roof_com_quatro_estados_nao_piora():
    rho = _bell_diagonal(0.6)
    dois = roof_concurrence_rank2(rho, ("A",), n_states=2)
    quatro = roof_concurrence_rank2(rho, ("A",), n_states=4)
    assert quatro.value <= dois.value + 1e-12
    assert quatro.value == pytest.approx(0.2, abs=1e-3)


def test_roof_rejeita_entradas_invalidas():
    with pytest.raises(RankError):
        roof_concurrence_rank2(DensityMatrix(np.eye(4) / 4.0, DOIS), ("A",))
    with pytest.raises(DimensionError):
        roof_concurrence_rank2(_bell_diagonal(0.5), ("A", "B"))
    with pytest.raises(ValueError):
        roof_concurrence_rank2(_bell_diagonal(0.5), ("A",), n_states=3)


def test_forma_fechada_fica_abaixo_do_roof_fora_dos_pontos_exatos():
    alpha, beta = 1.0 / np.sqrt(10.0), 3.0 / np.sqrt(10.0)
    gt = np.pi / 4.0
    rho_ac = reduced_density(evolve_jc_one_photon(gt, alpha, beta), ("A", "C"))
    fechada = closed_form_concurrences(ScenarioSpec(Scenario.JC_ONE_PHOTON, alpha, beta), gt)["AC"]

    dois = roof_concurrence_rank2(rho_ac, ("A",))
    quatro = roof_concurrence_rank2(rho_ac, ("A",), n_states=4)
    assert fechada == pytest.approx(0.6166, abs=2e-3)
    assert dois.value == pytest.approx(0.8161, abs=2e-3)
    assert quatro.value == pytest.approx(dois.value, abs=2e-3)
    assert min(dois.value, quatro.value) - fechada > 0.15
