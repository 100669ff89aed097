import numpy as np
import pytest

from dynamics.banhos import AmplitudePair, Comb, Markovian, SingleMode
from dynamics.cenarios import (
    GridKind,
    Scenario,
    ScenarioSpec,
    closed_form_concurrences,
    default_grid,
    double_jc_state,
    evolve_double_jc,
    evolve_jc_one_photon,
    evolve_jc_vacuum,
    normalize_pair,
    scenario_state,
)
from qstate.erros import NormalizationError, TangleSimError

ALPHA, BETA = 1.0 / np.sqrt(10.0), 3.0 / np.sqrt(10.0)
ALPHA_4 = 0.429
BETA_4 = float(np.sqrt(1.0 - ALPHA_4**2))


def test_nomes_e_apelidos():
    assert Scenario.parse("2") is Scenario.JC_ONE_PHOTON
    assert Scenario.parse(" Double-JC-PHI ") is Scenario.DOUBLE_JC_PHI
    assert Scenario.DOUBLE_JC_PSI.four_partite
    assert Scenario.JC_ONE_PHOTON.pairs == ("AB", "AC")
    assert not Scenario.JC_VACUUM_PHI.has_closed_forms
    with pytest.raises(ValueError):
        Scenario.parse("5")


def test_par_precisa_estar_normalizado():
    with pytest.raises(NormalizationError):
        evolve_jc_vacuum(0.1, 0.5, 0.5)
    a, b = normalize_pair(0.429, 0.905)
    assert abs(a) ** 2 + abs(b) ** 2 == pytest.approx(1.0)
    assert abs(a / b) == pytest.approx(0.429 / 0.905)


def test_estado_do_cenario_1():
    psi = evolve_jc_vacuum(0.0, ALPHA, BETA)
    assert psi.amplitude(A=0, B=1, C=0) == pytest.approx(BETA)
    assert psi.amplitude(A=1, B=0, C=0) == pytest.approx(ALPHA)

    psi = evolve_jc_vacuum(np.pi / 2.0, ALPHA, BETA)
    assert psi.amplitude(A=1, B=1, C=1) == pytest.approx(-1j * BETA)
    assert psi.norm == pytest.approx(1.0, abs=1e-10)


def test_estado_do_cenario_2():
    psi = evolve_jc_one_photon(0.9, ALPHA, BETA)
    assert psi.layout.dims == (2, 2, 3)
    assert psi.norm == pytest.approx(1.0, abs=1e-10)
    assert psi.amplitude(A=1, B=1, C=2) == pytest.approx(-1j * BETA * np.sin(np.sqrt(2.0) * 0.9))


def test_formas_fechadas_do_cenario_1():
    spec = ScenarioSpec(Scenario.JC_VACUUM, ALPHA, BETA)
    cf = closed_form_concurrences(spec, np.pi / 4.0)
    assert cf["AB"] == pytest.approx(0.42426, abs=1e-5)
    assert cf["AC"] == pytest.approx(0.9, abs=1e-12)
    assert cf["BC"] == pytest.approx(0.42426, abs=1e-5)
    assert cf["A(BC)"] == pytest.approx(0.99499, abs=1e-5)
    assert cf["B(AC)"] == pytest.approx(0.6)
    assert cf["tau_ABC"] == pytest.approx(0.0, abs=1e-12)
    for gt in spec.time_grid[::50]:
        assert closed_form_concurrences(spec, gt)["sumrule"] == pytest.approx(spec.c0**2, abs=1e-9)


def test_formas_fechadas_do_cenario_2():
    spec = ScenarioSpec(Scenario.JC_ONE_PHOTON, ALPHA, BETA)
    cf = closed_form_concurrences(spec, np.pi / 2.0)
    assert cf["AB"] == 0.0
    assert cf["AC"] == pytest.approx(0.8675, abs=1e-4)
    assert "BC" not in cf


def test_formas_fechadas_do_cenario_3():
    spec = ScenarioSpec(Scenario.DOUBLE_JC_PSI, ALPHA, BETA)
    for z in (0.0, 0.3, 0.7, 1.0):
        cf = closed_form_concurrences(spec, z)
        assert cf["A(BCD)"] ** 2 == pytest.approx(cf["sumrule"], abs=1e-12)
        assert cf["E_ABCD"] == pytest.approx(0.0, abs=1e-12)


def test_formas_fechadas_do_cenario_4():
    spec = ScenarioSpec(Scenario.DOUBLE_JC_PHI, ALPHA_4, BETA_4)
    cf = closed_form_concurrences(spec, 0.7)
    xi2 = 1.0 - 0.49
    assert cf["AB"] == 0.0
    assert cf["AD"] == 0.0
    assert cf["AC"] == pytest.approx(2.0 * BETA_4**2 * np.sqrt(xi2) * 0.7)
    assert cf["AC"] == pytest.approx(0.8189, abs=5e-3)
    assert cf["E_ABCD"] == pytest.approx(spec.c0**2 * xi2, abs=1e-12)
    assert cf["E_ABCD"] == pytest.approx(0.3075, abs=5e-3)
    # simetria (A, C) ↔ (B, D)
    assert cf["BD"] == cf["AC"]
    assert cf["BC"] == cf["AD"]
    assert cf["B(ACD)"] == cf["A(BCD)"]


def test_cenarios_sem_forma_fechada():
    spec = ScenarioSpec(Scenario.JC_VACUUM_PHI, ALPHA, BETA)
    assert closed_form_concurrences(spec, 1.0) == {}
    psi = scenario_state(spec, 1.0)
    assert psi.layout.dims == (2, 2, 2)
    assert psi.norm == pytest.approx(1.0, abs=1e-10)


def test_estado_dos_dois_jc_em_ordem_abcd():
    psi = evolve_double_jc(0.6, ALPHA_4, BETA_4, which="phi")
    assert psi.layout.labels == ("A", "B", "C", "D")
    xi = np.sqrt(1.0 - 0.36)
    # β|ξ|²|↑↑00⟩
    assert psi.amplitude(A=0, B=0, C=0, D=0) == pytest.approx(BETA_4 * xi**2)
    assert psi.amplitude(A=1, B=1, C=0, D=0) == pytest.approx(ALPHA_4)
    with pytest.raises(TangleSimError):
        double_jc_state(AmplitudePair.from_z(0.5), ALPHA, BETA, "chi")


def test_grades_e_banhos():
    assert default_grid(Scenario.DOUBLE_JC_PHI, GridKind.Z, 11)[-1] == 1.0
    assert default_grid(Scenario.JC_VACUUM, GridKind.GT, 5)[-1] == pytest.approx(2.0 * np.pi)
    with pytest.raises(TangleSimError):
        ScenarioSpec(Scenario.JC_VACUUM, ALPHA, BETA, grid_kind=GridKind.Z)
    with pytest.raises(TangleSimError):
        ScenarioSpec(Scenario.JC_VACUUM, ALPHA, BETA, bath=Markovian())
    with pytest.raises(TangleSimError):
        ScenarioSpec(Scenario.DOUBLE_JC_PSI, ALPHA, BETA, time_grid=np.array([0.5, 1.5]))


def test_grade_temporal_com_banho():
    markov = ScenarioSpec(Scenario.DOUBLE_JC_PHI, ALPHA_4, BETA_4, bath=Markovian(1.0), grid_kind=GridKind.GT)
    z = ScenarioSpec(Scenario.DOUBLE_JC_PHI, ALPHA_4, BETA_4)
    t = 1.2
    chi = np.sqrt(1.0 - np.exp(-t))
    assert closed_form_concurrences(markov, t)["AC"] == pytest.approx(closed_form_concurrences(z, chi)["AC"])

    pente = ScenarioSpec(Scenario.DOUBLE_JC_PSI, ALPHA, BETA, bath=Comb(n_modes=1, g=1.0), grid_kind=GridKind.GT)
    unico = ScenarioSpec(Scenario.DOUBLE_JC_PSI, ALPHA, BETA, bath=SingleMode(), grid_kind=GridKind.GT)
    for chave, valor in closed_form_concurrences(unico, 0.8).items():
        assert closed_form_concurrences(pente, 0.8)[chave] == pytest.approx(valor, abs=1e-9)
