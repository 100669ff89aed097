import numpy as np
import pytest

from cli.config import (
    ConfigError,
    RunConfig,
    available_columns,
    build_config,
    load_config_file,
    square_columns,
)
from dynamics.banhos import Comb, Markovian, SingleMode
from dynamics.cenarios import GridKind, Scenario
from interfaces.fontes import AnalyticSource, MeasuredSource


def test_colunas_por_cenario():
    assert available_columns(Scenario.JC_VACUUM) == ("x", "C_AB", "C_AC", "C_BC", "C_focus_rest", "tau_or_E")
    assert "C_BC" not in available_columns(Scenario.JC_ONE_PHOTON)
    assert "C_CD" in available_columns(Scenario.DOUBLE_JC_PHI)
    assert "C2_focus_rest" in square_columns(Scenario.JC_VACUUM)


def test_padroes():
    config = RunConfig()
    assert config.scenario is Scenario.JC_VACUUM
    assert config.resolved_pair == pytest.approx((1.0 / np.sqrt(10.0), 3.0 / np.sqrt(10.0)))
    assert config.roof_states == 2

    quatro = RunConfig(scenario=Scenario.DOUBLE_JC_PHI)
    assert quatro.resolved_pair[0] == 0.429
    assert quatro.resolved_pair[1] == pytest.approx(np.sqrt(1.0 - 0.429**2))
    assert quatro.scenario_spec().grid_kind is GridKind.Z


def test_beta_exato_preserva_a_razao():
    config = RunConfig(scenario=Scenario.DOUBLE_JC_PHI, beta_exact=0.905)
    alpha, beta = config.resolved_pair
    assert alpha**2 + beta**2 == pytest.approx(1.0)
    assert alpha / beta == pytest.approx(0.429 / 0.905)


@pytest.mark.parametrize(
    "kwargs, campo",
    [
        ({"points": 1}, "points"),
        ({"alpha": 0.5, "beta": 0.5}, "beta"),
        ({"alpha": 1.5}, "alpha"),
        ({"gamma": 0.0}, "gamma"),
        ({"threads": 0}, "threads"),
        ({"columns": ("C_XY",)}, "columns"),
        ({"grid": GridKind.Z}, "grid"),
        ({"bath": "markov"}, "bath"),
        ({"perturb": -1.0}, "perturb"),
    ],
)
def test_valores_invalidos_nomeiam_o_campo(kwargs, campo):
    with pytest.raises(ConfigError) as erro:
        RunConfig(**kwargs)
    assert erro.value.field == campo
    assert isinstance(erro.value, ValueError)


def test_banhos_e_fontes():
    assert isinstance(RunConfig().bath_spec(), SingleMode)
    assert isinstance(RunConfig(scenario=Scenario.DOUBLE_JC_PSI, bath="markov").bath_spec(), Markovian)
    pente = RunConfig(scenario=Scenario.DOUBLE_JC_PSI, bath="comb", modes=11, gamma=2.0).bath_spec()
    assert isinstance(pente, Comb)
    assert pente.markov_rate() == pytest.approx(2.0)

    assert isinstance(RunConfig().make_source(), AnalyticSource)
    assert isinstance(RunConfig(source="measured", roof=True).make_source(), MeasuredSource)
    # sem forma fechada cai na fonte medida
    assert isinstance(RunConfig(scenario=Scenario.JC_VACUUM_PHI).make_source(), MeasuredSource)


def test_arquivo_de_configuracao(tmp_path):
    arquivo = tmp_path / "run.cfg"
    arquivo.write_text(
        "# cenário de um fóton\nscenario = 2\npoints=11\n\nroof-restarts = 1  # reinícios\n",
        encoding="utf-8",
    )
    valores = load_config_file(arquivo)
    assert valores == {"scenario": "2", "points": "11", "roof_restarts": "1"}

    # flags da CLI têm precedência sobre o arquivo
    config = build_config("simulate", valores, {"points": "21", "alpha": None})
    assert config.scenario is Scenario.JC_ONE_PHOTON
    assert config.points == 21
    assert config.roof_restarts == 1


def test_arquivo_invalido(tmp_path):
    ruim = tmp_path / "ruim.cfg"
    ruim.write_text("modo = rapido\n", encoding="utf-8")
    with pytest.raises(ConfigError) as erro:
        load_config_file(ruim)
    assert erro.value.field == "modo"

    sem_igual = tmp_path / "sem_igual.cfg"
    sem_igual.write_text("points\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config_file(sem_igual)

    with pytest.raises(ConfigError):
        load_config_file(tmp_path / "inexistente.cfg")


def test_conversao_de_valores():
    config = build_config(
        "verify",
        {},
        {"suite": "roof, windows", "squares": "sim", "grid": "gt", "scenario": Scenario.DOUBLE_JC_PSI},
    )
    assert config.suite == ("roof", "windows")
    assert config.squares is True
    assert config.grid is GridKind.GT

    with pytest.raises(ConfigError) as erro:
        build_config("simulate", {}, {"points": "muitos"})
    assert erro.value.field == "points"
    with pytest.raises(ConfigError):
        build_config("simulate", {}, {"source": "oraculo"})
