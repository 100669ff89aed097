import numpy as np
import pandas as pd
import pytest

from cli.comandos import cmd_figures, cmd_simulate, cmd_sweep, fig2_frame, fig4_frame, simulation_row
from cli.config import RunConfig, build_config
from dynamics.cenarios import Scenario, ScenarioSpec
from interfaces.fontes import AnalyticSource, ConcurrenceSource, MeasuredSource, make_source
from qstate.paralelo import THREADS_ENV, ordered_map, worker_count

ALPHA, BETA = 1.0 / np.sqrt(10.0), 3.0 / np.sqrt(10.0)


def test_simulate_grava_csv(tmp_path):
    destino = tmp_path / "jc0.csv"
    config = build_config("simulate", {}, {"scenario": "1", "points": "21", "out": str(destino), "squares": True})
    assert cmd_simulate(config) == destino

    texto = destino.read_text(encoding="utf-8")
    assert "\r\n" not in texto
    df = pd.read_csv(destino)
    assert list(df.columns[:6]) == ["x", "C_AB", "C_AC", "C_BC", "C_focus_rest", "tau_or_E"]
    assert "C2_AB" in df.columns
    assert len(df) == 21
    assert df["x"].is_monotonic_increasing
    # τ do cenário 1 é nulo
    assert (df["tau_or_E"].abs() <= 1e-9).all()
    np.testing.assert_allclose(df["C_AB"] ** 2 + df["C_BC"] ** 2, 0.36, atol=1e-9)


def test_simulate_com_colunas_escolhidas(tmp_path):
    destino = tmp_path / "phi.csv"
    config = RunConfig(
        scenario=Scenario.DOUBLE_JC_PHI, points=11, out=str(destino), columns=("C_AB", "C2_AC")
    )
    cmd_simulate(config)
    df = pd.read_csv(destino)
    assert list(df.columns) == ["x", "C_AB", "C2_AC"]
    assert df["x"].iloc[-1] == 1.0


def test_simulate_identico_com_qualquer_numero_de_threads(tmp_path, monkeypatch):
    saidas = []
    for threads in ("1", "4"):
        monkeypatch.setenv(THREADS_ENV, threads)
        destino = tmp_path / f"t{threads}.csv"
        cmd_simulate(RunConfig(scenario=Scenario.DOUBLE_JC_PSI, points=31, out=str(destino)))
        saidas.append(destino.read_bytes())
    assert saidas[0] == saidas[1]


def test_linha_de_simulacao_com_fonte_medida():
    spec = ScenarioSpec(Scenario.JC_VACUUM, ALPHA, BETA)
    analitica = simulation_row(AnalyticSource(), spec, 0.9)
    medida = simulation_row(MeasuredSource(), spec, 0.9)
    for chave, valor in analitica.items():
        assert medida[chave] == pytest.approx(valor, abs=1e-9)


def test_fontes_seguem_o_protocolo():
    assert isinstance(make_source("analytic"), ConcurrenceSource)
    assert isinstance(make_source("measured", roof_states=4), ConcurrenceSource)
    with pytest.raises(ValueError):
        make_source("oraculo")

    # ruído injetado muda os valores medidos
    spec = ScenarioSpec(Scenario.JC_VACUUM, ALPHA, BETA)
    limpo = MeasuredSource().quantities(spec, 0.5)
    ruidoso = MeasuredSource(perturb=1e-3, seed=3).quantities(spec, 0.5)
    assert abs(limpo["AB"] - ruidoso["AB"]) > 1e-9


def test_sweep(tmp_path):
    destino = tmp_path / "sweep.csv"
    cmd_sweep(RunConfig(command="sweep", resolution=11, out=str(destino)))
    df = pd.read_csv(destino)
    assert len(df) == 11
    assert {"ab_lo", "ad_hi", "simultaneous_lo", "max_E_ABCD", "beta_gt_2alpha", "degenerate"} <= set(df.columns)
    assert df["degenerate"].iloc[0] == 1
    assert pd.isna(df["ab_lo"].iloc[-1])


def test_curvas_de_referencia():
    fig2 = fig2_frame(points=9)
    assert list(fig2.columns) == ["gt", "C_AB", "C_AC", "C_A(BC)", "C2_AB", "C2_AC", "C2_A(BC)", "tau_ABC"]
    assert fig2["gt"].iloc[-1] == pytest.approx(2.0 * np.pi)

    fig4 = fig4_frame(points=101)
    dentro = fig4[(fig4["z"] > 0.69) & (fig4["z"] < 0.81)]
    assert len(dentro) > 0
    assert (dentro["C_AB"] == 0.0).all()
    assert (dentro["C_AD"] == 0.0).all()
    np.testing.assert_allclose(fig4["C2_A(BCD)"] - fig4["C2_AB+C2_AC+C2_AD"], fig4["E_ABCD"], atol=1e-9)


def test_figures_grava_os_dois_csvs(tmp_path):
    fig2, fig4 = cmd_figures(RunConfig(command="figures", points=5, out=str(tmp_path / "figs")))
    assert fig2.name == "fig2.csv" and fig2.exists()
    assert fig4.name == "fig4.csv" and fig4.exists()


def test_mapa_ordenado(monkeypatch):
    assert ordered_map(lambda x: x * x, range(50), threads=8) == [x * x for x in range(50)]
    assert worker_count(3) == 3
    monkeypatch.setenv(THREADS_ENV, "2")
    assert worker_count() == 2
    monkeypatch.setenv(THREADS_ENV, "muitos")
    assert worker_count() >= 1
