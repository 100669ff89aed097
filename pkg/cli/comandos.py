"""
cli/comandos.py — Subcomandos simulate, sweep e figures

Cada subcomando monta linhas (uma por ponto da grade ou por α), avaliadas
em paralelo com ordem preservada, e grava um CSV via pandas:
vírgula, ponto decimal, cabeçalho, fim de linha LF, UTF-8, 12 dígitos
significativos.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np
import pandas as pd

from cli.config import FIG4_ALPHA, RunConfig, available_columns, square_columns
from dynamics.cenarios import GridKind, Scenario, ScenarioSpec, default_grid, normalize_pair
from esd.janelas import EsdWindow, sweep
from interfaces.fontes import AnalyticSource, ConcurrenceSource
from qstate.erros import TangleSimError
from qstate.paralelo import ordered_map

logger = logging.getLogger(__name__)

RESIDUAL_FLOOR: float = -1e-9
FIG2_ALPHA = 1.0 / np.sqrt(10.0)
FIG2_BETA = 3.0 / np.sqrt(10.0)


def write_csv(df: pd.DataFrame, path: str | Path) -> Path:
    """Grava o CSV no dialeto do projeto. OSError sobe para a CLI (código 2)."""
    destino = Path(path)
    df.to_csv(destino, index=False, float_format="%.12g", lineterminator="\n", encoding="utf-8")
    return destino


def _residual_for_csv(valor: float) -> float:
    """Residuais em [−1e-9, 0) aparecem como 0 no CSV."""
    return 0.0 if RESIDUAL_FLOOR <= valor < 0.0 else valor


def simulation_row(source: ConcurrenceSource, spec: ScenarioSpec, x: float) -> dict[str, float]:
    q = source.quantities(spec, float(x))
    foco = "A(BCD)" if spec.scenario.four_partite else "A(BC)"
    residual = "E_ABCD" if spec.scenario.four_partite else "tau_ABC"

    linha: dict[str, float] = {"x": float(x)}
    for coluna in available_columns(spec.scenario):
        if coluna.startswith("C_") and coluna != "C_focus_rest":
            linha[coluna] = q[coluna[2:]]
    linha["C_focus_rest"] = q[foco]
    linha["tau_or_E"] = _residual_for_csv(q[residual])
    for coluna in square_columns(spec.scenario):
        linha[coluna] = linha[coluna.replace("C2_", "C_", 1)] ** 2
    return linha


def _check_finite(df: pd.DataFrame, nome: str) -> None:
    numericos = df.select_dtypes(include="number").to_numpy(dtype=float)
    if not np.all(np.isfinite(numericos)):
        raise TangleSimError(f"{nome}: valores não finitos na saída")


def cmd_simulate(config: RunConfig) -> Path:
    """Um CSV com uma linha por ponto da grade, na ordem da grade."""
    spec = config.scenario_spec()
    source = config.make_source()
    logger.info("simulate %s com fonte %s (%d pontos)", spec.scenario.value, source.name, spec.time_grid.size)

    linhas = ordered_map(lambda x: simulation_row(source, spec, x), spec.time_grid, config.threads)
    df = pd.DataFrame(linhas)

    if config.columns:
        colunas = ["x"] + [c for c in config.columns if c != "x"]
    else:
        colunas = list(available_columns(spec.scenario))
        if config.squares:
            colunas += list(square_columns(spec.scenario))
    df = df[colunas]
    _check_finite(df, "simulate")
    destino = write_csv(df, config.out or f"{spec.scenario.value}.csv")
    print(f"✅ {len(df)} linhas gravadas em {destino}")
    return destino


def _window_cells(prefixo: str, janela: EsdWindow | None) -> dict[str, float | None]:
    if janela is None:
        return {f"{prefixo}_lo": None, f"{prefixo}_hi": None}
    return {f"{prefixo}_lo": janela.lo, f"{prefixo}_hi": janela.hi}


def sweep_frame(config: RunConfig) -> tuple[pd.DataFrame, dict[str, bool]]:
    resultado = sweep(config.resolution, threads=config.threads)
    linhas = []
    for row in resultado.rows:
        linha: dict[str, object] = {"alpha": row.alpha, "beta": row.beta}
        linha.update(_window_cells("ab", row.ab))
        linha.update(_window_cells("ad", row.ad))
        linha.update(_window_cells("simultaneous", row.simultaneous))
        linha["max_E_ABCD"] = row.max_e_abcd
        linha["beta_gt_2alpha"] = int(row.beta_gt_2alpha)
        linha["degenerate"] = int(bool(row.ab and row.ab.degenerate))
        linhas.append(linha)
    return pd.DataFrame(linhas), resultado.monotonic


def cmd_sweep(config: RunConfig) -> Path:
    """Uma linha por α com as janelas AB, AD, simultânea e o máximo de E_ABCD."""
    df, monotonia = sweep_frame(config)
    destino = write_csv(df, config.out or "sweep.csv")
    print(f"✅ {len(df)} linhas gravadas em {destino}")
    for nome, ok in monotonia.items():
        print(f"   largura da janela {nome:<13} não crescente em α: {'✅' if ok else '❌'}")
    return destino


def fig2_frame(points: int, threads: int | None = None) -> pd.DataFrame:
    spec = ScenarioSpec(
        Scenario.JC_ONE_PHOTON,
        FIG2_ALPHA,
        FIG2_BETA,
        time_grid=default_grid(Scenario.JC_ONE_PHOTON, GridKind.GT, points),
    )
    fonte = AnalyticSource()

    def linha(gt: float) -> dict[str, float]:
        q = fonte.quantities(spec, float(gt))
        return {
            "gt": float(gt),
            "C_AB": q["AB"],
            "C_AC": q["AC"],
            "C_A(BC)": q["A(BC)"],
            "C2_AB": q["AB"] ** 2,
            "C2_AC": q["AC"] ** 2,
            "C2_A(BC)": q["A(BC)"] ** 2,
            "tau_ABC": _residual_for_csv(q["tau_ABC"]),
        }

    return pd.DataFrame(ordered_map(linha, spec.time_grid, threads))


def fig4_frame(points: int, beta_exact: float | None = None, threads: int | None = None) -> pd.DataFrame:
    if beta_exact is None:
        alpha, beta = FIG4_ALPHA, float(np.sqrt(1.0 - FIG4_ALPHA**2))
    else:
        a, b = normalize_pair(FIG4_ALPHA, beta_exact)
        alpha, beta = float(a.real), float(b.real)
    spec = ScenarioSpec(
        Scenario.DOUBLE_JC_PHI,
        alpha,
        beta,
        time_grid=default_grid(Scenario.DOUBLE_JC_PHI, GridKind.Z, points),
    )
    fonte = AnalyticSource()

    def linha(z: float) -> dict[str, float]:
        q = fonte.quantities(spec, float(z))
        return {
            "z": float(z),
            "C_A(BCD)": q["A(BCD)"],
            "C_AC": q["AC"],
            "C_AD": q["AD"],
            "C_AB": q["AB"],
            "C2_A(BCD)": q["A(BCD)"] ** 2,
            "C2_AB+C2_AC+C2_AD": q["AB"] ** 2 + q["AC"] ** 2 + q["AD"] ** 2,
            "E_ABCD": _residual_for_csv(q["E_ABCD"]),
        }

    return pd.DataFrame(ordered_map(linha, spec.time_grid, threads))


def cmd_figures(config: RunConfig) -> tuple[Path, Path]:
    """fig2.csv (um fóton, β = 3/√10) e fig4.csv (estado φ, α = 0.429)."""
    pasta = Path(config.out or ".")
    pasta.mkdir(parents=True, exist_ok=True)
    fig2 = fig2_frame(config.points, config.threads)
    fig4 = fig4_frame(config.points, config.beta_exact, config.threads)
    _check_finite(fig2, "fig2")
    _check_finite(fig4, "fig4")
    caminhos = (write_csv(fig2, pasta / "fig2.csv"), write_csv(fig4, pasta / "fig4.csv"))
    for caminho in caminhos:
        print(f"✅ {caminho}")
    return caminhos
