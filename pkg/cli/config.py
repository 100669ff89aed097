"""
cli/config.py — Configuração de Execução

Precedência (da menor para a maior):
    padrões embutidos → arquivo --config (linhas key=value) → flags da CLI

As chaves do arquivo espelham as flags, com "_" no lugar de "-".
Qualquer valor inválido levanta ConfigError com o nome do campo.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field, fields
from enum import Enum
from pathlib import Path

import numpy as np

from dynamics.banhos import BathSpec, Comb, Markovian, SingleMode
from dynamics.cenarios import DEFAULT_POINTS, GridKind, Scenario, ScenarioSpec, default_grid, normalize_pair
from interfaces.fontes import ConcurrenceSource, make_source
from qstate.erros import TangleSimError

logger = logging.getLogger(__name__)

FIG4_ALPHA = 0.429
ALPHA_JC = 1.0 / np.sqrt(10.0)


class ConfigError(TangleSimError):
    """Configuração inválida; `field` nomeia o campo problemático."""

    def __init__(self, field_name: str, message: str) -> None:
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


def available_columns(scenario: Scenario) -> tuple[str, ...]:
    """Colunas base do CSV de simulate (sem os quadrados)."""
    return ("x",) + tuple(f"C_{p}" for p in scenario.pairs) + ("C_focus_rest", "tau_or_E")


def square_columns(scenario: Scenario) -> tuple[str, ...]:
    return tuple(c.replace("C_", "C2_", 1) for c in available_columns(scenario) if c.startswith("C_"))


def _bool(texto: str) -> bool:
    chave = str(texto).strip().lower()
    if chave in ("1", "true", "yes", "on", "sim"):
        return True
    if chave in ("0", "false", "no", "off", "nao", "não"):
        return False
    raise ValueError(f"valor booleano inválido: {texto!r}")


def _lista(texto: str | tuple | list) -> tuple[str, ...]:
    if isinstance(texto, (tuple, list)):
        return tuple(str(t).strip() for t in texto if str(t).strip())
    return tuple(t.strip() for t in str(texto).split(",") if t.strip())


def _escolha(*opcoes: str) -> Callable[[str], str]:
    def conversor(texto: str) -> str:
        valor = str(texto).strip().lower()
        if valor not in opcoes:
            raise ValueError(f"use um de {opcoes}")
        return valor
    return conversor


CONVERSORES: dict[str, Callable] = {
    "scenario": Scenario.parse,
    "alpha": float,
    "beta": float,
    "beta_exact": float,
    "grid": lambda t: GridKind(str(t).strip().lower()),
    "points": int,
    "bath": _escolha("single", "markov", "comb"),
    "gamma": float,
    "g": float,
    "modes": int,
    "spacing": float,
    "out": str,
    "columns": _lista,
    "squares": _bool,
    "source": _escolha("analytic", "measured"),
    "roof": _bool,
    "roof_restarts": int,
    "seed": int,
    "perturb": float,
    "suite": _lista,
    "resolution": int,
    "threads": int,
}


@dataclass
class RunConfig:
    """Tudo o que um subcomando precisa; seed fixa garante saídas idênticas."""

    command: str = "simulate"
    scenario: Scenario = Scenario.JC_VACUUM
    alpha: float | None = None
    beta: float | None = None
    beta_exact: float | None = None
    grid: GridKind | None = None
    points: int = DEFAULT_POINTS
    bath: str = "single"
    gamma: float = 1.0
    g: float = 1.0
    modes: int = 201
    spacing: float = 0.25
    out: str | None = None
    columns: tuple[str, ...] = ()
    squares: bool = False
    source: str = "analytic"
    roof: bool = False
    roof_restarts: int = 0
    seed: int = 0
    perturb: float = 0.0
    suite: tuple[str, ...] = ()
    resolution: int = 101
    threads: int | None = None
    resolved_pair: tuple[float, float] = field(default=(0.0, 0.0), init=False, repr=False)

    def __post_init__(self) -> None:
        if self.points < 2:
            raise ConfigError("points", "a grade precisa de ao menos 2 pontos")
        if self.resolution < 2:
            raise ConfigError("resolution", "a varredura precisa de ao menos 2 linhas")
        for nome in ("gamma", "g", "spacing"):
            if getattr(self, nome) <= 0.0:
                raise ConfigError(nome, "deve ser positivo")
        if self.modes < 1:
            raise ConfigError("modes", "deve ser ≥ 1")
        if self.roof_restarts < 0:
            raise ConfigError("roof_restarts", "deve ser ≥ 0")
        if self.perturb < 0.0:
            raise ConfigError("perturb", "deve ser ≥ 0")
        if self.threads is not None and self.threads < 1:
            raise ConfigError("threads", "deve ser ≥ 1")

        self.resolved_pair = self._resolve_pair()

        disponiveis = set(available_columns(self.scenario)) | set(square_columns(self.scenario))
        desconhecidas = [c for c in self.columns if c not in disponiveis]
        if desconhecidas:
            raise ConfigError("columns", f"indisponíveis para {self.scenario.value}: {desconhecidas}")

        if self.grid is GridKind.Z and not self.scenario.four_partite:
            raise ConfigError("grid", f"{self.scenario.value} exige grade gt")
        if self.bath != "single" and not self.scenario.four_partite and self.command == "simulate":
            raise ConfigError("bath", f"{self.scenario.value} usa apenas o modo único")

    def _resolve_pair(self) -> tuple[float, float]:
        if self.beta_exact is not None:
            a = FIG4_ALPHA if self.alpha is None else self.alpha
            alpha, beta = normalize_pair(a, self.beta_exact)
            return float(alpha.real), float(beta.real)

        padrao_alpha = FIG4_ALPHA if self.scenario.four_partite else ALPHA_JC
        a, b = self.alpha, self.beta
        if a is None and b is None:
            a = padrao_alpha
        if a is not None and not 0.0 <= abs(a) <= 1.0:
            raise ConfigError("alpha", f"|α| = {abs(a)} > 1")
        if b is not None and not 0.0 <= abs(b) <= 1.0:
            raise ConfigError("beta", f"|β| = {abs(b)} > 1")
        if b is None:
            b = float(np.sqrt(1.0 - a * a))
        elif a is None:
            a = float(np.sqrt(1.0 - b * b))
        elif abs(a * a + b * b - 1.0) > 1e-10:
            raise ConfigError("beta", f"|α|² + |β|² = {a * a + b * b:.12f} ≠ 1 (use --beta-exact)")
        return float(a), float(b)

    @property
    def roof_states(self) -> int:
        return 4 if self.roof else 2

    def bath_spec(self) -> BathSpec:
        if self.bath == "markov":
            return Markovian(self.gamma)
        if self.bath == "comb":
            return Comb.from_markov_rate(self.gamma, n_modes=self.modes, spacing=self.spacing)
        return SingleMode(self.g)

    def scenario_spec(self) -> ScenarioSpec:
        alpha, beta = self.resolved_pair
        tipo = self.grid or (GridKind.Z if self.scenario.four_partite else GridKind.GT)
        try:
            return ScenarioSpec(
                self.scenario,
                alpha,
                beta,
                bath=self.bath_spec(),
                time_grid=default_grid(self.scenario, tipo, self.points),
                grid_kind=tipo,
            )
        except TangleSimError as exc:
            raise ConfigError("scenario", str(exc)) from exc

    def make_source(self) -> ConcurrenceSource:
        nome = self.source
        if nome == "analytic" and not self.scenario.has_closed_forms:
            logger.info("%s não tem forma fechada; usando a fonte medida", self.scenario.value)
            nome = "measured"
        if nome == "analytic":
            return make_source("analytic")
        return make_source(
            "measured",
            roof_states=self.roof_states,
            roof_restarts=self.roof_restarts,
            perturb=self.perturb,
            seed=self.seed,
        )


CONFIG_KEYS = tuple(f.name for f in fields(RunConfig) if f.init and f.name != "command")


def load_config_file(path: str | Path) -> dict[str, str]:
    """Lê um arquivo plano key=value; '#' inicia comentário."""
    valores: dict[str, str] = {}
    try:
        linhas = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ConfigError("config", f"não foi possível ler {path}: {exc}") from exc
    for numero, linha in enumerate(linhas, start=1):
        conteudo = linha.split("#", 1)[0].strip()
        if not conteudo:
            continue
        if "=" not in conteudo:
            raise ConfigError("config", f"linha {numero} sem '=': {linha!r}")
        chave, valor = (p.strip() for p in conteudo.split("=", 1))
        chave = chave.replace("-", "_")
        if chave not in CONFIG_KEYS:
            raise ConfigError(chave, "chave desconhecida")
        valores[chave] = valor
    return valores


def build_config(
    command: str,
    file_values: Mapping[str, object] | None = None,
    overrides: Mapping[str, object] | None = None,
) -> RunConfig:
    """Mescla arquivo e flags (valores None nas flags são ignorados)."""
    bruto: dict[str, object] = dict(file_values or {})
    bruto.update({k: v for k, v in (overrides or {}).items() if v is not None})

    convertidos: dict[str, object] = {}
    for chave, valor in bruto.items():
        if chave not in CONVERSORES:
            raise ConfigError(chave, "chave desconhecida")
        if isinstance(valor, Enum):
            convertidos[chave] = valor
            continue
        try:
            convertidos[chave] = CONVERSORES[chave](valor)
        except (ValueError, TypeError) as exc:
            raise ConfigError(chave, str(exc)) from exc

    return RunConfig(command=command, **convertidos)
