"""
interfaces/fontes.py — Fontes de Concorrência (Protocolo + Implementações)

Implementa o Interface Segregation Principle (ISP) e o
Dependency Inversion Principle (DIP) do SOLID.

A CLI depende apenas de ConcurrenceSource, nunca dos módulos concretos:
    - AnalyticSource: formas fechadas de dynamics/cenarios.py
    - MeasuredSource: estado evoluído + quantificadores de measures/
Isso permite trocar o caminho analítico pelo numérico (ou compará-los)
sem tocar na escrita dos CSVs.

Ambas devolvem um mapa com as mesmas chaves ("AB", "A(BC)", "tau_ABC",
"E_ABCD", "sumrule", ...).
"""

from __future__ import annotations

import logging
from typing import Protocol, runtime_checkable

import numpy as np

from dynamics.cenarios import Scenario, ScenarioSpec, closed_form_concurrences, collective_pair, scenario_state
from measures.concorrencia import (
    concurrence_pure_bipartition,
    pair_concurrence,
    residual_excess,
    residual_tangle,
)
from qstate.estados import StateVector

logger = logging.getLogger(__name__)


@runtime_checkable
class ConcurrenceSource(Protocol):
    """
    Fonte de valores de emaranhamento para um cenário.
    Cada ponto da grade é avaliado de forma independente.
    """

    name: str

    def quantities(self, spec: ScenarioSpec, x: float) -> dict[str, float]:
        """Concorrências, foco contra o resto e residual no ponto x."""
        ...


def perturb_state(psi: StateVector, eps: float, rng: np.random.Generator) -> StateVector:
    """Injeta ruído de amplitude ε e renormaliza (autoteste de falhas)."""
    ruido = rng.normal(size=psi.layout.dim) + 1j * rng.normal(size=psi.layout.dim)
    return StateVector(psi.amplitudes + eps * ruido, psi.layout).normalized()


def point_rng(seed: int, x: float) -> np.random.Generator:
    """Gerador determinístico por (semente, ponto da grade)."""
    return np.random.default_rng([int(seed), int(round(abs(x) * 1e9))])


class AnalyticSource:
    """Formas fechadas; vazio para cenários sem forma fechada."""

    name = "analytic"

    def quantities(self, spec: ScenarioSpec, x: float) -> dict[str, float]:
        return closed_form_concurrences(spec, x)


class MeasuredSource:
    """
    Mede o estado evoluído: Wootters nos pares 2⊗2, convex roof nos pares
    com a cavidade de três níveis, 2√det ρ para foco contra o resto.
    """

    name = "measured"

    def __init__(
        self,
        roof_states: int = 2,
        roof_restarts: int = 0,
        perturb: float = 0.0,
        seed: int = 0,
    ) -> None:
        self.roof_kw = {"roof_states": roof_states, "roof_restarts": roof_restarts, "seed": seed}
        self.perturb = perturb
        self.seed = seed

    def state(self, spec: ScenarioSpec, x: float) -> StateVector:
        psi = scenario_state(spec, x)
        if self.perturb > 0.0:
            psi = perturb_state(psi, self.perturb, point_rng(self.seed, x))
        return psi

    def quantities(self, spec: ScenarioSpec, x: float) -> dict[str, float]:
        psi = self.state(spec, x)
        if spec.scenario.four_partite:
            return self._four_partite(spec, x, psi)
        return self._tripartite(spec, psi)

    def _tripartite(self, spec: ScenarioSpec, psi: StateVector) -> dict[str, float]:
        foco_a = residual_tangle(psi, "A", ("B", "C"), **self.roof_kw)
        valores = dict(foco_a.pair_concurrences)
        if "BC" in spec.scenario.pairs:
            valores["BC"] = pair_concurrence(psi, ("B", "C"), **self.roof_kw)
        valores["A(BC)"] = foco_a.c_focus_rest
        valores["B(AC)"] = concurrence_pure_bipartition(psi, ("B",))
        valores["tau_ABC"] = foco_a.residual
        if spec.scenario is Scenario.JC_VACUUM:
            valores["sumrule"] = valores["AB"] ** 2 + valores["BC"] ** 2
        return valores

    def _four_partite(self, spec: ScenarioSpec, x: float, psi: StateVector) -> dict[str, float]:
        foco_a = residual_excess(psi, "A", ("B", "C", "D"), **self.roof_kw)
        valores = dict(foco_a.pair_concurrences)
        for par in (("B", "C"), ("B", "D"), ("C", "D")):
            valores["".join(par)] = pair_concurrence(psi, par, **self.roof_kw)
        valores["A(BCD)"] = foco_a.c_focus_rest
        valores["B(ACD)"] = concurrence_pure_bipartition(psi, ("B",))
        valores["E_ABCD"] = foco_a.residual
        if spec.scenario is Scenario.DOUBLE_JC_PSI:
            valores["sumrule"] = valores["AB"] ** 2 + valores["AC"] ** 2 + valores["AD"] ** 2
        else:
            xi = abs(collective_pair(x, spec.bath, spec.grid_kind).xi)
            valores["sumrule"] = valores["AC"] ** 2 + spec.c0**2 * xi**2
        return valores


def make_source(name: str, **kwargs) -> ConcurrenceSource:
    if name == "analytic":
        return AnalyticSource()
    if name == "measured":
        return MeasuredSource(**kwargs)
    raise ValueError(f"fonte desconhecida: {name!r} (use 'analytic' ou 'measured')")
