"""
measures/concorrencia.py — Concorrência de Wootters e Emaranhamento Residual

Implementa o Single Responsibility Principle (SRP):
    Este módulo quantifica emaranhamento a partir de estados já prontos.
    Não sabe nada de hamiltonianos nem de banhos; recebe StateVector ou
    DensityMatrix de qstate/ e devolve números.

Quantificadores:
    - concurrence_two_qubit: fórmula de Wootters via matriz τ = Wᵀ(σ_y⊗σ_y)W
    - concurrence_pure_bipartition: 2√det ρ_A para um qubit contra o resto
    - pair_concurrence: Wootters em 2⊗2, convex roof numérico em 2⊗3
    - residual_tangle / residual_excess: excesso CKW com 3 e 4 partes
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from measures.convex_roof import roof_concurrence_rank2
from qstate.algebra import CLAMP_TOL, EigMethod, herm_eig
from qstate.erros import DimensionError
from qstate.estados import DensityMatrix, StateVector, reduced_density

logger = logging.getLogger(__name__)

SIGMA_Y = np.array([[0.0, -1j], [1j, 0.0]], dtype=np.complex128)
SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y).real
RANK_CUTOFF: float = 1e-13


@dataclass(frozen=True)
class WoottersSpectrum:
    """λ_i em ordem decrescente (já truncados em zero) e a concorrência."""

    lambdas: tuple[float, float, float, float]
    concurrence: float


@dataclass(frozen=True)
class TangleReport:
    """
    Balanço CKW de um foco contra o resto do sistema.

    pair_concurrences é indexado pelos rótulos do par na ordem do layout
    ("AB", "AC", ...). residual = c_focus_rest² − Σ pares².
    """

    focus: str
    c_focus_rest: float
    pair_concurrences: Mapping[str, float] = field(default_factory=dict)
    residual: float = 0.0

    @property
    def rest_label(self) -> str:
        outros = sorted({r for par in self.pair_concurrences for r in par} - {self.focus})
        return f"{self.focus}({''.join(outros)})"

    def pair_squares_sum(self) -> float:
        return float(sum(c**2 for c in self.pair_concurrences.values()))


def concurrence_two_qubit(rho: DensityMatrix, method: EigMethod = "lapack") -> WoottersSpectrum:
    """
    Concorrência de Wootters de um estado de dois qubits.

    Com ρ = W·W† (colunas de W = autovetores subnormalizados √p_i|v_i⟩),
    os √λ_i são os valores singulares de τ = Wᵀ(σ_y⊗σ_y)W. Autovalores de ρ
    abaixo de RANK_CUTOFF saem de W, então estados de posto baixo não
    carregam ruído de arredondamento para os √λ_i.
    """
    if rho.layout.dims != (2, 2):
        raise DimensionError(f"Wootters exige dois qubits; layout = {rho.layout.parts}")

    pesos, vetores = herm_eig(rho.matrix, method=method)
    menor = float(pesos[0])
    if menor < -CLAMP_TOL:
        logger.warning("autovalor %.3e de ρ truncado para zero", menor)
    suporte = pesos > RANK_CUTOFF
    w = vetores[:, suporte] * np.sqrt(pesos[suporte])

    valores_singulares = np.linalg.svd(w.T @ SPIN_FLIP @ w, compute_uv=False)
    raizes = np.zeros(4)
    raizes[: valores_singulares.size] = np.sort(valores_singulares)[::-1]
    lambdas = raizes**2

    c = max(0.0, float(raizes[0] - raizes[1] - raizes[2] - raizes[3]))
    return WoottersSpectrum(tuple(float(x) for x in lambdas), min(c, 1.0))


def concurrence_pure_bipartition(psi: StateVector, side_a: Sequence[str] | str) -> float:
    """C = 2√det ρ_A, com ρ_A 2×2 (um único qubit contra o resto)."""
    lado = (side_a,) if isinstance(side_a, str) else tuple(side_a)
    rho_a = reduced_density(psi, lado)
    if rho_a.layout.dim != 2:
        raise DimensionError(
            f"bipartição pura exige lado de dimensão 2; {lado} tem dimensão {rho_a.layout.dim}"
        )
    m = rho_a.matrix
    det = float(np.real(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]))
    return 2.0 * float(np.sqrt(max(det, 0.0)))


def pair_label(psi_labels: Sequence[str], pair: Sequence[str]) -> str:
    """Rótulo do par na ordem do layout: ("C", "A") → "AC"."""
    return "".join(r for r in psi_labels if r in pair)


def pair_concurrence(
    psi: StateVector,
    pair: Sequence[str],
    *,
    roof_states: int = 2,
    roof_grid: int = 32,
    roof_restarts: int = 0,
    seed: int = 0,
) -> float:
    """
    Concorrência do estado reduzido de um par.

    Em 2⊗2 usa Wootters; se um dos lados é um qutrit (cavidade com até
    dois fótons) o valor vem do convex roof de posto 2 com a concorrência
    pura bipartida.
    """
    if len(pair) != 2:
        raise DimensionError(f"par inválido: {pair}")
    rho = reduced_density(psi, pair)
    if rho.layout.dims == (2, 2):
        return concurrence_two_qubit(rho).concurrence

    qubits = [r for r, d in rho.layout.parts if d == 2]
    if not qubits:
        raise DimensionError(f"par {rho.layout.parts} sem nenhum qubit")
    resultado = roof_concurrence_rank2(
        rho,
        (qubits[0],),
        n_states=roof_states,
        grid=roof_grid,
        restarts=roof_restarts,
        seed=seed,
    )
    return resultado.value


def _ckw_report(
    psi: StateVector,
    focus: str,
    others: Sequence[str],
    n_others: int,
    roof_kw: dict,
) -> TangleReport:
    others = tuple(others)
    if len(others) != n_others or focus in others or len(set(others)) != n_others:
        raise DimensionError(f"esperados {n_others} rótulos distintos do foco; recebido {others}")
    if set(psi.layout.labels) != {focus, *others}:
        raise DimensionError(
            f"layout {psi.layout.labels} não corresponde a foco {focus!r} + {others}"
        )

    c_resto = concurrence_pure_bipartition(psi, (focus,))
    pares = {
        pair_label(psi.layout.labels, (focus, o)): pair_concurrence(psi, (focus, o), **roof_kw)
        for o in others
    }
    residual = c_resto**2 - sum(c**2 for c in pares.values())
    logger.debug("CKW foco %s: C_rest=%.12f pares=%s residual=%.3e", focus, c_resto, pares, residual)
    return TangleReport(focus=focus, c_focus_rest=c_resto, pair_concurrences=pares, residual=residual)


def residual_tangle(psi: StateVector, focus: str, others: Sequence[str], **roof_kw) -> TangleReport:
    """τ = C²_{foco(o1 o2)} − C²_{foco,o1} − C²_{foco,o2} para três partes."""
    return _ckw_report(psi, focus, others, 2, roof_kw)


def residual_excess(psi: StateVector, focus: str, others: Sequence[str], **roof_kw) -> TangleReport:
    """E = C²_{foco(resto)} − Σ C²_{foco,x} para quatro qubits efetivos."""
    return _ckw_report(psi, focus, others, 3, roof_kw)
