"""
measures/convex_roof.py — Oráculo Numérico de Convex Roof (posto 2)

Minimiza Σ p_i·C(ψ_i) sobre decomposições puras de um operador densidade
de posto ≤ 2. A concorrência pura usada é a forma bipartida
C(ψ) = √(2(1 − tr ρ_r²)), válida para qualquer dimensão (qubit ⊗ qutrit
incluso).

Busca em duas etapas, determinística por padrão:
    1. Grade densa nos 3 ângulos da mistura unitária 2×2 do suporte
       (θ inclui 0, π/4 e π/2 exatamente).
    2. Refinamento local Nelder–Mead (scipy) a partir dos melhores pontos
       da grade; reinícios aleatórios opcionais (semente fixa).

Com n_states = 4 a busca percorre isometrias 4×2, alcançando o roof
completo de estados de posto 2.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy.optimize import minimize

from qstate.algebra import herm_eig
from qstate.erros import DimensionError, RankError
from qstate.estados import DensityMatrix, StateVector

logger = logging.getLogger(__name__)

RANK_TOL: float = 1e-8


@dataclass(frozen=True)
class RoofResult:
    """Valor do roof e a decomposição que o atinge."""

    value: float
    weights: tuple[float, ...]
    states: tuple[StateVector, ...]
    eigen_average: float
    evaluations: int


def weighted_pure_concurrence(m: npt.NDArray[np.complex128]) -> npt.NDArray[np.float64]:
    """
    p·C(ψ/√p) para vetores não normalizados já em forma matricial.

    m tem formato (..., d_lado, d_resto). Usa p·C = √(2(p² − tr R²)),
    com R = m·m† e p = tr R.
    """
    if m.shape[-2] > m.shape[-1]:
        m = np.swapaxes(m, -1, -2)
    r = m @ np.conj(np.swapaxes(m, -1, -2))
    p = np.real(np.trace(r, axis1=-2, axis2=-1))
    tr_r2 = np.sum(np.abs(r) ** 2, axis=(-2, -1))
    return np.sqrt(np.clip(2.0 * (p**2 - tr_r2), 0.0, None))


def _mixing_2x2(theta, phi1, phi2) -> npt.NDArray[np.complex128]:
    """Unitária 2×2 (linhas = elementos da decomposição), vetorizada."""
    theta, phi1, phi2 = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (theta, phi1, phi2)))
    c, s = np.cos(theta), np.sin(theta)
    u = np.empty(theta.shape + (2, 2), dtype=np.complex128)
    u[..., 0, 0] = c
    u[..., 0, 1] = np.exp(1j * phi1) * s
    u[..., 1, 0] = -np.exp(1j * phi2) * s
    u[..., 1, 1] = np.exp(1j * (phi1 + phi2)) * c
    return u


def _isometry(params: npt.NDArray[np.float64], n_states: int) -> npt.NDArray[np.complex128]:
    z = params[: 2 * n_states].reshape(n_states, 2) + 1j * params[2 * n_states :].reshape(n_states, 2)
    q, _ = np.linalg.qr(z)
    return q


def _roof_sum(u: npt.NDArray[np.complex128], support: npt.NDArray[np.complex128]) -> npt.NDArray[np.float64]:
    """Σ_i p_i·C_i para misturas u (..., n, 2) do suporte (2, d_lado, d_resto)."""
    estados = np.einsum("...ij,jab->...iab", u, support)
    return weighted_pure_concurrence(estados).sum(axis=-1)


def roof_concurrence_rank2(
    rho: DensityMatrix,
    bipartition: Iterable[str],
    *,
    n_states: int = 2,
    grid: int = 32,
    restarts: int = 0,
    seed: int = 0,
    refine_from: int = 3,
) -> RoofResult:
    """
    Convex roof da concorrência bipartida para ρ de posto ≤ 2.

    O valor retornado nunca excede a média da autodecomposição, pois
    θ = 0 pertence à grade.
    """
    layout = rho.layout
    lado = tuple(r for r in layout.labels if r in set(bipartition))
    resto = tuple(r for r in layout.labels if r not in lado)
    if not lado or not resto:
        raise DimensionError(f"bipartição inválida {set(bipartition)} para {layout.labels}")
    if n_states not in (2, 4):
        raise ValueError("n_states deve ser 2 ou 4")

    autovalores, autovetores = herm_eig(rho.matrix)
    autovalores, autovetores = autovalores[::-1], autovetores[:, ::-1]
    if autovalores.size > 2 and autovalores[2] >= RANK_TOL:
        raise RankError(f"posto > 2: terceiro autovalor {autovalores[2]:.3e}")

    pesos = np.sqrt(np.clip(autovalores[:2], 0.0, None))
    vetores = (autovetores[:, :2] * pesos).T
    eixos = [layout.index(r) for r in lado + resto]
    d_lado = layout.dim_of(lado)
    suporte = np.stack(
        [v.reshape(layout.dims).transpose(eixos).reshape(d_lado, -1) for v in vetores]
    )

    thetas = np.linspace(0.0, np.pi / 2, grid + 1)
    fases = 2.0 * np.pi * np.arange(grid) / grid
    tt, f1, f2 = np.meshgrid(thetas, fases, fases, indexing="ij")
    valores = _roof_sum(_mixing_2x2(tt, f1, f2), suporte)
    avaliacoes = valores.size
    media_auto = float(valores[0, 0, 0])

    def objetivo2(x: npt.NDArray[np.float64]) -> float:
        return float(_roof_sum(_mixing_2x2(*x), suporte))

    ordem = np.argsort(valores, axis=None, kind="stable")[:refine_from]
    candidatos: list[tuple[float, npt.NDArray[np.complex128]]] = []
    for plano in ordem:
        i, j, k = np.unravel_index(plano, valores.shape)
        x0 = np.array([thetas[i], fases[j], fases[k]])
        candidatos.append((float(valores[i, j, k]), _mixing_2x2(*x0)))
        res = minimize(objetivo2, x0, method="Nelder-Mead",
                       options={"xatol": 1e-7, "fatol": 1e-13, "maxiter": 4000})
        avaliacoes += int(res.nfev)
        candidatos.append((float(res.fun), _mixing_2x2(*res.x)))

    rng = np.random.default_rng(seed)
    for _ in range(restarts):
        x0 = rng.uniform([0.0, 0.0, 0.0], [np.pi / 2, 2 * np.pi, 2 * np.pi])
        res = minimize(objetivo2, x0, method="Nelder-Mead",
                       options={"xatol": 1e-7, "fatol": 1e-13, "maxiter": 4000})
        avaliacoes += int(res.nfev)
        candidatos.append((float(res.fun), _mixing_2x2(*res.x)))

    melhor_valor, melhor_u = min(candidatos, key=lambda c: c[0])

    if n_states == 4:
        def objetivo4(x: npt.NDArray[np.float64]) -> float:
            return float(_roof_sum(_isometry(x, 4), suporte))

        partida = np.vstack([melhor_u, melhor_u]) / np.sqrt(2.0)
        inicios = [np.concatenate([partida.real.ravel(), partida.imag.ravel()])]
        inicios += [rng.normal(size=16) for _ in range(max(restarts, 2))]
        for x0 in inicios:
            res = minimize(objetivo4, x0, method="Nelder-Mead",
                           options={"xatol": 1e-8, "fatol": 1e-13, "maxiter": 20000, "adaptive": True})
            avaliacoes += int(res.nfev)
            if res.fun < melhor_valor:
                melhor_valor, melhor_u = float(res.fun), _isometry(res.x, 4)

    misturados = melhor_u @ vetores
    normas = np.sum(np.abs(misturados) ** 2, axis=1)
    estados = tuple(
        StateVector(v / np.sqrt(n), layout) for v, n in zip(misturados, normas) if n > 1e-14
    )
    logger.debug("roof %s|%s = %.9f (autodecomposição %.9f, %d avaliações)",
                 "".join(lado), "".join(resto), melhor_valor, media_auto, avaliacoes)
    return RoofResult(
        value=float(melhor_valor),
        weights=tuple(float(n) for n in normas if n > 1e-14),
        states=estados,
        eigen_average=media_auto,
        evaluations=avaliacoes,
    )
