"""
dynamics/banhos.py — Modelos de Banho e Amplitudes (ξ, χ)

Implementa o Open/Closed Principle (OCP):
    Cada banho é um dataclass imutável (SingleMode, Markovian, Comb).
    amplitude_pair despacha pelo tipo; um novo banho entra como nova
    classe e um novo ramo, sem alterar os cenários que consomem (ξ, χ).

Unidades: ħ = 1. Os tempos são adimensionais quando g = 1 (gt) ou γ = 1
(γt), que são os padrões.

Convenções de fase:
    SingleMode  → ξ = cos(gt),     χ = −i·sin(gt)
    Markovian   → ξ = e^{−γt/2},   χ = √(1 − e^{−γt})   (real)
    Comb        → ξ e λ_k numéricos; χ = |χ|·fase(Σ λ_k)
As concorrências dependem só de |ξ| e |χ|.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np
import numpy.typing as npt

from qstate.algebra import CMatrix, herm_eig, kron
from qstate.erros import DimensionError, NormalizationError, TangleSimError
from qstate.estados import SubsystemLayout

logger = logging.getLogger(__name__)

PAIR_NORM_TOL: float = 1e-9


# ─────────────────────────────────────────────
#  Operadores locais (índice 0 = |↑⟩, 1 = |↓⟩)
# ─────────────────────────────────────────────

def sigma_minus() -> CMatrix:
    """σ₋ = |↓⟩⟨↑|."""
    m = np.zeros((2, 2), dtype=np.complex128)
    m[1, 0] = 1.0
    return m


def sigma_plus() -> CMatrix:
    return sigma_minus().T.copy()


def sigma_z() -> CMatrix:
    return np.diag([1.0, -1.0]).astype(np.complex128)


def annihilation(dim: int) -> CMatrix:
    """Operador c truncado em {|0⟩, …, |dim−1⟩}."""
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(np.complex128)


def number(dim: int) -> CMatrix:
    return np.diag(np.arange(dim, dtype=float)).astype(np.complex128)


# ─────────────────────────────────────────────
#  Especificação de banhos
# ─────────────────────────────────────────────

def _positiva(nome: str, valor: float) -> None:
    if not np.isfinite(valor) or valor <= 0.0:
        raise TangleSimError(f"{nome} deve ser positivo; recebido {valor!r}")


@dataclass(frozen=True)
class SingleMode:
    """Um único modo ressonante (Jaynes–Cummings)."""

    g: float = 1.0

    def __post_init__(self) -> None:
        _positiva("g", self.g)


@dataclass(frozen=True)
class Markovian:
    """Reservatório no vácuo, limite de Wigner–Weisskopf (N → ∞)."""

    gamma: float = 1.0

    def __post_init__(self) -> None:
        _positiva("gamma", self.gamma)


@dataclass(frozen=True)
class Comb:
    """
    Pente plano de N modos: acoplamento g igual para todos, espaçamento
    uniforme, centrado na ressonância (com N ímpar um modo é ressonante).
    """

    n_modes: int = 201
    g: float = float(np.sqrt(0.25 / (2.0 * np.pi)))
    spacing: float = 0.25
    center_detuning: float = 0.0

    def __post_init__(self) -> None:
        if int(self.n_modes) < 1:
            raise TangleSimError(f"n_modes deve ser ≥ 1; recebido {self.n_modes}")
        _positiva("g", self.g)
        _positiva("spacing", self.spacing)

    @classmethod
    def from_markov_rate(cls, gamma: float, n_modes: int = 201, spacing: float = 0.25) -> "Comb":
        """Escolhe g pela regra de ouro de Fermi: γ = 2π·g²/Δ."""
        _positiva("gamma", gamma)
        return cls(n_modes=n_modes, g=float(np.sqrt(gamma * spacing / (2.0 * np.pi))), spacing=spacing)

    def detunings(self) -> npt.NDArray[np.float64]:
        k = np.arange(self.n_modes, dtype=float)
        return self.center_detuning + (k - (self.n_modes - 1) / 2.0) * self.spacing

    def markov_rate(self) -> float:
        return 2.0 * np.pi * self.g**2 / self.spacing

    def recurrence_time(self) -> float:
        return 2.0 * np.pi / self.spacing


BathSpec = Union[SingleMode, Markovian, Comb]


# ─────────────────────────────────────────────
#  Amplitudes (ξ, χ)
# ─────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class AmplitudePair:
    """Sobrevivência ξ e transferência coletiva χ de uma excitação."""

    xi: complex
    chi: complex
    bath_amplitudes: npt.NDArray[np.complex128] | None = None

    def __post_init__(self) -> None:
        norma = abs(self.xi) ** 2 + abs(self.chi) ** 2
        if abs(norma - 1.0) > PAIR_NORM_TOL:
            raise NormalizationError(f"|ξ|² + |χ|² = {norma:.12f}")
        if self.bath_amplitudes is not None:
            soma = float(np.sum(np.abs(self.bath_amplitudes) ** 2))
            if abs(soma - abs(self.chi) ** 2) > PAIR_NORM_TOL:
                raise NormalizationError(f"Σ|λ_k|² = {soma:.12f} ≠ |χ|² = {abs(self.chi)**2:.12f}")

    @property
    def z(self) -> float:
        return float(abs(self.chi))

    @classmethod
    def from_z(cls, z: float, chi_phase: complex = 1.0) -> "AmplitudePair":
        """Par com |χ| = z, ξ = √(1 − z²) real e χ = fase·z."""
        if not 0.0 <= z <= 1.0:
            raise TangleSimError(f"z = {z} fora de [0, 1]")
        return cls(xi=complex(np.sqrt(max(0.0, 1.0 - z * z))), chi=complex(chi_phase) * z)


def chi_phase(bath: BathSpec) -> complex:
    """Fase de χ adotada por cada banho (usada nas grades em z)."""
    if isinstance(bath, Markovian):
        return 1.0 + 0.0j
    return -1j


@lru_cache(maxsize=16)
def _comb_spectrum(bath: Comb) -> tuple[npt.NDArray[np.float64], CMatrix]:
    """Autodecomposição do hamiltoniano estrela de uma excitação (referencial girante)."""
    n = bath.n_modes
    estrela = np.zeros((n + 1, n + 1), dtype=np.complex128)
    estrela[0, 1:] = bath.g
    estrela[1:, 0] = bath.g
    estrela[np.arange(1, n + 1), np.arange(1, n + 1)] = bath.detunings()
    autovalores, autovetores = herm_eig(estrela)
    logger.debug("pente N=%d diagonalizado (γ_Fermi = %.6f)", n, bath.markov_rate())
    return autovalores, autovetores


def _comb_pair(t: float, bath: Comb) -> AmplitudePair:
    autovalores, autovetores = _comb_spectrum(bath)
    amplitudes = autovetores @ (np.exp(-1j * t * autovalores) * autovetores[0, :].conj())
    xi = complex(amplitudes[0])
    lambdas = amplitudes[1:]
    modulo = float(np.sqrt(np.sum(np.abs(lambdas) ** 2)))
    soma = complex(np.sum(lambdas))
    fase = soma / abs(soma) if abs(soma) > 1e-300 else -1j
    return AmplitudePair(xi=xi, chi=fase * modulo, bath_amplitudes=lambdas)


def amplitude_pair(t: float, bath: BathSpec) -> AmplitudePair:
    """(ξ(t), χ(t)) para o banho dado, t ≥ 0."""
    if t < 0:
        raise TangleSimError(f"tempo negativo: t = {t}")
    if isinstance(bath, SingleMode):
        return AmplitudePair(xi=complex(np.cos(bath.g * t)), chi=-1j * np.sin(bath.g * t))
    if isinstance(bath, Markovian):
        decaimento = np.exp(-bath.gamma * t)
        return AmplitudePair(xi=complex(np.sqrt(decaimento)), chi=complex(np.sqrt(1.0 - decaimento)))
    if isinstance(bath, Comb):
        return _comb_pair(float(t), bath)
    raise TypeError(f"banho desconhecido: {bath!r}")


def amplitude_pairs(ts: Iterable[float], bath: BathSpec) -> list[AmplitudePair]:
    return [amplitude_pair(float(t), bath) for t in ts]


# ─────────────────────────────────────────────
#  Hamiltonianos
# ─────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class Hamiltonian:
    """
    Matriz hermitiana com a base em que foi escrita.

    layout é None no setor de uma excitação do pente, que não é um
    produto tensorial.
    """

    matrix: CMatrix
    basis: tuple[str, ...]
    excitations: CMatrix
    layout: SubsystemLayout | None = None


def build_hamiltonian(
    bath: BathSpec,
    cavity_truncation: int,
    initial_photons: int = 0,
    omega_a: float = 0.0,
) -> Hamiltonian:
    """
    SingleMode: g(c†σ₋ + cσ₊) (+ ω_A(σ_z/2 + c†c) se ω_A ≠ 0) em átomo ⊗ cavidade.
    Comb: setor {|↓,vac⟩, |↑,vac⟩, |↓,1_k⟩} de dimensão N + 2.
    """
    if cavity_truncation < 2:
        raise DimensionError(f"truncamento {cavity_truncation} < 2")
    if cavity_truncation < initial_photons + 2:
        raise DimensionError(
            f"truncamento {cavity_truncation} pequeno para {initial_photons} fóton(s) inicial(is); "
            f"mínimo {initial_photons + 2}"
        )

    if isinstance(bath, SingleMode):
        d = cavity_truncation
        c = annihilation(d)
        i_a, i_c = np.eye(2), np.eye(d)
        h = bath.g * (kron(sigma_minus(), c.conj().T) + kron(sigma_plus(), c))
        if omega_a:
            h = h + omega_a * (kron(sigma_z() / 2.0, i_c) + kron(i_a, number(d)))
        excitacoes = kron(sigma_plus() @ sigma_minus(), i_c) + kron(i_a, number(d))
        base = tuple(f"{s},{n}" for s in ("↑", "↓") for n in range(d))
        return Hamiltonian(h, base, excitacoes, SubsystemLayout.of(A=2, C=d))

    if isinstance(bath, Comb):
        if initial_photons > 0:
            raise DimensionError("o pente só é modelado no setor de zero/uma excitação")
        n = bath.n_modes
        h = np.zeros((n + 2, n + 2), dtype=np.complex128)
        h[0, 0] = -omega_a / 2.0
        h[1, 1] = omega_a / 2.0
        indices = np.arange(2, n + 2)
        h[indices, indices] = omega_a / 2.0 + bath.detunings()
        h[1, 2:] = bath.g
        h[2:, 1] = bath.g
        excitacoes = np.diag([0.0] + [1.0] * (n + 1)).astype(np.complex128)
        base = ("↓,vac", "↑,vac") + tuple(f"↓,1_{k}" for k in range(1, n + 1))
        return Hamiltonian(h, base, excitacoes)

    if isinstance(bath, Markovian):
        raise TangleSimError("banho markoviano não tem hamiltoniano finito; use Comb")
    raise TypeError(f"banho desconhecido: {bath!r}")
