"""
dynamics/cenarios.py — Cenários Analíticos e Formas Fechadas

Quatro cenários com estado evoluído em forma fechada:
    1. jc-vacuum      — átomos AB, A acoplado a uma cavidade C no vácuo
    2. jc-one-photon  — idem, cavidade com um fóton (C é um qutrit)
    3. double-jc-psi  — dois Jaynes–Cummings (AC e BD), átomos em |AB⟩_ψ
    4. double-jc-phi  — idem, átomos em |AB⟩_φ = β|↑↑⟩ + α|↓↓⟩

Mais dois cenários sem forma fechada (jc-vacuum-phi, jc-one-photon-phi),
cujos estados vêm do oráculo numérico em dynamics/oraculo.py.

Nos cenários 3–4, C e D são os modos coletivos |0̃⟩, |1̃⟩ de cada banho,
tratados como qubits efetivos. A variável independente é z = |χ| (grade
"z") ou o tempo adimensional (grade "gt", com (ξ, χ) vindo do banho).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import numpy.typing as npt

from dynamics import oraculo
from dynamics.banhos import AmplitudePair, BathSpec, SingleMode, amplitude_pair, chi_phase
from qstate.erros import NormalizationError, TangleSimError
from qstate.estados import StateVector, SubsystemLayout, reorder_subsystems

logger = logging.getLogger(__name__)

PAIR_TOL: float = 1e-10
DEFAULT_POINTS: int = 501


class Scenario(str, Enum):
    JC_VACUUM = "jc-vacuum"
    JC_ONE_PHOTON = "jc-one-photon"
    DOUBLE_JC_PSI = "double-jc-psi"
    DOUBLE_JC_PHI = "double-jc-phi"
    JC_VACUUM_PHI = "jc-vacuum-phi"
    JC_ONE_PHOTON_PHI = "jc-one-photon-phi"

    @classmethod
    def parse(cls, nome: str | int) -> "Scenario":
        """Aceita o nome ou os apelidos numéricos 1–4."""
        apelidos = {"1": cls.JC_VACUUM, "2": cls.JC_ONE_PHOTON, "3": cls.DOUBLE_JC_PSI, "4": cls.DOUBLE_JC_PHI}
        chave = str(nome).strip().lower()
        if chave in apelidos:
            return apelidos[chave]
        return cls(chave)

    @property
    def four_partite(self) -> bool:
        return self in (Scenario.DOUBLE_JC_PSI, Scenario.DOUBLE_JC_PHI)

    @property
    def pairs(self) -> tuple[str, ...]:
        """Pares reportados (C_BC do cenário 2 não tem forma fechada)."""
        if self.four_partite:
            return ("AB", "AC", "AD", "BC", "BD", "CD")
        if self is Scenario.JC_ONE_PHOTON:
            return ("AB", "AC")
        return ("AB", "AC", "BC")

    @property
    def cavity_photons(self) -> int:
        return 1 if self in (Scenario.JC_ONE_PHOTON, Scenario.JC_ONE_PHOTON_PHI) else 0

    @property
    def atoms_phi(self) -> bool:
        """Átomos iniciam em β|↑↑⟩ + α|↓↓⟩ (senão β|↑↓⟩ + α|↓↑⟩)."""
        return self in (Scenario.DOUBLE_JC_PHI, Scenario.JC_VACUUM_PHI, Scenario.JC_ONE_PHOTON_PHI)

    @property
    def has_closed_forms(self) -> bool:
        return self not in (Scenario.JC_VACUUM_PHI, Scenario.JC_ONE_PHOTON_PHI)


class GridKind(str, Enum):
    GT = "gt"
    Z = "z"


def normalize_pair(alpha: complex, beta: complex) -> tuple[complex, complex]:
    """Normaliza (α, β) preservando a razão α/β."""
    norma = float(np.sqrt(abs(alpha) ** 2 + abs(beta) ** 2))
    if norma == 0.0:
        raise NormalizationError("α = β = 0")
    return complex(alpha) / norma, complex(beta) / norma


def _check_pair(alpha: complex, beta: complex) -> None:
    norma = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(norma - 1.0) > PAIR_TOL:
        raise NormalizationError(f"|α|² + |β|² = {norma:.12f} ≠ 1")


def default_grid(scenario: Scenario, grid_kind: GridKind, points: int = DEFAULT_POINTS) -> npt.NDArray[np.float64]:
    if points < 2:
        raise TangleSimError(f"a grade precisa de ao menos 2 pontos; recebido {points}")
    if grid_kind is GridKind.Z:
        return np.linspace(0.0, 1.0, points)
    return np.linspace(0.0, 2.0 * np.pi, points)


@dataclass(frozen=True, eq=False)
class ScenarioSpec:
    """Unidade de trabalho da CLI: cenário, (α, β), banho e grade."""

    scenario: Scenario
    alpha: complex
    beta: complex
    bath: BathSpec = field(default_factory=SingleMode)
    time_grid: npt.NDArray[np.float64] | None = None
    grid_kind: GridKind | None = None

    def __post_init__(self) -> None:
        _check_pair(self.alpha, self.beta)
        tipo = self.grid_kind
        if tipo is None:
            tipo = GridKind.Z if self.scenario.four_partite else GridKind.GT
            object.__setattr__(self, "grid_kind", tipo)
        if not self.scenario.four_partite:
            if tipo is GridKind.Z:
                raise TangleSimError(f"{self.scenario.value} exige grade gt, não z")
            if not isinstance(self.bath, SingleMode):
                raise TangleSimError(f"{self.scenario.value} exige banho de modo único")

        grade = default_grid(self.scenario, tipo) if self.time_grid is None else np.asarray(self.time_grid, float)
        if grade.ndim != 1 or grade.size == 0:
            raise TangleSimError("grade de tempo vazia ou não unidimensional")
        if tipo is GridKind.Z and (grade.min() < 0.0 or grade.max() > 1.0):
            raise TangleSimError("valores de z fora de [0, 1]")
        if tipo is GridKind.GT and grade.min() < 0.0:
            raise TangleSimError("tempos negativos na grade")
        grade = grade.copy()
        grade.setflags(write=False)
        object.__setattr__(self, "time_grid", grade)

    @property
    def c0(self) -> float:
        return 2.0 * abs(self.alpha * self.beta)

    @property
    def g(self) -> float:
        return self.bath.g if isinstance(self.bath, SingleMode) else 1.0


# ─────────────────────────────────────────────
#  Estados evoluídos
# ─────────────────────────────────────────────

def evolve_jc_vacuum(t: float, alpha: complex, beta: complex, g: float = 1.0) -> StateVector:
    """β cos(gt)|↑↓⟩|0⟩ + α|↓↑⟩|0⟩ − iβ sin(gt)|↓↓⟩|1⟩."""
    _check_pair(alpha, beta)
    amps = np.zeros((2, 2, 2), dtype=np.complex128)
    amps[0, 1, 0] = beta * np.cos(g * t)
    amps[1, 0, 0] = alpha
    amps[1, 1, 1] = -1j * beta * np.sin(g * t)
    return StateVector(amps.reshape(-1), SubsystemLayout.of(A=2, B=2, C=2))


def evolve_jc_one_photon(t: float, alpha: complex, beta: complex, g: float = 1.0) -> StateVector:
    """[β cos(√2gt)|↑↓⟩ + α cos(gt)|↓↑⟩]|1⟩ − i[α sin(gt)|↑↑⟩|0⟩ + β sin(√2gt)|↓↓⟩|2⟩]."""
    _check_pair(alpha, beta)
    gt, r2gt = g * t, np.sqrt(2.0) * g * t
    amps = np.zeros((2, 2, 3), dtype=np.complex128)
    amps[0, 1, 1] = beta * np.cos(r2gt)
    amps[1, 0, 1] = alpha * np.cos(gt)
    amps[0, 0, 0] = -1j * alpha * np.sin(gt)
    amps[1, 1, 2] = -1j * beta * np.sin(r2gt)
    return StateVector(amps.reshape(-1), SubsystemLayout.of(A=2, B=2, C=3))


def collective_pair(x: float, bath: BathSpec, grid_kind: GridKind) -> AmplitudePair:
    """(ξ, χ) no ponto x: z direto ou via amplitude_pair do banho."""
    if grid_kind is GridKind.Z:
        return AmplitudePair.from_z(float(x), chi_phase(bath))
    return amplitude_pair(float(x), bath)


def double_jc_state(pair: AmplitudePair, alpha: complex, beta: complex, which: str) -> StateVector:
    """
    Estado ψ ou φ dos dois Jaynes–Cummings, montado na ordem (A, C, B, D)
    e devolvido na ordem A, B, C, D.
    """
    _check_pair(alpha, beta)
    gama = np.zeros((2, 2), dtype=np.complex128)
    gama[0, 0] = pair.xi
    gama[1, 1] = pair.chi
    baixo = np.zeros((2, 2), dtype=np.complex128)
    baixo[1, 0] = 1.0

    if which == "psi":
        amps = beta * np.einsum("ac,bd->acbd", gama, baixo) + alpha * np.einsum("ac,bd->acbd", baixo, gama)
    elif which == "phi":
        amps = beta * np.einsum("ac,bd->acbd", gama, gama) + alpha * np.einsum("ac,bd->acbd", baixo, baixo)
    else:
        raise TangleSimError(f"estado inicial desconhecido: {which!r} (use 'psi' ou 'phi')")

    agrupado = StateVector(amps.reshape(-1), SubsystemLayout.of(A=2, C=2, B=2, D=2))
    return reorder_subsystems(agrupado, ("A", "B", "C", "D"))


def evolve_double_jc(
    x: float,
    alpha: complex,
    beta: complex,
    bath: BathSpec | None = None,
    which: str = "psi",
    grid_kind: GridKind = GridKind.Z,
) -> StateVector:
    return double_jc_state(collective_pair(x, bath or SingleMode(), grid_kind), alpha, beta, which)


def scenario_state(spec: ScenarioSpec, x: float) -> StateVector:
    """Estado do cenário no ponto x da grade (analítico ou numérico)."""
    s = spec.scenario
    if s is Scenario.JC_VACUUM:
        return evolve_jc_vacuum(x, spec.alpha, spec.beta, spec.g)
    if s is Scenario.JC_ONE_PHOTON:
        return evolve_jc_one_photon(x, spec.alpha, spec.beta, spec.g)
    if s.four_partite:
        which = "phi" if s.atoms_phi else "psi"
        return evolve_double_jc(x, spec.alpha, spec.beta, spec.bath, which, spec.grid_kind)
    return oraculo.jc_numeric_state(
        x, spec.alpha, spec.beta, spec.g, atoms_phi=s.atoms_phi, photons=s.cavity_photons
    )


# ─────────────────────────────────────────────
#  Formas fechadas
# ─────────────────────────────────────────────

def closed_form_concurrences(spec: ScenarioSpec, x: float) -> dict[str, float]:
    """
    Todas as concorrências em forma fechada do cenário no ponto x.

    Chaves: pares ("AB", "AC", ...), foco contra o resto ("A(BC)",
    "A(BCD)", ...), o residual ("tau_ABC" ou "E_ABCD") e "sumrule", o lado
    direito da regra de soma do cenário:
        1 → C²_AB + C²_BC          (igual a C₀²)
        3 → C²_AB + C²_AC + C²_AD  (igual a C²_A(BCD))
        4 → C²_AC + C₀²|ξ|²        (igual a C²_A(BCD))
    Cenários sem forma fechada devolvem um mapa vazio.
    """
    a, b, c0 = abs(spec.alpha), abs(spec.beta), spec.c0
    s = spec.scenario

    if s is Scenario.JC_VACUUM:
        gt = spec.g * x
        cos, sen = np.cos(gt), np.sin(gt)
        valores = {
            "AB": c0 * abs(cos),
            "AC": b**2 * abs(np.sin(2.0 * gt)),
            "BC": c0 * abs(sen),
            "A(BC)": 2.0 * np.sqrt(b**2 * cos**2 * (a**2 + b**2 * sen**2)),
            "B(AC)": c0,
        }
        valores["tau_ABC"] = valores["A(BC)"] ** 2 - valores["AB"] ** 2 - valores["AC"] ** 2
        valores["sumrule"] = valores["AB"] ** 2 + valores["BC"] ** 2
        return {k: float(v) for k, v in valores.items()}

    if s is Scenario.JC_ONE_PHOTON:
        gt = spec.g * x
        r2gt = np.sqrt(2.0) * gt
        valores = {
            "AB": c0 * max(0.0, abs(np.cos(gt) * np.cos(r2gt)) - abs(np.sin(gt) * np.sin(r2gt))),
            "AC": abs(a**2 * abs(np.sin(2.0 * gt)) - b**2 * abs(np.sin(2.0 * r2gt))),
            "A(BC)": 2.0 * np.sqrt(
                (a**2 * np.sin(gt) ** 2 + b**2 * np.cos(r2gt) ** 2)
                * (a**2 * np.cos(gt) ** 2 + b**2 * np.sin(r2gt) ** 2)
            ),
        }
        valores["tau_ABC"] = valores["A(BC)"] ** 2 - valores["AB"] ** 2 - valores["AC"] ** 2
        return {k: float(v) for k, v in valores.items()}

    if not s.four_partite:
        return {}

    par = collective_pair(x, spec.bath, spec.grid_kind)
    xi, chi = abs(par.xi), abs(par.chi)

    if s is Scenario.DOUBLE_JC_PSI:
        valores = {
            "AB": c0 * xi**2,
            "AC": 2.0 * b**2 * xi * chi,
            "AD": c0 * xi * chi,
            "BC": c0 * xi * chi,
            "BD": 2.0 * a**2 * xi * chi,
            "CD": c0 * chi**2,
            "A(BCD)": 2.0 * b * xi * np.sqrt(a**2 + b**2 * chi**2),
        }
        valores["sumrule"] = valores["AB"] ** 2 + valores["AC"] ** 2 + valores["AD"] ** 2
    else:
        valores = {
            "AB": 2.0 * b * xi**2 * max(0.0, a - b * chi**2),
            "AD": 2.0 * b * xi * chi * max(0.0, a - b * xi * chi),
            "AC": 2.0 * b**2 * xi * chi,
            "CD": 2.0 * b * chi**2 * max(0.0, a - b * xi**2),
            "A(BCD)": 2.0 * b * xi * np.sqrt(b**2 * chi**2 + a**2),
        }
        valores["BD"] = valores["AC"]
        valores["BC"] = valores["AD"]
        valores["B(ACD)"] = valores["A(BCD)"]
        valores["sumrule"] = valores["AC"] ** 2 + c0**2 * xi**2

    valores["E_ABCD"] = (
        valores["A(BCD)"] ** 2 - valores["AB"] ** 2 - valores["AC"] ** 2 - valores["AD"] ** 2
    )
    return {k: float(v) for k, v in valores.items()}
