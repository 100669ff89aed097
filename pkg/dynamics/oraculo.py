"""
dynamics/oraculo.py — Oráculo Numérico de Evolução

Implementa o Dependency Inversion Principle (DIP):
    Os cenários analíticos não dependem deste módulo para seus valores;
    aqui se monta, de forma independente, o hamiltoniano completo de cada
    cenário e se evolui o estado inicial por exp(−iHt). A comparação entre
    os dois caminhos é feita nos testes e em `main.py verify`.

Truncamentos padrão da cavidade: fótons iniciais + 3 (um nível acima do
suporte analítico, para detectar vazamento).
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np

from dynamics.banhos import (
    Comb,
    Hamiltonian,
    SingleMode,
    build_hamiltonian,
    number,
    sigma_minus,
    sigma_plus,
)
from qstate.algebra import CMatrix, expm, propagator_factory
from qstate.erros import DimensionError, NormalizationError
from qstate.estados import StateVector, SubsystemLayout, embed_operator

logger = logging.getLogger(__name__)

LEAK_TOL: float = 1e-12


def evolve_numeric(h: Hamiltonian | CMatrix, psi0: StateVector, t: float, scale: float = 1.0) -> StateVector:
    """exp(−i·scale·t·H)·ψ₀, mantendo o layout de ψ₀."""
    matriz = h.matrix if isinstance(h, Hamiltonian) else np.asarray(h, dtype=np.complex128)
    if matriz.shape != (psi0.layout.dim, psi0.layout.dim):
        raise DimensionError(f"hamiltoniano {matriz.shape} para estado de dimensão {psi0.layout.dim}")
    u = expm(matriz, t, scale)
    return StateVector(u @ psi0.amplitudes, psi0.layout)


def jc_interaction(
    layout: SubsystemLayout, atom: str, cavity: str, g: float, initial_photons: int = 0
) -> CMatrix:
    """g(c†σ₋ + cσ₊) entre `atom` e `cavity`, estendido ao layout inteiro."""
    d = layout.dims[layout.index(cavity)]
    local = build_hamiltonian(SingleMode(g), d, initial_photons=initial_photons)
    return embed_operator(local.matrix, (atom, cavity), layout)


def excitation_operator(layout: SubsystemLayout, atoms: Sequence[str], cavities: Sequence[str]) -> CMatrix:
    """N_exc = Σ σ₊σ₋ (átomos) + Σ c†c (cavidades)."""
    total = np.zeros((layout.dim, layout.dim), dtype=np.complex128)
    for a in atoms:
        total += embed_operator(sigma_plus() @ sigma_minus(), (a,), layout)
    for c in cavities:
        total += embed_operator(number(layout.dims[layout.index(c)]), (c,), layout)
    return total


def expectation(op: CMatrix, psi: StateVector) -> float:
    return float(np.real(np.vdot(psi.amplitudes, op @ psi.amplitudes)))


def atoms_state(alpha: complex, beta: complex, phi: bool = False) -> StateVector:
    """|AB⟩_ψ = β|↑↓⟩ + α|↓↑⟩ ou |AB⟩_φ = β|↑↑⟩ + α|↓↓⟩."""
    layout = SubsystemLayout.of(A=2, B=2)
    amps = np.zeros((2, 2), dtype=np.complex128)
    if phi:
        amps[0, 0], amps[1, 1] = beta, alpha
    else:
        amps[0, 1], amps[1, 0] = beta, alpha
    estado = StateVector(amps.reshape(-1), layout)
    if not estado.is_normalized():
        raise NormalizationError(f"(α, β) não normalizado: ‖ψ‖ = {estado.norm:.12f}")
    return estado


def _with_fock(atomos: StateVector, rotulo: str, dim: int, fotons: int) -> StateVector:
    fock = np.zeros(dim, dtype=np.complex128)
    fock[fotons] = 1.0
    layout = SubsystemLayout(atomos.layout.parts + ((rotulo, dim),))
    return StateVector(np.kron(atomos.amplitudes, fock), layout)


def jc_setup(
    alpha: complex,
    beta: complex,
    g: float = 1.0,
    *,
    atoms_phi: bool = False,
    photons: int = 0,
    truncation: int | None = None,
) -> tuple[CMatrix, StateVector, CMatrix]:
    """(H, ψ₀, N_exc) do cenário tripartite: A acoplado a C, B espectador."""
    dim = photons + 3 if truncation is None else truncation
    psi0 = _with_fock(atoms_state(alpha, beta, atoms_phi), "C", dim, photons)
    h = jc_interaction(psi0.layout, "A", "C", g, photons)
    return h, psi0, excitation_operator(psi0.layout, ("A", "B"), ("C",))


def crop_cavity(psi: StateVector, label: str, dim: int) -> StateVector:
    """Descarta níveis ≥ dim da cavidade `label`; o peso descartado deve ser nulo."""
    eixo = psi.layout.index(label)
    t = np.moveaxis(psi.tensor(), eixo, 0)
    vazamento = float(np.sum(np.abs(t[dim:]) ** 2))
    if vazamento > LEAK_TOL:
        logger.warning("vazamento %.3e acima do nível %d da cavidade %s", vazamento, dim - 1, label)
    cortado = np.moveaxis(t[:dim], 0, eixo)
    partes = tuple((r, dim if r == label else d) for r, d in psi.layout.parts)
    return StateVector(cortado.reshape(-1), SubsystemLayout(partes)).normalized()


def jc_numeric_state(
    t: float,
    alpha: complex,
    beta: complex,
    g: float = 1.0,
    *,
    atoms_phi: bool = False,
    photons: int = 0,
) -> StateVector:
    """
    Estado tripartite por evolução numérica, com a cavidade recortada ao
    suporte {|0⟩, …, |fótons + 1⟩}.
    """
    h, psi0, _ = jc_setup(alpha, beta, g, atoms_phi=atoms_phi, photons=photons)
    return crop_cavity(evolve_numeric(h, psi0, t), "C", photons + 2)


def double_jc_setup(
    alpha: complex,
    beta: complex,
    g: float = 1.0,
    which: str = "psi",
    truncation: int = 2,
) -> tuple[CMatrix, StateVector, CMatrix]:
    """(H, ψ₀, N_exc) dos dois Jaynes–Cummings AC e BD, cavidades no vácuo."""
    atomos = atoms_state(alpha, beta, phi=(which == "phi"))
    psi0 = _with_fock(_with_fock(atomos, "C", truncation, 0), "D", truncation, 0)
    h = jc_interaction(psi0.layout, "A", "C", g) + jc_interaction(psi0.layout, "B", "D", g)
    return h, psi0, excitation_operator(psi0.layout, ("A", "B"), ("C", "D"))


def double_jc_numeric_state(
    t: float,
    alpha: complex,
    beta: complex,
    g: float = 1.0,
    which: str = "psi",
    truncation: int = 2,
) -> StateVector:
    h, psi0, _ = double_jc_setup(alpha, beta, g, which, truncation)
    return crop_cavity(crop_cavity(evolve_numeric(h, psi0, t), "C", 2), "D", 2)


def numeric_grid(h: CMatrix, psi0: StateVector, ts: Sequence[float]) -> list[StateVector]:
    """Evolução em uma grade, diagonalizando H uma única vez."""
    propagador = propagator_factory(h)
    return [StateVector(propagador(float(t)) @ psi0.amplitudes, psi0.layout) for t in ts]


def comb_sector_pair(t: float, bath: Comb, omega_a: float = 0.0) -> tuple[complex, np.ndarray]:
    """
    (ξ, λ_k) pela evolução de |↑,vac⟩ no setor completo do pente
    (N + 2 estados), desfazendo a fase livre e^{−iω_A t/2}.
    """
    h = build_hamiltonian(bath, 2, omega_a=omega_a)
    psi = expm(h.matrix, t) @ np.eye(len(h.basis), dtype=np.complex128)[:, 1]
    fase = np.exp(1j * omega_a * t / 2.0)
    return complex(psi[1] * fase), psi[2:] * fase

