"""
qstate/estados.py — Estados Multipartites e Contabilidade de Subsistemas

Implementa o Single Responsibility Principle (SRP):
    Este módulo conhece a estrutura de partições (A, B, C, D...) e
    realiza traço parcial, reordenação de subsistemas e projetores puros.
    As medidas de emaranhamento ficam em measures/.

Convenção de índices: o rótulo mais à esquerda do layout é o índice
tensorial mais significativo (varia mais devagar). Para qubits atômicos
o índice 0 é |↑⟩ e o índice 1 é |↓⟩; para cavidades o índice n é |n⟩.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from math import prod

import numpy as np
import numpy.typing as npt

from qstate.algebra import CLAMP_TOL, NEGATIVE_TOL, CMatrix, as_cmatrix, hermiticity_gap, herm_eig
from qstate.erros import DimensionError, NormalizationError, NotPositiveError

logger = logging.getLogger(__name__)

NORM_TOL: float = 1e-10
PURE_NORM_TOL: float = 1e-8


@dataclass(frozen=True)
class SubsystemLayout:
    """
    Estrutura ordenada de partes (rótulo, dimensão).
    A ordem define a convenção tensorial do vetor de amplitudes.
    """

    parts: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        rotulos = [rotulo for rotulo, _ in self.parts]
        if not rotulos:
            raise DimensionError("layout vazio")
        if len(set(rotulos)) != len(rotulos):
            raise DimensionError(f"rótulos repetidos no layout: {rotulos}")
        for rotulo, dim in self.parts:
            if int(dim) < 2:
                raise DimensionError(f"subsistema {rotulo!r} com dimensão {dim} < 2")

    @classmethod
    def of(cls, **dims: int) -> "SubsystemLayout":
        """Atalho: SubsystemLayout.of(A=2, B=2, C=3)."""
        return cls(tuple((rotulo, int(d)) for rotulo, d in dims.items()))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(rotulo for rotulo, _ in self.parts)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.parts)

    @property
    def dim(self) -> int:
        return prod(self.dims)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise DimensionError(f"rótulo desconhecido {label!r}; layout = {self.labels}") from None

    def dim_of(self, labels: Iterable[str]) -> int:
        return prod(self.dims[self.index(r)] for r in labels)

    def subset(self, labels: Iterable[str]) -> "SubsystemLayout":
        """Sub-layout com os rótulos pedidos, na ordem relativa original."""
        pedidos = set(labels)
        for rotulo in pedidos:
            self.index(rotulo)
        return SubsystemLayout(tuple(p for p in self.parts if p[0] in pedidos))

    def reordered(self, order: Sequence[str]) -> "SubsystemLayout":
        return SubsystemLayout(tuple(self.parts[self.index(r)] for r in order))


@dataclass(frozen=True, eq=False)
class StateVector:
    """Estado puro (vetor de amplitudes) associado a um layout."""

    amplitudes: npt.NDArray[np.complex128]
    layout: SubsystemLayout

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != self.layout.dim:
            raise DimensionError(
                f"{amps.size} amplitudes para layout de dimensão {self.layout.dim}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm - 1.0) <= tol

    def normalized(self) -> "StateVector":
        return StateVector(self.amplitudes / self.norm, self.layout)

    def tensor(self) -> npt.NDArray[np.complex128]:
        return self.amplitudes.reshape(self.layout.dims)

    def amplitude(self, **levels: int) -> complex:
        """Amplitude de um vetor da base: psi.amplitude(A=0, B=1, C=0)."""
        indice = tuple(levels[rotulo] for rotulo in self.layout.labels)
        return complex(self.tensor()[indice])


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Operador densidade associado a um layout."""

    matrix: CMatrix
    layout: SubsystemLayout
    hermitian_tol: float = field(default=NORM_TOL, compare=False)

    def __post_init__(self) -> None:
        mat = as_cmatrix(self.matrix).copy()
        n = self.layout.dim
        if mat.shape != (n, n):
            raise DimensionError(f"matriz {mat.shape} para layout de dimensão {n}")
        gap = hermiticity_gap(mat)
        if gap > self.hermitian_tol:
            raise DimensionError(f"operador densidade não hermitiano (gap {gap:.2e})")
        traco = np.trace(mat).real
        if abs(traco - 1.0) > PURE_NORM_TOL:
            raise NormalizationError(f"traço {traco:.12f} ≠ 1")
        menor = float(np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))[0])
        if menor < -NEGATIVE_TOL:
            raise NotPositiveError(f"autovalor mínimo {menor:.3e} < −{NEGATIVE_TOL:.0e}")
        if menor < -CLAMP_TOL:
            logger.warning("autovalor %.3e de ρ abaixo de −%.0e (arredondamento)", menor, CLAMP_TOL)
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def eigenvalues(self) -> npt.NDArray[np.float64]:
        return herm_eig(self.matrix)[0]


def basis_state(layout: SubsystemLayout, **levels: int) -> StateVector:
    """Vetor da base computacional |levels⟩."""
    amps = np.zeros(layout.dims, dtype=np.complex128)
    amps[tuple(levels[rotulo] for rotulo in layout.labels)] = 1.0
    return StateVector(amps.reshape(-1), layout)


def random_state(layout: SubsystemLayout, rng: np.random.Generator) -> StateVector:
    amps = rng.normal(size=layout.dim) + 1j * rng.normal(size=layout.dim)
    return StateVector(amps / np.linalg.norm(amps), layout)


def density_from_pure(psi: StateVector) -> DensityMatrix:
    """Projetor |ψ⟩⟨ψ| com o layout de ψ."""
    if not psi.is_normalized(PURE_NORM_TOL):
        raise NormalizationError(f"estado puro não normalizado: ‖ψ‖ = {psi.norm:.12f}")
    amps = psi.amplitudes
    return DensityMatrix(np.outer(amps, amps.conj()), psi.layout)


def _keep_indices(layout: SubsystemLayout, keep: Iterable[str]) -> tuple[list[int], list[int]]:
    pedidos = set(keep)
    if not pedidos:
        raise DimensionError("conjunto de subsistemas mantidos vazio")
    for rotulo in pedidos:
        layout.index(rotulo)
    mantidos = [i for i, r in enumerate(layout.labels) if r in pedidos]
    tracados = [i for i, r in enumerate(layout.labels) if r not in pedidos]
    return mantidos, tracados


def partial_trace(rho: DensityMatrix, keep: Iterable[str]) -> DensityMatrix:
    """
    Traço parcial: mantém os rótulos em `keep` na ordem relativa original.
    """
    layout = rho.layout
    mantidos, tracados = _keep_indices(layout, keep)
    n = len(layout.dims)
    dk = prod(layout.dims[i] for i in mantidos)
    dt = prod(layout.dims[i] for i in tracados)

    t = rho.matrix.reshape(layout.dims + layout.dims)
    eixos = mantidos + tracados + [n + i for i in mantidos] + [n + i for i in tracados]
    bloco = t.transpose(eixos).reshape(dk, dt, dk, dt)
    reduzida = np.trace(bloco, axis1=1, axis2=3)
    return DensityMatrix(reduzida, layout.subset(layout.labels[i] for i in mantidos))


def bipartition_matrix(psi: StateVector, side: Iterable[str]) -> npt.NDArray[np.complex128]:
    """Amplitudes de ψ reorganizadas como matriz (lado, resto)."""
    layout = psi.layout
    mantidos, tracados = _keep_indices(layout, side)
    dk = prod(layout.dims[i] for i in mantidos)
    return psi.tensor().transpose(mantidos + tracados).reshape(dk, -1)


def reduced_density(psi: StateVector, keep: Iterable[str]) -> DensityMatrix:
    """Atalho para partial_trace(density_from_pure(ψ), keep) sem montar |ψ⟩⟨ψ|."""
    if not psi.is_normalized(PURE_NORM_TOL):
        raise NormalizationError(f"estado puro não normalizado: ‖ψ‖ = {psi.norm:.12f}")
    layout = psi.layout
    keep = tuple(keep)
    mantidos, _ = _keep_indices(layout, keep)
    m = bipartition_matrix(psi, keep)
    return DensityMatrix(m @ m.conj().T, layout.subset(layout.labels[i] for i in mantidos))


def reorder_subsystems(psi: StateVector, new_order: Sequence[str]) -> StateVector:
    """Permuta os índices tensoriais para que o layout siga `new_order`."""
    layout = psi.layout
    if sorted(new_order) != sorted(layout.labels) or len(set(new_order)) != len(new_order):
        raise DimensionError(f"{list(new_order)} não é permutação de {list(layout.labels)}")
    eixos = [layout.index(r) for r in new_order]
    novo = psi.tensor().transpose(eixos).reshape(-1)
    return StateVector(novo, layout.reordered(new_order))


def embed_operator(
    op: npt.ArrayLike,
    op_labels: Sequence[str],
    layout: SubsystemLayout,
) -> CMatrix:
    """
    Estende um operador que age em `op_labels` (nessa ordem) para o layout
    completo, com identidade nos demais subsistemas.
    """
    mat = as_cmatrix(op)
    d_op = layout.dim_of(op_labels)
    if mat.shape != (d_op, d_op):
        raise DimensionError(f"operador {mat.shape} incompatível com {list(op_labels)}")
    resto = [r for r in layout.labels if r not in op_labels]
    d_resto = layout.dim_of(resto) if resto else 1
    cheio = np.kron(mat, np.eye(d_resto, dtype=np.complex128))

    ordem_atual = list(op_labels) + resto
    dims_atual = [layout.dims[layout.index(r)] for r in ordem_atual]
    n = len(ordem_atual)
    eixos = [ordem_atual.index(r) for r in layout.labels]
    t = cheio.reshape(dims_atual + dims_atual)
    t = t.transpose(eixos + [n + e for e in eixos])
    return t.reshape(layout.dim, layout.dim)


def fidelity(a: StateVector, b: StateVector) -> float:
    """|⟨a|b⟩| entre estados puros de mesmo layout."""
    if a.layout != b.layout:
        raise DimensionError(f"layouts diferentes: {a.layout.labels} × {b.layout.labels}")
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)))
