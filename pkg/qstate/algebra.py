"""
qstate/algebra.py — Álgebra Linear Complexa Densa

Implementa o Single Responsibility Principle (SRP):
    Este módulo cuida APENAS de operações matriciais (produto tensorial,
    autodecomposição hermitiana, raiz quadrada PSD e exponencial). Nada
    aqui conhece subsistemas, estados ou emaranhamento.

A matriz complexa universal (CMatrix) é um numpy.ndarray 2D de complex128.
O autossolver padrão é o LAPACK (numpy.linalg.eigh); a rotação cíclica de
Jacobi fica disponível como método alternativo ("jacobi") e é conferida
contra o LAPACK nos testes.
"""

from __future__ import annotations

import logging
from typing import Literal

import numpy as np
import numpy.typing as npt

from qstate.erros import DimensionError, NotHermitianError, NotPositiveError

logger = logging.getLogger(__name__)

CMatrix = npt.NDArray[np.complex128]
EigMethod = Literal["lapack", "jacobi"]

HERMITIAN_TOL: float = 1e-10
CLAMP_TOL: float = 1e-10
NEGATIVE_TOL: float = 1e-8


def as_cmatrix(m: npt.ArrayLike) -> CMatrix:
    """Converte para matriz complexa 2D, validando o formato."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise DimensionError(f"esperada matriz 2D, recebido ndim={arr.ndim}")
    return arr


def dagger(m: CMatrix) -> CMatrix:
    return m.conj().T


def hermiticity_gap(m: CMatrix) -> float:
    """Maior desvio elementar |M − M†|."""
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def kron(a: npt.ArrayLike, b: npt.ArrayLike) -> CMatrix:
    """
    Produto tensorial (Kronecker) de duas matrizes.
    Entrada (i·rb + k, j·cb + l) = A(i, j)·B(k, l).
    """
    return np.kron(as_cmatrix(a), as_cmatrix(b))


def _check_hermitian(m: CMatrix, tol: float) -> None:
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"matriz não quadrada: {m.shape}")
    gap = hermiticity_gap(m)
    if gap > tol:
        raise NotHermitianError(f"max|M − M†| = {gap:.3e} > {tol:.1e}")


def _jacobi_eigh(
    m: CMatrix,
    tol: float = 1e-15,
    max_sweeps: int = 60,
) -> tuple[npt.NDArray[np.float64], CMatrix]:
    """
    Rotações cíclicas de Jacobi para matrizes hermitianas complexas.

    Cada par (p, q) é zerado por V = D·G, onde D remove a fase do
    elemento fora da diagonal e G é a rotação real de Jacobi.
    """
    a = m.copy()
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    escala = max(float(np.linalg.norm(a)), 1e-300)

    for varredura in range(max_sweeps):
        fora = float(np.sqrt(np.sum(np.abs(a) ** 2) - np.sum(np.abs(np.diag(a)) ** 2)))
        if fora <= tol * escala:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = a[p, q]
                modulo = abs(b)
                if modulo <= tol * escala * 1e-3:
                    continue
                fase = b / modulo
                theta = 0.5 * np.arctan2(2.0 * modulo, (a[p, p] - a[q, q]).real)
                c, s = np.cos(theta), np.sin(theta)
                rot = np.array(
                    [[c, -s], [np.conj(fase) * s, np.conj(fase) * c]],
                    dtype=np.complex128,
                )
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                v[:, idx] = v[:, idx] @ rot
    else:
        logger.warning("Jacobi não convergiu em %d varreduras (n=%d)", max_sweeps, n)

    autovalores = np.real(np.diag(a)).copy()
    ordem = np.argsort(autovalores, kind="stable")
    return autovalores[ordem], v[:, ordem]


def herm_eig(
    m: npt.ArrayLike,
    method: EigMethod = "lapack",
    tol: float = HERMITIAN_TOL,
) -> tuple[npt.NDArray[np.float64], CMatrix]:
    """
    Autodecomposição de matriz hermitiana.

    Retorna (autovalores em ordem crescente, autovetores em colunas),
    com M·V = V·diag(λ) e V†V = I.
    """
    mat = as_cmatrix(m)
    _check_hermitian(mat, tol)
    simetrica = 0.5 * (mat + mat.conj().T)

    if method == "jacobi":
        return _jacobi_eigh(simetrica)
    if method != "lapack":
        raise ValueError(f"método de autodecomposição desconhecido: {method!r}")

    autovalores, autovetores = np.linalg.eigh(simetrica)
    return autovalores.astype(np.float64), autovetores.astype(np.complex128)


def psd_sqrt(rho: npt.ArrayLike, method: EigMethod = "lapack") -> CMatrix:
    """
    Raiz quadrada de matriz hermitiana positiva semidefinida.

    Autovalores em [−1e-8, 0) são truncados para zero; abaixo de −1e-8 a
    matriz é considerada genuinamente não-PSD.
    """
    autovalores, autovetores = herm_eig(rho, method=method)
    menor = float(autovalores[0]) if autovalores.size else 0.0
    if menor < -NEGATIVE_TOL:
        raise NotPositiveError(f"autovalor mínimo {menor:.3e} < −{NEGATIVE_TOL:.0e}")
    if menor < -CLAMP_TOL:
        logger.warning("autovalor %.3e truncado para zero em psd_sqrt", menor)

    raizes = np.sqrt(np.clip(autovalores, 0.0, None))
    return (autovetores * raizes) @ autovetores.conj().T


def expm(
    h: npt.ArrayLike,
    t: float,
    scale: float = 1.0,
    method: EigMethod = "lapack",
) -> CMatrix:
    """Propagador unitário U = exp(−i·scale·t·H) via autodecomposição."""
    autovalores, autovetores = herm_eig(h, method=method)
    fases = np.exp(-1j * scale * t * autovalores)
    return (autovetores * fases) @ autovetores.conj().T


def propagator_factory(h: npt.ArrayLike, scale: float = 1.0, method: EigMethod = "lapack"):
    """
    Diagonaliza H uma única vez e devolve t ↦ exp(−i·scale·t·H).
    Útil para grades de tempo longas sobre o mesmo hamiltoniano.
    """
    autovalores, autovetores = herm_eig(h, method=method)
    adjunta = autovetores.conj().T

    def propagador(t: float) -> CMatrix:
        return (autovetores * np.exp(-1j * scale * t * autovalores)) @ adjunta

    return propagador
