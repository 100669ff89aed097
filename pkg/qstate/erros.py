"""
qstate/erros.py — Hierarquia de Exceções do Simulador

Todas as exceções herdam de TangleSimError, que por sua vez herda de
ValueError: quem chama pode capturar qualquer uma das duas.
"""

from __future__ import annotations


class TangleSimError(ValueError):
    """Erro base de todo o pacote."""


class DimensionError(TangleSimError):
    """Dimensões incompatíveis, rótulos desconhecidos ou permutações inválidas."""


class NotHermitianError(TangleSimError):
    """Matriz que deveria ser hermitiana não é (dentro da tolerância)."""


class NotPositiveError(TangleSimError):
    """Matriz que deveria ser positiva semidefinida tem autovalor negativo relevante."""


class NormalizationError(TangleSimError):
    """Estado ou par (α, β) fora da normalização exigida."""


class RankError(TangleSimError):
    """Posto do operador densidade acima do suportado pelo otimizador."""
