"""
qstate/paralelo.py — Mapa Paralelo Ordenado

Avaliações de grade e de varredura são independentes entre si; aqui elas
são distribuídas num pool de threads. A saída segue sempre a ordem da
entrada, qualquer que seja o número de workers.

O limite de workers vem da variável de ambiente TANGLESIM_THREADS
(padrão: os.cpu_count(); 1 força execução serial).
"""

from __future__ import annotations

import logging
import os
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV = "TANGLESIM_THREADS"


def worker_count(threads: int | None = None) -> int:
    if threads is not None:
        return max(1, int(threads))
    bruto = os.environ.get(THREADS_ENV, "").strip()
    if bruto:
        try:
            return max(1, int(bruto))
        except ValueError:
            logger.warning("%s=%r inválido; usando os.cpu_count()", THREADS_ENV, bruto)
    return os.cpu_count() or 1


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: int | None = None) -> list[R]:
    itens = list(items)
    n = min(worker_count(threads), max(len(itens), 1))
    if n == 1:
        return [fn(x) for x in itens]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, itens))
