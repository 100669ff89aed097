"""
esd/janelas.py — Janelas de Morte Súbita do Emaranhamento

Implementa o Single Responsibility Principle (SRP):
    Este módulo só localiza intervalos onde uma concorrência se anula,
    de forma analítica (desigualdades em |χ|² do estado φ dos dois
    Jaynes–Cummings) ou numérica (varredura de uma curva + bisseção).

As janelas analíticas dependem apenas da razão r = |α/β|, então o par
(α, β) pode ser passado sem normalizar.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np

from dynamics.cenarios import Scenario, ScenarioSpec, closed_form_concurrences
from qstate.erros import TangleSimError
from qstate.paralelo import ordered_map

logger = logging.getLogger(__name__)

ZERO_TOL: float = 1e-9
BISECT_TOL: float = 1e-6
DISCRIMINANT_TOL: float = 1e-12


@dataclass(frozen=True)
class EsdWindow:
    """
    Intervalo [lo, hi] onde a concorrência de `pair` é nula.

    Em janelas sobre z = |χ| os extremos em |χ|² são chi2_lo/chi2_hi.
    open indica extremos excluídos (desigualdade estrita).

    Janelas numéricas construídas com `fn` têm o ponto médio conferido
    (fn(meio) ≤ ZERO_TOL); sem `fn` a janela não é conferida.
    """

    pair: str
    lo: float
    hi: float
    kind: str = "analytic"
    axis: str = "z"
    degenerate: bool = False
    open: bool = False
    fn: Callable[[float], float] | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise TangleSimError(f"janela invertida: {self.lo} > {self.hi}")
        if self.kind not in ("analytic", "numeric"):
            raise TangleSimError(f"tipo de janela desconhecido: {self.kind!r}")
        if self.kind == "numeric" and self.fn is not None and self.fn(self.midpoint) > ZERO_TOL:
            raise TangleSimError(f"janela {self.pair} [{self.lo:.6f}, {self.hi:.6f}] não é nula no ponto médio")

    @property
    def z_lo(self) -> float:
        return self.lo

    @property
    def z_hi(self) -> float:
        return self.hi

    @property
    def chi2_lo(self) -> float:
        return self.lo**2

    @property
    def chi2_hi(self) -> float:
        return self.hi**2

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: float) -> bool:
        if self.open:
            return self.lo < x < self.hi
        return self.lo <= x <= self.hi


def _ratio(alpha: complex, beta: complex) -> float | None:
    if abs(beta) == 0.0:
        return None
    return abs(alpha) / abs(beta)


def esd_window_ab(alpha: complex, beta: complex) -> EsdWindow | None:
    """C_AB = 0 ⇔ |χ|² ≥ |α/β|; janela [√|α/β|, 1] quando |α/β| ≤ 1."""
    r = _ratio(alpha, beta)
    if r is None:
        logger.warning("β = 0: C_AB ≡ 0, janela AB não definida")
        return None
    if abs(alpha) == 0.0:
        return EsdWindow("AB", 0.0, 1.0, degenerate=True)
    if r > 1.0:
        return None
    return EsdWindow("AB", float(np.sqrt(r)), 1.0)


def _ad_chi2(r: float) -> tuple[float, float] | None:
    disc = 0.25 - r * r
    if disc < -DISCRIMINANT_TOL:
        return None
    raiz = float(np.sqrt(max(disc, 0.0)))
    return 0.5 - raiz, 0.5 + raiz


def esd_window_ad(alpha: complex, beta: complex) -> EsdWindow | None:
    """
    1/2 − √(1/4 − |α/β|²) < |χ|² < 1/2 + √(1/4 − |α/β|²); existe só se
    |β| ≥ 2|α| (largura nula na igualdade).
    """
    r = _ratio(alpha, beta)
    if r is None:
        logger.warning("β = 0: janela AD não definida")
        return None
    extremos = _ad_chi2(r)
    if extremos is None:
        return None
    lo, hi = extremos
    return EsdWindow(
        "AD",
        float(np.sqrt(lo)),
        float(np.sqrt(hi)),
        degenerate=abs(alpha) == 0.0,
        open=True,
    )


def simultaneous_window(alpha: complex, beta: complex) -> EsdWindow | None:
    """|α/β| < |χ|² < 1/2 + √(1/4 − |α/β|²), não vazia só se |β| > 2|α|; extremos excluídos."""
    r = _ratio(alpha, beta)
    if r is None or r >= 0.5:
        return None
    _, hi = _ad_chi2(r)
    return EsdWindow(
        "AB+AD",
        float(np.sqrt(r)),
        float(np.sqrt(hi)),
        degenerate=abs(alpha) == 0.0,
        open=True,
    )


def _bisect(fn: Callable[[float], float], dentro: float, fora: float, tol: float, xtol: float) -> float:
    """Fronteira entre um ponto com fn ≤ tol (dentro) e outro com fn > tol (fora)."""
    while abs(fora - dentro) > xtol:
        meio = 0.5 * (dentro + fora)
        if fn(meio) <= tol:
            dentro = meio
        else:
            fora = meio
    return 0.5 * (dentro + fora)


def _exactly_null(fn: Callable[[float], float], lo: float, hi: float) -> bool:
    return all(fn(x) == 0.0 for x in np.linspace(lo, hi, 5)[1:-1])


def detect_zero_intervals(
    xs: Sequence[float],
    values: Sequence[float],
    tol: float = ZERO_TOL,
    fn: Callable[[float], float] | None = None,
    *,
    pair: str = "",
    axis: str = "z",
    xtol: float = BISECT_TOL,
) -> list[EsdWindow]:
    """
    Corridas maximais com valor ≤ tol numa curva amostrada.

    Com `fn` (a função que gerou a curva) os extremos são refinados por
    bisseção até xtol. Uma corrida de um único ponto só vira janela se a
    bisseção confirmar largura > xtol e `fn` for exatamente nula no seu
    interior (um toque quadrático em zero não é morte súbita).
    """
    x = np.asarray(xs, dtype=float)
    v = np.asarray(values, dtype=float)
    if x.shape != v.shape or x.ndim != 1:
        raise TangleSimError("xs e values precisam ser sequências do mesmo tamanho")
    if x.size > 1 and np.any(np.diff(x) <= 0.0):
        raise TangleSimError("xs precisa ser estritamente crescente")
    if v.size and v.min() < -ZERO_TOL:
        raise TangleSimError(f"concorrência negativa na curva: {v.min():.3e}")

    nulos = v <= tol
    janelas: list[EsdWindow] = []
    i = 0
    while i < x.size:
        if not nulos[i]:
            i += 1
            continue
        j = i
        while j + 1 < x.size and nulos[j + 1]:
            j += 1

        lo, hi = x[i], x[j]
        if fn is not None:
            if i > 0:
                lo = _bisect(fn, x[i], x[i - 1], tol, xtol)
            if j < x.size - 1:
                hi = _bisect(fn, x[j], x[j + 1], tol, xtol)

        if i == j and (fn is None or hi - lo <= xtol or not _exactly_null(fn, lo, hi)):
            logger.debug("corrida degenerada em x = %.6f descartada (%s)", x[i], pair)
        else:
            try:
                janelas.append(EsdWindow(pair, float(lo), float(hi), kind="numeric", axis=axis, fn=fn))
            except TangleSimError as exc:
                logger.warning("%s; descartada", exc)
        i = j + 1
    return janelas


# ─────────────────────────────────────────────
#  Varredura em α
# ─────────────────────────────────────────────

@dataclass(frozen=True)
class SweepRow:
    alpha: float
    beta: float
    ab: EsdWindow | None
    ad: EsdWindow | None
    simultaneous: EsdWindow | None
    max_e_abcd: float

    @property
    def beta_gt_2alpha(self) -> bool:
        return self.beta > 2.0 * self.alpha


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]
    monotonic: dict[str, bool]


def _sweep_row(alpha: float, z_grid: np.ndarray) -> SweepRow:
    beta = float(np.sqrt(max(0.0, 1.0 - alpha * alpha)))
    spec = ScenarioSpec(Scenario.DOUBLE_JC_PHI, alpha, beta, time_grid=z_grid)
    e_max = max(closed_form_concurrences(spec, z)["E_ABCD"] for z in z_grid)
    return SweepRow(
        alpha=alpha,
        beta=beta,
        ab=esd_window_ab(alpha, beta),
        ad=esd_window_ad(alpha, beta),
        simultaneous=simultaneous_window(alpha, beta),
        max_e_abcd=float(e_max),
    )


def _non_increasing(larguras: list[float]) -> bool:
    return all(b <= a + 1e-12 for a, b in zip(larguras, larguras[1:]))


def sweep(resolution: int = 101, threads: int | None = None, z_points: int = 501) -> SweepResult:
    """
    Uma linha por α ∈ [0, 1] (β = √(1 − α²)) no cenário φ dos dois
    Jaynes–Cummings, com as janelas e o máximo de E_ABCD em z.
    """
    if resolution < 2:
        raise TangleSimError(f"resolução da varredura deve ser ≥ 2; recebido {resolution}")
    alphas = np.linspace(0.0, 1.0, resolution)
    z_grid = np.linspace(0.0, 1.0, z_points)
    linhas = ordered_map(lambda a: _sweep_row(float(a), z_grid), alphas, threads)

    monotonia = {}
    for nome in ("ab", "ad", "simultaneous"):
        larguras = [getattr(l, nome).width for l in linhas if getattr(l, nome) is not None]
        monotonia[nome] = _non_increasing(larguras)
    logger.info("varredura com %d linhas; monotonia %s", len(linhas), monotonia)
    return SweepResult(tuple(linhas), monotonia)
