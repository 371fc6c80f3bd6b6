"""
Evolução temporal dos operadores de spin.

Aplica o gerador de Lindblad da superradiância, Λρ = (1/2j)(2J₋ρJ₊ - J₊J₋ρ - ρJ₊J₋),
e o propaga em tempo adimensional τ (unidades de T_class). Λ preserva o
deslocamento diagonal d = m1 - m2, e cada banda de deslocamento fixo é um
sistema linear bidiagonal inferior integrado de forma independente.
Contém também a evolução dispersiva exata gerada por H_eff = ħηJ₊J₋.
"""

from __future__ import annotations

import logging
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from superrad.config import Config
from superrad.models import (
    DickeVector,
    PhysicalParams,
    PropagationMethod,
    PropagatorConfig,
    SpinOperator,
    SpinSystem,
)
from superrad.services.spinalg import ladder_coefficients, ladder_squares, lowering_matrix
from superrad.utils.errors import ConvergenceError, DomainError, RegimeWarning
from superrad.utils.validators import exigir_tau_nao_negativo

logger = logging.getLogger(__name__)


# =============================================================================
# GERADOR
# =============================================================================

def _gerador(sys: SpinSystem, mat: np.ndarray) -> np.ndarray:
    if sys.two_j == 0:
        return np.zeros_like(mat, dtype=complex)
    c = ladder_coefficients(sys)
    c2 = ladder_squares(sys)
    saida = -(c2[:, None] + c2[None, :]) * mat
    saida[1:, 1:] += 2.0 * np.outer(c[:-1], c[:-1]) * mat[:-1, :-1]
    return saida / sys.two_j


def lindblad_apply(rho: SpinOperator) -> SpinOperator:
    """
    Aplica Λ elemento a elemento, sem produtos de matrizes densas.

    (Λρ)[k1,k2] = (1/2j)·[2·c[k1-1]·c[k2-1]·ρ[k1-1,k2-1] - (c²[k1] + c²[k2])·ρ[k1,k2]]

    Args:
        rho: Operador na base de Dicke (hermitiano ou não)

    Returns:
        Λρ
    """
    return SpinOperator(rho.sys, _gerador(rho.sys, rho.mat))


@lru_cache(maxsize=16)
def _superoperador(two_j: int) -> np.ndarray:
    sys = SpinSystem(two_j)
    if two_j == 0:
        return np.zeros((1, 1), dtype=complex)
    jm = lowering_matrix(sys).mat
    jp = jm.conj().T
    jpjm = jp @ jm
    identidade = np.eye(sys.dim, dtype=complex)
    # vetorização por linhas: vec(AρB) = (A ⊗ Bᵀ)·vec(ρ)
    sup = (
        2.0 * np.kron(jm, jp.T) - np.kron(jpjm, identidade) - np.kron(identidade, jpjm.T)
    ) / two_j
    sup.setflags(write=False)
    return sup


def lindblad_superoperator(sys: SpinSystem) -> np.ndarray:
    """
    Matriz densa dim²×dim² de Λ na vetorização por linhas (ρ.ravel()).

    Usada apenas como oráculo para j pequeno.
    """
    return _superoperador(sys.two_j)


# =============================================================================
# BANDAS
# =============================================================================

@dataclass(frozen=True)
class _Banda:
    offset: int
    linhas: np.ndarray
    colunas: np.ndarray
    decaimento: np.ndarray
    alimentacao: np.ndarray


@lru_cache(maxsize=16)
def _bandas(two_j: int) -> tuple[_Banda, ...]:
    sys = SpinSystem(two_j)
    c = ladder_coefficients(sys)
    c2 = ladder_squares(sys)
    bandas = []
    for offset in range(-(sys.dim - 1), sys.dim):
        tamanho = sys.dim - abs(offset)
        i = np.arange(tamanho)
        linhas = i + max(-offset, 0)
        colunas = i + max(offset, 0)
        decaimento = (c2[linhas] + c2[colunas]) / two_j
        # o primeiro elemento da banda está na borda da matriz e não é alimentado
        alimentacao = 2.0 * c[linhas[1:] - 1] * c[colunas[1:] - 1] / two_j
        for arr in (linhas, colunas, decaimento, alimentacao):
            arr.setflags(write=False)
        bandas.append(_Banda(offset, linhas, colunas, decaimento, alimentacao))
    return tuple(bandas)


def _integrar_banda(
    banda: _Banda,
    y0: np.ndarray,
    tempos: np.ndarray,
    cfg: PropagatorConfig,
    passo_max: float,
) -> np.ndarray:
    a = banda.decaimento
    b = banda.alimentacao

    def derivada(_t, y):
        dy = -a * y
        dy[1:] += b * y[:-1]
        return dy

    sol = solve_ivp(
        derivada,
        (0.0, float(tempos[-1])),
        y0,
        method=Config.METODO_RK,
        t_eval=tempos,
        rtol=cfg.rel_tol,
        atol=cfg.abs_tol,
        max_step=passo_max,
    )
    if sol.status != 0 or sol.y.shape[1] != len(tempos):
        alcancado = float(sol.t[-1]) if sol.t.size else 0.0
        raise ConvergenceError(f"banda d={banda.offset}: {sol.message}", alcancado)
    logger.debug("banda d=%d: %d avaliações", banda.offset, sol.nfev)
    return sol.y


def _evoluir_adaptativo(sys, mat, tempos, cfg) -> np.ndarray:
    saida = np.zeros((len(tempos), sys.dim, sys.dim), dtype=complex)
    # bandas nulas permanecem nulas exatamente
    ativas = [b for b in _bandas(sys.two_j) if np.any(mat[b.linhas, b.colunas])]
    passo = cfg.passo_maximo(sys)

    def tarefa(banda):
        return _integrar_banda(banda, mat[banda.linhas, banda.colunas], tempos, cfg, passo)

    if cfg.workers > 1 and len(ativas) > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            resultados = list(pool.map(tarefa, ativas))
    else:
        resultados = [tarefa(banda) for banda in ativas]

    for banda, y in zip(ativas, resultados):
        saida[:, banda.linhas, banda.colunas] = y.T
    logger.debug("propagação adaptativa: %d de %d bandas ativas", len(ativas), 2 * sys.dim - 1)
    return saida


def _passo_rk4(sys, mat, h):
    k1 = _gerador(sys, mat)
    k2 = _gerador(sys, mat + 0.5 * h * k1)
    k3 = _gerador(sys, mat + 0.5 * h * k2)
    k4 = _gerador(sys, mat + h * k3)
    return mat + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _evoluir_rk4(sys, mat, tempos, cfg) -> np.ndarray:
    saida = np.zeros((len(tempos), sys.dim, sys.dim), dtype=complex)
    passo = cfg.passo_maximo(sys)
    atual = np.array(mat, dtype=complex)
    t_atual = 0.0
    for i, t in enumerate(tempos):
        intervalo = float(t) - t_atual
        n_passos = max(1, math.ceil(abs(intervalo) / passo - 1e-12))
        h = intervalo / n_passos
        for _ in range(n_passos):
            atual = _passo_rk4(sys, atual, h)
        if not np.all(np.isfinite(atual)):
            raise ConvergenceError("RK4 de passo fixo divergiu", t_atual)
        saida[i] = atual
        t_atual = float(t)
    return saida


def _evoluir_denso(sys, mat, tempos) -> np.ndarray:
    sup = lindblad_superoperator(sys)
    vec = np.asarray(mat, dtype=complex).ravel()
    return np.stack([(expm(sup * float(t)) @ vec).reshape(sys.dim, sys.dim) for t in tempos])


def _evoluir(sys: SpinSystem, mat: np.ndarray, tempos: np.ndarray, cfg: PropagatorConfig) -> np.ndarray:
    # tempos: não nulos, do mesmo sinal, em |t| crescente
    if sys.two_j == 0:
        return np.repeat(np.asarray(mat, dtype=complex)[None], len(tempos), axis=0)
    if cfg.method is PropagationMethod.ADAPTIVE_RK:
        return _evoluir_adaptativo(sys, mat, tempos, cfg)
    if cfg.method is PropagationMethod.FIXED_RK4:
        return _evoluir_rk4(sys, mat, tempos, cfg)
    return _evoluir_denso(sys, mat, tempos)


# =============================================================================
# PROPAGAÇÃO
# =============================================================================

def propagate_signed(
    rho0: SpinOperator,
    taus: Iterable[float],
    cfg: PropagatorConfig | None = None,
) -> list[SpinOperator]:
    """
    Propaga para tempos de qualquer sinal (τ < 0 integra para trás).

    Usado pelas diferenças finitas centradas; a API pública exige τ ≥ 0.

    Args:
        rho0: Operador inicial
        taus: Tempos adimensionais, em qualquer ordem
        cfg: Configuração do propagador (padrão se None)

    Returns:
        Operadores propagados, na ordem de taus
    """
    cfg = cfg or PropagatorConfig()
    taus = [float(t) for t in taus]
    resultados: dict[float, np.ndarray] = {}
    for sinal in (1.0, -1.0):
        tempos = sorted({t for t in taus if t * sinal > 0}, key=abs)
        if tempos:
            mats = _evoluir(rho0.sys, rho0.mat, np.array(tempos), cfg)
            resultados.update(zip(tempos, mats))
    return [
        SpinOperator(rho0.sys, resultados[t] if t != 0.0 else rho0.mat) for t in taus
    ]


def propagate_samples(
    rho0: SpinOperator,
    taus: Sequence[float],
    cfg: PropagatorConfig | None = None,
) -> list[SpinOperator]:
    """
    Calcula e^{Λτ}ρ₀ para vários τ com uma única integração por banda.

    Args:
        rho0: Operador inicial
        taus: Tempos adimensionais não negativos, em qualquer ordem
        cfg: Configuração do propagador

    Returns:
        Lista de operadores propagados, na ordem de taus (τ = 0 devolve ρ₀)

    Raises:
        DomainError: Se algum τ for negativo
        ConvergenceError: Se o integrador falhar
    """
    taus = [exigir_tau_nao_negativo(t) for t in taus]
    return propagate_signed(rho0, taus, cfg)


def propagate(rho0: SpinOperator, tau: float, cfg: PropagatorConfig | None = None) -> SpinOperator:
    """
    Calcula e^{Λτ}ρ₀ dentro das tolerâncias de cfg.

    Args:
        rho0: Operador inicial
        tau: Tempo adimensional (τ ≥ 0)
        cfg: Configuração do propagador

    Returns:
        Operador propagado

    Raises:
        DomainError: Se tau < 0
        ConvergenceError: Se o passo do integrador degenerar, com o τ alcançado
    """
    return propagate_samples(rho0, [tau], cfg)[0]


# =============================================================================
# EVOLUÇÃO DISPERSIVA
# =============================================================================

def check_regime(params: PhysicalParams) -> dict[str, bool]:
    """
    Confere as condições de validade e emite RegimeWarning para as violadas.

    Args:
        params: Parâmetros físicos

    Returns:
        Dicionário com os indicadores superradiance_valid e dispersive_valid
    """
    if not params.superradiance_valid:
        warnings.warn(
            f"kappa={params.kappa!r} não é muito maior que g·√N={params.g * math.sqrt(params.n_atoms)!r}",
            RegimeWarning,
            stacklevel=2,
        )
    if not params.dispersive_valid:
        warnings.warn(
            f"|delta|={abs(params.delta)!r} não é muito maior que kappa={params.kappa!r}",
            RegimeWarning,
            stacklevel=2,
        )
    return {
        "superradiance_valid": params.superradiance_valid,
        "dispersive_valid": params.dispersive_valid,
    }


def dispersive_phases(sys: SpinSystem, params: PhysicalParams, t: float) -> np.ndarray:
    """
    Diagonal de exp(-i·H_eff·t/ħ) na base de Dicke: e^{-iηt(j+m)(j-m+1)}.

    Args:
        sys: Sistema de spin
        params: Parâmetros físicos (fornecem η)
        t: Tempo de laboratório em segundos

    Returns:
        Vetor complexo de fases, indexado por k = j - m
    """
    return np.exp(-1j * (params.eta * float(t)) * ladder_squares(sys))


def propagate_dispersive(psi: DickeVector, params: PhysicalParams, t: float) -> DickeVector:
    """
    Evolução unitária exata sob H_eff = ħηJ₊J₋.

    Emite RegimeWarning (sem falhar) se a cavidade não estiver fortemente dessintonizada.

    Args:
        psi: Estado inicial
        params: Parâmetros físicos
        t: Tempo em segundos

    Returns:
        Estado evoluído
    """
    if not params.dispersive_valid:
        warnings.warn(
            f"regime dispersivo fora da validade: |delta|={abs(params.delta)!r}, kappa={params.kappa!r}",
            RegimeWarning,
            stacklevel=2,
        )
    return DickeVector(psi.sys, psi.amp * dispersive_phases(psi.sys, params, t))


def classical_time(params: PhysicalParams, tau: float) -> float:
    """Tempo de laboratório t = τ·T_class, em segundos."""
    if not math.isfinite(float(tau)):
        raise DomainError(f"tau deve ser finito: {tau!r}")
    return params.tau_to_seconds(tau)
