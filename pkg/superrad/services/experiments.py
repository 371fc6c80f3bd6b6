"""
Execução dos experimentos da linha de comando.

Monta as tabelas de evolução temporal, de varredura de taxas de
decaimento e de preparação de gatos a partir de uma RunConfig.
"""

from __future__ import annotations

import dataclasses
import logging
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from superrad.models import (
    CatSpec,
    CoherentSpec,
    DickeVector,
    InitialState,
    NormKind,
    RunConfig,
    SpinOperator,
    SpinSystem,
)
from superrad.services import analytics
from superrad.services.cats import build_cat, prepare_steps, two_component_superposition
from superrad.services.dynamics import check_regime, propagate, propagate_samples
from superrad.services.observables import (
    bloch_vector,
    component_capture,
    fit_decay,
    initial_slope,
    norm_abs,
    norm_hs,
    purity,
    symmetric_decomposition,
)
from superrad.services.result_writer import TabelaResultados
from superrad.services.spinalg import (
    basis_vector,
    coherent_vector,
    density_matrix,
    dyad,
    overlap,
    require_real_gamma,
)
from superrad.utils.errors import ConfigError, ConvergenceError, DomainError, SuperradError, coletar_falha
from superrad.utils.formatters import formatar_amplitudes

logger = logging.getLogger(__name__)

COLUNAS_EVOLUCAO = ["tau", "n1", "n2", "n1_ref", "n2_ref", "jz_sobre_j", "jz_ref", "pureza", "status"]

COLUNAS_VARREDURA = [
    "j",
    "gamma1",
    "gamma2",
    "tipo",
    "taxa_ajustada",
    "taxa_inicial",
    "quadratico_ajustado",
    "taxa_prevista",
    "quadratico_previsto",
    "taxa_diagonal_gamma4",
    "desvio_relativo",
    "residuo",
]

COLUNAS_PREPARACAO = [
    "passo",
    "descricao",
    "jx",
    "jy",
    "jz",
    "norma",
    "fidelidade_duas_componentes",
    "captura_par_previsto",
    "captura_simetrica",
    "theta_linha",
    "phi_linha",
    "fidelidade_gato_polar",
]

NAN = float("nan")


# =============================================================================
# FUNÇÕES AUXILIARES
# =============================================================================

def _exigir_sistema(cfg: RunConfig) -> SpinSystem:
    if cfg.sys is None:
        raise ConfigError("j ou n_atoms é obrigatório", campo="j")
    if cfg.sys.two_j == 0:
        raise ConfigError("j deve ser positivo", campo="j")
    return cfg.sys


def _gamma_real_ou_none(spec: CoherentSpec) -> float | None:
    try:
        return require_real_gamma(spec)
    except DomainError:
        return None


def fidelidade_gato_polar(psi: DickeVector) -> float:
    """max_χ |⟨ψ|(|j,j⟩ + e^{iχ}|j,-j⟩)/√2⟩|² = (|ψ₀| + |ψ_último|)²/2."""
    return float((abs(psi.amp[0]) + abs(psi.amp[-1])) ** 2 / 2.0)


@dataclasses.dataclass(frozen=True, eq=False)
class _EstadoInicial:
    estado: DickeVector
    diade: SpinOperator
    referencia: str
    gamma1: float | None = None
    gamma2: float | None = None
    theta0: float | None = None


def _estado_inicial(cfg: RunConfig, sys: SpinSystem) -> _EstadoInicial:
    if cfg.estado is None:
        raise ConfigError("estado inicial obrigatório (coherent, cat, polar_cat ou prepared)", campo="estado")

    if cfg.estado is InitialState.COHERENT:
        spec = cfg.coherent or CoherentSpec(math.pi / 2.0, 0.0)
        psi = coherent_vector(spec, sys)
        return _EstadoInicial(psi, density_matrix(psi), "coerente", theta0=spec.theta)

    if cfg.estado is InitialState.POLAR_CAT:
        norte = basis_vector(sys, sys.j)
        sul = basis_vector(sys, -sys.j)
        psi = build_cat(CatSpec(CoherentSpec(0.0), CoherentSpec(math.pi)), sys)
        return _EstadoInicial(psi, dyad(norte, sul), "polar")

    if cfg.estado is InitialState.CAT:
        if cfg.cat is None:
            raise ConfigError("estado=cat exige theta1 e theta2", campo="theta1")
        psi = build_cat(cfg.cat, sys)
        diade = dyad(coherent_vector(cfg.cat.a, sys), coherent_vector(cfg.cat.b, sys))
        # |j,-j⟩⟨j,j| é o adjunto de |j,j⟩⟨j,-j| e tem as mesmas normas
        if {cfg.cat.a.theta, cfg.cat.b.theta} == {0.0, math.pi}:
            return _EstadoInicial(psi, diade, "polar")
        g1 = _gamma_real_ou_none(cfg.cat.a)
        g2 = _gamma_real_ou_none(cfg.cat.b)
        referencia = "semiclassica" if g1 is not None and g2 is not None else "nenhuma"
        return _EstadoInicial(psi, diade, referencia, gamma1=g1, gamma2=g2)

    # prepared
    if cfg.params is None:
        raise ConfigError("estado=prepared exige g, kappa e delta", campo="g")
    spec = cfg.coherent or CoherentSpec(math.pi / 2.0, 0.0)
    traco = prepare_steps(spec.theta, spec.phi, cfg.params, sys)
    norte, sul = traco.final_pair
    diade = dyad(coherent_vector(norte, sys), coherent_vector(sul, sys))
    if norte.theta == 0.0:
        return _EstadoInicial(traco.final, diade, "polar")
    # Λ é invariante por rotação em φ: o par vale o mesmo que o par real γ, 1/γ
    g1 = math.tan(norte.theta / 2.0)
    return _EstadoInicial(traco.final, diade, "semiclassica", gamma1=g1, gamma2=1.0 / g1)


def _referencias(inicial: _EstadoInicial, sys: SpinSystem, tau: float, n2_inicial: float) -> tuple[float, float, float]:
    n1_ref = n2_ref = jz_ref = NAN
    if inicial.referencia == "polar":
        n1_ref, n2_ref = analytics.polar_cat_norms(tau)
    elif inicial.referencia == "semiclassica":
        g1, g2 = inicial.gamma1, inicial.gamma2
        if abs(g1 * g2 - 1.0) <= 1e-12:
            n2_ref = n2_inicial * analytics.n2_ratio_symmetric(g1, tau)
        else:
            n2_ref = n2_inicial * analytics.n2_ratio_general(g1, g2, sys.j, tau)
    elif inicial.referencia == "coerente":
        jz_ref = analytics.classical_jz(inicial.theta0, tau)
    return n1_ref, n2_ref, jz_ref


# =============================================================================
# EVOLUÇÃO
# =============================================================================

def run_evolve(cfg: RunConfig) -> tuple[TabelaResultados, ConvergenceError | None]:
    """
    Evolui o estado inicial e tabela N₁, N₂, referências analíticas, ⟨J_z⟩/j e pureza.

    A evolução avança amostra a amostra; se o integrador falhar, as linhas já
    calculadas são mantidas e marcadas como parciais.

    Args:
        cfg: Configuração de execução

    Returns:
        Tupla (tabela, erro de convergência ou None)
    """
    sys = _exigir_sistema(cfg)
    inicial = _estado_inicial(cfg, sys)
    taus = cfg.tau_grid()
    mesma = cfg.estado is InitialState.COHERENT

    diade = inicial.diade
    estado = density_matrix(inicial.estado)
    n2_inicial = norm_abs(diade)
    linhas: list[dict] = []
    erro: ConvergenceError | None = None
    tau_anterior = 0.0

    for tau in taus:
        tau = float(tau)
        try:
            if tau > tau_anterior:
                passo = tau - tau_anterior
                diade = propagate(diade, passo, cfg.propagator)
                estado = diade if mesma else propagate(estado, passo, cfg.propagator)
        except ConvergenceError as exc:
            erro = ConvergenceError(f"evolução interrompida: {exc}", tau_anterior + exc.tau_alcancado)
            logger.error("%s", erro)
            break
        tau_anterior = tau

        n1_ref, n2_ref, jz_ref = _referencias(inicial, sys, tau, n2_inicial)
        linhas.append({
            "tau": tau,
            "n1": norm_hs(diade),
            "n2": norm_abs(diade),
            "n1_ref": n1_ref,
            "n2_ref": n2_ref,
            "jz_sobre_j": bloch_vector(estado)[2] / sys.j,
            "jz_ref": jz_ref,
            "pureza": purity(estado),
            "status": "ok",
        })

    if erro is not None:
        for linha in linhas:
            linha["status"] = "parcial"

    metadados = {
        "comando": "evolve",
        "j": sys.j,
        "estado": cfg.estado.value,
        "metodo": cfg.propagator.method.value,
        "rel_tol": cfg.propagator.rel_tol,
        "abs_tol": cfg.propagator.abs_tol,
        "parcial": erro is not None,
    }
    return TabelaResultados(COLUNAS_EVOLUCAO, linhas, metadados), erro


# =============================================================================
# VARREDURA
# =============================================================================

def classificar_par(gamma1: float, gamma2: float) -> str:
    """simetrico (γ1γ2 = 1), diagonal (γ1 = γ2) ou geral."""
    if abs(gamma1 * gamma2 - 1.0) <= 1e-12:
        return "simetrico"
    if gamma1 == gamma2:
        return "diagonal"
    return "geral"


def ajustar_taxa_n2(
    diade: SpinOperator,
    janela_jtau: float,
    amostras: int,
    modelo,
    propagador,
):
    """
    Ajusta a taxa de decaimento de N₂ na janela jτ ∈ [0, janela_jtau].

    Returns:
        DecayFit do ajuste
    """
    tau_final = janela_jtau / diade.sys.j
    taus = np.linspace(0.0, tau_final, amostras)
    propagados = propagate_samples(diade, taus, propagador)
    return fit_decay([(float(t), norm_abs(r)) for t, r in zip(taus, propagados)], modelo)


def ponto_varredura(j: float, gamma1: float, gamma2: float, cfg: RunConfig, propagador) -> dict:
    """
    Calcula uma linha da varredura: taxa ajustada de N₂ e previsão analítica.

    Args:
        j: Número quântico de spin
        gamma1: γ real da primeira componente
        gamma2: γ real da segunda componente
        cfg: Configuração (janela, amostras, modelo)
        propagador: PropagatorConfig usada no ponto

    Returns:
        Dicionário com as colunas da varredura
    """
    sys = SpinSystem.from_j(j)
    diade = dyad(
        coherent_vector(CoherentSpec.from_gamma(gamma1), sys),
        coherent_vector(CoherentSpec.from_gamma(gamma2), sys),
    )
    ajuste = ajustar_taxa_n2(diade, cfg.janela_jtau, cfg.amostras_ajuste, cfg.modelo_ajuste, propagador)
    # -(dN₂/dτ)/N₂ em τ = 0
    taxa_inicial = -initial_slope(diade, NormKind.N2, propagador).slope / norm_abs(diade)

    tipo = classificar_par(gamma1, gamma2)
    quadratico_previsto = NAN
    taxa_gamma4 = NAN
    if tipo == "simetrico":
        taxa_prevista, quadratico_previsto = analytics.n2_rates_symmetric(gamma1)
    elif tipo == "diagonal":
        taxa_prevista = analytics.n2_initial_rate_diagonal(gamma1)
        taxa_gamma4 = analytics.n2_rate_diagonal(gamma1)
    else:
        taxa_prevista = analytics.n2_rate_general(gamma1, gamma2, j)

    return {
        "j": float(j),
        "gamma1": float(gamma1),
        "gamma2": float(gamma2),
        "tipo": tipo,
        "taxa_ajustada": ajuste.rate,
        "taxa_inicial": taxa_inicial,
        "quadratico_ajustado": ajuste.quadratic,
        "taxa_prevista": taxa_prevista,
        "quadratico_previsto": quadratico_previsto,
        "taxa_diagonal_gamma4": taxa_gamma4,
        "desvio_relativo": abs(ajuste.rate - taxa_prevista) / max(abs(taxa_prevista), 1.0),
        "residuo": ajuste.residual,
    }


def _grade_varredura(cfg: RunConfig) -> tuple[tuple[float, ...], tuple[tuple[float, float], ...]]:
    """
    Eixos da varredura; um eixo vazio usa o valor da configuração base.

    Sem sweep_j vale o j de base; sem sweep_gammas vale o par real (γ1, γ2)
    do gato de base.

    Raises:
        ConfigError: Se um eixo estiver vazio e a base não o definir
    """
    valores_j = cfg.sweep_j
    if not valores_j:
        if cfg.sys is None or cfg.sys.two_j == 0:
            raise ConfigError("grade de varredura vazia: defina sweep_j ou j", campo="sweep_j")
        valores_j = (cfg.sys.j,)

    pares = cfg.sweep_gammas
    if not pares:
        if cfg.cat is None:
            raise ConfigError(
                "grade de varredura vazia: defina sweep_gammas ou theta1/theta2", campo="sweep_gammas"
            )
        try:
            pares = ((require_real_gamma(cfg.cat.a), require_real_gamma(cfg.cat.b)),)
        except DomainError as exc:
            raise ConfigError(f"gato de base sem par γ real: {exc}", campo="theta1") from exc
    return valores_j, pares


def run_sweep(cfg: RunConfig) -> TabelaResultados:
    """
    Varre a grade j × pares γ e ajusta a taxa de N₂ de cada ponto.

    Cada eixo vazio cai no valor da configuração base. Pontos que falham
    viram linhas da aba de falhas; a ordem das linhas segue a grade,
    independentemente do número de workers.

    Args:
        cfg: Configuração com sweep_j e sweep_gammas

    Returns:
        Tabela da varredura

    Raises:
        ConfigError: Se a grade estiver vazia
    """
    valores_j, pares = _grade_varredura(cfg)
    pontos = [(j, g1, g2) for j in valores_j for (g1, g2) in pares]
    workers = cfg.propagator.workers
    # com pontos em paralelo, cada ponto propaga suas bandas em série
    propagador = dataclasses.replace(cfg.propagator, workers=1) if workers > 1 else cfg.propagator

    def tarefa(ponto):
        j, g1, g2 = ponto
        try:
            return ponto_varredura(j, g1, g2, cfg, propagador), None
        except SuperradError as exc:
            logger.warning("ponto j=%r γ=(%r, %r) falhou: %s", j, g1, g2, exc)
            return None, coletar_falha({"j": j, "gamma1": g1, "gamma2": g2}, exc)

    if workers > 1 and len(pontos) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            resultados = list(pool.map(tarefa, pontos))
    else:
        resultados = [tarefa(ponto) for ponto in pontos]

    linhas = [linha for linha, _ in resultados if linha is not None]
    falhas = [falha for _, falha in resultados if falha is not None]
    metadados = {
        "comando": "sweep",
        "janela_jtau": cfg.janela_jtau,
        "amostras_ajuste": cfg.amostras_ajuste,
        "modelo_ajuste": cfg.modelo_ajuste.value,
        "metodo": cfg.propagator.method.value,
    }
    return TabelaResultados(COLUNAS_VARREDURA, linhas, metadados, falhas)


# =============================================================================
# PREPARAÇÃO
# =============================================================================

def run_prepare(cfg: RunConfig) -> TabelaResultados:
    """
    Simula a preparação do gato de vida longa e diagnostica cada passo.

    Args:
        cfg: Configuração com j, theta, phi e parâmetros físicos

    Returns:
        Tabela com uma linha por passo e o despejo dos estados

    Raises:
        ConfigError: Se os parâmetros físicos estiverem ausentes
    """
    sys = _exigir_sistema(cfg)
    if cfg.estado is not None and cfg.estado is not InitialState.PREPARED:
        raise ConfigError("o comando prepare exige estado=prepared", campo="estado")
    if cfg.params is None:
        raise ConfigError("parâmetros físicos ausentes (g, kappa, delta)", campo="g")
    spec = cfg.coherent or CoherentSpec(math.pi / 2.0, 0.0)
    regime = check_regime(cfg.params)
    traco = prepare_steps(spec.theta, spec.phi, cfg.params, sys)

    def linha_base(passo, descricao, psi):
        jx, jy, jz = bloch_vector(density_matrix(psi))
        return {
            "passo": passo,
            "descricao": descricao,
            "jx": jx,
            "jy": jy,
            "jz": jz,
            "norma": psi.norm(),
            "fidelidade_duas_componentes": NAN,
            "captura_par_previsto": NAN,
            "captura_simetrica": NAN,
            "theta_linha": NAN,
            "phi_linha": NAN,
            "fidelidade_gato_polar": NAN,
        }

    linha1 = linha_base(1, "pulso ressonante", traco.after_rotation)

    linha2 = linha_base(2, "evolução dispersiva", traco.after_dispersive)
    esperado = two_component_superposition(spec.theta, spec.phi, sys)
    linha2["fidelidade_duas_componentes"] = abs(overlap(esperado, traco.after_dispersive)) ** 2

    linha3 = linha_base(3, "pulso pi/2", traco.final)
    captura, theta_linha, phi_linha = symmetric_decomposition(traco.final)
    linha3["captura_par_previsto"] = component_capture(traco.final, list(traco.final_pair))
    linha3["captura_simetrica"] = captura
    linha3["theta_linha"] = theta_linha
    linha3["phi_linha"] = phi_linha
    linha3["fidelidade_gato_polar"] = fidelidade_gato_polar(traco.final)

    estados = {
        "passo_1": formatar_amplitudes(traco.after_rotation.amp),
        "passo_2": formatar_amplitudes(traco.after_dispersive.amp),
        "passo_3": formatar_amplitudes(traco.final.amp),
    }
    metadados = {
        "comando": "prepare",
        "j": sys.j,
        "theta": spec.theta,
        "phi": spec.phi,
        "eta": cfg.params.eta,
        "t_class": cfg.params.t_class,
        "tempo_dispersivo": traco.dispersive_time,
        "theta_linha_previsto": traco.final_theta,
        "phi_linha_previsto": traco.final_phi,
        "superradiance_valid": regime["superradiance_valid"],
        "dispersive_valid": regime["dispersive_valid"],
    }
    return TabelaResultados(COLUNAS_PREPARACAO, [linha1, linha2, linha3], metadados, estados=estados)
