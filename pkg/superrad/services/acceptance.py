"""
Bateria de verificação do simulador.

Cada critério propaga casos de referência, compara com as fórmulas
fechadas ou com o oráculo denso e devolve um resultado com o valor medido
e o limite aplicado. O comando verify executa a bateria e resume o
resultado em formato legível por máquina.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from superrad.models import (
    CoherentSpec,
    FitModel,
    NormKind,
    PhysicalParams,
    PropagationMethod,
    PropagatorConfig,
    SpinOperator,
    SpinSystem,
)
from superrad.services import analytics
from superrad.services.cats import (
    multi_component_azimuths,
    multi_component_times,
    prepare_steps,
    two_component_superposition,
)
from superrad.services.dynamics import propagate, propagate_dispersive, propagate_samples
from superrad.services.experiments import ajustar_taxa_n2
from superrad.services.observables import (
    component_capture,
    initial_slope,
    norm_abs,
    norm_hs,
    symmetric_decomposition,
)
from superrad.services.spinalg import (
    basis_vector,
    coherent_vector,
    commutator,
    density_matrix,
    dyad,
    jz_matrix,
    lowering_matrix,
    overlap,
    raising_matrix,
    rotation_matrix,
)
from superrad.utils.errors import SuperradError

logger = logging.getLogger(__name__)

SEMENTE = 20240601

# Pares γ da decoerência rápida, longe dos polos
PARES_RAPIDOS = ((1.0, 4.0), (1.0, 5.0), (1.0, 6.0), (1.25, 5.0), (0.9, 5.0))
GAMMAS_SIMETRICOS = (1.0, 1.5, 2.0, 3.0)
GAMMAS_DIAGONAIS = (0.5, 1.0, 2.0)


@dataclass(frozen=True)
class CriterioResultado:
    """Resultado de um critério: valor medido, limite e detalhe legível."""

    numero: int
    nome: str
    passou: bool
    medido: float
    limite: float
    detalhe: str

    def resumo(self) -> dict:
        return {
            "numero": self.numero,
            "nome": self.nome,
            "passou": self.passou,
            "medido": self.medido,
            "limite": self.limite,
            "detalhe": self.detalhe,
        }


# =============================================================================
# FUNÇÕES AUXILIARES
# =============================================================================

def _dyad_coerente(theta1, phi1, theta2, phi2, sys) -> SpinOperator:
    return dyad(coherent_vector(CoherentSpec(theta1, phi1), sys), coherent_vector(CoherentSpec(theta2, phi2), sys))


def _dyad_gamma(gamma1: float, gamma2: float, sys: SpinSystem) -> SpinOperator:
    return dyad(
        coherent_vector(CoherentSpec.from_gamma(gamma1), sys),
        coherent_vector(CoherentSpec.from_gamma(gamma2), sys),
    )


def _operador_aleatorio(rng: np.random.Generator, sys: SpinSystem, hermitiano: bool) -> SpinOperator:
    mat = rng.normal(size=(sys.dim, sys.dim)) + 1j * rng.normal(size=(sys.dim, sys.dim))
    if hermitiano:
        mat = (mat + mat.conj().T) / 2.0
    return SpinOperator(sys, mat)


def _densidade_aleatoria(rng: np.random.Generator, sys: SpinSystem) -> SpinOperator:
    a = rng.normal(size=(sys.dim, sys.dim)) + 1j * rng.normal(size=(sys.dim, sys.dim))
    rho = a @ a.conj().T
    return SpinOperator(sys, rho / np.trace(rho))


def _parametros_dispersivos(sys: SpinSystem) -> PhysicalParams:
    return PhysicalParams(g=0.01, kappa=1.0, delta=100.0, n_atoms=sys.two_j)


# =============================================================================
# CRITÉRIOS
# =============================================================================

def criterio_gato_polar(cfg: PropagatorConfig) -> CriterioResultado:
    """N₁ = e^{-2τ} e N₂ = e^{-τ} exatos para a díade polar, j ∈ {5, 10, 25}."""
    pior = 0.0
    taus = np.linspace(0.0, 3.0, 31)
    for j in (5, 10, 25):
        sys = SpinSystem.from_j(j)
        diade = dyad(basis_vector(sys, sys.j), basis_vector(sys, -sys.j))
        for tau, rho in zip(taus, propagate_samples(diade, taus, cfg)):
            n1_ref, n2_ref = analytics.polar_cat_norms(tau)
            pior = max(pior, abs(norm_hs(rho) - n1_ref), abs(norm_abs(rho) - n2_ref))
    return CriterioResultado(1, "gato polar exato", pior <= 1e-8, pior, 1e-8, "máximo desvio absoluto de N₁ e N₂")


def triplas_derivada() -> list[tuple[float, float, float]]:
    """Grade fixa de 25 triplas (θ1, θ2, Δφ)."""
    thetas = (0.3, 0.9, math.pi / 2.0, 2.2, 2.8)
    deltas = (0.0, math.pi / 3.0, math.pi / 2.0, 2.0 * math.pi / 3.0, math.pi)
    return [
        (t1, t2, deltas[(i + k) % len(deltas)])
        for i, t1 in enumerate(thetas)
        for k, t2 in enumerate(thetas)
    ]


def criterio_derivada_inicial(cfg: PropagatorConfig) -> CriterioResultado:
    """Derivada inicial de N₁ por diferença finita contra a previsão fechada."""
    pior = 0.0
    pior_caso = ""
    for j in (10, 40):
        sys = SpinSystem.from_j(j)
        for theta1, theta2, delta_phi in triplas_derivada():
            estimativa = initial_slope(_dyad_coerente(theta1, 0.0, theta2, delta_phi, sys), NormKind.N1, cfg)
            previsto = analytics.n1_initial_slope(theta1, 0.0, theta2, delta_phi, j).total
            desvio = abs(estimativa.slope - previsto) / max(abs(previsto), 1.0)
            if desvio > pior:
                pior = desvio
                pior_caso = f"j={j} θ1={theta1:.4f} θ2={theta2:.4f} Δφ={delta_phi:.4f}"
    return CriterioResultado(2, "derivada inicial de N₁", pior <= 1e-4, pior, 1e-4, f"pior caso {pior_caso}")


def criterio_decoerencia_rapida(cfg: PropagatorConfig) -> CriterioResultado:
    """Taxa de N₂ ajustada em jτ ≤ 0.1 contra o coeficiente O(j), tolerância 5/j."""
    pior = 0.0
    passou = True
    detalhes = []
    for j in (50, 100):
        sys = SpinSystem.from_j(j)
        for g1, g2 in PARES_RAPIDOS:
            ajuste = ajustar_taxa_n2(_dyad_gamma(g1, g2, sys), 0.1, 20, FitModel.LINEAR, cfg)
            previsto = analytics.n2_rate_general(g1, g2, j)
            relativo = abs(ajuste.rate - previsto) / previsto
            passou &= relativo <= 5.0 / j
            pior = max(pior, relativo * j)
            detalhes.append(f"j={j} γ=({g1},{g2}): {ajuste.rate:.4f}/{previsto:.4f}")
    return CriterioResultado(3, "decoerência rápida", passou, pior, 5.0, "; ".join(detalhes))


def criterio_pares_simetricos(cfg: PropagatorConfig) -> CriterioResultado:
    """Pares γ2 = 1/γ1: termo linear dentro de 10/j e independência de j."""
    passou = True
    pior = 0.0
    detalhes = []
    for g1 in GAMMAS_SIMETRICOS:
        linear_previsto, quadratico_previsto = analytics.n2_rates_symmetric(g1)
        taxas = {}
        for j in (50, 100):
            ajuste = ajustar_taxa_n2(
                _dyad_gamma(g1, 1.0 / g1, SpinSystem.from_j(j)), 0.1, 20, FitModel.QUADRATIC, cfg
            )
            taxas[j] = ajuste.rate
            desvio = abs(ajuste.rate - linear_previsto) / max(linear_previsto, 1.0)
            passou &= desvio <= 10.0 / j
            pior = max(pior, desvio * j)
            detalhes.append(
                f"j={j} γ1={g1}: linear {ajuste.rate:.4f}/{linear_previsto:.4f}, "
                f"quadrático {ajuste.quadratic:.4g}/{quadratico_previsto:.4f}"
            )
        variacao = abs(taxas[50] - taxas[100])
        passou &= variacao <= 0.25 * max(taxas[100], 0.1)
    return CriterioResultado(4, "pares simétricos de vida longa", passou, pior, 10.0, "; ".join(detalhes))


def criterio_estados_diagonais(cfg: PropagatorConfig) -> CriterioResultado:
    """Taxa inicial de N₂ para |γ⟩⟨γ| em j = 100 contra ((γ²-1)/(γ²+1))²."""
    j = 100
    sys = SpinSystem.from_j(j)
    pior = 0.0
    detalhes = []
    for gamma in GAMMAS_DIAGONAIS:
        ajuste = ajustar_taxa_n2(_dyad_gamma(gamma, gamma, sys), 0.1, 20, FitModel.LINEAR, cfg)
        previsto = analytics.n2_initial_rate_diagonal(gamma)
        desvio = abs(ajuste.rate - previsto) / max(previsto, 1.0)
        pior = max(pior, desvio)
        detalhes.append(
            f"γ={gamma}: {ajuste.rate:.4f}/{previsto:.4f} (forma γ⁴: {analytics.n2_rate_diagonal(gamma):.4f})"
        )
    return CriterioResultado(5, "estados coerentes diagonais", pior <= 10.0 / j, pior, 10.0 / j, "; ".join(detalhes))


def criterio_gato_dispersivo(cfg: PropagatorConfig) -> CriterioResultado:
    """Evolução dispersiva: duas componentes em π/(2η), quatro em π/(4η)."""
    theta, phi = math.pi / 3.0, 0.4
    pior = 0.0
    for j in (5, 5.5, 10):
        sys = SpinSystem.from_j(j)
        params = _parametros_dispersivos(sys)
        psi = coherent_vector(CoherentSpec(theta, phi), sys)

        duas = propagate_dispersive(psi, params, multi_component_times(params, 2))
        fidelidade = abs(overlap(two_component_superposition(theta, phi, sys), duas)) ** 2
        pior = max(pior, 1.0 - fidelidade)

        quatro = propagate_dispersive(psi, params, multi_component_times(params, 4))
        componentes = [CoherentSpec(theta, az) for az in multi_component_azimuths(phi, sys.two_j, 4)]
        pior = max(pior, 1.0 - component_capture(quatro, componentes))
    return CriterioResultado(6, "gatos dispersivos", pior <= 1e-10, pior, 1e-10, "j ∈ {5, 5.5, 10}; 1 - fidelidade")


def criterio_preparacao(cfg: PropagatorConfig) -> CriterioResultado:
    """Saída da preparação decompõe-se num par simétrico {θ', π-θ'}."""
    sys = SpinSystem.from_j(10)
    params = _parametros_dispersivos(sys)
    pior = 0.0
    detalhes = []
    for theta in (math.pi / 6.0, math.pi / 3.0, math.pi / 2.0):
        traco = prepare_steps(theta, 0.3, params, sys)
        captura, theta_linha, phi_linha = symmetric_decomposition(traco.final)
        pior = max(pior, 1.0 - captura)
        detalhes.append(f"θ={theta:.4f}: θ'={theta_linha:.6f} φ''={phi_linha:.6f}")
    return CriterioResultado(7, "preparação de gatos simétricos", pior <= 1e-8, pior, 1e-8, "; ".join(detalhes))


def criterio_oraculo(cfg: PropagatorConfig) -> CriterioResultado:
    """Propagador por bandas contra a exponencial densa do superoperador."""
    rng = np.random.default_rng(SEMENTE)
    oraculo = PropagatorConfig(method=PropagationMethod.DENSE_EXPM_ORACLE)
    pior = 0.0
    for indice, j in enumerate((0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4, 4.5, 5)):
        sys = SpinSystem.from_j(j)
        rho0 = _operador_aleatorio(rng, sys, hermitiano=indice % 2 == 0)
        taus = (0.1, 1.0)
        for banda, denso in zip(propagate_samples(rho0, taus, cfg), propagate_samples(rho0, taus, oraculo)):
            pior = max(pior, float(np.max(np.abs(banda.mat - denso.mat))))
    return CriterioResultado(8, "oráculo denso", pior <= 1e-9, pior, 1e-9, "10 operadores aleatórios, τ ∈ {0.1, 1}")


def criterio_propriedades(cfg: PropagatorConfig) -> CriterioResultado:
    """Traço, hermiticidade, positividade, bandas, estacionariedade, su(2), rotações e limite clássico."""
    rng = np.random.default_rng(SEMENTE + 1)
    falhas = []

    sys3 = SpinSystem.from_j(3)
    rho = _densidade_aleatoria(rng, sys3)
    for tau in (0.5, 5.0):
        if abs(propagate(rho, tau, cfg).trace() - 1.0) >= 1e-10:
            falhas.append(f"traço τ={tau}")

    nao_hermitiano = _operador_aleatorio(rng, sys3, hermitiano=False)
    direto = propagate(nao_hermitiano, 0.7, cfg).dagger().mat
    adjunto = propagate(nao_hermitiano.dagger(), 0.7, cfg).mat
    if np.max(np.abs(direto - adjunto)) > 1e-10:
        falhas.append("hermiticidade")

    for j in (2, 5, 10):
        densidade = _densidade_aleatoria(rng, SpinSystem.from_j(j))
        if np.min(np.linalg.eigvalsh(propagate(densidade, 0.5, cfg).mat)) < -1e-9:
            falhas.append(f"positividade j={j}")

    sys4 = SpinSystem.from_j(4)
    mat = np.zeros((sys4.dim, sys4.dim), dtype=complex)
    idx = np.arange(sys4.dim - 2)
    mat[idx, idx + 2] = rng.normal(size=idx.size)
    banda = propagate(SpinOperator(sys4, mat), 1.0, cfg).mat
    fora = np.ones_like(banda, dtype=bool)
    fora[idx, idx + 2] = False
    if np.any(banda[fora] != 0):
        falhas.append("invariância de banda")

    sys6 = SpinSystem.from_j(6)
    fundamental = density_matrix(basis_vector(sys6, -sys6.j))
    if np.max(np.abs(propagate(fundamental, 3.0, cfg).mat - fundamental.mat)) > 1e-14:
        falhas.append("estacionariedade")

    for two_j in range(0, 21):
        sys = SpinSystem(two_j)
        jp, jm, jz = raising_matrix(sys), lowering_matrix(sys), jz_matrix(sys)
        if np.max(np.abs(commutator(jp, jm).mat - 2.0 * jz.mat)) > 1e-12:
            falhas.append(f"su(2) j={sys.j}")
            break

    u = rotation_matrix(SpinSystem.from_j(7), 0.7, 1.3).mat
    if np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))) > 1e-12:
        falhas.append("unitariedade da rotação")

    desvio_classico = _desvio_limite_classico(cfg)
    if desvio_classico > 5.0 / math.sqrt(100):
        falhas.append(f"limite clássico ({desvio_classico:.3g})")

    detalhe = "todas as propriedades conferem" if not falhas else "falhas: " + ", ".join(falhas)
    return CriterioResultado(9, "propriedades", not falhas, float(len(falhas)), 0.0, detalhe)


def _desvio_limite_classico(cfg: PropagatorConfig, theta0: float = 0.9, j: int = 100) -> float:
    """
    Máximo |arccos(⟨J_z⟩/j) - θ(τ)| para τ ≤ 2.

    ⟨J_z⟩ só depende da banda diagonal, que evolui sozinha; basta propagar as populações.
    """
    sys = SpinSystem.from_j(j)
    populacoes = np.abs(coherent_vector(CoherentSpec(theta0, 0.0), sys).amp) ** 2
    rho0 = SpinOperator(sys, np.diag(populacoes))
    taus = np.linspace(0.0, 2.0, 11)
    pior = 0.0
    for tau, rho in zip(taus, propagate_samples(rho0, taus, cfg)):
        jz = float(np.real(np.trace(rho.mat @ jz_matrix(sys).mat)))
        theta = math.acos(min(1.0, max(-1.0, jz / sys.j)))
        pior = max(pior, abs(theta - analytics.classical_theta(theta0, tau)))
    return pior


CRITERIOS: dict[int, Callable[[PropagatorConfig], CriterioResultado]] = {
    1: criterio_gato_polar,
    2: criterio_derivada_inicial,
    3: criterio_decoerencia_rapida,
    4: criterio_pares_simetricos,
    5: criterio_estados_diagonais,
    6: criterio_gato_dispersivo,
    7: criterio_preparacao,
    8: criterio_oraculo,
    9: criterio_propriedades,
}


def executar_verificacao(
    cfg: PropagatorConfig | None = None,
    numeros: Iterable[int] | None = None,
) -> list[CriterioResultado]:
    """
    Executa os critérios pedidos (todos por padrão), em ordem.

    Erros numéricos dentro de um critério viram falha do critério, não da bateria.

    Args:
        cfg: Configuração do propagador sob teste
        numeros: Números dos critérios a executar

    Returns:
        Lista de resultados na ordem dos números
    """
    cfg = cfg or PropagatorConfig()
    selecionados = sorted(set(numeros)) if numeros else sorted(CRITERIOS)
    resultados = []
    for numero in selecionados:
        funcao = CRITERIOS[numero]
        inicio = time.perf_counter()
        try:
            resultado = funcao(cfg)
        except SuperradError as exc:
            resultado = CriterioResultado(numero, funcao.__name__, False, math.nan, math.nan, f"erro: {exc}")
        logger.info("critério %d: %.2f s", numero, time.perf_counter() - inicio)
        resultados.append(resultado)
    return resultados
