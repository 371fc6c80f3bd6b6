"""
Grandezas medidas sobre estados e operadores.

As duas normas de coerência (N₁ = tr ρρ† e N₂ = soma dos módulos na base de
Dicke), derivada inicial por diferença finita, ajuste de taxas de
decaimento, vetor de Bloch, ângulo numérico cos²α e decomposição de um
estado em componentes coerentes.
"""

from __future__ import annotations

import logging
import math
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from superrad.config import Config
from superrad.models import (
    CoherentSpec,
    DecayFit,
    DickeVector,
    FitModel,
    NormKind,
    PropagatorConfig,
    SlopeEstimate,
    SpinOperator,
    SpinSystem,
    DOIS_PI,
)
from superrad.services.dynamics import propagate_signed
from superrad.services.spinalg import (
    coherent_vector,
    jx_matrix,
    jy_matrix,
    jz_matrix,
    ladder_coefficients,
)
from superrad.utils.errors import DomainError, FitError

logger = logging.getLogger(__name__)


def norm_hs(rho: SpinOperator) -> float:
    """N₁ = Σ |ρ[k1,k2]|² (norma de Hilbert-Schmidt ao quadrado)."""
    return float(np.sum(np.abs(rho.mat) ** 2))


def norm_abs(rho: SpinOperator) -> float:
    """N₂ = Σ |ρ[k1,k2]|, dependente da base; sempre a base de Dicke."""
    return float(np.sum(np.abs(rho.mat)))


def evaluate_norm(rho: SpinOperator, norm: NormKind | str) -> float:
    """Avalia N₁ ou N₂ conforme o tipo pedido."""
    return norm_hs(rho) if NormKind(norm) is NormKind.N1 else norm_abs(rho)


def purity(rho: SpinOperator) -> float:
    """tr(ρ²) real, para matrizes densidade."""
    return float(np.real(np.trace(rho.mat @ rho.mat)))


def initial_slope(
    rho0: SpinOperator,
    norm: NormKind | str,
    cfg: PropagatorConfig | None = None,
) -> SlopeEstimate:
    """
    Derivada dN/dτ em τ = 0 por diferença centrada com extrapolação de Richardson.

    Com h = 1e-3/(j+1), D(h) = (N(h) - N(-h))/2h e o valor devolvido é
    (4·D(h/2) - D(h))/3; a estimativa de erro é |resultado - D(h/2)|.

    Args:
        rho0: Operador inicial
        norm: N1 ou N2
        cfg: Configuração do propagador

    Returns:
        SlopeEstimate com derivada, erro estimado e passo h

    Raises:
        ConvergenceError: Se o propagador falhar
    """
    tipo = NormKind(norm)
    h = Config.PASSO_DIFERENCA_FINITA / (rho0.sys.j + 1.0)
    tempos = [h, -h, h / 2.0, -h / 2.0]
    n_h, n_mh, n_h2, n_mh2 = (evaluate_norm(r, tipo) for r in propagate_signed(rho0, tempos, cfg))
    d_h = (n_h - n_mh) / (2.0 * h)
    d_h2 = (n_h2 - n_mh2) / h
    richardson = (4.0 * d_h2 - d_h) / 3.0
    return SlopeEstimate(slope=richardson, error=abs(richardson - d_h2), step=h)


def fit_decay(samples: Sequence[tuple[float, float]], model: FitModel | str = FitModel.LINEAR) -> DecayFit:
    """
    Ajuste por mínimos quadrados de ln N = b - rate·τ (- quadratic·τ²).

    O intercepto b é livre, então N(0) não precisa valer 1.

    Args:
        samples: Pares (τ, N) com N > 0
        model: linear ou quadratic

    Returns:
        DecayFit; residual é o desvio máximo absoluto em ln N

    Raises:
        DomainError: Se houver menos de 3 amostras ou N ≤ 0
        FitError: Se o sistema for de posto incompleto
    """
    modelo = FitModel(model)
    if len(samples) < 3:
        raise DomainError(f"ajuste exige ao menos 3 amostras, recebeu {len(samples)}")
    tau = np.array([float(t) for t, _ in samples])
    valores = np.array([float(n) for _, n in samples])
    if np.any(~np.isfinite(valores)) or np.any(valores <= 0.0):
        raise DomainError("ajuste exige N > 0 e finito em todas as amostras")

    colunas = [np.ones_like(tau), -tau]
    if modelo is FitModel.QUADRATIC:
        colunas.append(-tau ** 2)
    matriz = np.column_stack(colunas)
    if np.linalg.matrix_rank(matriz) < matriz.shape[1]:
        raise FitError(f"sistema de posto incompleto para o modelo {modelo.value}")

    log_n = np.log(valores)
    coef, *_ = np.linalg.lstsq(matriz, log_n, rcond=None)
    residuo = float(np.max(np.abs(matriz @ coef - log_n)))
    return DecayFit(
        rate=float(coef[1]),
        quadratic=float(coef[2]) if modelo is FitModel.QUADRATIC else 0.0,
        window=(float(tau.min()), float(tau.max())),
        residual=residuo,
        intercept=float(coef[0]),
    )


def expect(rho: SpinOperator, op: SpinOperator) -> complex:
    """tr(ρA)/tr(ρ)."""
    traco = np.trace(rho.mat)
    if abs(traco) < Config.LIMIAR_DEGENERESCENCIA:
        raise DomainError("traço nulo: valor esperado indefinido")
    return complex(np.trace(rho.mat @ op.mat) / traco)


def bloch_vector(rho: SpinOperator) -> tuple[float, float, float]:
    """
    (⟨J_x⟩, ⟨J_y⟩, ⟨J_z⟩)/tr(ρ); para ρ não hermitiano devolve as partes reais.

    Raises:
        DomainError: Se tr(ρ) = 0
    """
    sys = rho.sys
    return tuple(
        float(expect(rho, op).real) for op in (jx_matrix(sys), jy_matrix(sys), jz_matrix(sys))
    )


def eigen_angle(spec: CoherentSpec, sys: SpinSystem) -> float:
    """
    cos²α = |⟨γ|J₋|γ⟩|² / (⟨γ|γ⟩·⟨γ|J₊J₋|γ⟩) pelos elementos de matriz exatos.

    No polo norte devolve 0; no polo sul (J₋|γ⟩ = 0, razão 0/0) devolve 1,
    o mesmo limite de cos2_alpha.
    """
    psi = coherent_vector(spec, sys).amp
    c = ladder_coefficients(sys)
    abaixado = np.zeros_like(psi)
    abaixado[1:] = c[:-1] * psi[:-1]
    denominador = float(np.vdot(psi, psi).real) * float(np.vdot(abaixado, abaixado).real)
    if denominador == 0.0:
        return 1.0 if spec.theta == math.pi else 0.0
    return float(abs(np.vdot(psi, abaixado)) ** 2 / denominador)


# =============================================================================
# DECOMPOSIÇÃO EM ESTADOS COERENTES
# =============================================================================

def component_capture(psi: DickeVector, specs: Sequence[CoherentSpec]) -> float:
    """
    Fração da norma de ψ contida no subespaço gerado pelos estados coerentes dados.

    Projeção por mínimos quadrados; componentes repetidas ou quase paralelas
    são tratadas pelo corte de posto do lstsq.

    Args:
        psi: Estado a decompor
        specs: Orientações das componentes

    Returns:
        ‖Pψ‖²/‖ψ‖², em [0, 1]
    """
    base = np.column_stack([coherent_vector(s, psi.sys).amp for s in specs])
    coef, *_ = np.linalg.lstsq(base, psi.amp, rcond=1e-12)
    projecao = base @ coef
    return float(np.vdot(projecao, projecao).real / np.vdot(psi.amp, psi.amp).real)


def _captura_simetrica(psi: DickeVector, theta: float, phi: float) -> float:
    theta = min(max(theta, 0.0), math.pi / 2.0)
    return component_capture(psi, [CoherentSpec(theta, phi), CoherentSpec(math.pi - theta, phi)])


def symmetric_decomposition(psi: DickeVector) -> tuple[float, float, float]:
    """
    Melhor par simétrico {|θ',φ''⟩, |π-θ',φ''⟩} para representar ψ.

    Varre uma grade grosseira em θ' ∈ [0, π/2], φ'' ∈ [0, 2π) e refina o
    melhor ponto por Nelder-Mead até 1e-6 nos ângulos.

    Args:
        psi: Estado a decompor

    Returns:
        (norma capturada, θ', φ'')
    """
    n_theta, n_phi = Config.GRADE_DECOMPOSICAO
    melhor = (-1.0, 0.0, 0.0)
    for theta in np.linspace(0.0, math.pi / 2.0, n_theta):
        for phi in np.linspace(0.0, DOIS_PI, n_phi, endpoint=False):
            captura = _captura_simetrica(psi, float(theta), float(phi))
            if captura > melhor[0]:
                melhor = (captura, float(theta), float(phi))

    resultado = minimize(
        lambda x: -_captura_simetrica(psi, float(x[0]), float(x[1])),
        x0=np.array(melhor[1:]),
        method="Nelder-Mead",
        options={
            "xatol": Config.TOLERANCIA_DECOMPOSICAO,
            "fatol": 1e-15,
            "maxiter": 4000,
            "initial_simplex": np.array(
                [melhor[1:], [melhor[1] + 0.02, melhor[2]], [melhor[1], melhor[2] + 0.04]]
            ),
        },
    )
    theta = min(max(float(resultado.x[0]), 0.0), math.pi / 2.0)
    phi = float(resultado.x[1]) % DOIS_PI
    captura = _captura_simetrica(psi, theta, phi)
    if captura < melhor[0]:
        captura, theta, phi = melhor
    logger.debug("decomposição simétrica: captura=%r θ'=%r φ''=%r", captura, theta, phi)
    return captura, theta, phi
