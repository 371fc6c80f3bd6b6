"""
Fórmulas fechadas usadas como oráculos independentes.

Ângulo cos²α do autoestado aproximado de J₋, derivada inicial de N₁, leis
semiclássicas de decaimento de N₂ (caso geral, par simétrico e díade
diagonal), normas exatas do gato polar e a trajetória clássica
dθ/dτ = sin θ.
"""

from __future__ import annotations

import math
import numbers

import numpy as np

from superrad.models import SlopePrediction
from superrad.utils.errors import DomainError


def _real(nome: str, valor) -> float:
    if isinstance(valor, numbers.Complex) and not isinstance(valor, numbers.Real):
        if complex(valor).imag != 0.0:
            raise DomainError(f"{nome} deve ser real (leis válidas só para gamma real): {valor!r}")
        valor = complex(valor).real
    return float(valor)


def _exigir_j_positivo(j: float) -> float:
    j = float(j)
    if j <= 0.0:
        raise DomainError(f"j deve ser positivo: {j!r}")
    return j


def cos2_alpha(theta: float, j: float) -> float:
    """
    cos²α = sin²θ / (sin²θ + (2/j)·cos⁴(θ/2)).

    Em θ = π a razão é 0/0; por convenção devolve o limite 1.
    """
    j = _exigir_j_positivo(j)
    if theta == math.pi:
        return 1.0
    sen2 = math.sin(theta) ** 2
    denominador = sen2 + (2.0 / j) * math.cos(theta / 2.0) ** 4
    if denominador == 0.0:
        return 1.0
    return sen2 / denominador


def cos2_alpha_expansion(gamma: float, j: float) -> float:
    """Expansão em 1/j: 1 - 1/(2jγ²)."""
    return 1.0 - 1.0 / (2.0 * _exigir_j_positivo(j) * _real("gamma", gamma) ** 2)


def n1_initial_slope(theta1: float, phi1: float, theta2: float, phi2: float, j: float) -> SlopePrediction:
    """
    Derivada inicial de N₁ para a díade |γ1⟩⟨γ2|.

    slow = -½((1+cosθ1)² + (1+cosθ2)²)
    fast = -j(sin²θ1 + sin²θ2 - 2cos(φ2-φ1)·sinθ1·sinθ2)
    """
    j = _exigir_j_positivo(j)
    lento = -0.5 * ((1.0 + math.cos(theta1)) ** 2 + (1.0 + math.cos(theta2)) ** 2)
    s1 = math.sin(theta1)
    s2 = math.sin(theta2)
    rapido = -j * (s1 * s1 + s2 * s2 - 2.0 * math.cos(phi2 - phi1) * s1 * s2)
    return SlopePrediction(slow=lento, fast=rapido)


def n2_rate_general(gamma1: float, gamma2: float, j: float) -> float:
    """Coeficiente 2j(γ1-γ2)²(1-γ1γ2)²/((1+γ1²)(1+γ2²))² do expoente de N₂."""
    g1 = _real("gamma1", gamma1)
    g2 = _real("gamma2", gamma2)
    j = _exigir_j_positivo(j)
    return 2.0 * j * (g1 - g2) ** 2 * (1.0 - g1 * g2) ** 2 / ((1.0 + g1 ** 2) * (1.0 + g2 ** 2)) ** 2


def n2_ratio_general(gamma1: float, gamma2: float, j: float, tau: float) -> float:
    """
    N₂(τ)/N₂(0) para γ1, γ2 reais, válida para jτ ≪ 1 (responsabilidade de quem chama).
    """
    return math.exp(-n2_rate_general(gamma1, gamma2, j) * float(tau))


def n2_rates_symmetric(gamma1: float) -> tuple[float, float]:
    """
    Coeficientes (linear, quadrático) do expoente de N₂ para o par γ2 = 1/γ1.

    Raises:
        DomainError: Se γ1 = 0
    """
    g = _real("gamma1", gamma1)
    if g == 0.0:
        raise DomainError("gamma1 = 0: par simétrico 1/gamma1 indefinido")
    g2 = g * g
    linear = ((g2 - 1.0) / (g2 + 1.0)) ** 2
    quadratico = (3 * g2 ** 4 - 3 * g2 ** 3 + 4 * g2 ** 2 - 3 * g2 + 3) / (2.0 * (g2 + 1.0) ** 4)
    return linear, quadratico


def n2_ratio_symmetric(gamma1: float, tau: float) -> float:
    """N₂(τ)/N₂(0) para o par simétrico γ1γ2 = 1, até segunda ordem em τ."""
    linear, quadratico = n2_rates_symmetric(gamma1)
    tau = float(tau)
    return math.exp(-linear * tau - quadratico * tau * tau)


def n2_rate_diagonal(gamma: float) -> float:
    """Coeficiente γ⁴((γ²-1)/(γ²+1))² do expoente de N₂ da díade diagonal."""
    g2 = _real("gamma", gamma) ** 2
    return g2 * g2 * ((g2 - 1.0) / (g2 + 1.0)) ** 2


def n2_initial_rate_diagonal(gamma: float) -> float:
    """
    Taxa inicial ((γ²-1)/(γ²+1))² = cos²θ de N₂ para um estado coerente real.

    É o termo linear que a díade diagonal compartilha com o par simétrico,
    exato no limite j → ∞.
    """
    g2 = _real("gamma", gamma) ** 2
    return ((g2 - 1.0) / (g2 + 1.0)) ** 2


def n2_ratio_diagonal(gamma: float, tau: float) -> float:
    """N₂(τ)/N₂(0) da díade diagonal |γ⟩⟨γ|, em ordem linear em jτ."""
    return math.exp(-n2_rate_diagonal(gamma) * float(tau))


def polar_cat_norms(tau: float) -> tuple[float, float]:
    """
    Normas exatas (e^{-2τ}, e^{-τ}) da díade |j,j⟩⟨j,-j|.

    Raises:
        DomainError: Se τ < 0
    """
    tau = float(tau)
    if tau < 0.0:
        raise DomainError(f"tau deve ser não negativo: {tau!r}")
    return math.exp(-2.0 * tau), math.exp(-tau)


def classical_theta(theta0: float, tau: float) -> float:
    """
    Solução fechada θ(τ) = 2·arctan(tan(θ0/2)·e^τ) de dθ/dτ = sin θ.

    Os pontos fixos θ0 ∈ {0, π} são devolvidos sem alteração.

    Raises:
        DomainError: Se θ0 estiver fora de [0, π]
    """
    theta0 = float(theta0)
    if theta0 < 0.0 or theta0 > math.pi:
        raise DomainError(f"theta0 fora de [0, π]: {theta0!r}")
    if theta0 in (0.0, math.pi):
        return theta0
    with np.errstate(over="ignore"):
        fator = float(np.exp(float(tau)))
    return 2.0 * math.atan(math.tan(theta0 / 2.0) * fator)


def classical_jz(theta0: float, tau: float) -> float:
    """⟨J_z⟩/j ao longo da trajetória clássica: cos θ(τ)."""
    return math.cos(classical_theta(theta0, tau))


def within_tolerance(medido: float, previsto: float, tolerancia: float) -> bool:
    """|medido - previsto| ≤ tolerância·max(|previsto|, 1)."""
    return abs(medido - previsto) <= tolerancia * max(abs(previsto), 1.0)
