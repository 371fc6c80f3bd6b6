"""
Construção e preparação de estados de gato.

Monta superposições normalizadas de dois estados coerentes e simula o
protocolo de três passos que produz gatos simétricos de vida longa:
pulso ressonante, evolução dispersiva livre e pulso π/2.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from superrad.config import Config
from superrad.models import CatSpec, CoherentSpec, DickeVector, PhysicalParams, SpinSystem, DOIS_PI
from superrad.services.dynamics import propagate_dispersive
from superrad.services.spinalg import apply, basis_vector, coherent_vector, rotation_matrix
from superrad.utils.errors import DegenerateInputError, DomainError

logger = logging.getLogger(__name__)


def build_cat(spec: CatSpec, sys: SpinSystem) -> DickeVector:
    """
    Superposição normalizada c1|γ1⟩ + c2|γ2⟩.

    A norma é a do vetor somado, que inclui o termo cruzado 2Re(c1*·c2·⟨γ1|γ2⟩).

    Args:
        spec: Componentes e coeficientes
        sys: Sistema de spin

    Returns:
        Vetor de norma 1

    Raises:
        DomainError: Se c1 = c2 = 0
        DegenerateInputError: Se a superposição se anular (norma < 1e-14)
    """
    if spec.c1 == 0 and spec.c2 == 0:
        raise DomainError("coeficientes do gato não podem ser ambos nulos")
    soma = spec.c1 * coherent_vector(spec.a, sys).amp + spec.c2 * coherent_vector(spec.b, sys).amp
    norma = float(np.linalg.norm(soma))
    if norma < Config.LIMIAR_DEGENERESCENCIA:
        raise DegenerateInputError(f"superposição de norma {norma!r}: interferência destrutiva")
    return DickeVector(sys, soma / norma)


def multi_component_times(params: PhysicalParams, m: int) -> float:
    """
    Instante t = π/(m·η) em que a evolução dispersiva produz m componentes.

    Args:
        params: Parâmetros físicos
        m: Número par de componentes (m ≥ 2)

    Returns:
        Tempo em segundos

    Raises:
        DomainError: Se m for ímpar ou não positivo, ou se η = 0
    """
    if isinstance(m, bool) or int(m) != m or m < 2 or int(m) % 2 != 0:
        raise DomainError(f"m deve ser inteiro par ≥ 2: {m!r}")
    if params.eta == 0.0:
        raise DomainError("η = 0: sem evolução dispersiva (delta nulo)")
    return math.pi / (int(m) * params.eta)


def multi_component_azimuths(phi: float, n_atoms: int, m: int) -> list[float]:
    """Azimutes φ + π(2q - N + 1)/m, q = 0..m-1, reduzidos a [0, 2π)."""
    return [(phi + math.pi * (2 * q - n_atoms + 1) / m) % DOIS_PI for q in range(m)]


def two_component_superposition(theta: float, phi: float, sys: SpinSystem) -> DickeVector:
    """
    Estado esperado após t = π/(2η) partindo de |θ,φ⟩, sem a fase global.

    (|θ, φ - π(N-1)/2⟩ - i|θ, φ - π(N-3)/2⟩)/√2, com N = 2j.
    """
    n = sys.two_j
    spec = CatSpec(
        a=CoherentSpec(theta, phi - math.pi * (n - 1) / 2.0),
        b=CoherentSpec(theta, phi - math.pi * (n - 3) / 2.0),
        c1=1.0 / math.sqrt(2.0),
        c2=-1j / math.sqrt(2.0),
    )
    return build_cat(spec, sys)


@dataclass(frozen=True, eq=False)
class PreparationTrace:
    """Estados intermediários e ângulos do protocolo de preparação."""

    after_rotation: DickeVector
    after_dispersive: DickeVector
    final: DickeVector
    dispersive_time: float
    step2_azimuth: float
    step3_axis_phi: float
    final_theta: float
    final_phi: float

    @property
    def final_pair(self) -> tuple[CoherentSpec, CoherentSpec]:
        """Par simétrico previsto: (θ', φ'') e (π - θ', φ'')."""
        return (
            CoherentSpec(self.final_theta, self.final_phi),
            CoherentSpec(math.pi - self.final_theta, self.final_phi),
        )


def prepare_steps(theta: float, phi: float, params: PhysicalParams, sys: SpinSystem) -> PreparationTrace:
    """
    Simula os três passos da preparação, sem dissipação.

    Passo 1: pulso que leva |j,j⟩ ao estado coerente (θ,φ).
    Passo 2: evolução dispersiva por t = π/(2η).
    Passo 3: rotação de π/2 em torno do eixo equatorial perpendicular ao
    plano das duas componentes (azimutes φ' e φ'+π), no sentido que leva a
    primeira componente ao polo norte.

    Args:
        theta: Ângulo polar do passo 1
        phi: Azimute do passo 1
        params: Parâmetros físicos (fornecem η)
        sys: Sistema de spin, com 2j = N

    Returns:
        PreparationTrace com os estados de cada passo

    Raises:
        DomainError: Se N de params divergir de 2j ou se η = 0
    """
    if params.n_atoms != sys.two_j:
        raise DomainError(f"n_atoms={params.n_atoms} incompatível com 2j={sys.two_j}")
    alvo = CoherentSpec(theta, phi)

    # Passo 1: o gerador no azimute φ+π inclina o polo norte para o azimute φ
    pulso = rotation_matrix(sys, alvo.phi + math.pi, alvo.theta)
    apos_pulso = apply(pulso, basis_vector(sys, sys.j))

    # Passo 2
    t_disp = multi_component_times(params, 2)
    apos_dispersao = propagate_dispersive(apos_pulso, params, t_disp)

    # Passo 3
    phi_linha = (alvo.phi - math.pi * (sys.two_j - 1) / 2.0) % DOIS_PI
    final = apply(rotation_matrix(sys, phi_linha, math.pi / 2.0), apos_dispersao)

    theta_final = math.acos(min(1.0, max(-1.0, math.sin(alvo.theta))))
    phi_final = (phi_linha + math.pi) % DOIS_PI if math.cos(alvo.theta) >= 0 else phi_linha
    logger.debug(
        "preparação: θ=%r φ=%r → par simétrico θ'=%r φ''=%r", alvo.theta, alvo.phi, theta_final, phi_final
    )
    return PreparationTrace(
        after_rotation=apos_pulso,
        after_dispersive=apos_dispersao,
        final=final,
        dispersive_time=t_disp,
        step2_azimuth=phi_linha,
        step3_axis_phi=phi_linha,
        final_theta=theta_final,
        final_phi=phi_final,
    )


def prepare_long_lived_cat(theta: float, phi: float, params: PhysicalParams, sys: SpinSystem) -> DickeVector:
    """
    Executa a preparação e devolve o gato simétrico final.

    Args:
        theta: Ângulo polar do pulso inicial
        phi: Azimute do pulso inicial
        params: Parâmetros físicos
        sys: Sistema de spin

    Returns:
        Vetor final do passo 3
    """
    return prepare_steps(theta, phi, params, sys).final
