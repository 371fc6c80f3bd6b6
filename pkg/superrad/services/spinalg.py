"""
Álgebra de momento angular na base de Dicke.

Operadores de escada, estados coerentes de spin, rotações em torno de eixos
equatoriais, sobreposições e díades. A base usa o índice k = j - m, de modo
que k = 0 é o estado |j, j⟩ ("todos para cima").
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, xlogy

from superrad.models import CoherentSpec, DickeVector, SpinOperator, SpinSystem
from superrad.utils.errors import DomainError
from superrad.utils.validators import exigir_mesmo_sistema


def ladder_coeff(sys: SpinSystem, m: float) -> float:
    """
    Elemento de matriz c_m = ⟨j,m-1|J₋|j,m⟩ = √((j+m)(j-m+1)).

    Args:
        sys: Sistema de spin
        m: Número quântico magnético (semi-inteiro compatível com j)

    Returns:
        Coeficiente real não negativo (0 para m = -j)

    Raises:
        DomainError: Se m estiver fora de -j..j
    """
    k = sys.index_of(m)
    return math.sqrt((sys.two_j - k) * (k + 1))


def ladder_coefficients(sys: SpinSystem) -> np.ndarray:
    """Vetor c[k] = c_m em m = j - k, isto é √((2j-k)(k+1)); c[dim-1] = 0."""
    return np.sqrt(ladder_squares(sys))


def ladder_squares(sys: SpinSystem) -> np.ndarray:
    """Quadrados inteiros (2j-k)(k+1), diagonal de J₊J₋."""
    k = np.arange(sys.dim, dtype=float)
    return (sys.two_j - k) * (k + 1.0)


def lowering_matrix(sys: SpinSystem) -> SpinOperator:
    """J₋ com ⟨j,m-1|J₋|j,m⟩ = c_m como únicos elementos não nulos."""
    mat = np.zeros((sys.dim, sys.dim), dtype=complex)
    if sys.dim > 1:
        c = ladder_coefficients(sys)
        idx = np.arange(sys.dim - 1)
        mat[idx + 1, idx] = c[:-1]
    return SpinOperator(sys, mat)


def raising_matrix(sys: SpinSystem) -> SpinOperator:
    """J₊ = (J₋)†."""
    return lowering_matrix(sys).dagger()


def jz_matrix(sys: SpinSystem) -> SpinOperator:
    """J_z diagonal com entradas m."""
    return SpinOperator(sys, np.diag(sys.m_values).astype(complex))


def jx_matrix(sys: SpinSystem) -> SpinOperator:
    jm = lowering_matrix(sys).mat
    return SpinOperator(sys, (jm.conj().T + jm) / 2.0)


def jy_matrix(sys: SpinSystem) -> SpinOperator:
    jm = lowering_matrix(sys).mat
    return SpinOperator(sys, (jm.conj().T - jm) / 2.0j)


def coherent_vector(spec: CoherentSpec, sys: SpinSystem) -> DickeVector:
    """
    Estado coerente |θ,φ⟩ expandido na base de Dicke.

    A amplitude em k = j - m é √C(2j,k)·cos(θ/2)^(2j-k)·sin(θ/2)^k·e^{ikφ},
    calculada no domínio logarítmico para não estourar em j grande.
    Nos polos o resultado é exatamente um vetor da base.

    Args:
        spec: Orientação (theta, phi)
        sys: Sistema de spin

    Returns:
        Vetor normalizado
    """
    if spec.theta == 0.0:
        amp = np.zeros(sys.dim, dtype=complex)
        amp[0] = 1.0
        return DickeVector(sys, amp)
    if spec.theta == math.pi:
        amp = np.zeros(sys.dim, dtype=complex)
        amp[-1] = 1.0
        return DickeVector(sys, amp)

    n = sys.two_j
    k = np.arange(sys.dim, dtype=float)
    log_binomial = gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k + 1.0)
    log_modulo = (
        0.5 * log_binomial
        + xlogy(n - k, math.cos(spec.theta / 2.0))
        + xlogy(k, math.sin(spec.theta / 2.0))
    )
    amp = np.exp(log_modulo) * np.exp(1j * k * spec.phi)
    # renormaliza o erro de arredondamento de gammaln
    amp /= np.linalg.norm(amp)
    return DickeVector(sys, amp)


@lru_cache(maxsize=128)
def _autodecomposicao_gerador(two_j: int, axis_phi: float) -> tuple[np.ndarray, np.ndarray]:
    sys = SpinSystem(two_j)
    gerador = (
        jx_matrix(sys).mat * math.sin(axis_phi) - jy_matrix(sys).mat * math.cos(axis_phi)
    )
    autovalores, autovetores = np.linalg.eigh(gerador)
    autovalores.setflags(write=False)
    autovetores.setflags(write=False)
    return autovalores, autovetores


def rotation_matrix(sys: SpinSystem, axis_phi: float, angle: float) -> SpinOperator:
    """
    Rotação exp(-i·angle·(J_x sin(axis_phi) - J_y cos(axis_phi))).

    O gerador é a componente de J ao longo de (sin φa, -cos φa, 0); a rotação
    leva o polo norte ao estado coerente (θ = angle, φ = axis_phi + π).
    Calculada pela decomposição espectral do gerador hermitiano.

    Args:
        sys: Sistema de spin
        axis_phi: Azimute que define o eixo equatorial
        angle: Ângulo de rotação

    Returns:
        Operador unitário
    """
    if angle == 0.0:
        return SpinOperator(sys, np.eye(sys.dim, dtype=complex))
    autovalores, autovetores = _autodecomposicao_gerador(sys.two_j, float(axis_phi))
    fases = np.exp(-1j * float(angle) * autovalores)
    return SpinOperator(sys, (autovetores * fases) @ autovetores.conj().T)


def apply(op: SpinOperator, psi: DickeVector) -> DickeVector:
    """Aplica um operador a um vetor do mesmo sistema."""
    exigir_mesmo_sistema(op, psi, "apply")
    return DickeVector(psi.sys, op.mat @ psi.amp)


def overlap(a: DickeVector, b: DickeVector) -> complex:
    """
    Produto interno ⟨a|b⟩ = Σ conj(a_m)·b_m.

    Raises:
        DomainError: Se os sistemas diferirem
    """
    exigir_mesmo_sistema(a, b, "overlap")
    return complex(np.vdot(a.amp, b.amp))


def dyad(a: DickeVector, b: DickeVector) -> SpinOperator:
    """
    Díade |a⟩⟨b| com mat[k1,k2] = a[k1]·conj(b[k2]).

    Raises:
        DomainError: Se os sistemas diferirem
    """
    exigir_mesmo_sistema(a, b, "dyad")
    return SpinOperator(a.sys, np.outer(a.amp, b.amp.conj()))


def density_matrix(psi: DickeVector) -> SpinOperator:
    """Projetor |ψ⟩⟨ψ|."""
    return dyad(psi, psi)


def expectation(psi: DickeVector, op: SpinOperator) -> complex:
    """⟨ψ|A|ψ⟩ para vetor normalizado."""
    exigir_mesmo_sistema(op, psi, "expectation")
    return complex(np.vdot(psi.amp, op.mat @ psi.amp))


def basis_vector(sys: SpinSystem, m: float) -> DickeVector:
    """Estado de Dicke |j, m⟩."""
    amp = np.zeros(sys.dim, dtype=complex)
    amp[sys.index_of(m)] = 1.0
    return DickeVector(sys, amp)


def commutator(a: SpinOperator, b: SpinOperator) -> SpinOperator:
    exigir_mesmo_sistema(a, b, "commutator")
    return SpinOperator(a.sys, a.mat @ b.mat - b.mat @ a.mat)


def require_real_gamma(spec: CoherentSpec) -> float:
    """
    Retorna gamma real (phi em {0, π}), com sinal; polo sul não é aceito.

    Raises:
        DomainError: Se gamma for complexo ou infinito
    """
    if spec.theta == math.pi:
        raise DomainError("gamma infinito (polo sul) não tem valor real finito")
    if spec.phi == 0.0:
        return math.tan(spec.theta / 2.0)
    if spec.phi == math.pi:
        return -math.tan(spec.theta / 2.0)
    raise DomainError(f"gamma complexo (phi={spec.phi!r}); as leis semiclássicas exigem gamma real")
