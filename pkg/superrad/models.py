"""
Modelos de domínio do simulador.

Define os tipos imutáveis compartilhados pelos serviços: sistema de spin,
orientação de estados coerentes, vetores e operadores na base de Dicke,
especificação de gatos, parâmetros físicos, configuração do propagador e
resultados de ajuste.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from superrad.config import Config
from superrad.utils.errors import DomainError

DOIS_PI = 2.0 * math.pi


def _somente_leitura(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


# =============================================================================
# ÁLGEBRA DE SPIN
# =============================================================================

@dataclass(frozen=True)
class SpinSystem:
    """
    Representação irredutível de spin j, guardada como 2j para j semi-inteiro exato.

    A base de Dicke usa o índice k = j - m (k = 0 é m = j, "todos para cima").
    """

    two_j: int

    def __post_init__(self):
        valor = self.two_j
        if isinstance(valor, bool) or int(valor) != valor or valor < 0:
            raise DomainError(f"two_j deve ser inteiro não negativo: {valor!r}")
        object.__setattr__(self, "two_j", int(valor))

    @classmethod
    def from_j(cls, j: float) -> "SpinSystem":
        dobro = 2.0 * float(j)
        if abs(dobro - round(dobro)) > 1e-12:
            raise DomainError(f"j deve ser inteiro ou semi-inteiro: {j!r}")
        return cls(int(round(dobro)))

    @classmethod
    def from_atoms(cls, n_atoms: int) -> "SpinSystem":
        if isinstance(n_atoms, bool) or int(n_atoms) != n_atoms or n_atoms < 1:
            raise DomainError(f"número de átomos deve ser inteiro positivo: {n_atoms!r}")
        return cls(int(n_atoms))

    @property
    def j(self) -> float:
        return self.two_j / 2.0

    @property
    def dim(self) -> int:
        return self.two_j + 1

    @property
    def m_values(self) -> np.ndarray:
        """Valores de m na ordem do índice k (decrescentes)."""
        return self.j - np.arange(self.dim, dtype=float)

    def index_of(self, m: float) -> int:
        """Índice k = j - m; levanta DomainError fora de -j..j."""
        dobro_k = self.two_j - 2.0 * float(m)
        if abs(dobro_k - round(dobro_k)) > 1e-12 or round(dobro_k) % 2 != 0:
            raise DomainError(f"m={m!r} incompatível com j={self.j!r}")
        k = int(round(dobro_k)) // 2
        if not 0 <= k < self.dim:
            raise DomainError(f"m={m!r} fora do intervalo [-{self.j}, {self.j}]")
        return k


@dataclass(frozen=True)
class CoherentSpec:
    """
    Orientação (theta, phi) de um estado coerente de spin.

    Nos polos (theta em {0, pi}) a fase phi é irrelevante e fica canonizada em 0.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta = float(self.theta)
        phi = float(self.phi)
        if not (math.isfinite(theta) and math.isfinite(phi)):
            raise DomainError(f"ângulos devem ser finitos: ({theta!r}, {phi!r})")
        if theta < 0.0 or theta > math.pi:
            raise DomainError(f"theta fora de [0, π]: {theta!r}")
        phi = math.fmod(phi, DOIS_PI)
        if phi < 0.0:
            phi += DOIS_PI
        if phi >= DOIS_PI:
            phi = 0.0
        if theta in (0.0, math.pi):
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @classmethod
    def from_gamma(cls, gamma: complex) -> "CoherentSpec":
        """Constrói a orientação a partir de gamma = tan(theta/2)·e^{i phi}; infinito é o polo sul."""
        gamma = complex(gamma)
        if math.isinf(abs(gamma)):
            return cls(math.pi, 0.0)
        return cls(2.0 * math.atan(abs(gamma)), math.atan2(gamma.imag, gamma.real))

    @property
    def is_pole(self) -> bool:
        return self.theta in (0.0, math.pi)

    @property
    def gamma(self) -> complex:
        if self.theta == math.pi:
            return complex(math.inf, 0.0)
        return math.tan(self.theta / 2.0) * complex(math.cos(self.phi), math.sin(self.phi))


@dataclass(frozen=True, eq=False)
class DickeVector:
    """Vetor de amplitudes na base de Dicke; amp[k] é a amplitude de |j, j-k⟩."""

    sys: SpinSystem
    amp: np.ndarray

    def __post_init__(self):
        amp = np.array(self.amp, dtype=complex)
        if amp.shape != (self.sys.dim,):
            raise DomainError(f"vetor de forma {amp.shape} para dim {self.sys.dim}")
        object.__setattr__(self, "amp", _somente_leitura(amp))

    def norm(self) -> float:
        return float(np.linalg.norm(self.amp))


@dataclass(frozen=True, eq=False)
class SpinOperator:
    """
    Matriz dim×dim na base de Dicke; mat[k1, k2] = ⟨j,m1|ρ|j,m2⟩.

    Não exige hermiticidade: díades |γ1⟩⟨γ2| são operadores de primeira classe.
    """

    sys: SpinSystem
    mat: np.ndarray

    def __post_init__(self):
        mat = np.array(self.mat, dtype=complex)
        if mat.shape != (self.sys.dim, self.sys.dim):
            raise DomainError(f"matriz de forma {mat.shape} para dim {self.sys.dim}")
        object.__setattr__(self, "mat", _somente_leitura(mat))

    def dagger(self) -> "SpinOperator":
        return SpinOperator(self.sys, self.mat.conj().T)

    def trace(self) -> complex:
        return complex(np.trace(self.mat))

    def __add__(self, outro: "SpinOperator") -> "SpinOperator":
        if not isinstance(outro, SpinOperator):
            return NotImplemented
        if outro.sys != self.sys:
            raise DomainError("soma de operadores de sistemas diferentes")
        return SpinOperator(self.sys, self.mat + outro.mat)

    def __sub__(self, outro: "SpinOperator") -> "SpinOperator":
        if not isinstance(outro, SpinOperator):
            return NotImplemented
        if outro.sys != self.sys:
            raise DomainError("diferença de operadores de sistemas diferentes")
        return SpinOperator(self.sys, self.mat - outro.mat)

    def __mul__(self, escalar: complex) -> "SpinOperator":
        if not isinstance(escalar, (int, float, complex, np.number)):
            return NotImplemented
        return SpinOperator(self.sys, self.mat * escalar)

    __rmul__ = __mul__


# =============================================================================
# GATOS
# =============================================================================

@dataclass(frozen=True)
class CatSpec:
    """Superposição c1|γ1⟩ + c2|γ2⟩ de dois estados coerentes."""

    a: CoherentSpec
    b: CoherentSpec
    c1: complex = 1.0 / math.sqrt(2.0)
    c2: complex = 1.0 / math.sqrt(2.0)

    def __post_init__(self):
        object.__setattr__(self, "c1", complex(self.c1))
        object.__setattr__(self, "c2", complex(self.c2))

    @property
    def is_symmetric(self) -> bool:
        """Família γ1·γ2* = 1: componentes espelhadas pelo equador com o mesmo phi."""
        espelho = abs(self.b.theta - (math.pi - self.a.theta)) <= 1e-12
        diferenca = abs(math.remainder(self.a.phi - self.b.phi, DOIS_PI))
        return espelho and diferenca <= 1e-12


# =============================================================================
# DINÂMICA
# =============================================================================

@dataclass(frozen=True)
class PhysicalParams:
    """
    Parâmetros físicos da cavidade e dos átomos (frequências em rad/s).

    Args:
        g: Frequência de Rabi de vácuo de um átomo
        kappa: Taxa de amortecimento da amplitude do modo
        delta: Dessintonia
        n_atoms: Número de átomos N (j = N/2)
    """

    g: float
    kappa: float
    delta: float
    n_atoms: int

    def __post_init__(self):
        for nome in ("g", "kappa", "delta"):
            valor = float(getattr(self, nome))
            if not math.isfinite(valor):
                raise DomainError(f"{nome} deve ser finito: {valor!r}")
            object.__setattr__(self, nome, valor)
        if self.g <= 0.0:
            raise DomainError(f"g deve ser positivo: {self.g!r}")
        if self.kappa <= 0.0:
            raise DomainError(f"kappa deve ser positivo: {self.kappa!r}")
        SpinSystem.from_atoms(self.n_atoms)
        object.__setattr__(self, "n_atoms", int(self.n_atoms))

    @property
    def eta(self) -> float:
        return self.g ** 2 * self.delta / (self.kappa ** 2 + self.delta ** 2)

    @property
    def t_class(self) -> float:
        return self.kappa / (self.n_atoms * self.g ** 2)

    @property
    def superradiance_valid(self) -> bool:
        return self.kappa > Config.FATOR_MUITO_MAIOR * self.g * math.sqrt(self.n_atoms)

    @property
    def dispersive_valid(self) -> bool:
        return abs(self.delta) > Config.FATOR_MUITO_MAIOR * self.kappa

    def tau_to_seconds(self, tau: float) -> float:
        """Converte tempo adimensional em segundos: t = τ·T_class."""
        return float(tau) * self.t_class

    def seconds_to_tau(self, t: float) -> float:
        return float(t) / self.t_class


class PropagationMethod(str, Enum):
    ADAPTIVE_RK = "adaptive_rk"
    FIXED_RK4 = "fixed_rk4"
    DENSE_EXPM_ORACLE = "dense_expm_oracle"


@dataclass(frozen=True)
class PropagatorConfig:
    """
    Configuração do propagador.

    max_step None significa o padrão FRACAO_PASSO_MAXIMO/(j+1), resolvido por sistema.
    workers > 1 distribui as bandas em threads; o resultado não depende disso.
    """

    method: PropagationMethod = PropagationMethod.ADAPTIVE_RK
    rel_tol: float = Config.REL_TOL
    abs_tol: float = Config.ABS_TOL
    max_step: float | None = None
    workers: int = 1

    def __post_init__(self):
        try:
            object.__setattr__(self, "method", PropagationMethod(self.method))
        except ValueError as exc:
            raise DomainError(f"método de propagação desconhecido: {self.method!r}") from exc
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("tolerâncias devem ser positivas")
        if self.max_step is not None and not self.max_step > 0:
            raise DomainError(f"max_step deve ser positivo: {self.max_step!r}")
        if int(self.workers) != self.workers or self.workers < 1:
            raise DomainError(f"workers deve ser inteiro positivo: {self.workers!r}")

    def passo_maximo(self, sys: SpinSystem) -> float:
        if self.max_step is not None:
            return float(self.max_step)
        return Config.FRACAO_PASSO_MAXIMO / (sys.j + 1.0)


# =============================================================================
# OBSERVÁVEIS E PREVISÕES
# =============================================================================

class NormKind(str, Enum):
    N1 = "N1"
    N2 = "N2"


class FitModel(str, Enum):
    LINEAR = "linear"
    QUADRATIC = "quadratic"


@dataclass(frozen=True)
class DecayFit:
    """Ajuste ln N = intercept - rate·τ - quadratic·τ²; residual é o desvio máximo absoluto."""

    rate: float
    quadratic: float
    window: tuple[float, float]
    residual: float
    intercept: float = 0.0


@dataclass(frozen=True)
class SlopeEstimate:
    """Derivada inicial por diferença finita, com estimativa de erro e passo usado."""

    slope: float
    error: float
    step: float


@dataclass(frozen=True)
class SlopePrediction:
    """Derivada inicial de N1 separada em termo clássico (slow) e termo O(j) (fast)."""

    slow: float
    fast: float
    total: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "total", self.slow + self.fast)


# =============================================================================
# EXECUÇÃO
# =============================================================================

class InitialState(str, Enum):
    COHERENT = "coherent"
    CAT = "cat"
    POLAR_CAT = "polar_cat"
    PREPARED = "prepared"


class TauGrid(str, Enum):
    UNIFORM = "uniform"
    LOG = "log"


@dataclass(frozen=True)
class RunConfig:
    """
    Configuração de uma execução da linha de comando.

    Campos ausentes ficam None; cada comando exige apenas o que usa.
    """

    sys: SpinSystem | None = None
    estado: InitialState | None = None
    coherent: CoherentSpec | None = None
    cat: CatSpec | None = None
    params: PhysicalParams | None = None
    tau_max: float = 1.0
    sample_count: int = 11
    grade: TauGrid = TauGrid.UNIFORM
    propagator: PropagatorConfig = field(default_factory=PropagatorConfig)
    sweep_j: tuple[float, ...] = ()
    sweep_gammas: tuple[tuple[float, float], ...] = ()
    janela_jtau: float = Config.JANELA_AJUSTE_JTAU
    amostras_ajuste: int = Config.AMOSTRAS_AJUSTE
    modelo_ajuste: FitModel = FitModel.LINEAR
    out: str | None = None
    format: str = "table"

    def tau_grid(self) -> np.ndarray:
        """Grade de amostragem em τ: uniforme, ou logarítmica a partir de tau_max·1e-3 com τ = 0 incluído."""
        if self.grade is TauGrid.LOG:
            inicio = self.tau_max * Config.FRACAO_INICIO_GRADE_LOG
            return np.concatenate([[0.0], np.geomspace(inicio, self.tau_max, self.sample_count - 1)])
        return np.linspace(0.0, self.tau_max, self.sample_count)
