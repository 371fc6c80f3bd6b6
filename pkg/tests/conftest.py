"""
Fixtures compartilhadas pelos testes.
"""

import math

import numpy as np
import pytest
from hypothesis import settings

from superrad.models import CoherentSpec, PhysicalParams, PropagatorConfig, SpinOperator, SpinSystem
from superrad.services.spinalg import coherent_vector, dyad

settings.register_profile("superrad", deadline=None, max_examples=30)
settings.load_profile("superrad")


@pytest.fixture
def sys5():
    return SpinSystem.from_j(5)


@pytest.fixture
def cfg():
    return PropagatorConfig()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def params_dispersivos():
    """Parâmetros no regime válido: kappa ≫ g√N e |delta| ≫ kappa."""

    def fabrica(sys: SpinSystem) -> PhysicalParams:
        return PhysicalParams(g=0.01, kappa=1.0, delta=100.0, n_atoms=sys.two_j)

    return fabrica


def diade_coerente(theta1, phi1, theta2, phi2, sys) -> SpinOperator:
    return dyad(
        coherent_vector(CoherentSpec(theta1, phi1), sys),
        coherent_vector(CoherentSpec(theta2, phi2), sys),
    )


def operador_aleatorio(rng, sys: SpinSystem) -> SpinOperator:
    return SpinOperator(sys, rng.normal(size=(sys.dim, sys.dim)) + 1j * rng.normal(size=(sys.dim, sys.dim)))


def densidade_aleatoria(rng, sys: SpinSystem) -> SpinOperator:
    a = rng.normal(size=(sys.dim, sys.dim)) + 1j * rng.normal(size=(sys.dim, sys.dim))
    rho = a @ a.conj().T
    return SpinOperator(sys, rho / np.trace(rho))


METADE_PI = math.pi / 2.0
