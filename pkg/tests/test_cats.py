import math

import numpy as np
import pytest

from superrad.models import CatSpec, CoherentSpec, PhysicalParams, SpinSystem
from superrad.services.cats import (
    build_cat,
    multi_component_azimuths,
    multi_component_times,
    prepare_long_lived_cat,
    prepare_steps,
    two_component_superposition,
)
from superrad.services.dynamics import propagate_dispersive
from superrad.services.observables import component_capture
from superrad.services.spinalg import basis_vector, coherent_vector, overlap
from superrad.utils.errors import DegenerateInputError, DomainError


def test_gato_normalizado_com_termo_cruzado():
    sys = SpinSystem.from_j(1)
    spec = CatSpec(CoherentSpec(0.3, 0.0), CoherentSpec(0.5, 0.0))
    psi = build_cat(spec, sys)
    assert psi.norm() == pytest.approx(1.0)
    a = coherent_vector(spec.a, sys).amp
    b = coherent_vector(spec.b, sys).amp
    assert np.allclose(psi.amp, (a + b) / np.linalg.norm(a + b))


def test_gato_polar():
    sys = SpinSystem.from_j(3)
    psi = build_cat(CatSpec(CoherentSpec(0.0), CoherentSpec(math.pi)), sys)
    esperado = (basis_vector(sys, 3).amp + basis_vector(sys, -3).amp) / math.sqrt(2)
    assert np.allclose(psi.amp, esperado)


def test_gato_degenerado():
    sys = SpinSystem.from_j(2)
    mesmo = CoherentSpec(1.0, 0.5)
    with pytest.raises(DegenerateInputError):
        build_cat(CatSpec(mesmo, mesmo, 1.0, -1.0), sys)
    with pytest.raises(DomainError):
        build_cat(CatSpec(mesmo, mesmo, 0.0, 0.0), sys)


def test_tempos_de_multiplas_componentes(params_dispersivos):
    params = params_dispersivos(SpinSystem.from_j(5))
    assert multi_component_times(params, 2) == pytest.approx(math.pi / (2 * params.eta))
    assert multi_component_times(params, 4) == pytest.approx(math.pi / (4 * params.eta))
    for m in (0, 3, 2.5):
        with pytest.raises(DomainError):
            multi_component_times(params, m)
    sem_dessintonia = PhysicalParams(g=0.01, kappa=1.0, delta=0.0, n_atoms=10)
    with pytest.raises(DomainError):
        multi_component_times(sem_dessintonia, 2)


def test_azimutes_de_multiplas_componentes():
    azimutes = multi_component_azimuths(0.4, 10, 4)
    assert len(azimutes) == 4
    assert azimutes[0] == pytest.approx((0.4 - 9 * math.pi / 4) % (2 * math.pi))
    assert all(0.0 <= a < 2 * math.pi for a in azimutes)


@pytest.mark.parametrize("j", [5, 5.5, 10])
def test_duas_componentes_apos_meio_periodo(j, params_dispersivos):
    sys = SpinSystem.from_j(j)
    params = params_dispersivos(sys)
    psi = coherent_vector(CoherentSpec(math.pi / 3, 0.4), sys)
    evoluido = propagate_dispersive(psi, params, multi_component_times(params, 2))
    esperado = two_component_superposition(math.pi / 3, 0.4, sys)
    assert abs(overlap(esperado, evoluido)) ** 2 >= 1 - 1e-10


@pytest.mark.parametrize("j", [5, 5.5])
def test_quatro_componentes(j, params_dispersivos):
    sys = SpinSystem.from_j(j)
    params = params_dispersivos(sys)
    psi = coherent_vector(CoherentSpec(math.pi / 3, 0.4), sys)
    evoluido = propagate_dispersive(psi, params, multi_component_times(params, 4))
    componentes = [CoherentSpec(math.pi / 3, az) for az in multi_component_azimuths(0.4, sys.two_j, 4)]
    assert component_capture(evoluido, componentes) >= 1 - 1e-10


@pytest.mark.parametrize("theta", [math.pi / 6, math.pi / 3, math.pi / 2, 2.0])
def test_preparacao_produz_par_simetrico(theta, params_dispersivos):
    sys = SpinSystem.from_j(10)
    traco = prepare_steps(theta, 0.3, params_dispersivos(sys), sys)

    inicial = coherent_vector(CoherentSpec(theta, 0.3), sys)
    assert abs(overlap(inicial, traco.after_rotation)) ** 2 == pytest.approx(1.0, abs=1e-10)
    assert traco.final.norm() == pytest.approx(1.0)
    assert traco.final_theta == pytest.approx(math.acos(math.sin(theta)))
    norte, sul = traco.final_pair
    assert sul.theta == pytest.approx(math.pi - norte.theta)
    assert component_capture(traco.final, [norte, sul]) >= 1 - 1e-10


def test_preparacao_no_equador_da_gato_polar(params_dispersivos):
    sys = SpinSystem.from_j(5)
    final = prepare_long_lived_cat(math.pi / 2, 0.0, params_dispersivos(sys), sys)
    assert abs(final.amp[0]) ** 2 == pytest.approx(0.5, abs=1e-10)
    assert abs(final.amp[-1]) ** 2 == pytest.approx(0.5, abs=1e-10)


def test_preparacao_exige_n_igual_a_2j():
    sys = SpinSystem.from_j(5)
    params = PhysicalParams(g=0.01, kappa=1.0, delta=100.0, n_atoms=8)
    with pytest.raises(DomainError):
        prepare_steps(1.0, 0.0, params, sys)
