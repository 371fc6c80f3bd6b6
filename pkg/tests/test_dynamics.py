import math
import warnings
from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given, strategies as st

from superrad.models import (
    CoherentSpec,
    PhysicalParams,
    PropagationMethod,
    PropagatorConfig,
    SpinOperator,
    SpinSystem,
)
from superrad.services import dynamics
from superrad.services.dynamics import (
    check_regime,
    classical_time,
    dispersive_phases,
    lindblad_apply,
    lindblad_superoperator,
    propagate,
    propagate_dispersive,
    propagate_samples,
)
from superrad.services.observables import norm_abs, norm_hs
from superrad.services.spinalg import basis_vector, coherent_vector, density_matrix, dyad
from superrad.utils.errors import ConvergenceError, DomainError, RegimeWarning

from tests.conftest import densidade_aleatoria, operador_aleatorio

ORACULO = PropagatorConfig(method=PropagationMethod.DENSE_EXPM_ORACLE)


@given(st.integers(min_value=1, max_value=8), st.integers(min_value=0, max_value=2**31))
def test_gerador_coincide_com_superoperador(two_j, semente):
    sys = SpinSystem(two_j)
    rho = operador_aleatorio(np.random.default_rng(semente), sys)
    direto = lindblad_apply(rho).mat
    denso = (lindblad_superoperator(sys) @ rho.mat.ravel()).reshape(sys.dim, sys.dim)
    assert np.allclose(direto, denso, atol=1e-12)


@given(st.integers(min_value=1, max_value=8), st.integers(min_value=0, max_value=2**31))
def test_gerador_preserva_traco(two_j, semente):
    rho = operador_aleatorio(np.random.default_rng(semente), SpinSystem(two_j))
    assert abs(lindblad_apply(rho).trace()) < 1e-11


@pytest.mark.parametrize("j", [1, 5, 12.5])
def test_gato_polar_exato(j, cfg):
    sys = SpinSystem.from_j(j)
    diade = dyad(basis_vector(sys, sys.j), basis_vector(sys, -sys.j))
    taus = np.linspace(0.0, 3.0, 7)
    for tau, rho in zip(taus, propagate_samples(diade, taus, cfg)):
        assert norm_hs(rho) == pytest.approx(math.exp(-2 * tau), abs=1e-8)
        assert norm_abs(rho) == pytest.approx(math.exp(-tau), abs=1e-8)


@pytest.mark.parametrize("j", [0.5, 1, 2.5])
def test_bandas_contra_oraculo(j, rng, cfg):
    sys = SpinSystem.from_j(j)
    rho0 = operador_aleatorio(rng, sys)
    for banda, denso in zip(propagate_samples(rho0, [0.1, 1.0], cfg), propagate_samples(rho0, [0.1, 1.0], ORACULO)):
        assert np.max(np.abs(banda.mat - denso.mat)) < 1e-9


def test_rk4_fixo_contra_oraculo(rng):
    sys = SpinSystem.from_j(2)
    rho0 = densidade_aleatoria(rng, sys)
    rk4 = PropagatorConfig(method=PropagationMethod.FIXED_RK4, max_step=0.005)
    assert np.max(np.abs(propagate(rho0, 0.8, rk4).mat - propagate(rho0, 0.8, ORACULO).mat)) < 1e-8


def test_workers_nao_alteram_resultado(rng):
    sys = SpinSystem.from_j(3)
    rho0 = operador_aleatorio(rng, sys)
    serie = propagate(rho0, 0.6, PropagatorConfig(workers=1))
    paralelo = propagate(rho0, 0.6, PropagatorConfig(workers=4))
    assert np.array_equal(serie.mat, paralelo.mat)


def test_amostras_em_qualquer_ordem(rng, cfg):
    rho0 = densidade_aleatoria(rng, SpinSystem.from_j(2))
    a, b = propagate_samples(rho0, [1.0, 0.5], cfg)
    assert np.allclose(a.mat, propagate(rho0, 1.0, cfg).mat, atol=1e-9)
    assert np.allclose(b.mat, propagate(rho0, 0.5, cfg).mat, atol=1e-9)


@given(
    st.integers(min_value=1, max_value=8),
    st.integers(min_value=0, max_value=2**31),
    st.complex_numbers(max_magnitude=3.0),
    st.complex_numbers(max_magnitude=3.0),
)
def test_propagacao_linear(two_j, semente, alfa, beta):
    gerador = np.random.default_rng(semente)
    sys = SpinSystem(two_j)
    rho1, rho2 = operador_aleatorio(gerador, sys), operador_aleatorio(gerador, sys)
    cfg = PropagatorConfig()
    combinada = propagate(alfa * rho1 + beta * rho2, 0.4, cfg).mat
    separadas = alfa * propagate(rho1, 0.4, cfg).mat + beta * propagate(rho2, 0.4, cfg).mat
    escala = 1.0 + abs(alfa) * np.max(np.abs(rho1.mat)) + abs(beta) * np.max(np.abs(rho2.mat))
    assert np.max(np.abs(combinada - separadas)) <= 1e-8 * escala


def test_tau_zero_devolve_o_proprio_operador(rng, cfg):
    rho0 = operador_aleatorio(rng, SpinSystem.from_j(2))
    assert np.array_equal(propagate(rho0, 0.0, cfg).mat, rho0.mat)


def test_tau_negativo_rejeitado(rng, cfg):
    with pytest.raises(DomainError):
        propagate(operador_aleatorio(rng, SpinSystem.from_j(1)), -0.1, cfg)


@pytest.mark.parametrize("tau", [0.5, 5.0])
def test_traco_e_positividade(tau, rng, cfg):
    rho = propagate(densidade_aleatoria(rng, SpinSystem.from_j(3)), tau, cfg)
    assert rho.trace() == pytest.approx(1.0, abs=1e-10)
    assert np.min(np.linalg.eigvalsh(rho.mat)) > -1e-9


def test_hermiticidade(rng, cfg):
    rho0 = operador_aleatorio(rng, SpinSystem.from_j(3))
    assert np.allclose(propagate(rho0, 0.7, cfg).dagger().mat, propagate(rho0.dagger(), 0.7, cfg).mat, atol=1e-10)


def test_bandas_vazias_permanecem_nulas(rng, cfg):
    sys = SpinSystem.from_j(4)
    mat = np.zeros((sys.dim, sys.dim), dtype=complex)
    idx = np.arange(sys.dim - 2)
    mat[idx, idx + 2] = rng.normal(size=idx.size)
    saida = propagate(SpinOperator(sys, mat), 1.0, cfg).mat
    fora = np.ones_like(saida, dtype=bool)
    fora[idx, idx + 2] = False
    assert np.all(saida[fora] == 0)


def test_estado_fundamental_estacionario(cfg):
    sys = SpinSystem.from_j(6)
    fundamental = density_matrix(basis_vector(sys, -6))
    assert np.max(np.abs(propagate(fundamental, 3.0, cfg).mat - fundamental.mat)) <= 1e-14


def test_falha_do_integrador_informa_tau_alcancado(monkeypatch, cfg):
    def falha(*args, **kwargs):
        return SimpleNamespace(status=-1, message="passo degenerou", t=np.array([0.0, 0.3]), y=np.zeros((1, 2)), nfev=0)

    monkeypatch.setattr(dynamics, "solve_ivp", falha)
    sys = SpinSystem.from_j(1)
    with pytest.raises(ConvergenceError) as exc:
        propagate(density_matrix(basis_vector(sys, 1)), 1.0, cfg)
    assert exc.value.tau_alcancado == pytest.approx(0.3)


def test_evolucao_dispersiva_unitaria(params_dispersivos):
    sys = SpinSystem.from_j(4)
    params = params_dispersivos(sys)
    psi = coherent_vector(CoherentSpec(1.0, 0.2), sys)
    assert propagate_dispersive(psi, params, 123.0).norm() == pytest.approx(1.0)
    fases = dispersive_phases(sys, params, 0.0)
    assert np.array_equal(fases, np.ones(sys.dim))


def test_avisos_de_regime():
    params = PhysicalParams(g=1.0, kappa=1.0, delta=2.0, n_atoms=10)
    with pytest.warns(RegimeWarning):
        regime = check_regime(params)
    assert regime == {"superradiance_valid": False, "dispersive_valid": False}

    psi = basis_vector(SpinSystem.from_j(5), 5)
    with pytest.warns(RegimeWarning):
        propagate_dispersive(psi, params, 1.0)


def test_sem_avisos_no_regime_valido(params_dispersivos):
    params = params_dispersivos(SpinSystem.from_j(5))
    with warnings.catch_warnings():
        warnings.simplefilter("error", RegimeWarning)
        assert check_regime(params) == {"superradiance_valid": True, "dispersive_valid": True}


def test_tempo_classico(params_dispersivos):
    params = params_dispersivos(SpinSystem.from_j(5))
    assert classical_time(params, 2.0) == pytest.approx(2.0 * params.t_class)
    with pytest.raises(DomainError):
        classical_time(params, math.inf)
