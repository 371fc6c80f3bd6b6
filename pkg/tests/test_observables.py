import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from superrad.models import CatSpec, CoherentSpec, FitModel, NormKind, SpinSystem
from superrad.services import analytics
from superrad.services.cats import build_cat
from superrad.services.dynamics import propagate_samples
from superrad.services.observables import (
    bloch_vector,
    component_capture,
    eigen_angle,
    evaluate_norm,
    expect,
    fit_decay,
    initial_slope,
    norm_abs,
    norm_hs,
    purity,
    symmetric_decomposition,
)
from superrad.services.spinalg import basis_vector, coherent_vector, density_matrix, dyad, jz_matrix
from superrad.utils.errors import DomainError, FitError

from tests.conftest import METADE_PI, diade_coerente, operador_aleatorio


def test_normas_de_uma_diade():
    sys = SpinSystem.from_j(3)
    a = coherent_vector(CoherentSpec(0.7, 0.2), sys)
    b = coherent_vector(CoherentSpec(2.1, 1.5), sys)
    d = dyad(a, b)
    assert norm_hs(d) == pytest.approx(1.0)
    assert norm_abs(d) == pytest.approx(np.sum(np.abs(a.amp)) * np.sum(np.abs(b.amp)))
    assert evaluate_norm(d, NormKind.N1) == norm_hs(d)
    assert evaluate_norm(d, "N2") == norm_abs(d)


def test_pureza_de_estado_puro():
    psi = coherent_vector(CoherentSpec(1.2, 0.3), SpinSystem.from_j(4))
    assert purity(density_matrix(psi)) == pytest.approx(1.0)


def test_derivada_inicial_do_gato_polar(cfg):
    sys = SpinSystem.from_j(5)
    diade = dyad(basis_vector(sys, 5), basis_vector(sys, -5))
    assert initial_slope(diade, NormKind.N1, cfg).slope == pytest.approx(-2.0, abs=1e-6)
    assert initial_slope(diade, NormKind.N2, cfg).slope == pytest.approx(-1.0, abs=1e-6)


@pytest.mark.parametrize(
    "theta1, theta2, delta_phi",
    [(0.9, 2.2, math.pi / 3), (math.pi / 2, math.pi / 2, math.pi), (0.3, 2.8, 0.0)],
)
def test_derivada_inicial_contra_previsao(theta1, theta2, delta_phi, cfg):
    j = 10
    estimativa = initial_slope(diade_coerente(theta1, 0.0, theta2, delta_phi, SpinSystem.from_j(j)), NormKind.N1, cfg)
    previsto = analytics.n1_initial_slope(theta1, 0.0, theta2, delta_phi, j).total
    assert analytics.within_tolerance(estimativa.slope, previsto, 1e-4)
    assert estimativa.error < 1e-4 * max(abs(previsto), 1.0)


def test_ajuste_recupera_taxas_exatas():
    amostras = [(t, 2.0 * math.exp(-0.7 * t - 0.2 * t * t)) for t in np.linspace(0.0, 1.0, 11)]
    ajuste = fit_decay(amostras, FitModel.QUADRATIC)
    assert ajuste.rate == pytest.approx(0.7, abs=1e-10)
    assert ajuste.quadratic == pytest.approx(0.2, abs=1e-10)
    assert ajuste.intercept == pytest.approx(math.log(2.0), abs=1e-10)
    assert ajuste.window == (0.0, 1.0)

    linear = fit_decay([(t, math.exp(-3.0 * t)) for t in np.linspace(0.0, 0.1, 5)])
    assert linear.rate == pytest.approx(3.0, abs=1e-10)
    assert linear.quadratic == 0.0
    assert linear.residual < 1e-12


def test_ajuste_rejeita_entradas_invalidas():
    with pytest.raises(DomainError):
        fit_decay([(0.0, 1.0), (0.1, 0.9)])
    with pytest.raises(DomainError):
        fit_decay([(0.0, 1.0), (0.1, 0.0), (0.2, 0.5)])
    with pytest.raises(FitError):
        fit_decay([(0.5, 1.0), (0.5, 0.9), (0.5, 0.8)])


@given(st.floats(min_value=0.0, max_value=math.pi), st.floats(min_value=0.0, max_value=6.28))
def test_vetor_de_bloch_do_estado_coerente(theta, phi):
    sys = SpinSystem.from_j(3)
    spec = CoherentSpec(theta, phi)
    jx, jy, jz = bloch_vector(density_matrix(coherent_vector(spec, sys)))
    assert jx == pytest.approx(3 * math.sin(spec.theta) * math.cos(spec.phi), abs=1e-10)
    assert jy == pytest.approx(3 * math.sin(spec.theta) * math.sin(spec.phi), abs=1e-10)
    assert jz == pytest.approx(3 * math.cos(spec.theta), abs=1e-10)


def test_valor_esperado_exige_traco_nao_nulo():
    sys = SpinSystem.from_j(1)
    diade = dyad(basis_vector(sys, 1), basis_vector(sys, -1))
    with pytest.raises(DomainError):
        expect(diade, jz_matrix(sys))


@given(st.integers(min_value=1, max_value=40), st.floats(min_value=0.0, max_value=math.pi))
def test_angulo_numerico_igual_ao_fechado(two_j, theta):
    sys = SpinSystem(two_j)
    assert eigen_angle(CoherentSpec(theta), sys) == pytest.approx(analytics.cos2_alpha(theta, sys.j), abs=1e-10)


def test_angulo_numerico_nos_polos():
    sys = SpinSystem.from_j(4)
    assert eigen_angle(CoherentSpec(0.0), sys) == 0.0
    assert eigen_angle(CoherentSpec(math.pi), sys) == 1.0


def test_captura_de_componentes():
    sys = SpinSystem.from_j(4)
    spec = CoherentSpec(1.0, 0.5)
    psi = coherent_vector(spec, sys)
    assert component_capture(psi, [spec]) == pytest.approx(1.0)
    assert component_capture(basis_vector(sys, 4), [CoherentSpec(math.pi)]) == pytest.approx(0.0)
    # componentes repetidas não quebram a projeção
    assert component_capture(psi, [spec, spec]) == pytest.approx(1.0)


def test_decomposicao_simetrica_recupera_o_par():
    sys = SpinSystem.from_j(10)
    psi = build_cat(CatSpec(CoherentSpec(0.6, 1.0), CoherentSpec(math.pi - 0.6, 1.0)), sys)
    captura, theta, phi = symmetric_decomposition(psi)
    assert captura >= 1 - 1e-8
    assert theta == pytest.approx(0.6, abs=1e-3)
    assert phi == pytest.approx(1.0, abs=1e-3)


def test_decomposicao_de_estado_fora_da_familia():
    sys = SpinSystem.from_j(6)
    captura, theta, _ = symmetric_decomposition(basis_vector(sys, 0))
    assert 0.0 <= captura < 1.0
    assert 0.0 <= theta <= math.pi / 2


@given(st.integers(min_value=1, max_value=12), st.integers(min_value=0, max_value=2**31))
def test_limites_entre_as_normas(two_j, semente):
    sys = SpinSystem(two_j)
    rho = operador_aleatorio(np.random.default_rng(semente), sys)
    n1, n2 = norm_hs(rho), norm_abs(rho)
    assert n1 <= n2 ** 2 * (1 + 1e-12)
    assert n2 ** 2 <= sys.dim ** 2 * n1 * (1 + 1e-12)


@pytest.mark.parametrize("theta1, phi1, theta2, phi2", [(0.7, 0.2, 2.1, 1.5), (1.0, 0.0, 1.0, 0.0), (0.0, 0.0, math.pi, 0.0)])
def test_limites_entre_as_normas_de_diades(theta1, phi1, theta2, phi2, cfg):
    diade = diade_coerente(theta1, phi1, theta2, phi2, SpinSystem.from_j(4))
    for rho in [diade, *propagate_samples(diade, [0.3, 1.5], cfg)]:
        n1, n2 = norm_hs(rho), norm_abs(rho)
        assert n1 <= n2 ** 2 * (1 + 1e-12)
        assert n2 ** 2 <= rho.sys.dim ** 2 * n1 * (1 + 1e-12)


# componentes quase ortogonais: o traço conservado ⟨γ2|γ1⟩ é desprezível
@pytest.mark.parametrize(
    "theta1, phi1, theta2, phi2",
    [
        (0.0, 0.0, math.pi, 0.0),
        (METADE_PI, 0.0, METADE_PI, math.pi),
        (0.3, 0.0, 2.8, math.pi),
        (0.4, 0.0, 2.4, math.pi),
        (1.0, 0.5, 1.3, 0.5 + math.pi),
    ],
)
def test_normas_de_diades_fora_da_diagonal_decaem(theta1, phi1, theta2, phi2, cfg):
    diade = diade_coerente(theta1, phi1, theta2, phi2, SpinSystem.from_j(10))
    taus = np.linspace(0.0, 2.0, 21)
    amostras = [diade, *propagate_samples(diade, taus[1:], cfg)]
    for norma in (norm_hs, norm_abs):
        valores = [norma(rho) for rho in amostras]
        assert all(depois <= antes + 1e-10 for antes, depois in zip(valores, valores[1:]))


def test_n1_da_diade_diagonal_volta_a_subir(cfg):
    # a pureza se recupera quando o estado relaxa para |j,-j⟩
    diade = diade_coerente(1.0, 0.0, 1.0, 0.0, SpinSystem.from_j(10))
    taus = np.linspace(0.0, 10.0, 41)
    valores = [1.0] + [norm_hs(rho) for rho in propagate_samples(diade, taus[1:], cfg)]
    assert min(valores) < 1.0 - 1e-3
    assert valores[-1] - min(valores) > 1e-3
    assert valores[-1] == pytest.approx(1.0, abs=1e-2)


def _taxa_diagonal(gamma, j, cfg):
    sys = SpinSystem.from_j(j)
    psi = coherent_vector(CoherentSpec.from_gamma(gamma), sys)
    taus = np.linspace(0.0, 0.1 / j, 20)
    amostras = propagate_samples(dyad(psi, psi), taus, cfg)
    return fit_decay([(float(t), norm_abs(rho)) for t, rho in zip(taus, amostras)]).rate


@pytest.mark.parametrize("gamma", [0.5, 1.0, 2.0])
def test_taxa_da_diade_diagonal_independe_de_j(gamma, cfg):
    r25, r100 = _taxa_diagonal(gamma, 25, cfg), _taxa_diagonal(gamma, 100, cfg)
    assert analytics.within_tolerance(r25, r100, 0.25)
