import math

import pytest

from superrad.models import PropagatorConfig
from superrad.services import acceptance
from superrad.services.acceptance import (
    CRITERIOS,
    CriterioResultado,
    executar_verificacao,
    triplas_derivada,
)
from superrad.utils.errors import ConvergenceError

RAPIDOS = [1, 6, 7, 8, 9]
LENTOS = [2, 3, 4, 5]
FROUXO = PropagatorConfig(rel_tol=1e-2, max_step=math.inf)


def test_grade_de_triplas():
    triplas = triplas_derivada()
    assert len(triplas) == 25
    assert len(set(triplas)) == 25


@pytest.mark.parametrize("numero", RAPIDOS)
def test_criterios_rapidos_passam(numero):
    resultado = CRITERIOS[numero](PropagatorConfig())
    assert resultado.numero == numero
    assert resultado.passou, resultado.detalhe


@pytest.mark.slow
@pytest.mark.parametrize("numero", LENTOS)
def test_criterios_lentos_passam(numero):
    resultado = CRITERIOS[numero](PropagatorConfig())
    assert resultado.passou, resultado.detalhe


def test_tolerancia_frouxa_e_detectada():
    assert not acceptance.criterio_gato_polar(FROUXO).passou
    assert not acceptance.criterio_oraculo(FROUXO).passou


def test_executa_na_ordem_pedida():
    resultados = executar_verificacao(PropagatorConfig(), [6, 1])
    assert [r.numero for r in resultados] == [1, 6]
    assert all(isinstance(r, CriterioResultado) for r in resultados)


def test_erro_numerico_vira_falha_do_criterio(monkeypatch):
    def explode(cfg):
        raise ConvergenceError("passo degenerou", 0.5)

    monkeypatch.setitem(CRITERIOS, 1, explode)
    (resultado,) = executar_verificacao(PropagatorConfig(), [1])
    assert not resultado.passou
    assert "passo degenerou" in resultado.detalhe


def test_resumo_legivel_por_maquina():
    resumo = CriterioResultado(3, "teste", True, 0.1, 5.0, "ok").resumo()
    assert resumo == {"numero": 3, "nome": "teste", "passou": True, "medido": 0.1, "limite": 5.0, "detalhe": "ok"}
