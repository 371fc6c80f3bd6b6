import math
import os

import pytest

from superrad.models import FitModel, InitialState, PropagationMethod, TauGrid
from superrad.utils.errors import ConfigError
from superrad.utils.run_config import carregar_run_config


def escrever(tmp_path, texto):
    caminho = tmp_path / "execucao.env"
    caminho.write_text(texto, encoding="utf-8")
    return caminho


def test_arquivo_completo(tmp_path):
    caminho = escrever(
        tmp_path,
        "# gato simétrico\n"
        "j=10\n"
        "estado=cat\n"
        "theta1=0.6\n"
        "theta2=2.5\n"
        "phi2=0.3\n"
        "c2=0.5-0.5j\n"
        "tau_max=2\n"
        "sample_count=21\n"
        "grade=log\n"
        "method=fixed_rk4\n"
        "max_step=0.01\n"
        "sweep_j=25,50\n"
        "sweep_gammas=2:0.5, 1:4\n"
        "modelo_ajuste=quadratic\n",
    )
    cfg = carregar_run_config(caminho)
    assert cfg.sys.two_j == 20
    assert cfg.estado is InitialState.CAT
    assert cfg.cat.b.phi == pytest.approx(0.3)
    assert cfg.cat.c2 == complex(0.5, -0.5)
    assert cfg.tau_max == 2.0
    assert cfg.grade is TauGrid.LOG
    assert cfg.propagator.method is PropagationMethod.FIXED_RK4
    assert cfg.propagator.max_step == 0.01
    assert cfg.sweep_j == (25.0, 50.0)
    assert cfg.sweep_gammas == ((2.0, 0.5), (1.0, 4.0))
    assert cfg.modelo_ajuste is FitModel.QUADRATIC


def test_sobrescritas_vencem_o_arquivo(tmp_path):
    caminho = escrever(tmp_path, "j=3\ntau_max=1\n")
    cfg = carregar_run_config(caminho, ["tau_max=4", "rel_tol=1e-6", "max_step=inf"])
    assert cfg.tau_max == 4.0
    assert cfg.propagator.rel_tol == 1e-6
    assert math.isinf(cfg.propagator.max_step)


def test_chave_desconhecida_informa_linha(tmp_path):
    caminho = escrever(tmp_path, "j=3\n\nvelocidade=2\n")
    with pytest.raises(ConfigError) as exc:
        carregar_run_config(caminho)
    assert exc.value.campo == "velocidade"
    assert exc.value.linha == 3
    assert "linha 3" in str(exc.value)


def test_valor_invalido(tmp_path):
    with pytest.raises(ConfigError) as exc:
        carregar_run_config(escrever(tmp_path, "j=3\nsample_count=muitos\n"))
    assert exc.value.campo == "sample_count"
    assert exc.value.linha == 2


def test_linha_sem_valor(tmp_path):
    with pytest.raises(ConfigError) as exc:
        carregar_run_config(escrever(tmp_path, "j\n"))
    assert exc.value.campo == "j"


@pytest.mark.parametrize(
    "sobrescritas, campo",
    [
        (["j=2", "n_atoms=5"], "n_atoms"),
        (["j=0.3"], "j"),
        (["tau_max=0"], "tau_max"),
        (["sample_count=1"], "sample_count"),
        (["estado=cat", "theta1=0.5"], "theta2"),
        (["j=2", "g=0.01", "kappa=1"], "delta"),
        (["g=0.01", "kappa=1", "delta=100"], "j"),
        (["format=pdf"], "format"),
        (["out=saida.json"], "out"),
        (["amostras_ajuste=2"], "amostras_ajuste"),
        (["theta=4"], "theta"),
        (["workers=0"], "workers"),
    ],
)
def test_invariantes_violados(sobrescritas, campo):
    with pytest.raises(ConfigError) as exc:
        carregar_run_config(None, sobrescritas)
    assert exc.value.campo == campo


def test_sobrescrita_sem_igual():
    with pytest.raises(ConfigError):
        carregar_run_config(None, ["tau_max"])


def test_arquivo_inexistente(tmp_path):
    with pytest.raises(ConfigError):
        carregar_run_config(tmp_path / "nao_existe.env")


def test_parametros_fisicos_usam_n_igual_a_2j():
    cfg = carregar_run_config(None, ["j=5", "g=0.01", "kappa=1", "delta=100"])
    assert cfg.params.n_atoms == 10
    por_atomos = carregar_run_config(None, ["n_atoms=7", "g=0.01", "kappa=1", "delta=100"])
    assert por_atomos.sys.j == 3.5
    assert por_atomos.params.n_atoms == por_atomos.sys.two_j


def test_ambiente_nao_e_lido_nem_alterado(tmp_path, monkeypatch):
    monkeypatch.setenv("TAU_MAX", "9")
    antes = dict(os.environ)
    cfg = carregar_run_config(escrever(tmp_path, "j=2\nsample_count=3\n"))
    assert cfg.tau_max == 1.0
    assert dict(os.environ) == antes
