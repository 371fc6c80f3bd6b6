"""
Opções e tratamento de erros compartilhados pelos comandos.
"""

from __future__ import annotations

import functools
import logging
from contextlib import contextmanager

import click

from superrad.models import RunConfig
from superrad.utils.errors import ConfigError, ConvergenceError, DomainError, FitError, SuperradError
from superrad.utils.run_config import carregar_run_config

logger = logging.getLogger(__name__)

CODIGO_VERIFICACAO = 1
CODIGO_CONFIGURACAO = 2
CODIGO_NUMERICO = 3


class FalhaComando(click.ClickException):
    """Erro de comando com código de saída próprio."""

    def __init__(self, mensagem: str, codigo: int):
        super().__init__(mensagem)
        self.exit_code = codigo


def opcoes_comuns(funcao):
    """Aplica --config, --set, --out e --format a um comando."""

    @click.option(
        "--config",
        "caminho",
        type=click.Path(dir_okay=False),
        default=None,
        help="Arquivo chave=valor com a configuração da execução.",
    )
    @click.option(
        "--set",
        "sobrescritas",
        multiple=True,
        metavar="CHAVE=VALOR",
        help="Sobrescreve uma chave da configuração (repetível).",
    )
    @click.option("--out", "saida", default=None, help="Arquivo de saída (padrão: saída padrão).")
    @click.option(
        "--format",
        "formato",
        type=click.Choice(["table", "structured", "xlsx"]),
        default=None,
        help="Formato da saída.",
    )
    @functools.wraps(funcao)
    def envoltorio(caminho, sobrescritas, saida, formato, **kwargs):
        return funcao(carregar(caminho, sobrescritas, saida, formato), **kwargs)

    return envoltorio


def carregar(caminho, sobrescritas, saida, formato) -> RunConfig:
    """
    Lê a configuração; --out e --format valem como as últimas sobrescritas.

    Raises:
        FalhaComando: Com código 2 se a configuração for inválida
    """
    itens = list(sobrescritas)
    if saida is not None:
        itens.append(f"out={saida}")
    if formato is not None:
        itens.append(f"format={formato}")
    with tratar_erros():
        return carregar_run_config(caminho, itens)


@contextmanager
def tratar_erros():
    """Converte exceções do simulador em códigos de saída."""
    try:
        yield
    except ConfigError as exc:
        raise FalhaComando(f"erro de configuração: {exc}", CODIGO_CONFIGURACAO) from exc
    except (ConvergenceError, FitError) as exc:
        raise FalhaComando(f"falha numérica: {exc}", CODIGO_NUMERICO) from exc
    except DomainError as exc:
        raise FalhaComando(f"entrada inválida: {exc}", CODIGO_CONFIGURACAO) from exc
    except SuperradError as exc:
        logger.exception("erro inesperado do simulador")
        raise FalhaComando(str(exc), CODIGO_NUMERICO) from exc
