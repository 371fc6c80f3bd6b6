"""
Comando prepare: protocolo de três passos do gato de vida longa.
"""

import click

from superrad.cli.comum import opcoes_comuns, tratar_erros
from superrad.models import RunConfig
from superrad.services.experiments import run_prepare
from superrad.services.result_writer import escrever_resultados


@click.command("prepare")
@opcoes_comuns
def comando(cfg: RunConfig):
    """Simula a preparação e diagnostica o estado após cada passo."""
    with tratar_erros():
        escrever_resultados(run_prepare(cfg), cfg.out, cfg.format)
