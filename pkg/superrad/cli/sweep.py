"""
Comando sweep: taxas de decaimento de N₂ sobre a grade j × pares γ.
"""

import click

from superrad.cli.comum import CODIGO_NUMERICO, FalhaComando, opcoes_comuns, tratar_erros
from superrad.models import RunConfig
from superrad.services.experiments import run_sweep
from superrad.services.result_writer import escrever_resultados


@click.command("sweep")
@opcoes_comuns
def comando(cfg: RunConfig):
    """Ajusta a taxa de N₂ em cada ponto da grade e compara com a previsão."""
    with tratar_erros():
        tabela = run_sweep(cfg)
        escrever_resultados(tabela, cfg.out, cfg.format)

    if tabela.falhas:
        raise FalhaComando(f"{len(tabela.falhas)} ponto(s) da varredura falharam", CODIGO_NUMERICO)
