"""
Comando evolve: evolução temporal de um estado inicial.
"""

import click

from superrad.cli.comum import CODIGO_NUMERICO, FalhaComando, opcoes_comuns, tratar_erros
from superrad.models import RunConfig
from superrad.services.experiments import run_evolve
from superrad.services.result_writer import escrever_resultados


@click.command("evolve")
@opcoes_comuns
def comando(cfg: RunConfig):
    """Evolui o estado inicial e tabela N₁, N₂, ⟨J_z⟩/j e pureza."""
    with tratar_erros():
        tabela, erro = run_evolve(cfg)
        escrever_resultados(tabela, cfg.out, cfg.format)

    # A tabela parcial já foi escrita
    if erro is not None:
        raise FalhaComando(f"falha numérica: {erro}", CODIGO_NUMERICO)
