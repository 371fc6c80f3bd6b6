"""
Factory para criação da linha de comando.

Centraliza a criação do grupo click e o registro dos comandos
evolve, sweep, prepare e verify.
"""

import logging
import sys

import click

from superrad import __version__
from superrad.cli import evolve, prepare, sweep, verify


def configurar_logging(verbose: bool) -> None:
    """Com --verbose, envia logs e avisos para stderr; a saída de dados fica limpa."""
    if not verbose:
        return
    logging.basicConfig(
        level=logging.DEBUG,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )
    logging.captureWarnings(True)


def create_cli() -> click.Group:
    """
    Cria o grupo de comandos.

    Returns:
        Grupo click com os comandos registrados
    """

    @click.group(name="superrad")
    @click.version_option(__version__, prog_name="superrad")
    @click.option("--verbose", "-v", is_flag=True, help="Mostra o log detalhado em stderr.")
    def grupo(verbose: bool):
        """Simulador de decoerência superradiante de gatos de spin coletivo."""
        configurar_logging(verbose)

    # Registra comandos
    grupo.add_command(evolve.comando)
    grupo.add_command(sweep.comando)
    grupo.add_command(prepare.comando)
    grupo.add_command(verify.comando)
    return grupo


def main() -> None:
    create_cli()(prog_name="superrad")


cli = create_cli()
