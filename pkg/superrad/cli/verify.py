"""
Comando verify: executa a bateria de verificação e resume o resultado.
"""

import click

from superrad.cli.comum import CODIGO_VERIFICACAO, FalhaComando, opcoes_comuns, tratar_erros
from superrad.models import RunConfig
from superrad.services.acceptance import CRITERIOS, executar_verificacao
from superrad.services.result_writer import TabelaResultados, escrever_resultados

COLUNAS_VERIFICACAO = ["numero", "nome", "passou", "medido", "limite", "detalhe"]


@click.command("verify")
@click.option(
    "--criterio",
    "criterios",
    type=click.IntRange(min(CRITERIOS), max(CRITERIOS)),
    multiple=True,
    help="Executa só este critério (repetível).",
)
@opcoes_comuns
def comando(cfg: RunConfig, criterios: tuple[int, ...]):
    """Roda os critérios de verificação; sai com 0 só se todos passarem."""
    with tratar_erros():
        resultados = executar_verificacao(cfg.propagator, criterios or None)

    for resultado in resultados:
        marca = "ok" if resultado.passou else "FALHOU"
        click.echo(
            f"[{marca}] {resultado.numero} {resultado.nome}: "
            f"medido={resultado.medido:.3g} limite={resultado.limite:.3g}",
            err=True,
        )

    aprovados = sum(resultado.passou for resultado in resultados)
    tabela = TabelaResultados(
        COLUNAS_VERIFICACAO,
        [resultado.resumo() for resultado in resultados],
        {
            "comando": "verify",
            "aprovados": aprovados,
            "total": len(resultados),
            "passou": aprovados == len(resultados),
            "metodo": cfg.propagator.method.value,
            "rel_tol": cfg.propagator.rel_tol,
        },
    )
    with tratar_erros():
        escrever_resultados(tabela, cfg.out, cfg.format)

    if aprovados != len(resultados):
        raise FalhaComando(
            f"verificação: {len(resultados) - aprovados} de {len(resultados)} critério(s) falharam",
            CODIGO_VERIFICACAO,
        )
