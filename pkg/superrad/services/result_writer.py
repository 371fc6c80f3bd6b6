"""
Serviço de geração das tabelas de resultados.

Centraliza a emissão das tabelas nos três formatos: texto delimitado
(table), objeto JSON (structured) e planilha Excel com as abas
"resultados" e "falhas" (xlsx).
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import pandas as pd

from superrad.utils.errors import COLUNAS_FALHAS, ConfigError, formatar_linha_falha
from superrad.utils.formatters import formatar_numero, numero_para_json


@dataclass
class TabelaResultados:
    """Tabela de um comando: colunas ordenadas, linhas, metadados e falhas coletadas."""

    colunas: list[str]
    linhas: list[dict] = field(default_factory=list)
    metadados: dict = field(default_factory=dict)
    falhas: list[dict] = field(default_factory=list)
    estados: dict | None = None

    def dataframe(self) -> pd.DataFrame:
        return pd.DataFrame(self.linhas, columns=self.colunas)


def gerar_texto_tabela(tabela: TabelaResultados) -> str:
    """
    Gera a tabela delimitada por vírgulas com cabeçalho.

    Os números são formatados antes do pandas para garantir precisão de ida
    e volta e saída idêntica byte a byte.

    Args:
        tabela: Tabela de resultados

    Returns:
        Texto CSV terminado em nova linha
    """
    df = tabela.dataframe()
    df_texto = df.apply(lambda coluna: coluna.map(formatar_numero)) if not df.empty else df
    return df_texto.to_csv(index=False, lineterminator="\n")


def gerar_texto_estruturado(tabela: TabelaResultados) -> str:
    """
    Gera o objeto JSON com metadados, colunas, linhas, falhas e estados.

    Args:
        tabela: Tabela de resultados

    Returns:
        Texto JSON com chaves ordenadas
    """
    objeto = {
        "metadados": {chave: numero_para_json(valor) for chave, valor in tabela.metadados.items()},
        "colunas": list(tabela.colunas),
        "linhas": [
            {coluna: numero_para_json(linha.get(coluna)) for coluna in tabela.colunas}
            for linha in tabela.linhas
        ],
        "falhas": [formatar_linha_falha(falha) for falha in tabela.falhas],
    }
    if tabela.estados is not None:
        objeto["estados"] = tabela.estados
    return json.dumps(objeto, indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False) + "\n"


def gerar_excel(tabela: TabelaResultados, output_path: Path) -> Path:
    """
    Gera planilha Excel com as abas "resultados" e "falhas".

    Sempre cria as duas abas, mesmo que vazias.

    Args:
        tabela: Tabela de resultados
        output_path: Caminho onde o arquivo Excel será salvo

    Returns:
        Caminho do arquivo Excel gerado
    """
    with pd.ExcelWriter(output_path, engine="openpyxl") as writer:
        # Aba resultados (sempre criada, mesmo que vazia)
        tabela.dataframe().to_excel(writer, sheet_name="resultados", index=False)

        # Aba falhas (sempre criada, mesmo que vazia)
        if tabela.falhas:
            df_falhas = pd.DataFrame([formatar_linha_falha(falha) for falha in tabela.falhas])
        else:
            df_falhas = pd.DataFrame(columns=COLUNAS_FALHAS)
        df_falhas.to_excel(writer, sheet_name="falhas", index=False)

    return output_path


def caminho_estados(destino: str | Path) -> Path:
    """Arquivo irmão <destino>.estados.json que recebe o despejo de estados."""
    destino = Path(destino)
    return destino.with_name(destino.name + ".estados.json")


def escrever_resultados(tabela: TabelaResultados, destino: str | Path | None, formato: str) -> None:
    """
    Escreve a tabela no destino (ou na saída padrão) no formato pedido.

    No formato table, o despejo de estados vai para o arquivo irmão
    <destino>.estados.json quando houver destino.

    Args:
        tabela: Tabela de resultados
        destino: Caminho do arquivo, ou None para a saída padrão
        formato: table, structured ou xlsx

    Raises:
        ConfigError: Se xlsx for pedido sem arquivo de destino
    """
    if formato == "xlsx":
        if destino is None:
            raise ConfigError("o formato xlsx exige --out", campo="out")
        gerar_excel(tabela, Path(destino))
        return

    texto = gerar_texto_estruturado(tabela) if formato == "structured" else gerar_texto_tabela(tabela)
    if destino is None:
        sys.stdout.write(texto)
        return
    Path(destino).write_text(texto, encoding="utf-8")

    if formato == "table" and tabela.estados is not None:
        estados = json.dumps(tabela.estados, indent=2, sort_keys=True) + "\n"
        caminho_estados(destino).write_text(estados, encoding="utf-8")
