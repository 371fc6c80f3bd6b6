"""
Funções de validação.

Contém funções para validar argumentos das operações e destinos de saída.
"""

import math
from pathlib import Path

from superrad.config import Config
from superrad.utils.errors import DomainError


def formato_permitido(formato: str) -> bool:
    """
    Verifica se o formato de saída é suportado.

    Args:
        formato: Nome do formato (table, structured ou xlsx)

    Returns:
        True se o formato for permitido, False caso contrário
    """
    return formato in Config.FORMATOS_SAIDA


def extensao_compativel(caminho: str | Path, formato: str) -> bool:
    """
    Verifica se a extensão do arquivo de saída combina com o formato.

    Regras:
    - Deve conter um ponto (.)
    - Tudo após o último ponto deve estar nas extensões do formato

    Args:
        caminho: Caminho do arquivo de saída
        formato: Formato escolhido

    Returns:
        True se a extensão for compatível, False caso contrário
    """
    nome = Path(caminho).name
    extensoes = Config.EXTENSOES_POR_FORMATO.get(formato, set())
    return "." in nome and nome.rsplit(".", 1)[1].lower() in extensoes


def exigir_mesmo_sistema(a, b, operacao: str) -> None:
    """
    Garante que dois objetos pertencem ao mesmo sistema de spin.

    Args:
        a: Objeto com atributo sys
        b: Objeto com atributo sys
        operacao: Nome da operação, para a mensagem de erro

    Raises:
        DomainError: Se as dimensões diferirem
    """
    if a.sys.two_j != b.sys.two_j:
        raise DomainError(
            f"{operacao}: sistemas diferentes (dim {a.sys.dim} e dim {b.sys.dim})"
        )


def exigir_tau_nao_negativo(tau: float) -> float:
    """
    Valida um tempo adimensional de propagação.

    Args:
        tau: Tempo em unidades de T_class

    Returns:
        O próprio tau como float

    Raises:
        DomainError: Se tau for negativo ou não finito
    """
    tau = float(tau)
    if not math.isfinite(tau) or tau < 0:
        raise DomainError(f"tempo de propagação deve ser finito e não negativo: {tau!r}")
    return tau
