"""
Funções de formatação.

Converte números e estados em texto com precisão de ida e volta, para que
tabelas geradas a partir da mesma configuração sejam idênticas byte a byte.
"""

import math
import numbers

import numpy as np


def formatar_numero(valor) -> str:
    """
    Formata um valor numérico com precisão completa de ida e volta.

    Args:
        valor: Inteiro, real, complexo, texto ou None

    Returns:
        Texto que reconstrói exatamente o mesmo valor (repr do float)
    """
    if valor is None:
        return ""
    if isinstance(valor, str):
        return valor
    if isinstance(valor, (bool, np.bool_)):
        return "1" if valor else "0"
    if isinstance(valor, numbers.Integral):
        return str(int(valor))
    if isinstance(valor, numbers.Real):
        return repr(float(valor))
    if isinstance(valor, numbers.Complex):
        real = repr(float(valor.real))
        imag = float(valor.imag)
        sinal = "-" if math.copysign(1.0, imag) < 0 else "+"
        return f"{real}{sinal}{repr(abs(imag))}j"
    return str(valor)


def numero_para_json(valor):
    """
    Converte um valor para um tipo serializável em JSON.

    NaN e infinitos viram None; escalares numpy viram tipos Python.

    Args:
        valor: Valor a converter

    Returns:
        Valor pronto para json.dumps
    """
    if isinstance(valor, (bool, np.bool_)):
        return bool(valor)
    if isinstance(valor, numbers.Integral):
        return int(valor)
    if isinstance(valor, numbers.Real):
        valor = float(valor)
        return valor if math.isfinite(valor) else None
    if isinstance(valor, numbers.Complex):
        return [numero_para_json(valor.real), numero_para_json(valor.imag)]
    return valor


def formatar_amplitudes(amp: np.ndarray) -> list[list[float]]:
    """
    Converte um vetor de amplitudes complexas em pares [real, imaginário].

    Args:
        amp: Vetor complexo na base de Dicke (índice k = j - m)

    Returns:
        Lista de pares [re, im] na mesma ordem
    """
    return [[float(z.real), float(z.imag)] for z in np.asarray(amp, dtype=complex)]
