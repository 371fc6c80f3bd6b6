"""
Leitura da configuração de execução.

O arquivo de configuração é um arquivo chave=valor no formato .env, lido
com o analisador do python-dotenv (que informa a linha de cada chave).
Sobrescritas --set chave=valor são aplicadas depois do arquivo. O ambiente
do processo nunca é lido nem alterado.
"""

from __future__ import annotations

import io
import logging
import math
from pathlib import Path
from typing import Callable, Iterable

from dotenv.parser import parse_stream

from superrad.models import (
    CatSpec,
    CoherentSpec,
    FitModel,
    InitialState,
    PhysicalParams,
    PropagationMethod,
    PropagatorConfig,
    RunConfig,
    SpinSystem,
    TauGrid,
)
from superrad.utils.errors import ConfigError, DomainError
from superrad.utils.validators import extensao_compativel, formato_permitido

logger = logging.getLogger(__name__)


# =============================================================================
# CONVERSORES
# =============================================================================

def _real(texto: str) -> float:
    valor = float(texto)
    if math.isnan(valor):
        raise ValueError("NaN não é aceito")
    return valor


def _inteiro(texto: str) -> int:
    return int(texto)


def _complexo(texto: str) -> complex:
    return complex(texto.replace(" ", ""))


def _lista_reais(texto: str) -> tuple[float, ...]:
    return tuple(_real(item) for item in texto.split(",") if item.strip())


def _lista_pares(texto: str) -> tuple[tuple[float, float], ...]:
    pares = []
    for item in texto.split(","):
        if not item.strip():
            continue
        partes = item.split(":")
        if len(partes) != 2:
            raise ValueError(f"par '{item.strip()}' deve ter a forma gamma1:gamma2")
        pares.append((_real(partes[0]), _real(partes[1])))
    return tuple(pares)


def _texto(texto: str) -> str:
    return texto.strip()


CONVERSORES: dict[str, Callable[[str], object]] = {
    "j": _real,
    "n_atoms": _inteiro,
    "estado": InitialState,
    "theta": _real,
    "phi": _real,
    "theta1": _real,
    "phi1": _real,
    "theta2": _real,
    "phi2": _real,
    "c1": _complexo,
    "c2": _complexo,
    "g": _real,
    "kappa": _real,
    "delta": _real,
    "tau_max": _real,
    "sample_count": _inteiro,
    "grade": TauGrid,
    "method": PropagationMethod,
    "rel_tol": _real,
    "abs_tol": _real,
    "max_step": _real,
    "workers": _inteiro,
    "sweep_j": _lista_reais,
    "sweep_gammas": _lista_pares,
    "janela_jtau": _real,
    "amostras_ajuste": _inteiro,
    "modelo_ajuste": FitModel,
    "out": _texto,
    "format": _texto,
}


# =============================================================================
# LEITURA
# =============================================================================

def _linha_da_chave(original) -> int:
    # o analisador junta as linhas em branco anteriores ao trecho da chave
    texto = original.string
    return original.line + texto[: len(texto) - len(texto.lstrip())].count("\n")


def ler_arquivo(caminho: str | Path) -> dict[str, tuple[str, int]]:
    """
    Lê pares chave=valor de um arquivo no formato .env.

    Args:
        caminho: Caminho do arquivo

    Returns:
        Dicionário chave -> (valor bruto, linha)

    Raises:
        ConfigError: Se o arquivo não existir ou tiver linhas inválidas
    """
    caminho = Path(caminho)
    try:
        conteudo = caminho.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"não foi possível ler {caminho}: {exc.strerror}") from exc

    entradas: dict[str, tuple[str, int]] = {}
    for binding in parse_stream(io.StringIO(conteudo)):
        linha = _linha_da_chave(binding.original)
        if binding.error:
            raise ConfigError(f"linha inválida: {binding.original.string.strip()!r}", linha=linha)
        if binding.key is None:
            continue
        if binding.value is None:
            raise ConfigError("chave sem valor", campo=binding.key, linha=linha)
        entradas[binding.key.strip().lower()] = (binding.value, linha)
    return entradas


def ler_sobrescritas(sobrescritas: Iterable[str]) -> dict[str, tuple[str, None]]:
    """
    Interpreta sobrescritas --set chave=valor.

    Raises:
        ConfigError: Se alguma sobrescrita não tiver '='
    """
    entradas: dict[str, tuple[str, None]] = {}
    for item in sobrescritas:
        if "=" not in item:
            raise ConfigError(f"sobrescrita '{item}' deve ter a forma chave=valor")
        chave, valor = item.split("=", 1)
        entradas[chave.strip().lower()] = (valor.strip(), None)
    return entradas


def _converter(entradas: dict[str, tuple[str, int | None]]) -> dict[str, tuple[object, int | None]]:
    valores = {}
    for chave, (bruto, linha) in entradas.items():
        conversor = CONVERSORES.get(chave)
        if conversor is None:
            raise ConfigError("chave desconhecida", campo=chave, linha=linha)
        try:
            valores[chave] = (conversor(bruto), linha)
        except ValueError as exc:
            raise ConfigError(f"valor inválido {bruto!r} ({exc})", campo=chave, linha=linha) from exc
    return valores


def carregar_run_config(
    caminho: str | Path | None = None,
    sobrescritas: Iterable[str] = (),
) -> RunConfig:
    """
    Monta a RunConfig a partir do arquivo e das sobrescritas.

    Args:
        caminho: Arquivo chave=valor (opcional)
        sobrescritas: Itens chave=valor aplicados depois do arquivo

    Returns:
        RunConfig validada

    Raises:
        ConfigError: Com campo e linha do problema
    """
    entradas: dict[str, tuple[str, int | None]] = {}
    if caminho is not None:
        entradas.update(ler_arquivo(caminho))
    entradas.update(ler_sobrescritas(sobrescritas))
    valores = _converter(entradas)
    logger.debug("configuração: %s", sorted(valores))

    def valor(chave, padrao=None):
        return valores[chave][0] if chave in valores else padrao

    def linha(chave):
        return valores[chave][1] if chave in valores else None

    def construir(chave: str, fabrica: Callable[[], object]):
        try:
            return fabrica()
        except DomainError as exc:
            raise ConfigError(str(exc), campo=chave, linha=linha(chave)) from exc

    # Sistema de spin
    sys = None
    if "j" in valores:
        sys = construir("j", lambda: SpinSystem.from_j(valor("j")))
    if "n_atoms" in valores:
        por_atomos = construir("n_atoms", lambda: SpinSystem.from_atoms(valor("n_atoms")))
        if sys is not None and sys != por_atomos:
            raise ConfigError("j e n_atoms inconsistentes (exige n_atoms = 2j)", campo="n_atoms", linha=linha("n_atoms"))
        sys = por_atomos

    # Estado inicial
    estado = valor("estado")
    coerente = None
    if "theta" in valores or "phi" in valores:
        coerente = construir("theta", lambda: CoherentSpec(valor("theta", math.pi / 2.0), valor("phi", 0.0)))
    gato = None
    if estado is InitialState.CAT:
        for chave in ("theta1", "theta2"):
            if chave not in valores:
                raise ConfigError("obrigatório para estado=cat", campo=chave, linha=linha("estado"))
        gato = construir(
            "theta1",
            lambda: CatSpec(
                a=CoherentSpec(valor("theta1"), valor("phi1", 0.0)),
                b=CoherentSpec(valor("theta2"), valor("phi2", 0.0)),
                c1=valor("c1", 1.0 / math.sqrt(2.0)),
                c2=valor("c2", 1.0 / math.sqrt(2.0)),
            ),
        )
        if gato.c1 == 0 and gato.c2 == 0:
            raise ConfigError("c1 e c2 não podem ser ambos nulos", campo="c1", linha=linha("c1"))

    # Parâmetros físicos (só quando g, kappa e delta estão todos presentes)
    params = None
    fisicos = [chave for chave in ("g", "kappa", "delta") if chave in valores]
    if fisicos:
        faltando = [chave for chave in ("g", "kappa", "delta") if chave not in valores]
        if faltando:
            raise ConfigError("parâmetros físicos incompletos", campo=faltando[0])
        if sys is None:
            raise ConfigError("parâmetros físicos exigem j ou n_atoms", campo="j")
        params = construir(
            fisicos[0],
            lambda: PhysicalParams(valor("g"), valor("kappa"), valor("delta"), max(sys.two_j, 1)),
        )

    # Amostragem
    tau_max = valor("tau_max", 1.0)
    if not (math.isfinite(tau_max) and tau_max > 0.0):
        raise ConfigError("tau_max deve ser positivo", campo="tau_max", linha=linha("tau_max"))
    sample_count = valor("sample_count", 11)
    if sample_count < 2:
        raise ConfigError("sample_count deve ser ≥ 2", campo="sample_count", linha=linha("sample_count"))

    for chave in ("rel_tol", "abs_tol", "max_step", "workers"):
        if chave in valores and not valor(chave) > 0:
            raise ConfigError("deve ser positivo", campo=chave, linha=linha(chave))

    propagador = construir(
        "method",
        lambda: PropagatorConfig(
            method=valor("method", PropagationMethod.ADAPTIVE_RK),
            rel_tol=valor("rel_tol", PropagatorConfig.rel_tol),
            abs_tol=valor("abs_tol", PropagatorConfig.abs_tol),
            max_step=valor("max_step"),
            workers=valor("workers", 1),
        ),
    )

    # Varredura
    sweep_j = valor("sweep_j", ())
    for j in sweep_j:
        construir("sweep_j", lambda: SpinSystem.from_j(j))
        if j <= 0:
            raise ConfigError(f"j={j!r} deve ser positivo", campo="sweep_j", linha=linha("sweep_j"))
    janela = valor("janela_jtau", RunConfig.janela_jtau)
    if not janela > 0:
        raise ConfigError("janela_jtau deve ser positiva", campo="janela_jtau", linha=linha("janela_jtau"))
    amostras = valor("amostras_ajuste", RunConfig.amostras_ajuste)
    if amostras < 3:
        raise ConfigError("amostras_ajuste deve ser ≥ 3", campo="amostras_ajuste", linha=linha("amostras_ajuste"))

    # Saída
    formato = valor("format", "table")
    if not formato_permitido(formato):
        raise ConfigError(f"formato '{formato}' não suportado", campo="format", linha=linha("format"))
    saida = valor("out")
    if saida is not None and not extensao_compativel(saida, formato):
        raise ConfigError(f"extensão de '{saida}' incompatível com o formato '{formato}'", campo="out", linha=linha("out"))

    return RunConfig(
        sys=sys,
        estado=estado,
        coherent=coerente,
        cat=gato,
        params=params,
        tau_max=tau_max,
        sample_count=sample_count,
        grade=valor("grade", TauGrid.UNIFORM),
        propagator=propagador,
        sweep_j=sweep_j,
        sweep_gammas=valor("sweep_gammas", ()),
        janela_jtau=janela,
        amostras_ajuste=amostras,
        modelo_ajuste=valor("modelo_ajuste", FitModel.LINEAR),
        out=saida,
        format=formato,
    )
