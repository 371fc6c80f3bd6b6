"""
Exceções do simulador e coleta de falhas.

Define a hierarquia de erros usada pelos serviços e centraliza a coleta,
categorização e formatação das falhas de varredura para a aba de falhas.
"""


class SuperradError(Exception):
    """Erro base do simulador."""


class DomainError(SuperradError, ValueError):
    """Argumento fora do domínio de uma operação."""


class DegenerateInputError(DomainError):
    """Entrada válida mas degenerada (por exemplo, superposição de norma nula)."""


class ConvergenceError(SuperradError, ArithmeticError):
    """Falha do integrador antes de alcançar o tempo pedido."""

    def __init__(self, mensagem: str, tau_alcancado: float):
        super().__init__(f"{mensagem} (τ alcançado = {tau_alcancado!r})")
        self.tau_alcancado = tau_alcancado


class FitError(SuperradError):
    """Sistema de mínimos quadrados sem solução única."""


class ConfigError(SuperradError):
    """Erro de configuração de execução, com campo e linha quando conhecidos."""

    def __init__(self, mensagem: str, campo: str | None = None, linha: int | None = None):
        self.mensagem = mensagem
        self.campo = campo
        self.linha = linha
        super().__init__(str(self))

    def __str__(self) -> str:
        partes = []
        if self.linha is not None:
            partes.append(f"linha {self.linha}")
        if self.campo is not None:
            partes.append(f"campo '{self.campo}'")
        if partes:
            return f"{', '.join(partes)}: {self.mensagem}"
        return self.mensagem


class RegimeWarning(UserWarning):
    """Parâmetros fora do regime de validade do modelo (aviso, nunca erro)."""


COLUNAS_FALHAS = ["Ponto", "Tipo de Erro", "Mensagem", "Tau Alcançado", "Severidade"]


def coletar_falha(ponto: dict, erro: Exception) -> dict:
    """
    Registra a falha de um ponto de varredura.

    Args:
        ponto: Parâmetros do ponto que falhou (j, gamma1, gamma2...)
        erro: Exceção levantada ao processar o ponto

    Returns:
        Dicionário com informações de falha estruturadas
    """
    # Determina tipo de erro pela classe da exceção
    tipo_erro = "Processamento"
    severidade = "Crítico"
    tau_alcancado = None

    if isinstance(erro, ConvergenceError):
        tipo_erro = "Convergência"
        tau_alcancado = erro.tau_alcancado
    elif isinstance(erro, FitError):
        tipo_erro = "Ajuste"
    elif isinstance(erro, DomainError):
        tipo_erro = "Domínio"
        severidade = "Aviso" if isinstance(erro, DegenerateInputError) else "Crítico"

    descricao = ", ".join(f"{chave}={valor}" for chave, valor in ponto.items())
    return {
        "ponto": descricao,
        "tipo_erro": tipo_erro,
        "mensagem": str(erro),
        "tau_alcancado": tau_alcancado,
        "severidade": severidade,
    }


def formatar_linha_falha(falha: dict) -> dict:
    """
    Formata uma falha para a aba de falhas.

    Args:
        falha: Dicionário produzido por coletar_falha

    Returns:
        Dicionário com as colunas da aba de falhas
    """
    tau = falha.get("tau_alcancado")
    return {
        "Ponto": falha.get("ponto", ""),
        "Tipo de Erro": falha.get("tipo_erro", ""),
        "Mensagem": falha.get("mensagem", ""),
        "Tau Alcançado": "" if tau is None else repr(float(tau)),
        "Severidade": falha.get("severidade", ""),
    }
