"""
Configurações centralizadas do simulador.

Centraliza as constantes numéricas (tolerâncias, janelas de ajuste, limiares)
usadas pelos serviços e pela linha de comando.
"""


class Config:
    """Configurações base do simulador."""

    # Tolerâncias padrão do propagador adaptativo
    REL_TOL = 1e-10
    ABS_TOL = 1e-13

    # Passo máximo do integrador: FRACAO_PASSO_MAXIMO / (j + 1)
    FRACAO_PASSO_MAXIMO = 0.1

    # Par de Runge-Kutta embutido usado pelo solve_ivp
    METODO_RK = "DOP853"

    # Leitura operacional de "muito maior que" nas condições de validade
    FATOR_MUITO_MAIOR = 10.0

    # Janela de ajuste das taxas de decaimento, em unidades de jτ
    JANELA_AJUSTE_JTAU = 0.1
    AMOSTRAS_AJUSTE = 20

    # Diferença finita centrada: h = PASSO_DIFERENCA_FINITA / (j + 1)
    PASSO_DIFERENCA_FINITA = 1e-3

    # Norma mínima aceita ao normalizar uma superposição
    LIMIAR_DEGENERESCENCIA = 1e-14

    # Primeiro ponto da grade logarítmica, como fração de tau_max
    FRACAO_INICIO_GRADE_LOG = 1e-3

    # Decomposição simétrica: grade grosseira (theta', phi'') e tolerância do refino
    GRADE_DECOMPOSICAO = (33, 64)
    TOLERANCIA_DECOMPOSICAO = 1e-6

    # Formatos de saída e extensões aceitas para cada um
    FORMATOS_SAIDA = {"table", "structured", "xlsx"}
    EXTENSOES_POR_FORMATO = {
        "table": {"csv", "tsv", "txt"},
        "structured": {"json"},
        "xlsx": {"xlsx"},
    }
