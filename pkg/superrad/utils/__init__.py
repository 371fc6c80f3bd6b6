"""
Módulo de utilitários do simulador.

Contém funções auxiliares para formatação, validação, leitura de
configuração de execução e tratamento de erros.
"""
