"""
Módulo de serviços do simulador.

Contém o núcleo numérico (álgebra de spin, dinâmica, gatos, observáveis,
fórmulas analíticas) e os serviços de alto nível de experimentos,
verificação e geração de tabelas.
"""
