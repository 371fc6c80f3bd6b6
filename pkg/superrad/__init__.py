"""
Simulador de decoerência superradiante de estados de gato de spin coletivo.

Propaga operadores de spin j sob a equação mestra de superradiância,
prepara gatos simétricos de vida longa por evolução dispersiva e confere
as previsões analíticas contra a propagação numérica.
"""

import logging

__version__ = "0.1.0"

logging.getLogger(__name__).addHandler(logging.NullHandler())
