# -*- coding: utf-8 -*-
"""
Module de configuration : constantes de prétraitement et configuration
d'exécution.
"""

from .preprocess_config import PreprocessConfig
from .runtime_config import RuntimeConfig, runtime_config

__all__ = ['PreprocessConfig', 'RuntimeConfig', 'runtime_config']
