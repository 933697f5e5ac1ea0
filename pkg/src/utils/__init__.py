# -*- coding: utf-8 -*-
"""
Utilitaires transverses : logging, détection des workers, exceptions.
"""

from .system_utils import log, set_log_level, detect_worker_count
from . import errors

__all__ = ['log', 'set_log_level', 'detect_worker_count', 'errors']
