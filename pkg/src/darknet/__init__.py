# -*- coding: utf-8 -*-
"""
Édition des fichiers de configuration darknet (YOLOv3).
"""

from .cfg_document import (CfgDocument, CfgSection, TRAINING_PRESET, parse,
                           serialize, load_cfg, save_cfg, set_channels,
                           set_training_params, changed_lines)

__all__ = [
    'CfgDocument', 'CfgSection', 'TRAINING_PRESET', 'parse', 'serialize',
    'load_cfg', 'save_cfg', 'set_channels', 'set_training_params',
    'changed_lines'
]
