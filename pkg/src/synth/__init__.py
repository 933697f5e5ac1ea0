# -*- coding: utf-8 -*-
"""
Scènes synthétiques, teinte atmosphérique et rapports de compensation.
"""

from .atmosphere import (TintSpec, ScenePalette, SceneSpec,
                         CompensationRecord, apply_tint, gen_scene,
                         compensation_report, corpus_seeds, run_corpus,
                         write_report_csv, read_report_csv,
                         compare_with_locked, write_scene_files,
                         write_scene_set)

__all__ = [
    'TintSpec', 'ScenePalette', 'SceneSpec', 'CompensationRecord',
    'apply_tint', 'gen_scene', 'compensation_report', 'corpus_seeds',
    'run_corpus', 'write_report_csv', 'read_report_csv',
    'compare_with_locked', 'write_scene_files', 'write_scene_set'
]
