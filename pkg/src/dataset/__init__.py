# -*- coding: utf-8 -*-
"""
Préparation de jeux de données de détection mono-canal.

Ce module regroupe :
- Les annotations YOLO et classes.txt
- Le manifeste JSON lines
- Le traitement par lot d'un dossier d'images
- La partition train/test et les listes de fichiers darknet
"""

from .rng import Lcg64
from .annotations import (AnnotationRecord, parse_annotation_line,
                          parse_annotations, format_annotations,
                          load_class_names, write_class_names)
from .manifest import (ManifestRecord, ManifestWriter, read_manifest,
                       write_manifest)
from .pipeline import process_dataset, list_images
from .split import SplitSpec, split_dataset, emit_filelists, split_summary

__all__ = [
    'Lcg64', 'AnnotationRecord', 'parse_annotation_line', 'parse_annotations',
    'format_annotations', 'load_class_names', 'write_class_names',
    'ManifestRecord', 'ManifestWriter', 'read_manifest', 'write_manifest',
    'process_dataset', 'list_images', 'SplitSpec', 'split_dataset',
    'emit_filelists', 'split_summary'
]
