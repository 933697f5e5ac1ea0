# -*- coding: utf-8 -*-
"""
Module complet de conversion en luminance pondérée.

Ce module regroupe :
- L'histogramme RGB, sa table et les statistiques normalisées
- Les règles de poids (défaut, filtre rouge, filtre bleu, écrêtage, mélange)
- La conversion optimisée et sa boucle de référence
- Le choix du filtre selon l'élévation du soleil
"""

from .histogram import (Histogram, HistogramRow, HistogramTable, ChannelStats,
                        StatsReport, pooled_histogram, gray_histogram,
                        histogram_from_counts, tabulate, stats_of, gray_stats,
                        stats_report)
from .weights import (DefaultTriple, RawWeightTriple, WeightTriple,
                      default_triple, normalized_default_triple,
                      red_filter_weights, blue_filter_weights,
                      normalize_clamp, blend, weights_to_json)
from .conversion import (ConversionMode, ConversionSpec, ConversionResult,
                         convert, convert_reference, convert_batch,
                         ensure_no_overwrite, filter_preview,
                         measure_throughput)
from .solar import solar_position, sun_elevation
from .acquisition import (AcquisitionMeta, FilterMode, select_mode,
                          spec_for_mode, weights_for, load_sidecar,
                          meta_from_dict, resolve_elevation)

__all__ = [
    'Histogram', 'HistogramRow', 'HistogramTable', 'ChannelStats',
    'StatsReport', 'pooled_histogram', 'gray_histogram',
    'histogram_from_counts', 'tabulate', 'stats_of', 'gray_stats',
    'stats_report', 'DefaultTriple', 'RawWeightTriple', 'WeightTriple',
    'default_triple', 'normalized_default_triple', 'red_filter_weights',
    'blue_filter_weights', 'normalize_clamp', 'blend', 'weights_to_json',
    'ConversionMode', 'ConversionSpec', 'ConversionResult', 'convert',
    'convert_reference', 'convert_batch', 'ensure_no_overwrite',
    'filter_preview',
    'measure_throughput', 'solar_position', 'sun_elevation',
    'AcquisitionMeta', 'FilterMode', 'select_mode', 'spec_for_mode',
    'weights_for', 'load_sidecar', 'meta_from_dict', 'resolve_elevation'
]
