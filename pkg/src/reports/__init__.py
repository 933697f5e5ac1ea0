# -*- coding: utf-8 -*-
"""
Rendu des rapports (tables d'histogramme, statistiques, poids, partitions).
"""

from .report_templates import ReportTemplates, table_to_text, table_to_csv

__all__ = ['ReportTemplates', 'table_to_text', 'table_to_csv']
