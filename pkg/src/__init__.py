# -*- coding: utf-8 -*-
"""
lumiprep : prétraitement en luminance pondérée d'images aériennes pour la
détection mono-canal.
"""
__version__ = "1.0.0"
