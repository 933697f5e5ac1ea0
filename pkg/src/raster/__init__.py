# -*- coding: utf-8 -*-
"""
Types raster et lecture/écriture sans perte.
"""

from .images import RgbImage, GrayImage, PixelTriple
from .codec import load_rgb, load_gray, save_gray, save_rgb

__all__ = [
    'RgbImage', 'GrayImage', 'PixelTriple', 'load_rgb', 'load_gray',
    'save_gray', 'save_rgb'
]
