# -*- coding: utf-8 -*-
"""
Types raster 8 bits : image RGB et image mono-canal.

Convention : origine en haut à gauche, stockage ligne par ligne ; le pixel
(x, y) est à l'offset y * width + x.
"""
from typing import NamedTuple

import numpy as np


class PixelTriple(NamedTuple):
    """Intensités 8 bits d'un pixel RGB."""
    r: int
    g: int
    b: int


def _frozen_uint8(array, expected_ndim, what):
    """Copie en uint8 non modifiable, avec contrôle de forme et de domaine."""
    arr = np.asarray(array)
    if arr.ndim != expected_ndim:
        raise ValueError(
            f"{what}: {expected_ndim} dimensions attendues, reçu {arr.ndim}")
    if arr.dtype != np.uint8:
        if arr.size and (arr.min() < 0 or arr.max() > 255):
            raise ValueError(f"{what}: valeurs hors de [0, 255]")
        if np.issubdtype(arr.dtype, np.floating) and arr.size and \
                not np.array_equal(arr, np.round(arr)):
            raise ValueError(f"{what}: valeurs non entières")
    arr = np.array(arr, dtype=np.uint8, copy=True, order="C")
    arr.setflags(write=False)
    return arr


class RgbImage:
    """
    Image RGB 8 bits immuable.

    Les pixels sont un tableau numpy (height, width, 3) en lecture seule ;
    l'instance peut être partagée entre threads.
    """

    __slots__ = ("_pixels",)

    def __init__(self, pixels):
        arr = _frozen_uint8(pixels, 3, "RgbImage")
        if arr.shape[2] != 3:
            raise ValueError(
                f"RgbImage: 3 canaux attendus, reçu {arr.shape[2]}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("RgbImage: largeur et hauteur doivent être >= 1")
        self._pixels = arr

    @classmethod
    def from_pixels(cls, width, height, pixels):
        """
        Construit une image depuis une séquence ligne par ligne de triplets.

        Args:
            width (int): Largeur
            height (int): Hauteur
            pixels: Séquence de width * height triplets (r, g, b)
        """
        flat = list(pixels)
        if len(flat) != width * height:
            raise ValueError(
                f"RgbImage: {width}x{height} attend {width * height} pixels, "
                f"reçu {len(flat)}")
        arr = np.array(flat, dtype=np.int64).reshape(height, width, 3)
        return cls(arr)

    @property
    def width(self) -> int:
        return self._pixels.shape[1]

    @property
    def height(self) -> int:
        return self._pixels.shape[0]

    @property
    def array(self) -> np.ndarray:
        """Tableau (height, width, 3) uint8 en lecture seule."""
        return self._pixels

    def pixel(self, x, y) -> PixelTriple:
        r, g, b = self._pixels[y, x]
        return PixelTriple(int(r), int(g), int(b))

    def pixels(self):
        """Itère les pixels ligne par ligne."""
        for row in self._pixels:
            for r, g, b in row:
                yield PixelTriple(int(r), int(g), int(b))

    def __eq__(self, other):
        if not isinstance(other, RgbImage):
            return NotImplemented
        return np.array_equal(self._pixels, other._pixels)

    def __hash__(self):
        return hash((self.width, self.height, self._pixels.tobytes()))

    def __repr__(self):
        return f"RgbImage({self.width}x{self.height})"


class GrayImage:
    """Image mono-canal 8 bits immuable (tableau (height, width))."""

    __slots__ = ("_pixels",)

    def __init__(self, pixels):
        arr = _frozen_uint8(pixels, 2, "GrayImage")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("GrayImage: largeur et hauteur doivent être >= 1")
        self._pixels = arr

    @classmethod
    def from_pixels(cls, width, height, pixels):
        flat = list(pixels)
        if len(flat) != width * height:
            raise ValueError(
                f"GrayImage: {width}x{height} attend {width * height} pixels, "
                f"reçu {len(flat)}")
        return cls(np.array(flat, dtype=np.int64).reshape(height, width))

    @property
    def width(self) -> int:
        return self._pixels.shape[1]

    @property
    def height(self) -> int:
        return self._pixels.shape[0]

    @property
    def array(self) -> np.ndarray:
        return self._pixels

    def pixel(self, x, y) -> int:
        return int(self._pixels[y, x])

    def pixels(self):
        for value in self._pixels.ravel():
            yield int(value)

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self._pixels, other._pixels)

    def __hash__(self):
        return hash((self.width, self.height, self._pixels.tobytes()))

    def __repr__(self):
        return f"GrayImage({self.width}x{self.height})"
