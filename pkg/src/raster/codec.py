# -*- coding: utf-8 -*-
"""
Lecture et écriture sans perte des images 8 bits (PNG, PPM P6, PGM P5).

Le décodage est confié à Pillow. Les en-têtes sont inspectés avant : Pillow
tronque silencieusement les PNG/PNM 16 bits en 8 bits, ce qui fausserait les
histogrammes. Le JPEG est refusé (compression avec perte).
"""
import os
import re
import struct

import numpy as np
from PIL import Image, UnidentifiedImageError

from src.config.preprocess_config import PreprocessConfig
from src.raster.images import RgbImage, GrayImage
from src.utils.errors import (RasterNotFoundError, UnsupportedFormatError,
                              CorruptDataError, UnsupportedExtensionError,
                              RasterIoError)
from src.utils.system_utils import log

PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"
PNM_MAGICS = (b"P5", b"P6")
# Types couleur PNG
PNG_GRAY = 0
PNG_RGB = 2
PNG_PALETTE = 3
PNG_GRAY_ALPHA = 4
PNG_RGBA = 6

_PNM_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")

RGB_KIND = "rgb"
GRAY_KIND = "gray"


def _png_header(head):
    """
    Extrait (profondeur, type couleur) du chunk IHDR.

    Raises:
        CorruptDataError: Si IHDR est absent ou tronqué
    """
    if len(head) < 33 or head[12:16] != b"IHDR":
        raise CorruptDataError("PNG sans en-tête IHDR valide")
    _, _, bit_depth, color_type = struct.unpack(">IIBB", head[16:26])
    return bit_depth, color_type


def _pnm_header(head):
    """
    Extrait (magic, largeur, hauteur, maxval) d'un en-tête PNM binaire.

    Raises:
        CorruptDataError: Si l'en-tête est incomplet
    """
    tokens = []
    pos = 2
    while len(tokens) < 3:
        match = _PNM_TOKEN.match(head, pos)
        if not match:
            raise CorruptDataError("En-tête PNM incomplet")
        tokens.append(match.group(1))
        pos = match.end()
    try:
        width, height, maxval = (int(t) for t in tokens)
    except ValueError:
        raise CorruptDataError(f"En-tête PNM invalide: {tokens}")
    return head[:2], width, height, maxval


def _check_header(path, kind):
    """
    Vérifie format, profondeur et canaux avant décodage.

    Args:
        path (str): Fichier image
        kind (str): RGB_KIND ou GRAY_KIND
    """
    with open(path, "rb") as f:
        head = f.read(512)

    if head.startswith(PNG_SIGNATURE):
        bit_depth, color_type = _png_header(head)
        if color_type in (PNG_GRAY_ALPHA, PNG_RGBA):
            raise UnsupportedFormatError(
                f"{path}: PNG avec canal alpha non pris en charge")
        if color_type == PNG_PALETTE:
            if kind != RGB_KIND:
                raise UnsupportedFormatError(
                    f"{path}: PNG palette refusé pour une image mono-canal")
            return
        if bit_depth != 8:
            raise UnsupportedFormatError(
                f"{path}: profondeur {bit_depth} bits non prise en charge "
                f"(8 bits attendus)")
        if kind == RGB_KIND and color_type != PNG_RGB:
            raise UnsupportedFormatError(f"{path}: PNG non RGB")
        if kind == GRAY_KIND and color_type != PNG_GRAY:
            raise UnsupportedFormatError(
                f"{path}: PNG à plusieurs canaux, mono-canal attendu")
        return

    if head[:2] in PNM_MAGICS:
        magic, _, _, maxval = _pnm_header(head)
        if maxval != PreprocessConfig.MAX_DN:
            raise UnsupportedFormatError(
                f"{path}: maxval {maxval} non pris en charge (255 attendu)")
        if kind == RGB_KIND and magic != b"P6":
            raise UnsupportedFormatError(f"{path}: PPM P6 attendu")
        if kind == GRAY_KIND and magic != b"P5":
            raise UnsupportedFormatError(
                f"{path}: PGM P5 attendu (image à 3 canaux ?)")
        return

    raise UnsupportedFormatError(
        f"{path}: format non pris en charge (PNG, PPM P6, PGM P5 seulement)")


def _decode(path, kind):
    """Décode le fichier via Pillow et retourne le tableau numpy."""
    if not os.path.isfile(path):
        raise RasterNotFoundError(f"Fichier introuvable: {path}")
    try:
        _check_header(path, kind)
        with Image.open(path) as im:
            im.load()
            mode = im.mode
            if kind == RGB_KIND and mode == "P":
                if "transparency" in im.info:
                    raise UnsupportedFormatError(
                        f"{path}: palette avec transparence non prise en charge")
                im = im.convert("RGB")
                mode = "RGB"
            expected = "RGB" if kind == RGB_KIND else "L"
            if mode != expected:
                raise UnsupportedFormatError(
                    f"{path}: mode Pillow '{mode}', '{expected}' attendu")
            return np.asarray(im, dtype=np.uint8)
    except (UnsupportedFormatError, CorruptDataError):
        raise
    except UnidentifiedImageError as e:
        raise CorruptDataError(f"{path}: image non identifiable ({e})")
    except (OSError, SyntaxError, ValueError, struct.error) as e:
        raise CorruptDataError(f"{path}: données corrompues ({e})")


def load_rgb(path) -> RgbImage:
    """
    Charge une image RGB 8 bits (PNG ou PPM P6).

    Raises:
        RasterNotFoundError, UnsupportedFormatError, CorruptDataError
    """
    path = os.fspath(path)
    arr = _decode(path, RGB_KIND)
    log(f"Codec: {path} chargée ({arr.shape[1]}x{arr.shape[0]} RGB)",
        level="DEEP_DEBUG")
    return RgbImage(arr)


def load_gray(path) -> GrayImage:
    """
    Charge une image mono-canal 8 bits (PNG niveaux de gris ou PGM P5).

    Raises:
        RasterNotFoundError, UnsupportedFormatError, CorruptDataError
    """
    path = os.fspath(path)
    arr = _decode(path, GRAY_KIND)
    log(f"Codec: {path} chargée ({arr.shape[1]}x{arr.shape[0]} gris)",
        level="DEEP_DEBUG")
    return GrayImage(arr)


def _save(array, path, allowed):
    path = os.fspath(path)
    ext = os.path.splitext(path)[1].lower()
    if ext not in allowed:
        raise UnsupportedExtensionError(
            f"{path}: extension '{ext}' non prise en charge "
            f"({', '.join(sorted(allowed))})")
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(parent):
        raise RasterIoError(f"Dossier parent inexistant: {parent}")
    try:
        Image.fromarray(array).save(path, format=allowed[ext])
    except OSError as e:
        raise RasterIoError(f"Écriture impossible de {path}: {e}")
    log(f"Codec: {path} écrite", level="DEEP_DEBUG")


def save_gray(img: GrayImage, path) -> None:
    """
    Écrit une image mono-canal en PGM (P5) ou PNG selon l'extension.

    Raises:
        UnsupportedExtensionError, RasterIoError
    """
    _save(img.array, path, PreprocessConfig.GRAY_OUTPUT_EXTENSIONS)


def save_rgb(img: RgbImage, path) -> None:
    """Écrit une image RGB en PPM (P6) ou PNG selon l'extension."""
    _save(img.array, path, {".ppm": "PPM", ".png": "PNG"})
