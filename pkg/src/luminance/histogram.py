# -*- coding: utf-8 -*-
"""
Histogramme RGB cumulé, table des DN et statistiques normalisées.

L'histogramme « RGB » est unique : les trois canaux sont versés dans les mêmes
256 classes. Les statistiques qui alimentent les règles de poids (moyenne,
écart-type de population, Perc = fréquence relative du DN modal) sont
normalisées sur [0, 1] en divisant par 255.
"""
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from src.config.preprocess_config import PreprocessConfig
from src.luminance.rounding import percent_hundredths, round2
from src.raster.images import RgbImage, GrayImage
from src.utils.errors import EmptyHistogramError, EmptyImageError

BINS = PreprocessConfig.HISTOGRAM_BINS
_DN_SCALE = float(PreprocessConfig.MAX_DN)


@dataclass(frozen=True)
class Histogram:
    """256 comptes de pixels indexés par DN."""
    counts: Tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != BINS:
            raise ValueError(
                f"Histogram: {BINS} classes attendues, reçu {len(self.counts)}")
        if any(c < 0 for c in self.counts):
            raise ValueError("Histogram: comptes négatifs")

    @property
    def total(self) -> int:
        return sum(self.counts)


def histogram_from_counts(counts) -> Histogram:
    """Construit un histogramme validé depuis 256 comptes (ou un dict DN -> n)."""
    if isinstance(counts, dict):
        dense = [0] * BINS
        for dn, n in counts.items():
            if not 0 <= int(dn) < BINS:
                raise ValueError(f"Histogram: DN {dn} hors de [0, 255]")
            dense[int(dn)] = int(n)
        counts = dense
    return Histogram(tuple(int(c) for c in counts))


def _bincount(values: np.ndarray) -> Histogram:
    counts = np.bincount(values.ravel(), minlength=BINS)
    return Histogram(tuple(int(c) for c in counts))


def pooled_histogram(img: RgbImage) -> Histogram:
    """
    Histogramme des DN sur les trois canaux réunis.

    total == 3 * width * height.
    """
    return _bincount(img.array)


def gray_histogram(img: GrayImage) -> Histogram:
    """Histogramme d'une image mono-canal (total == width * height)."""
    return _bincount(img.array)


@dataclass(frozen=True)
class HistogramRow:
    dn: int
    npix: int
    perc: float
    cum_npix: int
    cum_perc: float


@dataclass(frozen=True)
class HistogramTable:
    """Table DN / Npix / Perc / CumNpix / CumPerc (pourcentages à 2 décimales)."""
    rows: Tuple[HistogramRow, ...]

    @property
    def total(self) -> int:
        return self.rows[-1].cum_npix if self.rows else 0

    def row_for(self, dn: int) -> HistogramRow:
        return self.rows[dn]


def tabulate(h: Histogram) -> HistogramTable:
    """
    Tabule l'histogramme, une ligne par DN de 0 à 255.

    Raises:
        EmptyHistogramError: Si total == 0
    """
    total = h.total
    if total == 0:
        raise EmptyHistogramError("Histogramme vide : rien à tabuler")
    rows: List[HistogramRow] = []
    cumulative = 0
    for dn, npix in enumerate(h.counts):
        cumulative += npix
        rows.append(
            HistogramRow(dn=dn,
                         npix=npix,
                         perc=percent_hundredths(npix, total) / 100,
                         cum_npix=cumulative,
                         cum_perc=percent_hundredths(cumulative, total) / 100))
    return HistogramTable(tuple(rows))


@dataclass(frozen=True)
class ChannelStats:
    """Moyenne, écart-type et Perc normalisés sur [0, 1]."""
    mean: float
    std_dev: float
    perc: float

    def __post_init__(self):
        tol = PreprocessConfig.STATS_TOLERANCE
        for name, value, upper in (("mean", self.mean, 1.0),
                                   ("std_dev", self.std_dev, 0.5),
                                   ("perc", self.perc, 1.0)):
            if not math.isfinite(value) or value < -tol or value > upper + tol:
                raise ValueError(
                    f"ChannelStats: {name}={value} hors de [0, {upper}]")

    def as_dict(self) -> dict:
        return {"mean": self.mean, "std_dev": self.std_dev, "perc": self.perc}


def _moments(counts) -> Tuple[float, float]:
    """
    Moyenne et écart-type de population sur l'échelle des DN.

    Sommes entières exactes : variance = (N * S2 - S1^2) / N^2, nulle si et
    seulement si un seul DN est occupé.
    """
    total = int(sum(counts))
    s1 = sum(dn * int(c) for dn, c in enumerate(counts))
    s2 = sum(dn * dn * int(c) for dn, c in enumerate(counts))
    mean = s1 / total
    variance = (total * s2 - s1 * s1) / (total * total)
    return mean, math.sqrt(variance)


def stats_of(h: Histogram) -> ChannelStats:
    """
    Statistiques normalisées d'un histogramme.

    mean = moyenne des DN / 255 ; std_dev = écart-type de population / 255 ;
    perc = max(counts) / total.

    Raises:
        EmptyHistogramError: Si total == 0
    """
    total = h.total
    if total == 0:
        raise EmptyHistogramError("Histogramme vide : statistiques indéfinies")
    mean, std = _moments(h.counts)
    return ChannelStats(mean=mean / _DN_SCALE,
                        std_dev=std / _DN_SCALE,
                        perc=max(h.counts) / total)


def gray_stats(img: GrayImage) -> Tuple[float, float]:
    """Moyenne et écart-type (échelle 0-255) d'une image mono-canal."""
    if img.array.size == 0:
        raise EmptyImageError("Image vide")
    return _moments(gray_histogram(img).counts)


@dataclass(frozen=True)
class StatsReport:
    """Moyenne / écart-type avant et après conversion, échelle 0-255."""
    original_mean: float
    original_std: float
    processed_mean: float
    processed_std: float

    def as_dict(self) -> dict:
        return {
            "original_mean": round2(self.original_mean),
            "original_std": round2(self.original_std),
            "processed_mean": round2(self.processed_mean),
            "processed_std": round2(self.processed_std),
        }

    def row(self, label: str) -> str:
        """Ligne au format 'a | 128.73 | 50.93 | 98.44 | 51.54'."""
        values = self.as_dict()
        return " | ".join([label] + [
            f"{values[key]:.2f}"
            for key in ("original_mean", "original_std", "processed_mean",
                        "processed_std")
        ])


def stats_report(original: RgbImage, processed: GrayImage) -> StatsReport:
    """
    Compare l'image d'origine (histogramme RGB cumulé) et l'image traitée.

    Raises:
        EmptyImageError: Si l'une des images est vide
    """
    if original.array.size == 0 or processed.array.size == 0:
        raise EmptyImageError("stats_report: image vide")
    original_mean, original_std = _moments(pooled_histogram(original).counts)
    processed_mean, processed_std = gray_stats(processed)
    return StatsReport(original_mean, original_std, processed_mean,
                       processed_std)
