# -*- coding: utf-8 -*-
"""
Facteurs de pondération des canaux.

- Triplet par défaut (0.3, 0.1, 0.5), somme 0.9, conservé tel quel.
- Filtre rouge (jour) : w_b = Perc * mean ; w_g = (1 - w_b) - (mean + std).
- Filtre bleu (lever/coucher) : w_b = Perc * mean * (2 * std) ;
  w_g = (1 - w_b) - mean.
- Dans les deux cas w_r = 1 - (w_b + w_g) : la somme brute vaut 1 par
  construction, même quand une composante sort de [0, 1].

L'attribution des deux blocs de formules aux filtres suit leur ordre de
présentation (premier bloc = rouge, second = bleu). Ne pas inverser par
configuration.
"""
import json
import math
from dataclasses import dataclass

from src.config.preprocess_config import PreprocessConfig
from src.luminance.histogram import ChannelStats
from src.utils.errors import (DegenerateWeightsError, OutOfRangeTError,
                              WeightSumError)
from src.utils.system_utils import log

_SUM_TOL = PreprocessConfig.WEIGHT_SUM_TOLERANCE


@dataclass(frozen=True)
class DefaultTriple:
    """Coefficients de la conversion traditionnelle ; somme 0.9, hors invariant."""
    w_r: float = PreprocessConfig.DEFAULT_WEIGHTS[0]
    w_g: float = PreprocessConfig.DEFAULT_WEIGHTS[1]
    w_b: float = PreprocessConfig.DEFAULT_WEIGHTS[2]

    def as_tuple(self):
        return (self.w_r, self.w_g, self.w_b)


@dataclass(frozen=True)
class RawWeightTriple:
    """Poids issus des règles avant normalisation (réels quelconques)."""
    w_r: float
    w_g: float
    w_b: float

    def as_tuple(self):
        return (self.w_r, self.w_g, self.w_b)

    @property
    def total(self) -> float:
        return self.w_r + self.w_g + self.w_b


@dataclass(frozen=True)
class WeightTriple:
    """Poids dans [0, 1], de somme 1 ; clamped indique que l'écrêtage a servi."""
    w_r: float
    w_g: float
    w_b: float
    clamped: bool = False

    def __post_init__(self):
        for name in ("w_r", "w_g", "w_b"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0.0 or value > 1.0:
                raise ValueError(f"WeightTriple: {name}={value} hors de [0, 1]")
        if abs(self.w_r + self.w_g + self.w_b - 1.0) > _SUM_TOL:
            raise WeightSumError(
                f"WeightTriple: somme {self.w_r + self.w_g + self.w_b} != 1")

    def as_tuple(self):
        return (self.w_r, self.w_g, self.w_b)

    def as_dict(self) -> dict:
        return {
            "w_r": self.w_r,
            "w_g": self.w_g,
            "w_b": self.w_b,
            "clamped": self.clamped
        }


def default_triple() -> DefaultTriple:
    """Triplet (0.3, 0.1, 0.5) de la conversion traditionnelle."""
    return DefaultTriple()


def normalized_default_triple() -> WeightTriple:
    """Variante de somme 1 (coefficients / 0.9), à demander explicitement."""
    d = default_triple()
    s = PreprocessConfig.DEFAULT_WEIGHTS_SUM
    w_r, w_g = d.w_r / s, d.w_g / s
    # w_b par complément pour garantir la somme
    return WeightTriple(w_r, w_g, 1.0 - (w_r + w_g))


def red_filter_weights(s: ChannelStats) -> RawWeightTriple:
    """
    Règle du filtre rouge (acquisition de jour).

    Ex. (perc=0.02, mean=0.45, std=0.22) -> (0.670, 0.321, 0.009).
    """
    w_b = s.perc * s.mean
    w_g = (1.0 - w_b) - (s.mean + s.std_dev)
    w_r = 1.0 - (w_b + w_g)
    return RawWeightTriple(w_r, w_g, w_b)


def blue_filter_weights(s: ChannelStats) -> RawWeightTriple:
    """
    Règle du filtre bleu (lever / coucher du soleil). « avg » est la même
    moyenne normalisée que pour le filtre rouge.

    Ex. (perc=0.02, mean=0.45, std=0.22) -> (0.45, 0.54604, 0.00396).
    """
    w_b = s.perc * s.mean * (2.0 * s.std_dev)
    w_g = (1.0 - w_b) - s.mean
    w_r = 1.0 - (w_b + w_g)
    return RawWeightTriple(w_r, w_g, w_b)


def normalize_clamp(raw) -> WeightTriple:
    """
    Écrête chaque composante sur [0, 1] puis, si l'écrêtage a modifié quoi que
    ce soit, renormalise à une somme de 1 et positionne clamped.

    Idempotente ; identité sur un triplet déjà dans [0, 1]^3.

    Raises:
        DegenerateWeightsError: Si toutes les composantes brutes sont <= 0
        WeightSumError: Si la somme brute n'est pas 1 (± 1e-9)
    """
    values = raw.as_tuple()
    clipped = tuple(min(1.0, max(0.0, v)) for v in values)
    # Addition explicite r + g + b : sum() compense les flottants depuis 3.12
    clipped_sum = (clipped[0] + clipped[1]) + clipped[2]
    if clipped_sum == 0.0:
        raise DegenerateWeightsError(
            f"Poids dégénérés {values} : conversion par défaut requise")
    if abs(sum(values) - 1.0) > _SUM_TOL:
        raise WeightSumError(f"Poids bruts de somme {sum(values)} != 1")

    if clipped == values:
        return WeightTriple(*values, clamped=getattr(raw, "clamped", False))

    w_r, w_g, w_b = (v / clipped_sum for v in clipped)
    log(f"Weights: écrêtage {tuple(round(v, 6) for v in values)} -> "
        f"({w_r:.6f}, {w_g:.6f}, {w_b:.6f})",
        level="DEBUG")
    return WeightTriple(w_r, w_g, w_b, clamped=True)


def blend(a: WeightTriple, b: WeightTriple, t: float) -> WeightTriple:
    """
    Interpolation linéaire (1 - t) * a + t * b, composante par composante.

    Raises:
        OutOfRangeTError: Si t n'est pas dans [0, 1]
    """
    if not (0.0 <= t <= 1.0):
        raise OutOfRangeTError(f"t={t} hors de [0, 1]")
    if t == 0.0:
        return a
    if t == 1.0:
        return b
    w_r = (1.0 - t) * a.w_r + t * b.w_r
    w_g = (1.0 - t) * a.w_g + t * b.w_g
    w_b = (1.0 - t) * a.w_b + t * b.w_b
    return WeightTriple(min(1.0, max(0.0, w_r)),
                        min(1.0, max(0.0, w_g)),
                        min(1.0, max(0.0, w_b)),
                        clamped=a.clamped or b.clamped)


def weights_to_json(triple) -> str:
    """Sérialise {"w_r", "w_g", "w_b", "clamped"}."""
    if isinstance(triple, WeightTriple):
        payload = triple.as_dict()
    else:
        w_r, w_g, w_b = triple.as_tuple()
        payload = {"w_r": w_r, "w_g": w_g, "w_b": w_b, "clamped": False}
    return json.dumps(payload, sort_keys=True)
