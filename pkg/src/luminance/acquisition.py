# -*- coding: utf-8 -*-
"""
Choix du filtre selon les métadonnées d'acquisition.

Élévation e du soleil :
    e < 0          -> nuit, conversion par défaut
    0 <= e <= 10   -> filtre bleu (lever / coucher)
    10 < e < 30    -> mélange bleu -> rouge, t = (e - 10) / 20
    e >= 30        -> filtre rouge (jour)

Une élévation explicite l'emporte toujours sur un recalcul à partir de
(horodatage, latitude, longitude).
"""
import json
import math
import os
from dataclasses import dataclass
from datetime import datetime
from typing import Optional

from src.config.preprocess_config import PreprocessConfig
from src.luminance.conversion import ConversionSpec
from src.luminance.histogram import ChannelStats
from src.luminance.solar import as_utc, sun_elevation
from src.luminance.weights import (blend, blue_filter_weights,
                                   normalize_clamp, red_filter_weights)
from src.utils.errors import (DegenerateWeightsError,
                              InsufficientMetadataError,
                              OutOfRangeCoordinatesError)
from src.utils.system_utils import log

NIGHT = "night"
BLUE = "blue"
RED = "red"
BLEND = "blend"


def parse_timestamp(value) -> datetime:
    """ISO-8601, suffixe 'Z' accepté ; naïf = UTC."""
    if isinstance(value, datetime):
        return as_utc(value)
    text = str(value).strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    try:
        return as_utc(datetime.fromisoformat(text))
    except ValueError:
        raise InsufficientMetadataError(f"Horodatage illisible: {value!r}")


@dataclass(frozen=True)
class AcquisitionMeta:
    """Élévation solaire, ou horodatage UTC + position."""
    sun_elevation_deg: Optional[float] = None
    timestamp_utc: Optional[datetime] = None
    latitude_deg: Optional[float] = None
    longitude_deg: Optional[float] = None

    def __post_init__(self):
        if self.sun_elevation_deg is not None:
            if not math.isfinite(self.sun_elevation_deg) or \
                    not -90.0 <= self.sun_elevation_deg <= 90.0:
                raise OutOfRangeCoordinatesError(
                    f"Élévation {self.sun_elevation_deg} hors de [-90, 90]")
        if self.latitude_deg is not None and \
                not -90.0 <= self.latitude_deg <= 90.0:
            raise OutOfRangeCoordinatesError(
                f"Latitude {self.latitude_deg} hors de [-90, 90]")
        if self.longitude_deg is not None and \
                not -180.0 <= self.longitude_deg <= 180.0:
            raise OutOfRangeCoordinatesError(
                f"Longitude {self.longitude_deg} hors de [-180, 180]")

    @property
    def has_position(self) -> bool:
        return (self.timestamp_utc is not None and
                self.latitude_deg is not None and
                self.longitude_deg is not None)

    @property
    def is_resolvable(self) -> bool:
        return self.sun_elevation_deg is not None or self.has_position

    def as_dict(self) -> dict:
        return {
            "sun_elevation_deg": self.sun_elevation_deg,
            "timestamp_utc": (self.timestamp_utc.isoformat()
                              if self.timestamp_utc else None),
            "lat": self.latitude_deg,
            "lon": self.longitude_deg,
        }


def meta_from_dict(data: dict) -> AcquisitionMeta:
    """
    Construit les métadonnées depuis un dict de sidecar :
    {"sun_elevation_deg": ...} ou {"timestamp_utc": "...", "lat": ..., "lon": ...}
    """
    if not isinstance(data, dict):
        raise InsufficientMetadataError("Sidecar: objet JSON attendu")

    def _number(key, *aliases):
        for name in (key, ) + aliases:
            if data.get(name) is not None:
                try:
                    return float(data[name])
                except (TypeError, ValueError):
                    raise InsufficientMetadataError(
                        f"Sidecar: valeur numérique invalide pour {name}")
        return None

    timestamp = data.get("timestamp_utc")
    return AcquisitionMeta(
        sun_elevation_deg=_number("sun_elevation_deg"),
        timestamp_utc=parse_timestamp(timestamp) if timestamp else None,
        latitude_deg=_number("lat", "latitude_deg"),
        longitude_deg=_number("lon", "longitude_deg"))


def load_sidecar(path) -> AcquisitionMeta:
    """
    Lit un sidecar JSON d'image.

    Raises:
        InsufficientMetadataError: JSON invalide ou incomplet
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InsufficientMetadataError(
            f"Sidecar {os.fspath(path)}: JSON invalide ({e})")
    return meta_from_dict(data)


def resolve_elevation(meta: AcquisitionMeta) -> float:
    """
    Élévation du soleil, explicite ou calculée.

    Raises:
        InsufficientMetadataError
    """
    if meta.sun_elevation_deg is not None:
        return float(meta.sun_elevation_deg)
    if meta.has_position:
        return sun_elevation(meta.timestamp_utc, meta.latitude_deg,
                             meta.longitude_deg)
    raise InsufficientMetadataError(
        "Ni élévation solaire, ni (horodatage, latitude, longitude)")


@dataclass(frozen=True)
class FilterMode:
    """night, blue, red, ou blend avec t strictement dans ]0, 1[."""
    tag: str
    t: Optional[float] = None

    def __post_init__(self):
        if self.tag not in (NIGHT, BLUE, RED, BLEND):
            raise ValueError(f"FilterMode: mode inconnu {self.tag}")
        if self.tag == BLEND:
            if self.t is None or not 0.0 < self.t < 1.0:
                raise ValueError(f"FilterMode: t={self.t} hors de ]0, 1[")
        elif self.t is not None:
            raise ValueError(f"FilterMode: t n'a de sens que pour {BLEND}")

    @classmethod
    def night(cls):
        return cls(NIGHT)

    @classmethod
    def blue(cls):
        return cls(BLUE)

    @classmethod
    def red(cls):
        return cls(RED)

    def __str__(self):
        return f"{BLEND}({self.t:g})" if self.tag == BLEND else self.tag


def mode_for_elevation(elevation_deg: float) -> FilterMode:
    """Règle de seuils ; 10° -> bleu, 30° -> rouge."""
    if elevation_deg < PreprocessConfig.NIGHT_BELOW_DEG:
        return FilterMode.night()
    if elevation_deg <= PreprocessConfig.BLUE_UP_TO_DEG:
        return FilterMode.blue()
    if elevation_deg >= PreprocessConfig.RED_FROM_DEG:
        return FilterMode.red()
    span = PreprocessConfig.RED_FROM_DEG - PreprocessConfig.BLUE_UP_TO_DEG
    return FilterMode(BLEND,
                      (elevation_deg - PreprocessConfig.BLUE_UP_TO_DEG) / span)


def select_mode(meta: AcquisitionMeta) -> FilterMode:
    """
    Mode de filtre pour des métadonnées d'acquisition.

    Raises:
        InsufficientMetadataError
    """
    return mode_for_elevation(resolve_elevation(meta))


def spec_for_mode(mode: FilterMode, s: ChannelStats) -> ConversionSpec:
    """
    Spécification de conversion pour un mode donné.

    Des poids dégénérés ramènent à la conversion par défaut, avec fallback.
    """
    if mode.tag == NIGHT:
        return ConversionSpec.default()
    try:
        if mode.tag == BLUE:
            return ConversionSpec.weighted(
                normalize_clamp(blue_filter_weights(s)))
        if mode.tag == RED:
            return ConversionSpec.weighted(
                normalize_clamp(red_filter_weights(s)))
        blue_weights = normalize_clamp(blue_filter_weights(s))
        red_weights = normalize_clamp(red_filter_weights(s))
        return ConversionSpec.weighted(blend(blue_weights, red_weights, mode.t))
    except DegenerateWeightsError as e:
        log(f"Acquisition: {e} -> conversion par défaut", level="WARNING")
        return ConversionSpec.default(fallback=True)


def weights_for(meta: AcquisitionMeta, s: ChannelStats) -> ConversionSpec:
    """Composition de select_mode et spec_for_mode."""
    return spec_for_mode(select_mode(meta), s)
