# -*- coding: utf-8 -*-
"""
Position du soleil, algorithme basse précision de l'Astronomical Almanac
(précision ~0.01° sur la déclinaison, largement sous 0.5° en élévation pour
1950-2100). Élévation géométrique, sans correction de réfraction.
"""
import math
from datetime import datetime, timezone
from typing import Tuple

from src.utils.errors import OutOfRangeCoordinatesError, UnsupportedEpochError

J2000 = datetime(2000, 1, 1, 12, 0, 0, tzinfo=timezone.utc)
MIN_YEAR = 1950
MAX_YEAR = 2100


def as_utc(timestamp: datetime) -> datetime:
    """Un horodatage naïf est considéré comme UTC."""
    if timestamp.tzinfo is None:
        return timestamp.replace(tzinfo=timezone.utc)
    return timestamp.astimezone(timezone.utc)


def _check_inputs(timestamp: datetime, latitude_deg: float,
                  longitude_deg: float) -> datetime:
    if not -90.0 <= latitude_deg <= 90.0:
        raise OutOfRangeCoordinatesError(
            f"Latitude {latitude_deg} hors de [-90, 90]")
    if not -180.0 <= longitude_deg <= 180.0:
        raise OutOfRangeCoordinatesError(
            f"Longitude {longitude_deg} hors de [-180, 180]")
    utc = as_utc(timestamp)
    if not MIN_YEAR <= utc.year <= MAX_YEAR:
        raise UnsupportedEpochError(
            f"Année {utc.year} hors de la période {MIN_YEAR}-{MAX_YEAR}")
    return utc


def solar_position(timestamp: datetime, latitude_deg: float,
                   longitude_deg: float) -> Tuple[float, float]:
    """
    Élévation et azimut (degrés, azimut compté depuis le nord vers l'est).

    Raises:
        OutOfRangeCoordinatesError, UnsupportedEpochError
    """
    utc = _check_inputs(timestamp, latitude_deg, longitude_deg)
    # Jours depuis J2000.0
    n = (utc - J2000).total_seconds() / 86400.0

    mean_longitude = (280.460 + 0.9856474 * n) % 360.0
    mean_anomaly = math.radians((357.528 + 0.9856003 * n) % 360.0)
    ecliptic_longitude = math.radians(
        (mean_longitude + 1.915 * math.sin(mean_anomaly) +
         0.020 * math.sin(2.0 * mean_anomaly)) % 360.0)
    obliquity = math.radians(23.439 - 0.0000004 * n)

    right_ascension = math.atan2(
        math.cos(obliquity) * math.sin(ecliptic_longitude),
        math.cos(ecliptic_longitude))
    declination = math.asin(
        math.sin(obliquity) * math.sin(ecliptic_longitude))

    # Temps sidéral moyen de Greenwich (heures)
    hours_utc = (utc.hour + utc.minute / 60.0 + utc.second / 3600.0 +
                 utc.microsecond / 3.6e9)
    gmst = (6.697375 + 0.0657098242 * n + hours_utc) % 24.0
    lmst = math.radians(15.0 * ((gmst + longitude_deg / 15.0) % 24.0))
    hour_angle = (lmst - right_ascension + math.pi) % (2.0 * math.pi) - math.pi

    lat = math.radians(latitude_deg)
    sin_elevation = (math.sin(declination) * math.sin(lat) +
                     math.cos(declination) * math.cos(lat) * math.cos(hour_angle))
    elevation = math.asin(max(-1.0, min(1.0, sin_elevation)))

    azimuth = math.atan2(
        -math.sin(hour_angle),
        math.tan(declination) * math.cos(lat) -
        math.sin(lat) * math.cos(hour_angle))
    return math.degrees(elevation), math.degrees(azimuth) % 360.0


def sun_elevation(timestamp: datetime, latitude_deg: float,
                  longitude_deg: float) -> float:
    """Élévation géométrique du soleil en degrés (négative la nuit)."""
    return solar_position(timestamp, latitude_deg, longitude_deg)[0]
