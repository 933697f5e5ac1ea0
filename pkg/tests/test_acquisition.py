# -*- coding: utf-8 -*-
import json
from datetime import datetime, timedelta, timezone

import pytest

from src.luminance.acquisition import (AcquisitionMeta, FilterMode,
                                       load_sidecar, meta_from_dict,
                                       mode_for_elevation, parse_timestamp,
                                       resolve_elevation, select_mode,
                                       spec_for_mode, weights_for)
from src.luminance.conversion import ConversionMode
from src.luminance.histogram import ChannelStats
from src.luminance.solar import solar_position, sun_elevation
from src.luminance.weights import (blend, blue_filter_weights,
                                   normalize_clamp, red_filter_weights)
from src.utils.errors import (InsufficientMetadataError,
                              OutOfRangeCoordinatesError,
                              UnsupportedEpochError)

STATS = ChannelStats(mean=0.45, std_dev=0.22, perc=0.02)


@pytest.mark.parametrize("elevation, expected", [
    (-12, "night"),
    (5, "blue"),
    (10, "blue"),
    (20, "blend(0.5)"),
    (30, "red"),
    (45, "red"),
    (0, "blue"),
])
def test_threshold_table(elevation, expected):
    assert str(mode_for_elevation(elevation)) == expected


def test_blend_converges_to_pure_modes():
    blue = normalize_clamp(blue_filter_weights(STATS)).as_tuple()
    red = normalize_clamp(red_filter_weights(STATS)).as_tuple()
    near_blue = spec_for_mode(mode_for_elevation(10.0 + 1e-9), STATS)
    near_red = spec_for_mode(mode_for_elevation(30.0 - 1e-9), STATS)
    assert near_blue.coefficients() == pytest.approx(blue, abs=1e-9)
    assert near_red.coefficients() == pytest.approx(red, abs=1e-9)


def test_blend_mode_uses_interpolated_weights():
    spec = spec_for_mode(mode_for_elevation(20.0), STATS)
    expected = blend(normalize_clamp(blue_filter_weights(STATS)),
                     normalize_clamp(red_filter_weights(STATS)), 0.5)
    assert spec.coefficients() == pytest.approx(expected.as_tuple())


@pytest.mark.parametrize("elevation, expected", [
    (45.0, (0.670, 0.321, 0.009)),
    (5.0, (0.45, 0.54604, 0.00396)),
])
def test_weights_for_worked_compositions(elevation, expected):
    spec = weights_for(AcquisitionMeta(sun_elevation_deg=elevation), STATS)
    assert spec.mode == ConversionMode.WEIGHTED
    assert spec.coefficients() == pytest.approx(expected, abs=1e-12)
    assert not spec.clamped


def test_night_uses_default_conversion():
    spec = weights_for(AcquisitionMeta(sun_elevation_deg=-20.0), STATS)
    assert spec.mode == ConversionMode.DEFAULT
    assert not spec.fallback


def test_explicit_elevation_wins():
    # Minuit à Greenwich, mais élévation explicite de jour
    meta = AcquisitionMeta(sun_elevation_deg=45.0,
                           timestamp_utc=datetime(2024, 6, 21, 0, 0,
                                                  tzinfo=timezone.utc),
                           latitude_deg=51.48,
                           longitude_deg=0.0)
    assert resolve_elevation(meta) == 45.0
    assert select_mode(meta) == FilterMode.red()


def test_insufficient_metadata():
    with pytest.raises(InsufficientMetadataError):
        select_mode(AcquisitionMeta())
    with pytest.raises(InsufficientMetadataError):
        select_mode(AcquisitionMeta(latitude_deg=10.0, longitude_deg=10.0))


def test_coordinate_validation():
    with pytest.raises(OutOfRangeCoordinatesError):
        AcquisitionMeta(latitude_deg=91.0)
    with pytest.raises(OutOfRangeCoordinatesError):
        AcquisitionMeta(longitude_deg=-181.0)
    with pytest.raises(OutOfRangeCoordinatesError):
        AcquisitionMeta(sun_elevation_deg=95.0)


def test_filter_mode_validation():
    with pytest.raises(ValueError):
        FilterMode("blend", 1.0)
    with pytest.raises(ValueError):
        FilterMode("red", 0.5)
    with pytest.raises(ValueError):
        FilterMode("dusk")


def test_equator_equinox_noon():
    # Midi solaire vrai vers 12:07 UTC (équation du temps)
    when = datetime(2024, 3, 20, 12, 7, tzinfo=timezone.utc)
    assert sun_elevation(when, 0.0, 0.0) == pytest.approx(90.0, abs=1.0)


def test_greenwich_summer_solstice():
    when = datetime(2024, 6, 21, 12, 0, tzinfo=timezone.utc)
    elevation, azimuth = solar_position(when, 51.48, 0.0)
    assert elevation == pytest.approx(61.96, abs=0.5)
    assert azimuth == pytest.approx(180.0, abs=3.0)


def test_greenwich_midnight_is_night():
    when = datetime(2024, 12, 21, 0, 0, tzinfo=timezone.utc)
    assert sun_elevation(when, 51.48, 0.0) < 0
    meta = AcquisitionMeta(timestamp_utc=when,
                           latitude_deg=51.48,
                           longitude_deg=0.0)
    assert select_mode(meta) == FilterMode.night()


@pytest.mark.parametrize("month", [1, 3, 6, 9, 12])
def test_antipodal_longitudes_twelve_hours_apart(month):
    when = datetime(2024, month, 15, 5, 30, tzinfo=timezone.utc)
    later = when + timedelta(hours=12)
    for latitude in (-60.0, -20.0, 0.0, 35.0, 70.0):
        for longitude in (-170.0, -90.0, -10.0, 0.0, 45.0, 120.0):
            opposite = longitude + 180.0 if longitude < 0 else longitude - 180.0
            assert sun_elevation(later, latitude, opposite) == pytest.approx(
                sun_elevation(when, latitude, longitude), abs=1.0)


def test_naive_timestamp_is_utc():
    aware = datetime(2024, 6, 21, 12, 0, tzinfo=timezone.utc)
    naive = datetime(2024, 6, 21, 12, 0)
    shifted = datetime(2024, 6, 21, 14, 0,
                       tzinfo=timezone(timedelta(hours=2)))
    assert sun_elevation(naive, 51.48, 0.0) == sun_elevation(aware, 51.48, 0.0)
    assert sun_elevation(shifted, 51.48, 0.0) == pytest.approx(
        sun_elevation(aware, 51.48, 0.0))


def test_solar_epoch_range():
    with pytest.raises(UnsupportedEpochError):
        sun_elevation(datetime(1900, 1, 1, tzinfo=timezone.utc), 0.0, 0.0)


def test_parse_timestamp_accepts_z_suffix():
    assert parse_timestamp("2024-06-21T12:00:00Z") == datetime(
        2024, 6, 21, 12, 0, tzinfo=timezone.utc)
    with pytest.raises(InsufficientMetadataError):
        parse_timestamp("hier midi")


def test_sidecar_loading(tmp_path):
    path = tmp_path / "img.json"
    path.write_text(
        json.dumps({
            "timestamp_utc": "2024-06-21T12:00:00Z",
            "lat": 51.48,
            "lon": 0.0
        }))
    meta = load_sidecar(path)
    assert meta.has_position
    assert select_mode(meta) == FilterMode.red()

    path.write_text("{not json")
    with pytest.raises(InsufficientMetadataError):
        load_sidecar(path)


def test_meta_from_dict_aliases():
    meta = meta_from_dict({"latitude_deg": 10, "longitude_deg": 20})
    assert (meta.latitude_deg, meta.longitude_deg) == (10.0, 20.0)
    assert not meta.is_resolvable
