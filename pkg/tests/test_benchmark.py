# -*- coding: utf-8 -*-
import pytest

from src.config.runtime_config import runtime_config
from src.luminance.conversion import ConversionSpec, measure_throughput
from src.luminance.histogram import pooled_histogram, stats_of
from src.luminance.weights import normalize_clamp, red_filter_weights
from tests.conftest import random_rgb


@pytest.mark.benchmark
def test_convert_throughput():
    img = random_rgb(0, 2048, 1024)
    spec = ConversionSpec.weighted(
        normalize_clamp(red_filter_weights(stats_of(pooled_histogram(img)))))
    rate = measure_throughput(img, spec, repeats=3)
    threshold = runtime_config.min_megapixels_per_second
    assert rate >= threshold, f"{rate:.1f} Mpx/s < {threshold} Mpx/s"
