# -*- coding: utf-8 -*-
import os
from pathlib import Path

# Pas de fichier de log pendant les tests
os.environ["LUMIPREP_LOG_DIR"] = ""

import numpy as np
import pytest

from src.raster.images import GrayImage, RgbImage
from src.utils import system_utils

DATA_DIR = Path(__file__).parent / "data"


def random_rgb(seed, width=64, height=64) -> RgbImage:
    rng = np.random.default_rng(seed)
    return RgbImage(rng.integers(0, 256, (height, width, 3), dtype=np.uint8))


def constant_rgb(r, g, b, width=4, height=4) -> RgbImage:
    pixels = np.empty((height, width, 3), dtype=np.uint8)
    pixels[:, :] = (r, g, b)
    return RgbImage(pixels)


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def rgb_factory():
    return random_rgb


@pytest.fixture
def gray_image():
    return GrayImage(np.arange(64, dtype=np.uint8).reshape(8, 8))


@pytest.fixture(autouse=True)
def _isolated_runtime(monkeypatch):
    monkeypatch.delenv("LUMIPREP_THREADS", raising=False)
    monkeypatch.delenv("LUMIPREP_MIN_MPX_PER_S", raising=False)
    monkeypatch.delenv("LUMIPREP_CONFIG", raising=False)
    # run() et set_log_level modifient un niveau global
    monkeypatch.setattr(system_utils, "CURRENT_LOG_LEVEL", "INFO")
