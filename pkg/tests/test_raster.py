# -*- coding: utf-8 -*-
import numpy as np
import pytest
from PIL import Image

from src.raster.codec import load_gray, load_rgb, save_gray, save_rgb
from src.raster.images import GrayImage, PixelTriple, RgbImage
from src.utils.errors import (CorruptDataError, RasterIoError,
                              RasterNotFoundError, UnsupportedExtensionError,
                              UnsupportedFormatError)
from tests.conftest import random_rgb


def _pnm_bytes(magic, width, height, payload, comment=False):
    header = f"{magic}\n"
    if comment:
        header += "# commentaire\n"
    header += f"{width} {height}\n255\n"
    return header.encode("ascii") + bytes(payload)


def _parse_pnm(data):
    """Lecteur PNM minimal, indépendant de Pillow."""
    tokens = []
    pos = 2
    while len(tokens) < 3:
        while data[pos:pos + 1].isspace():
            pos += 1
        if data[pos:pos + 1] == b"#":
            pos = data.index(b"\n", pos) + 1
            continue
        end = pos
        while not data[end:end + 1].isspace():
            end += 1
        tokens.append(int(data[pos:end]))
        pos = end
    pos += 1  # un seul blanc après maxval
    width, height, _ = tokens
    return data[:2], width, height, list(data[pos:])


def test_load_ppm_matches_hand_parser(tmp_path):
    payload = list(range(2 * 3 * 3))
    path = tmp_path / "tiny.ppm"
    path.write_bytes(_pnm_bytes("P6", 3, 2, payload, comment=True))

    img = load_rgb(path)
    assert (img.width, img.height) == (3, 2)
    flat = [c for p in img.pixels() for c in p]
    assert flat == payload


def test_coordinate_convention(tmp_path):
    pixels = np.zeros((3, 5, 3), dtype=np.uint8)
    pixels[1, 3] = (200, 10, 20)
    path = tmp_path / "sample.png"
    save_rgb(RgbImage(pixels), path)

    img = load_rgb(path)
    assert img.pixel(3, 1) == PixelTriple(200, 10, 20)
    offset = 1 * img.width + 3
    assert list(img.pixels())[offset] == (200, 10, 20)


def test_save_gray_pgm_is_plain_p5(tmp_path):
    img = GrayImage(np.arange(12, dtype=np.uint8).reshape(3, 4) * 20)
    path = tmp_path / "out.pgm"
    save_gray(img, path)

    magic, width, height, values = _parse_pnm(path.read_bytes())
    assert magic == b"P5"
    assert (width, height) == (4, 3)
    assert values == list(img.pixels())


@pytest.mark.parametrize("ext", [".png", ".ppm"])
def test_rgb_lossless(tmp_path, ext):
    img = random_rgb(3, 17, 9)
    path = tmp_path / f"img{ext}"
    save_rgb(img, path)
    assert load_rgb(path) == img


@pytest.mark.parametrize("ext", [".png", ".pgm"])
def test_gray_lossless(tmp_path, ext, gray_image):
    path = tmp_path / f"gray{ext}"
    save_gray(gray_image, path)
    assert load_gray(path) == gray_image


def test_missing_file(tmp_path):
    with pytest.raises(RasterNotFoundError):
        load_rgb(tmp_path / "absent.png")
    with pytest.raises(FileNotFoundError):
        load_rgb(tmp_path / "absent.png")


def test_sixteen_bit_pnm_rejected(tmp_path):
    path = tmp_path / "deep.ppm"
    path.write_bytes(b"P6\n1 1\n65535\n" + bytes(6))
    with pytest.raises(UnsupportedFormatError):
        load_rgb(path)


def test_sixteen_bit_png_rejected(tmp_path):
    path = tmp_path / "deep.png"
    Image.fromarray(np.full((2, 2), 1000, dtype=np.uint16)).save(path)
    with pytest.raises(UnsupportedFormatError):
        load_gray(path)


def test_alpha_png_rejected(tmp_path):
    path = tmp_path / "alpha.png"
    Image.new("RGBA", (2, 2), (1, 2, 3, 4)).save(path)
    with pytest.raises(UnsupportedFormatError):
        load_rgb(path)


def test_jpeg_rejected(tmp_path):
    path = tmp_path / "lossy.jpg"
    Image.new("RGB", (8, 8), (10, 20, 30)).save(path, format="JPEG")
    with pytest.raises(UnsupportedFormatError):
        load_rgb(path)


def test_three_channel_file_as_gray_rejected(tmp_path):
    path = tmp_path / "rgb.ppm"
    path.write_bytes(_pnm_bytes("P6", 1, 1, [1, 2, 3]))
    with pytest.raises(UnsupportedFormatError):
        load_gray(path)


def test_truncated_png(tmp_path):
    path = tmp_path / "cut.png"
    save_rgb(random_rgb(1), path)
    data = path.read_bytes()
    path.write_bytes(data[:len(data) // 2])
    with pytest.raises(CorruptDataError):
        load_rgb(path)


def test_save_errors(tmp_path, gray_image):
    with pytest.raises(UnsupportedExtensionError):
        save_gray(gray_image, tmp_path / "out.bmp")
    with pytest.raises(RasterIoError):
        save_gray(gray_image, tmp_path / "missing" / "out.pgm")


def test_images_are_immutable_values():
    img = random_rgb(5, 4, 4)
    assert not img.array.flags.writeable
    with pytest.raises(ValueError):
        img.array[0, 0, 0] = 1
    assert img == RgbImage(img.array.copy())
    assert hash(img) == hash(RgbImage(img.array.copy()))


def test_from_pixels_validation():
    img = RgbImage.from_pixels(2, 1, [(1, 2, 3), (4, 5, 6)])
    assert img.pixel(1, 0) == (4, 5, 6)
    with pytest.raises(ValueError):
        RgbImage.from_pixels(2, 2, [(1, 2, 3)])
    with pytest.raises(ValueError):
        GrayImage.from_pixels(1, 1, [256])
