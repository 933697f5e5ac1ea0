# -*- coding: utf-8 -*-
import json
import os

import pytest

from src.config.preprocess_config import PreprocessConfig
from src.dataset.annotations import (AnnotationRecord, parse_annotation_line,
                                     parse_annotations)
from src.dataset.manifest import (STATUS_ERROR, ManifestRecord, read_manifest,
                                  write_manifest)
from src.dataset.pipeline import list_images, process_dataset
from src.dataset.rng import Lcg64
from src.dataset.split import (SplitSpec, emit_filelists, split_dataset,
                               split_summary, train_count)
from src.luminance.acquisition import AcquisitionMeta
from src.raster.codec import load_gray, save_rgb
from src.synth.atmosphere import SceneSpec, TintSpec, write_scene_set
from src.utils.errors import (AnnotationFormatError, ClassUnknownError,
                              EmptyManifestError, EmptySplitError,
                              InvalidSplitSpecError, OverwriteSourceError,
                              UnsplitManifestError)
from tests.conftest import random_rgb

SMALL_SCENE = SceneSpec(width=32, height=32, target_count=2)


def _records(count, classes=None):
    return [
        ManifestRecord(source_path=f"/data/img{i:04d}.png",
                       output_path=f"/out/img{i:04d}.pgm",
                       class_id=None if classes is None else i % classes)
        for i in range(count)
    ]


def _read_tree(root):
    """{chemin relatif: octets} d'un dossier, manifeste exclu."""
    tree = {}
    for name in sorted(os.listdir(root)):
        if name == PreprocessConfig.MANIFEST_FILE:
            continue
        with open(os.path.join(root, name), "rb") as f:
            tree[name] = f.read()
    return tree


def _manifest_without_timestamps(path, root):
    rows = []
    for record in read_manifest(path):
        row = record.to_dict(include_timestamps=False)
        row["output_path"] = os.path.relpath(row["output_path"], root)
        if row["annotation_path"]:
            row["annotation_path"] = os.path.relpath(row["annotation_path"],
                                                     root)
        rows.append(row)
    return rows


# --- Générateur ---


def test_lcg_sequence_is_fixed():
    rng = Lcg64(0)
    assert rng.next_u64() == 1442695040888963407
    assert rng.next_u64() == (1442695040888963407 * 6364136223846793005 +
                              1442695040888963407) % (1 << 64)


def test_lcg_bounded_draws():
    rng = Lcg64(42)
    draws = [rng.randint(3, 7) for _ in range(2000)]
    assert set(draws) == {3, 4, 5, 6, 7}
    items = list(range(50))
    Lcg64(1).shuffle(items)
    assert sorted(items) == list(range(50))
    again = list(range(50))
    Lcg64(1).shuffle(again)
    assert items == again


# --- Annotations ---


def test_annotation_parsing():
    record = parse_annotation_line("3 0.5 0.25 0.1 0.2")
    assert record == AnnotationRecord(3, 0.5, 0.25, 0.1, 0.2)
    assert record.to_line() == "3 0.500000 0.250000 0.100000 0.200000"
    assert len(parse_annotations("0 0.5 0.5 0.1 0.1\n\n1 0.2 0.2 0.1 0.1\n")) == 2
    for bad in ("0 0.5 0.5 0.1", "x 0.5 0.5 0.1 0.1", "0 1.5 0.5 0.1 0.1"):
        with pytest.raises(AnnotationFormatError):
            parse_annotation_line(bad)
    with pytest.raises(AnnotationFormatError):
        parse_annotation_line("5 0.5 0.5 0.1 0.1", class_count=5)


# --- Manifeste ---


def test_manifest_round_trip(tmp_path):
    records = _records(3, classes=2)
    path = tmp_path / "manifest.jsonl"
    write_manifest(list(reversed(records)), path)
    assert read_manifest(path) == records


# --- Pipeline ---


def test_pipeline_converts_and_copies_annotations(tmp_path):
    images = tmp_path / "images"
    write_scene_set(range(4), images, SMALL_SCENE, TintSpec.daytime(),
                    sidecar_mode="red")
    out = tmp_path / "out"
    records = process_dataset(images, out, workers=2)

    assert len(records) == 4
    assert all(r.ok for r in records)
    assert (out / PreprocessConfig.CLASSES_FILE).exists()
    for record in records:
        assert record.mode == "red"
        assert record.elevation_deg == 45.0
        assert isinstance(record.weights, dict)
        gray = load_gray(record.output_path)
        assert (gray.width, gray.height) == (32, 32)
        source_txt = os.path.splitext(record.source_path)[0] + ".txt"
        with open(source_txt, "rb") as a, open(record.annotation_path,
                                               "rb") as b:
            assert a.read() == b.read()
        assert record.class_id is not None
    manifest = read_manifest(out / PreprocessConfig.MANIFEST_FILE)
    assert manifest == records


def test_pipeline_records_errors_without_stopping(tmp_path):
    images = tmp_path / "images"
    images.mkdir()
    save_rgb(random_rgb(1, 8, 8), images / "good.png")
    (images / "bad.png").write_bytes(b"garbage")
    save_rgb(random_rgb(2, 8, 8), images / "nometa.png")
    (images / "good.json").write_text(json.dumps({"sun_elevation_deg": 5.0}))
    (images / "bad.json").write_text(json.dumps({"sun_elevation_deg": 5.0}))

    records = process_dataset(images, tmp_path / "out", workers=1)
    by_name = {os.path.basename(r.source_path): r for r in records}
    assert by_name["good.png"].ok
    assert by_name["good.png"].mode == "blue"
    assert by_name["good.png"].warnings == ["annotation absente"]
    assert by_name["bad.png"].status == STATUS_ERROR
    assert by_name["nometa.png"].status == STATUS_ERROR
    assert "élévation" in by_name["nometa.png"].error


def test_pipeline_refuses_in_place_output(tmp_path):
    images = tmp_path / "images"
    write_scene_set(range(2), images, SMALL_SCENE, sidecar_mode="red")
    before = _read_tree(images)
    with pytest.raises(OverwriteSourceError):
        process_dataset(images, images, output_format="png")
    with pytest.raises(OverwriteSourceError):
        process_dataset(images, tmp_path / "images" / ".." / "images")
    assert _read_tree(images) == before
    assert not (images / PreprocessConfig.MANIFEST_FILE).exists()


def test_pipeline_error_leaves_no_output(tmp_path):
    images = tmp_path / "images"
    images.mkdir()
    save_rgb(random_rgb(3, 8, 8), images / "scene.png")
    (images / "scene.txt").write_bytes(b"\xff\xfe 0.5 0.5 0.1 0.1\n")
    out = tmp_path / "out"

    records = process_dataset(images, out, mode="red", workers=1)
    assert [r.status for r in records] == [STATUS_ERROR]
    assert records[0].output_path is None
    assert records[0].annotation_path is None
    assert sorted(os.listdir(out)) == [PreprocessConfig.MANIFEST_FILE]


def test_pipeline_global_metadata_and_forced_modes(tmp_path):
    images = tmp_path / "images"
    images.mkdir()
    save_rgb(random_rgb(3, 8, 8), images / "a.png")
    night = process_dataset(images,
                            tmp_path / "night",
                            meta=AcquisitionMeta(sun_elevation_deg=-5.0))
    assert night[0].mode == "night"
    assert night[0].weights == "default"

    forced = process_dataset(images, tmp_path / "blue", mode="blue")
    assert forced[0].mode == "blue"
    assert forced[0].elevation_deg is None

    normalized = process_dataset(images,
                                 tmp_path / "norm",
                                 mode="normalized",
                                 output_format="png")
    assert normalized[0].output_path.endswith("a.png")
    assert normalized[0].weights["w_r"] == pytest.approx(1 / 3)


def test_pipeline_invalid_annotation_is_a_warning(tmp_path):
    images = tmp_path / "images"
    images.mkdir()
    save_rgb(random_rgb(4, 8, 8), images / "a.png")
    (images / "a.txt").write_text("2 0.5 0.5 0.2 0.2\nbroken line\n")
    records = process_dataset(images, tmp_path / "out", mode="red")
    assert records[0].ok
    assert records[0].class_id == 2
    assert len(records[0].warnings) == 1
    assert (tmp_path / "out" / "a.txt").read_text() == \
        "2 0.5 0.5 0.2 0.2\nbroken line\n"


def test_pipeline_determinism_across_worker_counts(tmp_path):
    images = tmp_path / "images"
    write_scene_set(range(50), images, SMALL_SCENE, TintSpec.daytime(),
                    sidecar_mode="red")
    outputs = {}
    for workers in (1, 8):
        out = tmp_path / f"out{workers}"
        process_dataset(images, out, workers=workers)
        outputs[workers] = (
            _read_tree(out),
            _manifest_without_timestamps(out / PreprocessConfig.MANIFEST_FILE,
                                         out),
        )
    assert outputs[1] == outputs[8]
    assert len(outputs[1][1]) == 50

    partitions = []
    for workers in (1, 8):
        records = read_manifest(tmp_path / f"out{workers}" /
                                PreprocessConfig.MANIFEST_FILE)
        split = split_dataset(records, SplitSpec(0.8, seed=7))
        partitions.append([(os.path.basename(r.source_path), r.split)
                           for r in split])
    assert partitions[0] == partitions[1]


def test_list_images_filters_extensions(tmp_path):
    for name in ("b.png", "a.ppm", "c.jpg", "d.txt"):
        (tmp_path / name).write_bytes(b"")
    assert [os.path.basename(p) for p in list_images(tmp_path)] == [
        "a.ppm", "b.png"
    ]


# --- Partition ---


def test_split_counts():
    split = split_dataset(_records(100), SplitSpec(0.8, seed=7))
    assert sum(r.split == "train" for r in split) == 80
    assert sum(r.split == "test" for r in split) == 20

    pair = split_dataset(_records(2), SplitSpec(0.5, seed=1))
    assert sorted(r.split for r in pair) == ["test", "train"]
    assert train_count(2, 0.8) == 2


def test_split_is_deterministic_and_seed_dependent():
    a = split_dataset(_records(100), SplitSpec(0.8, seed=7))
    b = split_dataset(list(reversed(_records(100))), SplitSpec(0.8, seed=7))
    c = split_dataset(_records(100), SplitSpec(0.8, seed=8))
    assert [r.split for r in a] == [r.split for r in b]
    assert [r.split for r in a] != [r.split for r in c]


def test_stratified_split_per_class():
    records = _records(5 * 245, classes=5)
    split = split_dataset(records, SplitSpec(220 / 245, seed=3,
                                             stratify_by_class=True))
    summary = split_summary(split)
    assert list(summary) == [0, 1, 2, 3, 4]
    for counts in summary.values():
        assert counts == {"train": 220, "test": 25}


def test_stratify_requires_classes():
    with pytest.raises(ClassUnknownError):
        split_dataset(_records(10), SplitSpec(0.8, stratify_by_class=True))


def test_split_errors():
    with pytest.raises(InvalidSplitSpecError):
        SplitSpec(1.0)
    with pytest.raises(InvalidSplitSpecError):
        SplitSpec(0.0)
    with pytest.raises(EmptyManifestError):
        split_dataset([], SplitSpec())
    failed = [ManifestRecord("/x.png", status=STATUS_ERROR, error="boom")]
    with pytest.raises(EmptyManifestError):
        split_dataset(failed, SplitSpec())


def test_error_records_are_not_split():
    records = _records(4) + [
        ManifestRecord("/data/zz.png", status=STATUS_ERROR, error="boom")
    ]
    split = split_dataset(records, SplitSpec(0.5, seed=2))
    assert split[-1].split is None
    assert sum(r.split == "train" for r in split) == 2


def test_emit_filelists(tmp_path):
    split = split_dataset(_records(10), SplitSpec(0.8, seed=7))
    train_path, test_path = emit_filelists(split, tmp_path)
    train = open(train_path, encoding="utf-8").read().splitlines()
    test = open(test_path, encoding="utf-8").read().splitlines()
    assert len(train) == 8 and len(test) == 2
    assert set(train) | set(test) == {r.output_path for r in _records(10)}
    assert not set(train) & set(test)


def test_emit_filelists_errors(tmp_path):
    with pytest.raises(UnsplitManifestError):
        emit_filelists(_records(3), tmp_path)
    one = split_dataset(_records(1), SplitSpec(0.8))
    with pytest.raises(EmptySplitError):
        emit_filelists(one, tmp_path)
