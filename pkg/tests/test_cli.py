# -*- coding: utf-8 -*-
import json

import pytest

from src.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, HANDLERS, run
from src.raster.codec import load_gray, save_rgb
from src.synth.atmosphere import SceneSpec, TintSpec, write_scene_set
from tests.conftest import random_rgb


@pytest.fixture
def rgb_file(tmp_path):
    path = tmp_path / "aerial.png"
    save_rgb(random_rgb(21, 16, 12), path)
    return path


@pytest.fixture
def scene_dir(tmp_path):
    images = tmp_path / "images"
    write_scene_set(range(10), images, SceneSpec(width=32, height=32),
                    TintSpec.daytime(), sidecar_mode="red")
    return images


@pytest.mark.parametrize("command", sorted(HANDLERS))
def test_help_for_every_command(command, capsys):
    assert run([command, "--help"]) == EXIT_OK
    assert command in capsys.readouterr().out


def test_version(capsys):
    assert run(["--version"]) == EXIT_OK
    assert "lumiprep" in capsys.readouterr().out


def test_usage_errors(rgb_file, tmp_path):
    assert run([]) == EXIT_USAGE
    assert run(["explode"]) == EXIT_USAGE
    assert run(["convert", str(rgb_file)]) == EXIT_USAGE  # -o manquant
    out = str(tmp_path / "out.pgm")
    # Mode auto sans métadonnées ni sidecar
    assert run(["convert", str(rgb_file), "-o", out]) == EXIT_USAGE
    assert run([
        "convert", str(rgb_file), "-o", out, "--timestamp",
        "2024-06-21T12:00:00Z"
    ]) == EXIT_USAGE


def test_runtime_errors(tmp_path, capsys):
    missing = str(tmp_path / "missing.png")
    assert run(["stats", missing]) == EXIT_FAILURE
    assert "lumiprep:" in capsys.readouterr().err
    assert run(["split", "--manifest",
                str(tmp_path / "none.jsonl")]) == EXIT_FAILURE


def test_convert_high_sun_uses_red_filter(rgb_file, tmp_path, capsys):
    out = tmp_path / "out.pgm"
    preview = tmp_path / "preview.png"
    code = run([
        "convert",
        str(rgb_file), "--elevation", "45", "-o",
        str(out), "--preview",
        str(preview), "--json"
    ])
    assert code == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["filter_mode"] == "red"
    assert payload["elevation_deg"] == 45.0
    assert payload["spec"]["mode"] == "weighted"
    gray = load_gray(out)
    assert (gray.width, gray.height) == (16, 12)
    assert load_gray(preview).width == 48


def test_convert_from_position(rgb_file, tmp_path, capsys):
    code = run([
        "convert",
        str(rgb_file), "-o",
        str(tmp_path / "out.png"), "--timestamp", "2024-12-21T00:00:00Z",
        "--lat", "51.48", "--lon", "0", "--json"
    ])
    assert code == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["filter_mode"] == "night"
    assert payload["azimuth_deg"] is not None


def test_convert_reads_sidecar(rgb_file, tmp_path, capsys):
    rgb_file.with_suffix(".json").write_text(
        json.dumps({"sun_elevation_deg": 5.0}))
    assert run(["convert",
                str(rgb_file), "-o",
                str(tmp_path / "out.pgm")]) == EXIT_OK
    assert "blue" in capsys.readouterr().out


def test_convert_refuses_to_overwrite_input(rgb_file, tmp_path, capsys):
    before = rgb_file.read_bytes()
    assert run(["convert", str(rgb_file), "--elevation", "45", "-o",
                str(rgb_file)]) == EXIT_FAILURE
    assert "écraserait" in capsys.readouterr().err
    assert run(["convert", str(rgb_file), "--elevation", "45", "-o",
                str(tmp_path / "out.pgm"), "--preview",
                str(rgb_file)]) == EXIT_FAILURE
    assert rgb_file.read_bytes() == before


def test_batch_in_place_is_a_runtime_error(scene_dir, capsys):
    assert run(["batch", str(scene_dir), "-o", str(scene_dir), "--format",
                "png"]) == EXIT_FAILURE
    assert "identique au dossier source" in capsys.readouterr().err


def test_stats_and_table(rgb_file, capsys):
    assert run(["stats", str(rgb_file), "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload

    assert run(["table", str(rgb_file), "--csv"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "DN,Npix,Perc,CumNpix,CumPerc"
    assert len(lines) == 257

    assert run(["table", str(rgb_file)]) == EXIT_OK
    assert "Total: 576" in capsys.readouterr().out


def test_batch_then_split_is_reproducible(scene_dir, tmp_path, capsys):
    out = tmp_path / "out"
    assert run(["batch", str(scene_dir), "-o", str(out), "--workers",
                "3"]) == EXIT_OK
    manifest = out / "manifest.jsonl"
    assert manifest.exists()

    lists = []
    for attempt in range(2):
        target = tmp_path / f"split{attempt}"
        assert run([
            "split", "--manifest",
            str(manifest), "--seed", "7", "-o",
            str(target)
        ]) == EXIT_OK
        lists.append(((target / "train.txt").read_bytes(),
                      (target / "test.txt").read_bytes()))
    assert lists[0] == lists[1]
    assert len(lists[0][0].splitlines()) == 8
    assert len(lists[0][1].splitlines()) == 2
    capsys.readouterr()

    assert run([
        "split", "--manifest",
        str(manifest), "--fraction", "0.5", "-o",
        str(tmp_path / "json"), "--json"
    ]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert sum(c["train"] + c["test"] for c in payload["classes"]) == 10


def test_batch_strict_reports_failures(scene_dir, tmp_path, capsys):
    (scene_dir / "zz_broken.png").write_bytes(b"broken")
    out = tmp_path / "out"
    assert run(["batch", str(scene_dir), "-o", str(out), "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["failed"] == 1
    assert payload["succeeded"] == 10
    assert run(["batch", str(scene_dir), "-o",
                str(tmp_path / "strict"), "--strict"]) == EXIT_FAILURE


def test_batch_invalid_workers(scene_dir, tmp_path):
    assert run(["batch", str(scene_dir), "-o",
                str(tmp_path / "out"), "--workers", "0"]) == EXIT_USAGE


def test_cfg_changes_only_the_channels_line(data_dir, capsys):
    source = data_dir / "yolov3.cfg"
    assert run(["cfg", str(source), "--channels", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    original = source.read_text(encoding="utf-8").split("\n")
    rewritten = out.split("\n")
    assert len(rewritten) == len(original)
    diff = [i for i, (a, b) in enumerate(zip(original, rewritten)) if a != b]
    assert len(diff) == 1
    assert rewritten[diff[0]] == "channels=1"


def test_cfg_to_file_with_json(data_dir, tmp_path, capsys):
    target = tmp_path / "yolov3-gray.cfg"
    assert run([
        "cfg",
        str(data_dir / "yolov3.cfg"), "--channels", "1", "--training-preset",
        "-o",
        str(target), "--json"
    ]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["changed_lines"]) == 3
    assert "max_batches = 2500" in target.read_text(encoding="utf-8")


def test_cfg_preset_flag_and_alias(data_dir, tmp_path):
    source = str(data_dir / "yolov3.cfg")
    preset = tmp_path / "preset.cfg"
    alias = tmp_path / "alias.cfg"
    assert run(["cfg", source, "--channels", "1", "--paper-preset", "-o",
                str(preset)]) == EXIT_OK
    assert run(["cfg", source, "--channels", "1", "--training-preset", "-o",
                str(alias)]) == EXIT_OK
    text = preset.read_text(encoding="utf-8")
    assert "max_batches = 2500" in text
    assert "steps=2000,2250" in text
    assert "channels=1" in text
    assert alias.read_bytes() == preset.read_bytes()


def test_usage_error_is_prefixed_once(data_dir, capsys):
    source = str(data_dir / "yolov3.cfg")
    assert run(["cfg", source, "--bogus"]) == EXIT_USAGE
    err = capsys.readouterr().err
    assert "lumiprep: " in err
    assert "lumiprep: lumiprep:" not in err
    assert run(["cfg", source, "--channels", "x"]) == EXIT_USAGE
    err = capsys.readouterr().err
    assert "lumiprep: cfg: " in err
    assert "lumiprep: lumiprep" not in err


def test_cfg_usage_errors(data_dir, tmp_path):
    source = str(data_dir / "yolov3.cfg")
    assert run(["cfg", source]) == EXIT_USAGE
    assert run(["cfg", source, "--channels", "1", "--json"]) == EXIT_USAGE
    assert run(["cfg", source, "--channels", "0"]) == EXIT_USAGE
    no_net = tmp_path / "bad.cfg"
    no_net.write_text("[convolutional]\nfilters=32\n")
    assert run(["cfg", str(no_net), "--channels", "1"]) == EXIT_FAILURE


def test_synth_lock_and_check(tmp_path, capsys):
    lock = tmp_path / "locked.csv"
    common = [
        "synth", "--count", "3", "--width", "32", "--height", "32",
        "--workers", "2"
    ]
    assert run(common + ["-o", str(tmp_path / "a"), "--lock",
                         str(lock)]) == EXIT_OK
    assert (tmp_path / "a" / "compensation_report.csv").exists()
    assert (tmp_path / "a" / "scene_000000.png").exists()
    assert run(common + ["-o", str(tmp_path / "b"), "--check",
                         str(lock)]) == EXIT_OK

    lines = lock.read_text(encoding="utf-8").splitlines()
    lock.write_text("\n".join(lines[:-1]) + "\n", encoding="utf-8")
    capsys.readouterr()
    assert run(common + ["-o", str(tmp_path / "c"), "--check",
                         str(lock)]) == EXIT_FAILURE
    assert "absente" in capsys.readouterr().err


def test_synth_invalid_tint(tmp_path):
    assert run(["synth", "--count", "1", "--tint", "1,1", "-o",
                str(tmp_path)]) == EXIT_FAILURE
