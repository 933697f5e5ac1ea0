# -*- coding: utf-8 -*-
"""
Scènes synthétiques et teinte atmosphérique multiplicative.

Les scènes servent d'imagerie de test : terrain gris neutre par blocs,
cibles rectangulaires plus claires, annotations YOLO. La teinte applique un
gain par canal (c' = clamp(round(f_c * c), 0, 255)), modèle du premier ordre
de la diffusion atmosphérique : bleu renforcé le jour, rouge au couchant.

compensation_report mesure, sur une scène teintée, l'écart de luminance
moyenne à la conversion par défaut de la scène d'origine, pour le filtre
pondéré et pour la conversion naïve.
"""
import csv
import json
import math
import os
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.config.preprocess_config import PreprocessConfig
from src.dataset.annotations import (AnnotationRecord, format_annotations,
                                     write_class_names)
from src.dataset.rng import Lcg64
from src.luminance.acquisition import BLUE, RED, FilterMode, spec_for_mode
from src.luminance.conversion import ConversionSpec, convert, run_in_pool
from src.luminance.histogram import gray_stats, pooled_histogram, stats_of
from src.luminance.weights import blue_filter_weights, red_filter_weights
from src.raster.codec import save_rgb
from src.raster.images import RgbImage
from src.utils.errors import (InvalidSceneSpecError, InvalidTintError,
                              LumiprepError, TargetsDontFitError)
from src.utils.system_utils import log

MIN_SCENE_SIZE = 16


@dataclass(frozen=True)
class TintSpec:
    f_r: float = 1.0
    f_g: float = 1.0
    f_b: float = 1.0

    def __post_init__(self):
        for name in ("f_r", "f_g", "f_b"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(
                    value) or value < 0:
                raise InvalidTintError(f"Gain {name}={value!r} invalide")

    @classmethod
    def identity(cls):
        return cls()

    @classmethod
    def daytime(cls):
        return cls(*PreprocessConfig.DAYTIME_TINT)

    @classmethod
    def sunset(cls):
        return cls(*PreprocessConfig.SUNSET_TINT)

    @classmethod
    def parse(cls, text: str) -> "TintSpec":
        """'FR,FG,FB' -> TintSpec."""
        parts = [p.strip() for p in str(text).split(",")]
        if len(parts) != 3:
            raise InvalidTintError(f"Teinte attendue FR,FG,FB: {text!r}")
        try:
            return cls(*(float(p) for p in parts))
        except ValueError:
            raise InvalidTintError(f"Teinte non numérique: {text!r}")

    def as_tuple(self):
        return (self.f_r, self.f_g, self.f_b)

    @property
    def label(self) -> str:
        return ",".join(f"{g:g}" for g in self.as_tuple())


@dataclass(frozen=True)
class ScenePalette:
    ground: Tuple[int, int] = PreprocessConfig.SCENE_GROUND_RANGE
    target: Tuple[int, int] = PreprocessConfig.SCENE_TARGET_RANGE

    def __post_init__(self):
        for name in ("ground", "target"):
            low, high = getattr(self, name)
            if not 0 <= low <= high <= 255:
                raise InvalidSceneSpecError(
                    f"Palette {name}=({low}, {high}) invalide")


@dataclass(frozen=True)
class SceneSpec:
    width: int = PreprocessConfig.SCENE_DEFAULT_SIZE
    height: int = PreprocessConfig.SCENE_DEFAULT_SIZE
    seed: int = 0
    target_count: int = PreprocessConfig.SCENE_DEFAULT_TARGETS
    palette: ScenePalette = field(default_factory=ScenePalette)

    def __post_init__(self):
        if self.width < MIN_SCENE_SIZE or self.height < MIN_SCENE_SIZE:
            raise InvalidSceneSpecError(
                f"Scène {self.width}x{self.height} : minimum "
                f"{MIN_SCENE_SIZE}x{MIN_SCENE_SIZE}")
        if self.target_count < 0:
            raise InvalidSceneSpecError(
                f"Nombre de cibles négatif: {self.target_count}")

    def with_seed(self, seed: int) -> "SceneSpec":
        return SceneSpec(self.width, self.height, seed, self.target_count,
                         self.palette)


def apply_tint(img: RgbImage, t: TintSpec) -> RgbImage:
    """c' = clamp(round(f_c * c), 0, 255) ; arrondi demi vers le haut (c >= 0)."""
    if t.as_tuple() == (1.0, 1.0, 1.0):
        return img
    gains = np.array(t.as_tuple(), dtype=np.float64)
    scaled = img.array.astype(np.float64) * gains
    np.floor(scaled + 0.5, out=scaled)
    np.clip(scaled, 0.0, 255.0, out=scaled)
    return RgbImage(scaled.astype(np.uint8))


def _terrain(spec: SceneSpec, rng: Lcg64) -> np.ndarray:
    block = PreprocessConfig.SCENE_BLOCK_SIZE
    half_jitter = PreprocessConfig.SCENE_GROUND_JITTER // 2
    low, high = spec.palette.ground
    rows = (spec.height + block - 1) // block
    cols = (spec.width + block - 1) // block
    levels = [[rng.randint(low, high) for _ in range(cols)]
              for _ in range(rows)]
    gray = np.empty((spec.height, spec.width), dtype=np.int64)
    for y in range(spec.height):
        level_row = levels[y // block]
        for x in range(spec.width):
            gray[y, x] = level_row[x // block] + rng.randint(
                -half_jitter, half_jitter)
    return np.clip(gray, 0, 255)


def _overlaps(box, placed) -> bool:
    x, y, w, h = box
    return any(x < px + pw and px < x + w and y < py + ph and py < y + h
               for px, py, pw, ph in placed)


def gen_scene(spec: SceneSpec) -> Tuple[RgbImage, List[AnnotationRecord]]:
    """
    Scène déterministe pour une graine donnée.

    Raises:
        TargetsDontFitError: Cibles impossibles à placer sans recouvrement
    """
    rng = Lcg64(spec.seed)
    gray = _terrain(spec, rng)

    min_side = PreprocessConfig.SCENE_MIN_TARGET_PX
    max_w = max(min_side,
                int(spec.width * PreprocessConfig.SCENE_MAX_TARGET_FRACTION))
    max_h = max(min_side,
                int(spec.height * PreprocessConfig.SCENE_MAX_TARGET_FRACTION))
    class_count = len(PreprocessConfig.DATASET_CLASSES)
    low, high = spec.palette.target

    placed = []
    annotations = []
    for index in range(spec.target_count):
        for _ in range(PreprocessConfig.SCENE_PLACEMENT_ATTEMPTS):
            w = rng.randint(min_side, max_w)
            h = rng.randint(min_side, max_h)
            box = (rng.randint(0, spec.width - w), rng.randint(
                0, spec.height - h), w, h)
            if not _overlaps(box, placed):
                break
        else:
            raise TargetsDontFitError(
                f"Scène {spec.seed}: cible {index + 1}/{spec.target_count} "
                f"non placée après {PreprocessConfig.SCENE_PLACEMENT_ATTEMPTS}"
                " essais")
        x, y, w, h = box
        placed.append(box)
        gray[y:y + h, x:x + w] = rng.randint(low, high)
        annotations.append(
            AnnotationRecord(class_id=rng.randbelow(class_count),
                             cx=(x + w / 2) / spec.width,
                             cy=(y + h / 2) / spec.height,
                             w=w / spec.width,
                             h=h / spec.height))

    pixels = np.repeat(gray.astype(np.uint8)[:, :, np.newaxis], 3, axis=2)
    return RgbImage(pixels), annotations


@dataclass(frozen=True)
class CompensationRecord:
    scene_seed: Optional[int]
    tint: str
    mode: str
    w_r: float
    w_g: float
    w_b: float
    clamped: bool
    delta_candidate: float
    delta_naive: float
    raw_w_r: float
    fallback: bool = False

    def as_row(self) -> dict:
        data = asdict(self)
        return {column: data[column] for column in PreprocessConfig.REPORT_COLUMNS}


def compensation_report(base: RgbImage,
                        t: TintSpec,
                        mode: FilterMode,
                        scene_seed: Optional[int] = None) -> CompensationRecord:
    """
    Écarts |moyenne(candidat) - moyenne(référence)| et
    |moyenne(naïf) - moyenne(référence)|, la référence étant la conversion
    par défaut de la scène non teintée.
    """
    if mode.tag not in (RED, BLUE):
        raise ValueError(f"compensation_report: mode {mode} non pris en charge")
    baseline_mean = gray_stats(convert(base, ConversionSpec.default()))[0]
    tinted = apply_tint(base, t)
    stats = stats_of(pooled_histogram(tinted))
    rule = red_filter_weights if mode.tag == RED else blue_filter_weights
    raw = rule(stats)
    spec = spec_for_mode(mode, stats)
    candidate_mean = gray_stats(convert(tinted, spec))[0]
    naive_mean = gray_stats(convert(tinted, ConversionSpec.default()))[0]
    w_r, w_g, w_b = spec.coefficients()
    return CompensationRecord(scene_seed=scene_seed,
                              tint=t.label,
                              mode=str(mode),
                              w_r=w_r,
                              w_g=w_g,
                              w_b=w_b,
                              clamped=spec.clamped,
                              delta_candidate=abs(candidate_mean -
                                                  baseline_mean),
                              delta_naive=abs(naive_mean - baseline_mean),
                              raw_w_r=raw.w_r,
                              fallback=spec.fallback)


def corpus_seeds(first_seed: int = 0,
                 count: int = PreprocessConfig.CORPUS_SIZE) -> List[int]:
    return list(range(first_seed, first_seed + count))


def run_corpus(seeds: Sequence[int],
               tint: TintSpec,
               mode: FilterMode,
               template: Optional[SceneSpec] = None,
               workers: Optional[int] = None) -> List[CompensationRecord]:
    """Un rapport par graine, trié par graine ; scènes réparties sur un pool."""
    template = template or SceneSpec()

    def _one(seed):
        base, _ = gen_scene(template.with_seed(seed))
        return compensation_report(base, tint, mode, scene_seed=seed)

    records = run_in_pool(list(seeds), _one, workers)
    records.sort(key=lambda r: r.scene_seed)
    log(f"Synth: corpus de {len(records)} scène(s), teinte {tint.label}, "
        f"mode {mode}",
        level="INFO")
    return records


def write_report_csv(records: Sequence[CompensationRecord], path) -> None:
    """CSV, flottants écrits avec repr() pour une relecture exacte."""
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=PreprocessConfig.REPORT_COLUMNS)
        writer.writeheader()
        for record in records:
            row = record.as_row()
            for key in ("w_r", "w_g", "w_b", "delta_candidate", "delta_naive"):
                row[key] = repr(float(row[key]))
            row["scene_seed"] = "" if row["scene_seed"] is None else row[
                "scene_seed"]
            row["clamped"] = "true" if row["clamped"] else "false"
            writer.writerow(row)
    log(f"Synth: rapport écrit dans {os.fspath(path)}", level="INFO")


def read_report_csv(path) -> List[dict]:
    """Relit un rapport ; les colonnes numériques sont reconverties."""
    rows = []
    with open(path, "r", newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        missing = set(PreprocessConfig.REPORT_COLUMNS) - set(
            reader.fieldnames or [])
        if missing:
            raise LumiprepError(
                f"Rapport {os.fspath(path)}: colonnes absentes {sorted(missing)}")
        for row in reader:
            rows.append({
                "scene_seed": int(row["scene_seed"]) if row["scene_seed"] else None,
                "tint": row["tint"],
                "mode": row["mode"],
                "w_r": float(row["w_r"]),
                "w_g": float(row["w_g"]),
                "w_b": float(row["w_b"]),
                "clamped": row["clamped"].strip().lower() == "true",
                "delta_candidate": float(row["delta_candidate"]),
                "delta_naive": float(row["delta_naive"]),
            })
    return rows


def compare_with_locked(records: Sequence[CompensationRecord],
                        locked_path) -> List[str]:
    """
    Compare un corpus à un rapport verrouillé ; renvoie la liste des écarts
    (vide si identique à l'octet près des valeurs relues).
    """
    locked = {row["scene_seed"]: row for row in read_report_csv(locked_path)}
    differences = []
    seen = set()
    for record in records:
        current = record.as_row()
        expected = locked.get(record.scene_seed)
        seen.add(record.scene_seed)
        if expected is None:
            differences.append(f"graine {record.scene_seed}: absente du rapport "
                               "verrouillé")
            continue
        for column in PreprocessConfig.REPORT_COLUMNS:
            if current[column] != expected[column]:
                differences.append(
                    f"graine {record.scene_seed}: {column} "
                    f"{current[column]!r} != {expected[column]!r}")
    for seed in sorted(set(locked) - seen, key=lambda s: (s is None, s or 0)):
        differences.append(f"graine {seed}: absente du corpus recalculé")
    if differences:
        log(f"Synth: {len(differences)} écart(s) avec {os.fspath(locked_path)}",
            level="WARNING")
    return differences


def write_scene_files(spec: SceneSpec,
                      out_dir,
                      tint: Optional[TintSpec] = None,
                      sidecar_mode: Optional[str] = None) -> str:
    """
    Écrit scene_<graine>.png, ses annotations .txt et, si demandé, un sidecar
    JSON avec l'élévation solaire associée au filtre visé.
    """
    out_dir = os.fspath(out_dir)
    os.makedirs(out_dir, exist_ok=True)
    img, annotations = gen_scene(spec)
    if tint is not None:
        img = apply_tint(img, tint)
    stem = os.path.join(out_dir,
                        f"{PreprocessConfig.SCENE_FILE_PREFIX}{spec.seed:06d}")
    save_rgb(img, stem + ".png")
    with open(stem + PreprocessConfig.ANNOTATION_EXTENSION,
              "w",
              encoding="utf-8",
              newline="\n") as f:
        f.write(format_annotations(annotations))
    if sidecar_mode is not None:
        elevation = PreprocessConfig.SCENE_SIDECAR_ELEVATION[sidecar_mode]
        with open(stem + PreprocessConfig.SIDECAR_EXTENSION,
                  "w",
                  encoding="utf-8") as f:
            json.dump({"sun_elevation_deg": elevation}, f)
    return stem + ".png"


def write_scene_set(seeds: Sequence[int],
                    out_dir,
                    template: Optional[SceneSpec] = None,
                    tint: Optional[TintSpec] = None,
                    sidecar_mode: Optional[str] = None) -> List[str]:
    """Écrit un jeu de scènes annotées et son classes.txt."""
    template = template or SceneSpec()
    os.makedirs(os.fspath(out_dir), exist_ok=True)
    write_class_names(PreprocessConfig.DATASET_CLASSES,
                      os.path.join(os.fspath(out_dir),
                                   PreprocessConfig.CLASSES_FILE))
    paths = [
        write_scene_files(template.with_seed(seed), out_dir, tint,
                          sidecar_mode) for seed in seeds
    ]
    log(f"Synth: {len(paths)} scène(s) écrites dans {os.fspath(out_dir)}",
        level="INFO")
    return paths
