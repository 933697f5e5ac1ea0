# -*- coding: utf-8 -*-
"""
Conversion RGB -> niveaux de gris pondérés.

out(x, y) = clamp(round(w_r*R + w_g*G + w_b*B), 0, 255), arrondi demi vers
l'infini, accumulation en double précision dans l'ordre r, g, b.

convert() est le chemin optimisé (numpy, par bandes de lignes) ;
convert_reference() est la boucle pixel par pixel qui lui sert d'oracle.
Les deux doivent rester identiques à l'octet près.
"""
import json
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Sequence

import numpy as np

from src.config.preprocess_config import PreprocessConfig
from src.config.runtime_config import runtime_config
from src.luminance.histogram import ChannelStats
from src.luminance.rounding import round_half_away
from src.luminance.weights import (WeightTriple, default_triple,
                                   normalized_default_triple,
                                   red_filter_weights, blue_filter_weights,
                                   normalize_clamp)
from src.raster.codec import load_rgb, save_gray
from src.raster.images import RgbImage, GrayImage
from src.utils.errors import (DegenerateWeightsError, LumiprepError,
                              OverwriteSourceError)
from src.utils.system_utils import log


class ConversionMode(str, Enum):
    DEFAULT = "default"
    WEIGHTED = "weighted"
    NORMALIZED_DEFAULT = "normalized_default"


@dataclass(frozen=True)
class ConversionSpec:
    """
    Choix de la conversion : défaut (somme 0.9), pondérée, ou défaut normalisé.

    fallback signale un retour à la conversion par défaut après des poids
    dégénérés.
    """
    mode: ConversionMode
    weights: Optional[WeightTriple] = None
    rounding: str = PreprocessConfig.ROUNDING_POLICY
    fallback: bool = False

    def __post_init__(self):
        if self.mode == ConversionMode.WEIGHTED and not isinstance(
                self.weights, WeightTriple):
            raise ValueError("ConversionSpec: mode pondéré sans WeightTriple")
        if self.rounding != PreprocessConfig.ROUNDING_POLICY:
            raise ValueError(
                f"ConversionSpec: politique d'arrondi inconnue {self.rounding}")

    @classmethod
    def default(cls, fallback=False):
        return cls(ConversionMode.DEFAULT, fallback=fallback)

    @classmethod
    def normalized_default(cls):
        return cls(ConversionMode.NORMALIZED_DEFAULT)

    @classmethod
    def weighted(cls, weights: WeightTriple):
        return cls(ConversionMode.WEIGHTED, weights)

    def coefficients(self):
        """(w_r, w_g, w_b) effectivement appliqués."""
        if self.mode == ConversionMode.DEFAULT:
            return default_triple().as_tuple()
        if self.mode == ConversionMode.NORMALIZED_DEFAULT:
            return normalized_default_triple().as_tuple()
        return self.weights.as_tuple()

    @property
    def clamped(self) -> bool:
        return bool(self.weights and self.weights.clamped)

    def as_dict(self) -> dict:
        w_r, w_g, w_b = self.coefficients()
        return {
            "mode": self.mode.value,
            "w_r": w_r,
            "w_g": w_g,
            "w_b": w_b,
            "clamped": self.clamped,
            "fallback": self.fallback,
        }


def convert(img: RgbImage, spec: ConversionSpec) -> GrayImage:
    """
    Conversion vectorisée par bandes de lignes, tampons float64 réutilisés.
    """
    w_r, w_g, w_b = spec.coefficients()
    src = img.array
    height, width = src.shape[:2]
    out = np.empty((height, width), dtype=np.uint8)

    band = min(PreprocessConfig.CONVERT_BAND_ROWS, height)
    acc_buf = np.empty((band, width), dtype=np.float64)
    tmp_buf = np.empty((band, width), dtype=np.float64)

    for y0 in range(0, height, band):
        y1 = min(height, y0 + band)
        rows = src[y0:y1]
        acc = acc_buf[:y1 - y0]
        tmp = tmp_buf[:y1 - y0]
        # Même ordre d'opérations que la boucle de référence
        np.multiply(rows[:, :, 0], w_r, out=acc, dtype=np.float64)
        np.multiply(rows[:, :, 1], w_g, out=tmp, dtype=np.float64)
        np.add(acc, tmp, out=acc)
        np.multiply(rows[:, :, 2], w_b, out=tmp, dtype=np.float64)
        np.add(acc, tmp, out=acc)
        # Arrondi demi vers l'infini : copysign(floor(|x| + 0.5), x)
        np.abs(acc, out=tmp)
        np.add(tmp, 0.5, out=tmp)
        np.floor(tmp, out=tmp)
        np.copysign(tmp, acc, out=acc)
        np.clip(acc, 0.0, 255.0, out=acc)
        out[y0:y1] = acc

    return GrayImage(out)


def convert_reference(img: RgbImage, spec: ConversionSpec) -> GrayImage:
    """
    Boucle directe pixel par pixel, sans regroupement ni réordonnancement.
    Oracle de convert().
    """
    w_r, w_g, w_b = spec.coefficients()
    rows = img.array.tolist()
    out = []
    for y in range(img.height):
        out_row = []
        for x in range(img.width):
            r, g, b = rows[y][x]
            value = w_r * r + w_g * g + w_b * b
            rounded = round_half_away(value)
            out_row.append(min(255, max(0, rounded)))
        out.append(out_row)
    return GrayImage(np.array(out, dtype=np.uint8))


def filter_preview(img: RgbImage, stats: ChannelStats) -> GrayImage:
    """
    Bandeau [défaut | filtre rouge | filtre bleu] côte à côte (largeur x3).
    """
    panels = [convert(img, ConversionSpec.default())]
    for rule in (red_filter_weights, blue_filter_weights):
        try:
            spec = ConversionSpec.weighted(normalize_clamp(rule(stats)))
        except DegenerateWeightsError:
            spec = ConversionSpec.default(fallback=True)
        panels.append(convert(img, spec))
    return GrayImage(np.hstack([p.array for p in panels]))


def measure_throughput(img: RgbImage, spec: ConversionSpec,
                       repeats: int = 5) -> float:
    """
    Débit de convert() en mégapixels par seconde (meilleure des répétitions).
    """
    best = float("inf")
    for _ in range(max(1, repeats)):
        start = time.perf_counter()
        convert(img, spec)
        best = min(best, time.perf_counter() - start)
    megapixels = img.width * img.height / 1e6
    rate = megapixels / best if best > 0 else float("inf")
    log(f"Conversion: {rate:.1f} Mpx/s sur {img.width}x{img.height}",
        level="INFO")
    return rate


# --- Traitement par lot ---

SpecProvider = Callable[[str, RgbImage], ConversionSpec]


@dataclass
class ConversionResult:
    """Résultat d'une conversion de fichier (succès ou erreur)."""
    source_path: str
    output_path: Optional[str] = None
    status: str = "success"
    error: Optional[str] = None
    spec: Optional[dict] = None
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "success"

    def as_dict(self) -> dict:
        record = {
            "source_path": self.source_path,
            "output_path": self.output_path,
            "status": self.status,
            "error": self.error,
            "spec": self.spec,
        }
        record.update(self.extra)
        return record


def output_name(source_path: str, output_format: str) -> str:
    """Nom de sortie : même radical, extension .pgm ou .png."""
    stem = os.path.splitext(os.path.basename(source_path))[0]
    return f"{stem}.{output_format}"


def ensure_no_overwrite(sources: Sequence, targets: Sequence) -> None:
    """
    Vérifie qu'aucune cible ne résout vers l'un des fichiers sources.

    Raises:
        OverwriteSourceError: Si une cible écraserait une source
    """
    resolved = {os.path.realpath(os.fspath(s)) for s in sources}
    for target in targets:
        if os.path.realpath(os.fspath(target)) in resolved:
            raise OverwriteSourceError(
                f"La sortie {os.fspath(target)} écraserait une source")


def resolve_workers(workers: Optional[int]) -> int:
    if workers is None:
        return runtime_config.max_workers
    return max(1, int(workers))


def run_in_pool(items: Sequence, task: Callable, workers: Optional[int]):
    """
    Exécute task(item) sur un pool de threads et collecte les résultats dans
    une liste protégée par un verrou. L'ordre de collecte n'est pas garanti :
    l'appelant trie.
    """
    results = []
    results_lock = threading.Lock()

    def _run(item):
        outcome = task(item)
        with results_lock:
            results.append(outcome)

    worker_count = min(resolve_workers(workers), max(1, len(items)))
    if worker_count == 1:
        for item in items:
            _run(item)
    else:
        with ThreadPoolExecutor(max_workers=worker_count,
                                thread_name_prefix="ConvertWorker") as pool:
            # list() propage une éventuelle exception non prévue
            list(pool.map(_run, items))
    return results


def convert_batch(paths: Sequence,
                  spec_provider: SpecProvider,
                  out_dir,
                  output_format: Optional[str] = None,
                  workers: Optional[int] = None) -> List[ConversionResult]:
    """
    Convertit chaque image et l'écrit dans out_dir sous <radical>.pgm/.png.

    Une erreur sur un fichier est enregistrée sans interrompre le lot. Les
    résultats sont triés par chemin source : l'ordre d'exécution n'a aucun
    effet sur la sortie.

    Raises:
        OverwriteSourceError: Si une sortie écraserait une image source
    """
    out_dir = os.fspath(out_dir)
    fmt = (output_format or runtime_config.output_format).lower()
    os.makedirs(out_dir, exist_ok=True)

    ordered = sorted(os.fspath(p) for p in paths)
    seen_names = {}
    jobs = []
    duplicates = []
    for path in ordered:
        name = output_name(path, fmt)
        if name in seen_names:
            duplicates.append(
                ConversionResult(
                    path,
                    status="error",
                    error=f"Radical déjà utilisé par {seen_names[name]}"))
        else:
            seen_names[name] = path
            jobs.append((path, os.path.join(out_dir, name)))
    ensure_no_overwrite(ordered, [target for _, target in jobs])

    def _convert_one(job):
        source, target = job
        try:
            img = load_rgb(source)
            spec = spec_provider(source, img)
            save_gray(convert(img, spec), target)
            log(f"Conversion: {source} -> {target} ({spec.mode.value})",
                level="DEBUG")
            return ConversionResult(source, target, spec=spec.as_dict())
        except (LumiprepError, OSError, ValueError) as e:
            log(f"Conversion: Erreur sur {source}: {e}", level="ERROR")
            return ConversionResult(source, status="error", error=str(e))

    results = run_in_pool(jobs, _convert_one, workers) + duplicates
    results.sort(key=lambda r: r.source_path)
    failures = sum(1 for r in results if not r.ok)
    log(f"Conversion: {len(results) - failures} image(s) convertie(s), "
        f"{failures} erreur(s)",
        level="INFO")
    return results


def write_conversion_summary(results: Sequence[ConversionResult],
                             path) -> None:
    """Résumé JSON lines, un enregistrement par entrée."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for result in results:
            f.write(json.dumps(result.as_dict(), sort_keys=True) + "\n")
