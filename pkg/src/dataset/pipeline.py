# -*- coding: utf-8 -*-
"""
Prétraitement d'un jeu de données de détection : conversion de chaque image
selon ses métadonnées, copie à l'identique des annotations YOLO, manifeste.

Les dimensions sont conservées par la conversion : les boîtes normalisées
restent valables sans réécriture.
"""
import contextlib
import os
import shutil
from datetime import datetime, timezone
from typing import List, Optional

from src.config.preprocess_config import PreprocessConfig
from src.config.runtime_config import runtime_config
from src.dataset.annotations import load_class_names, parse_annotation_line
from src.dataset.manifest import (DEFAULT_WEIGHTS_MARKER, STATUS_ERROR,
                                  ManifestRecord, ManifestWriter)
from src.luminance.acquisition import (AcquisitionMeta, FilterMode,
                                       load_sidecar, mode_for_elevation,
                                       resolve_elevation, spec_for_mode)
from src.luminance.conversion import (ConversionMode, ConversionSpec, convert,
                                      output_name, run_in_pool)
from src.luminance.histogram import pooled_histogram, stats_of
from src.luminance.solar import solar_position
from src.raster.codec import load_rgb, save_gray
from src.utils.errors import (AnnotationFormatError, LumiprepError,
                              OverwriteSourceError)
from src.utils.system_utils import log

MODE_AUTO = "auto"
MODE_NORMALIZED = "normalized"
FORCED_MODES = {
    "red": FilterMode.red(),
    "blue": FilterMode.blue(),
    "default": FilterMode.night(),
}


def list_images(image_dir) -> List[str]:
    """Images PNG / PPM du dossier (non récursif), triées."""
    image_dir = os.fspath(image_dir)
    names = sorted(
        name for name in os.listdir(image_dir)
        if os.path.splitext(name)[1].lower() in
        PreprocessConfig.RGB_INPUT_EXTENSIONS and
        os.path.isfile(os.path.join(image_dir, name)))
    return [os.path.join(image_dir, name) for name in names]


def _companion(path: str, extension: str) -> str:
    return os.path.splitext(path)[0] + extension


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class DatasetProcessor:
    """
    Traitement d'un dossier d'images vers un dossier de sortie.
    """

    def __init__(self,
                 image_dir,
                 out_dir,
                 meta: Optional[AcquisitionMeta] = None,
                 mode: str = MODE_AUTO,
                 output_format: Optional[str] = None,
                 workers: Optional[int] = None):
        self.image_dir = os.fspath(image_dir)
        self.out_dir = os.fspath(out_dir)
        self.global_meta = meta
        self.mode = mode
        self.output_format = (output_format or
                              runtime_config.output_format).lower()
        self.workers = workers
        self.class_count = None
        self.writer = ManifestWriter()

        if mode != MODE_AUTO and mode != MODE_NORMALIZED and \
                mode not in FORCED_MODES:
            raise ValueError(f"Mode inconnu: {mode}")

    def run(self) -> List[ManifestRecord]:
        """
        Traite toutes les images et écrit manifest.jsonl.

        Raises:
            OverwriteSourceError: Si le dossier de sortie est celui des images
        """
        if os.path.realpath(self.image_dir) == os.path.realpath(self.out_dir):
            raise OverwriteSourceError(
                f"Sortie {self.out_dir} identique au dossier source : les "
                "images et annotations seraient écrasées")
        os.makedirs(self.out_dir, exist_ok=True)
        self._copy_classes()

        images = list_images(self.image_dir)
        log(f"Pipeline: {len(images)} image(s) dans {self.image_dir}",
            level="INFO")

        jobs = []
        seen = {}
        for path in images:
            name = output_name(path, self.output_format)
            if name in seen:
                self.writer.add(
                    ManifestRecord(source_path=path,
                                   status=STATUS_ERROR,
                                   error=f"Radical déjà utilisé par {seen[name]}",
                                   processed_at=_now()))
                continue
            seen[name] = path
            jobs.append(path)

        run_in_pool(jobs, self._process_one, self.workers)
        records = self.writer.write(
            os.path.join(self.out_dir, PreprocessConfig.MANIFEST_FILE))

        failures = sum(1 for r in records if not r.ok)
        log(f"Pipeline: {len(records) - failures} succès, {failures} erreur(s)",
            level="INFO")
        return records

    def _copy_classes(self):
        source = os.path.join(self.image_dir, PreprocessConfig.CLASSES_FILE)
        if not os.path.isfile(source):
            log("Pipeline: pas de classes.txt, identifiants de classe non "
                "bornés",
                level="DEBUG")
            return
        self.class_count = len(load_class_names(source))
        shutil.copyfile(
            source, os.path.join(self.out_dir, PreprocessConfig.CLASSES_FILE))

    def _meta_for(self, path: str) -> Optional[AcquisitionMeta]:
        sidecar = _companion(path, PreprocessConfig.SIDECAR_EXTENSION)
        if os.path.isfile(sidecar):
            return load_sidecar(sidecar)
        return self.global_meta

    def _spec_for(self, path, stats, fields):
        """Spécification de conversion ; renseigne mode/élévation dans fields."""
        if self.mode == MODE_NORMALIZED:
            fields["mode"] = MODE_NORMALIZED
            return ConversionSpec.normalized_default()
        if self.mode in FORCED_MODES:
            mode = FORCED_MODES[self.mode]
        else:
            meta = self._meta_for(path)
            if meta is None:
                meta = AcquisitionMeta()
            elevation = resolve_elevation(meta)
            fields["elevation_deg"] = elevation
            if meta.sun_elevation_deg is None:
                fields["azimuth_deg"] = solar_position(
                    meta.timestamp_utc, meta.latitude_deg,
                    meta.longitude_deg)[1]
            mode = mode_for_elevation(elevation)
        fields["mode"] = str(mode)
        return spec_for_mode(mode, stats)

    def _copy_annotation(self, path, fields, warnings):
        source = _companion(path, PreprocessConfig.ANNOTATION_EXTENSION)
        if not os.path.isfile(source):
            log(f"Pipeline: annotation absente pour {path}", level="WARNING")
            warnings.append("annotation absente")
            return
        target = os.path.join(
            self.out_dir,
            os.path.basename(source))
        shutil.copyfile(source, target)
        fields["annotation_path"] = target

        with open(source, "r", encoding="utf-8") as f:
            lines = [line for line in f.read().splitlines() if line.strip()]
        for number, line in enumerate(lines, 1):
            try:
                record = parse_annotation_line(line, self.class_count)
            except AnnotationFormatError as e:
                warnings.append(f"annotation ligne {number}: {e}")
                continue
            if fields.get("class_id") is None:
                fields["class_id"] = record.class_id

    def _process_one(self, path):
        fields = {}
        warnings = []
        written = []
        try:
            img = load_rgb(path)
            stats = stats_of(pooled_histogram(img))
            spec = self._spec_for(path, stats, fields)
            target = os.path.join(self.out_dir,
                                  output_name(path, self.output_format))
            save_gray(convert(img, spec), target)
            written.append(target)
            self._copy_annotation(path, fields, warnings)

            weights = (DEFAULT_WEIGHTS_MARKER
                       if spec.mode == ConversionMode.DEFAULT else
                       dict(zip(("w_r", "w_g", "w_b"), spec.coefficients()),
                            clamped=spec.clamped))
            record = ManifestRecord(source_path=path,
                                    output_path=target,
                                    weights=weights,
                                    stats=stats.as_dict(),
                                    clamped=spec.clamped,
                                    fallback=spec.fallback,
                                    warnings=warnings,
                                    processed_at=_now(),
                                    **fields)
        except (LumiprepError, OSError, ValueError) as e:
            log(f"Pipeline: Erreur sur {path}: {e}", level="ERROR")
            # Pas de sortie orpheline pour un enregistrement en erreur
            written.append(fields.pop("annotation_path", None))
            for output in filter(None, written):
                with contextlib.suppress(OSError):
                    os.remove(output)
            record = ManifestRecord(source_path=path,
                                    status=STATUS_ERROR,
                                    error=str(e),
                                    warnings=warnings,
                                    processed_at=_now(),
                                    **fields)
        self.writer.add(record)


def process_dataset(image_dir,
                    out_dir,
                    meta: Optional[AcquisitionMeta] = None,
                    mode: str = MODE_AUTO,
                    output_format: Optional[str] = None,
                    workers: Optional[int] = None) -> List[ManifestRecord]:
    """
    Convertit un dossier d'images annotées et écrit le manifeste.

    Les sidecars <radical>.json l'emportent sur les métadonnées globales.
    Une erreur sur une image est consignée dans le manifeste (status=error)
    sans interrompre le lot ; une annotation absente n'est qu'un avertissement.
    """
    return DatasetProcessor(image_dir, out_dir, meta, mode, output_format,
                            workers).run()
