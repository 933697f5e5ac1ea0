# -*- coding: utf-8 -*-
"""
Partition train/test déterministe et listes de fichiers darknet.
"""
import math
import os
from collections import OrderedDict
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from src.config.preprocess_config import PreprocessConfig
from src.dataset.manifest import (SPLIT_TEST, SPLIT_TRAIN, ManifestRecord,
                                  sort_records)
from src.dataset.rng import Lcg64
from src.utils.errors import (ClassUnknownError, EmptyManifestError,
                              EmptySplitError, InvalidSplitSpecError,
                              UnsplitManifestError)
from src.utils.system_utils import log


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = PreprocessConfig.DEFAULT_TRAIN_FRACTION
    seed: int = 0
    stratify_by_class: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.train_fraction) and
                0.0 < self.train_fraction < 1.0):
            raise InvalidSplitSpecError(
                f"Fraction d'entraînement {self.train_fraction} hors de ]0, 1[")


def train_count(n: int, fraction: float) -> int:
    """Nombre d'éléments d'entraînement : n * fraction arrondi au plus proche."""
    return int(math.floor(n * fraction + 0.5))


def _shuffled(records: List[ManifestRecord], rng: Lcg64) -> List[ManifestRecord]:
    ordered = sort_records(records)
    rng.shuffle(ordered)
    return ordered


def split_dataset(manifest: Sequence[ManifestRecord],
                  spec: SplitSpec) -> List[ManifestRecord]:
    """
    Étiquette chaque enregistrement réussi en train ou test.

    round(N * fraction) enregistrements en train (par classe si stratifié),
    mélange Fisher-Yates par Lcg64(seed) sur l'ordre des chemins source. Les
    enregistrements en erreur ne sont pas étiquetés.

    Raises:
        EmptyManifestError, ClassUnknownError
    """
    successes = [r for r in manifest if r.ok]
    if not successes:
        raise EmptyManifestError("Manifeste sans image convertie")

    rng = Lcg64(spec.seed)
    labels: Dict[str, str] = {}

    if spec.stratify_by_class:
        unknown = [r.source_path for r in successes if r.class_id is None]
        if unknown:
            raise ClassUnknownError(
                f"{len(unknown)} image(s) sans classe, ex. {unknown[0]}")
        groups: Dict[int, List[ManifestRecord]] = {}
        for record in successes:
            groups.setdefault(record.class_id, []).append(record)
        partitions = [groups[class_id] for class_id in sorted(groups)]
    else:
        partitions = [successes]

    for group in partitions:
        ordered = _shuffled(group, rng)
        k = train_count(len(ordered), spec.train_fraction)
        for index, record in enumerate(ordered):
            labels[record.source_path] = SPLIT_TRAIN if index < k else SPLIT_TEST

    result = [
        r.with_split(labels[r.source_path]) if r.ok else r.with_split(None)
        for r in sort_records(manifest)
    ]
    n_train = sum(1 for r in result if r.split == SPLIT_TRAIN)
    log(f"Split: {n_train} train / {len(successes) - n_train} test "
        f"(fraction {spec.train_fraction}, graine {spec.seed}"
        f"{', stratifié' if spec.stratify_by_class else ''})",
        level="INFO")
    return result


def emit_filelists(manifest: Sequence[ManifestRecord],
                   out_dir) -> Tuple[str, str]:
    """
    Écrit train.txt et test.txt (chemins de sortie tels que stockés).

    Raises:
        UnsplitManifestError: Enregistrement réussi sans étiquette
        EmptySplitError: Partition train ou test vide
    """
    successes = sort_records(r for r in manifest if r.ok)
    unsplit = [r.source_path for r in successes if r.split is None]
    if unsplit or not successes:
        raise UnsplitManifestError(
            f"Manifeste non partitionné ({len(unsplit)} image(s) sans split)")
    train = [r.output_path for r in successes if r.split == SPLIT_TRAIN]
    test = [r.output_path for r in successes if r.split == SPLIT_TEST]
    if not train or not test:
        raise EmptySplitError(
            f"Partition vide : {len(train)} train / {len(test)} test")

    out_dir = os.fspath(out_dir)
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for name, entries in ((PreprocessConfig.TRAIN_LIST_FILE, train),
                          (PreprocessConfig.TEST_LIST_FILE, test)):
        path = os.path.join(out_dir, name)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for entry in entries:
                f.write(f"{entry}\n")
        paths.append(path)
    log(f"Split: {len(train)} / {len(test)} chemins écrits dans {out_dir}",
        level="INFO")
    return paths[0], paths[1]


def split_summary(manifest: Sequence[ManifestRecord]) -> "OrderedDict":
    """
    Effectifs train/test par classe : {class_id: {"train": n, "test": m}}.
    Les images sans classe sont regroupées sous None.
    """
    summary: Dict = {}
    for record in manifest:
        if not record.ok or record.split is None:
            continue
        counts = summary.setdefault(record.class_id, {
            SPLIT_TRAIN: 0,
            SPLIT_TEST: 0
        })
        counts[record.split] += 1
    ordered = OrderedDict()
    for class_id in sorted(summary, key=lambda c: (c is None, c or 0)):
        ordered[class_id] = summary[class_id]
    return ordered
