# -*- coding: utf-8 -*-
"""
Annotations au format YOLO : « class_id cx cy w h », une boîte par ligne,
géométrie normalisée sur [0, 1].
"""
import os
from dataclasses import dataclass
from typing import List, Optional

from src.utils.errors import AnnotationFormatError
from src.utils.system_utils import log


@dataclass(frozen=True)
class AnnotationRecord:
    class_id: int
    cx: float
    cy: float
    w: float
    h: float

    def __post_init__(self):
        if self.class_id < 0:
            raise AnnotationFormatError(f"class_id négatif: {self.class_id}")
        for name in ("cx", "cy", "w", "h"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise AnnotationFormatError(
                    f"{name}={value} hors de [0, 1]")

    def to_line(self) -> str:
        return (f"{self.class_id} {self.cx:.6f} {self.cy:.6f} "
                f"{self.w:.6f} {self.h:.6f}")


def parse_annotation_line(line: str,
                          class_count: Optional[int] = None
                          ) -> AnnotationRecord:
    """
    Analyse une ligne YOLO.

    Raises:
        AnnotationFormatError
    """
    parts = line.split()
    if len(parts) != 5:
        raise AnnotationFormatError(f"5 champs attendus: {line!r}")
    try:
        class_id = int(parts[0])
        cx, cy, w, h = (float(p) for p in parts[1:])
    except ValueError:
        raise AnnotationFormatError(f"Valeurs non numériques: {line!r}")
    record = AnnotationRecord(class_id, cx, cy, w, h)
    if class_count is not None and class_id >= class_count:
        raise AnnotationFormatError(
            f"class_id {class_id} >= nombre de classes ({class_count})")
    return record


def parse_annotations(text: str,
                      class_count: Optional[int] = None
                      ) -> List[AnnotationRecord]:
    """Analyse un fichier d'annotations complet (lignes vides ignorées)."""
    return [
        parse_annotation_line(line, class_count)
        for line in text.splitlines() if line.strip()
    ]


def format_annotations(records: List[AnnotationRecord]) -> str:
    return "".join(record.to_line() + "\n" for record in records)


def load_class_names(path) -> List[str]:
    """Lit classes.txt : un nom par ligne non vide."""
    with open(path, "r", encoding="utf-8") as f:
        names = [line.strip() for line in f if line.strip()]
    log(f"Annotations: {len(names)} classe(s) lues depuis {os.fspath(path)}",
        level="DEBUG")
    return names


def write_class_names(names: List[str], path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for name in names:
            f.write(f"{name}\n")
