# -*- coding: utf-8 -*-
"""
Manifeste JSON lines : un enregistrement par image traitée.
"""
import json
import os
import threading
from dataclasses import asdict, dataclass, field, replace
from typing import List, Optional

from src.utils.errors import LumiprepError
from src.utils.system_utils import log

STATUS_SUCCESS = "success"
STATUS_ERROR = "error"
SPLIT_TRAIN = "train"
SPLIT_TEST = "test"
DEFAULT_WEIGHTS_MARKER = "default"
# Champs horodatés, exclus des comparaisons de reproductibilité
TIMESTAMP_FIELDS = ("processed_at", )


@dataclass(frozen=True)
class ManifestRecord:
    source_path: str
    output_path: Optional[str] = None
    status: str = STATUS_SUCCESS
    error: Optional[str] = None
    mode: Optional[str] = None
    weights: object = None  # dict w_r/w_g/w_b/clamped ou "default"
    stats: Optional[dict] = None
    clamped: bool = False
    fallback: bool = False
    split: Optional[str] = None
    class_id: Optional[int] = None
    annotation_path: Optional[str] = None
    elevation_deg: Optional[float] = None
    azimuth_deg: Optional[float] = None
    warnings: List[str] = field(default_factory=list)
    processed_at: Optional[str] = None

    def __post_init__(self):
        if self.status not in (STATUS_SUCCESS, STATUS_ERROR):
            raise ValueError(f"ManifestRecord: statut inconnu {self.status}")
        if self.split not in (None, SPLIT_TRAIN, SPLIT_TEST):
            raise ValueError(f"ManifestRecord: split inconnu {self.split}")

    @property
    def ok(self) -> bool:
        return self.status == STATUS_SUCCESS

    def with_split(self, split: Optional[str]) -> "ManifestRecord":
        return replace(self, split=split)

    def to_dict(self, include_timestamps: bool = True) -> dict:
        data = asdict(self)
        if not include_timestamps:
            for key in TIMESTAMP_FIELDS:
                data.pop(key, None)
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: dict) -> "ManifestRecord":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            log(f"Manifest: champs ignorés {sorted(unknown)}", level="DEBUG")
        values = {k: v for k, v in data.items() if k in known}
        if values.get("warnings") is None:
            values["warnings"] = []
        return cls(**values)


def sort_records(records) -> List[ManifestRecord]:
    return sorted(records, key=lambda r: r.source_path)


def write_manifest(records, path) -> None:
    """Écrit le manifeste trié par chemin source."""
    path = os.fspath(path)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for record in sort_records(records):
            f.write(record.to_json() + "\n")
    log(f"Manifest: {len(records)} enregistrement(s) écrits dans {path}",
        level="INFO")


def read_manifest(path) -> List[ManifestRecord]:
    """
    Lit un manifeste JSON lines.

    Raises:
        LumiprepError: Ligne illisible
    """
    path = os.fspath(path)
    records = []
    with open(path, "r", encoding="utf-8") as f:
        for number, line in enumerate(f, 1):
            if not line.strip():
                continue
            try:
                records.append(ManifestRecord.from_dict(json.loads(line)))
            except (json.JSONDecodeError, TypeError, ValueError) as e:
                raise LumiprepError(f"{path}:{number}: ligne invalide ({e})")
    return records


class ManifestWriter:
    """
    Collecteur d'enregistrements partagé par les workers ; un seul verrou
    sérialise les ajouts.
    """

    def __init__(self):
        self._records: List[ManifestRecord] = []
        self._lock = threading.Lock()

    def add(self, record: ManifestRecord) -> None:
        with self._lock:
            self._records.append(record)

    def records(self) -> List[ManifestRecord]:
        with self._lock:
            return sort_records(self._records)

    def write(self, path) -> List[ManifestRecord]:
        records = self.records()
        write_manifest(records, path)
        return records
