# -*- coding: utf-8 -*-
"""
Fichiers .cfg darknet : lecture, modification ciblée et réécriture.

Le document garde les lignes brutes. Seules les lignes des clés modifiées
changent ; commentaires, lignes vides, clés inconnues, espaces et fins de
ligne CRLF restent intacts.
"""
import re
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple

from src.config.preprocess_config import PreprocessConfig
from src.utils.errors import (MissingChannelsKeyError, MissingKeyError,
                              MissingNetSectionError)
from src.utils.system_utils import log

TRAINING_PRESET = dict(PreprocessConfig.TRAINING_PRESET)

_SECTION_RE = re.compile(r"^\s*\[([^\]]*)\]\s*$")
_KEY_RE = re.compile(r"^(\s*)([^=#;\s]+)(\s*)=(\s*)(.*?)(\s*)$")
_COMMENT_PREFIXES = ("#", ";")


@dataclass(frozen=True)
class CfgSection:
    name: str
    header_index: int
    end: int  # exclusif : en-tête suivant ou fin du fichier


@dataclass(frozen=True)
class CfgDocument:
    lines: Tuple[str, ...]
    sections: Tuple[CfgSection, ...]

    def section_named(self, *names) -> List[CfgSection]:
        wanted = {name.lower() for name in names}
        return [s for s in self.sections if s.name.lower() in wanted]

    def with_lines(self, lines) -> "CfgDocument":
        # Les éditions ne touchent jamais un en-tête : l'index reste valable
        return replace(self, lines=tuple(lines))


def _split_eol(line: str) -> Tuple[str, str]:
    if line.endswith("\r"):
        return line[:-1], "\r"
    return line, ""


def _index_sections(lines) -> Tuple[CfgSection, ...]:
    headers = []
    for index, line in enumerate(lines):
        match = _SECTION_RE.match(_split_eol(line)[0])
        if match:
            headers.append((match.group(1).strip(), index))
    sections = []
    for position, (name, index) in enumerate(headers):
        end = headers[position + 1][1] if position + 1 < len(headers) else len(
            lines)
        sections.append(CfgSection(name, index, end))
    return tuple(sections)


def parse(text: str) -> CfgDocument:
    """Découpe le texte en lignes (séparateur '\\n') et indexe les sections."""
    lines = tuple(text.split("\n"))
    return CfgDocument(lines, _index_sections(lines))


def serialize(doc: CfgDocument) -> str:
    return "\n".join(doc.lines)


def load_cfg(path) -> CfgDocument:
    with open(path, "r", encoding="utf-8", newline="") as f:
        return parse(f.read())


def save_cfg(doc: CfgDocument, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(serialize(doc))


def _match_key(line: str):
    body, _ = _split_eol(line)
    if body.lstrip().startswith(_COMMENT_PREFIXES):
        return None
    return _KEY_RE.match(body)


def _net_section(doc: CfgDocument) -> CfgSection:
    candidates = doc.section_named(*PreprocessConfig.NET_SECTION_NAMES)
    if not candidates:
        raise MissingNetSectionError("Section [net] absente du fichier cfg")
    if len(candidates) > 1:
        log(f"CfgDocument: {len(candidates)} sections [net], seule la "
            f"première (ligne {candidates[0].header_index + 1}) est modifiée",
            level="WARNING")
    return candidates[0]


def _key_index(doc: CfgDocument, section: CfgSection,
               key: str) -> Optional[int]:
    for index in range(section.header_index + 1, section.end):
        match = _match_key(doc.lines[index])
        if match and match.group(2) == key:
            return index
    return None


def _rewrite(line: str, value: str) -> str:
    """Remplace la valeur en gardant indentation, espaces autour de '=' et EOL."""
    body, eol = _split_eol(line)
    match = _KEY_RE.match(body)
    indent, key, before, after, old, trailing = match.groups()
    if old == value:
        return line
    return f"{indent}{key}{before}={after}{value}{trailing}{eol}"


def _apply(doc: CfgDocument, updates: Dict[int, str], what: str) -> CfgDocument:
    lines = list(doc.lines)
    changed = 0
    for index, value in updates.items():
        new_line = _rewrite(lines[index], value)
        if new_line != lines[index]:
            lines[index] = new_line
            changed += 1
    if not changed:
        log(f"CfgDocument: {what} déjà appliqué, aucune modification",
            level="INFO")
        return doc
    log(f"CfgDocument: {what} -> {changed} ligne(s) modifiée(s)", level="INFO")
    return doc.with_lines(lines)


def set_channels(doc: CfgDocument, n: int) -> CfgDocument:
    """
    Fixe channels=<n> dans la première section [net].

    Raises:
        MissingNetSectionError, MissingChannelsKeyError
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError(f"Nombre de canaux invalide: {n!r}")
    section = _net_section(doc)
    index = _key_index(doc, section, "channels")
    if index is None:
        raise MissingChannelsKeyError("Clé channels= absente de [net]")
    return _apply(doc, {index: str(n)}, f"channels={n}")


def set_training_params(doc: CfgDocument,
                        params: Optional[Dict[str, object]] = None
                        ) -> CfgDocument:
    """
    Réécrit les hyperparamètres d'entraînement de [net].

    params est un sous-ensemble de learning_rate, momentum, max_batches,
    steps, batch, subdivisions ; par défaut TRAINING_PRESET.

    Raises:
        MissingNetSectionError
        MissingKeyError: Toutes les clés absentes, listées ensemble
    """
    params = dict(TRAINING_PRESET if params is None else params)
    unknown = sorted(set(params) - set(PreprocessConfig.TRAINING_KEYS))
    if unknown:
        raise ValueError(f"Paramètres d'entraînement inconnus: {unknown}")

    section = _net_section(doc)
    indices = {}
    missing = []
    for key in PreprocessConfig.TRAINING_KEYS:
        if key not in params:
            continue
        index = _key_index(doc, section, key)
        if index is None:
            missing.append(key)
        else:
            indices[index] = _format_value(params[key])
    if missing:
        raise MissingKeyError(missing)
    return _apply(doc, indices, "paramètres d'entraînement")


def _format_value(value) -> str:
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value)
    return str(value)


def changed_lines(before: CfgDocument, after: CfgDocument) -> List[int]:
    """Indices (base 0) des lignes qui diffèrent entre deux documents."""
    length = max(len(before.lines), len(after.lines))
    return [
        index for index in range(length)
        if index >= len(before.lines) or index >= len(after.lines) or
        before.lines[index] != after.lines[index]
    ]
