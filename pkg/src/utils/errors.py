# -*- coding: utf-8 -*-
"""
Exceptions du préprocesseur.

Toutes dérivent de LumiprepError ; les erreurs de domaine de valeurs dérivent
aussi de ValueError.
"""
from typing import List


class LumiprepError(Exception):
    """Erreur de base de lumiprep."""


# --- Raster ---
class RasterNotFoundError(LumiprepError, FileNotFoundError):
    """Fichier image introuvable."""


class UnsupportedFormatError(LumiprepError):
    """Format non pris en charge (non PNG/PNM, 16 bits, alpha, canaux)."""


class CorruptDataError(LumiprepError):
    """Fichier illisible ou tronqué."""


class UnsupportedExtensionError(LumiprepError, ValueError):
    """Extension de sortie inconnue."""


class RasterIoError(LumiprepError, OSError):
    """Échec d'écriture d'une image."""


class OverwriteSourceError(LumiprepError, ValueError):
    """Une sortie désigne un fichier source."""


# --- Histogrammes / statistiques ---
class EmptyHistogramError(LumiprepError, ValueError):
    """Histogramme sans aucun pixel."""


class EmptyImageError(LumiprepError, ValueError):
    """Image vide."""


# --- Poids ---
class DegenerateWeightsError(LumiprepError, ValueError):
    """Tous les poids bruts sont <= 0 : retour à la conversion par défaut."""


class WeightSumError(LumiprepError, ValueError):
    """Triplet dont la somme n'est pas 1."""


class OutOfRangeTError(LumiprepError, ValueError):
    """Paramètre de mélange hors de [0, 1]."""


# --- Acquisition ---
class InsufficientMetadataError(LumiprepError, ValueError):
    """Ni élévation, ni (horodatage, latitude, longitude)."""


class OutOfRangeCoordinatesError(LumiprepError, ValueError):
    """Latitude, longitude ou élévation hors bornes."""


class UnsupportedEpochError(LumiprepError, ValueError):
    """Horodatage hors de la période 1950-2100."""


# --- Dataset ---
class AnnotationFormatError(LumiprepError, ValueError):
    """Ligne d'annotation YOLO invalide."""


class EmptyManifestError(LumiprepError, ValueError):
    """Manifeste sans enregistrement exploitable."""


class ClassUnknownError(LumiprepError, ValueError):
    """Stratification demandée sans classe connue."""


class UnsplitManifestError(LumiprepError, ValueError):
    """Manifeste sans étiquettes train/test."""


class EmptySplitError(LumiprepError, ValueError):
    """Une des deux partitions est vide."""


class InvalidSplitSpecError(LumiprepError, ValueError):
    """Fraction d'entraînement hors de ]0, 1[."""


# --- Darknet ---
class MissingNetSectionError(LumiprepError, KeyError):
    """Section [net] absente."""


class MissingChannelsKeyError(LumiprepError, KeyError):
    """Clé channels= absente de [net]."""


class MissingKeyError(LumiprepError, KeyError):
    """Une ou plusieurs clés absentes de [net]."""

    def __init__(self, missing_keys: List[str]):
        self.missing_keys = list(missing_keys)
        super().__init__(
            f"Clés absentes de [net]: {', '.join(self.missing_keys)}")

    def __str__(self):
        return self.args[0]


# --- Synthèse ---
class InvalidTintError(LumiprepError, ValueError):
    """Gains de teinte négatifs ou non finis."""


class InvalidSceneSpecError(LumiprepError, ValueError):
    """Description de scène invalide."""


class TargetsDontFitError(LumiprepError):
    """Impossible de placer les cibles sans recouvrement."""


# --- CLI ---
class UsageError(LumiprepError):
    """Ligne de commande invalide."""
