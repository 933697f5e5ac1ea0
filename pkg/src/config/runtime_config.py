# -*- coding: utf-8 -*-
"""
Gestionnaire de configuration d'exécution (workers, format de sortie, seuils).
"""

import json
import os
from typing import Optional

from ..utils.system_utils import log, detect_worker_count, LOG_LEVELS
from .preprocess_config import PreprocessConfig


class RuntimeConfig:
    """
    Configuration d'exécution avec chargement automatique et fallback.

    Ordre de priorité : variables d'environnement LUMIPREP_*, puis fichier
    JSON, puis valeurs par défaut.
    """

    # Chemin par défaut du fichier de configuration (relatif au module)
    CONFIG_FILE_PATH = os.path.join(os.path.dirname(__file__),
                                    "lumiprep_config.json")
    ENV_CONFIG_PATH = "LUMIPREP_CONFIG"
    ENV_THREADS = "LUMIPREP_THREADS"
    ENV_MIN_MPX = "LUMIPREP_MIN_MPX_PER_S"

    def __init__(self, config_path: Optional[str] = None):
        """Initialise le gestionnaire de configuration."""
        self._explicit_path = config_path
        self._config_data = {}
        self._load_config()

    @property
    def config_path(self) -> str:
        """Chemin effectif du fichier JSON."""
        return (self._explicit_path or os.environ.get(self.ENV_CONFIG_PATH)
                or self.CONFIG_FILE_PATH)

    def _load_config(self) -> None:
        """
        Charge la configuration depuis le fichier JSON.
        Un fichier absent n'est pas une erreur ; un fichier invalide est
        journalisé et ignoré.
        """
        path = self.config_path
        try:
            if not os.path.exists(path):
                log(f"RuntimeConfig: Pas de fichier {path}, valeurs par défaut",
                    level="DEBUG")
                self._config_data = {}
                return

            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
            if not isinstance(data, dict):
                log(f"RuntimeConfig: {path} doit contenir un objet JSON",
                    level="ERROR")
                self._config_data = {}
                return
            self._config_data = data
            log(f"RuntimeConfig: Configuration chargée depuis {path}",
                level="INFO")

        except json.JSONDecodeError as e:
            log(f"RuntimeConfig: Erreur de format JSON dans {path}: {e}",
                level="ERROR")
            self._config_data = {}
        except OSError as e:
            log(f"RuntimeConfig: Erreur de lecture de {path}: {e}",
                level="ERROR")
            self._config_data = {}

    @staticmethod
    def _positive_int(value, source) -> Optional[int]:
        try:
            parsed = int(value)
        except (TypeError, ValueError):
            log(f"RuntimeConfig: Valeur entière invalide '{value}' ({source})",
                level="WARNING")
            return None
        if parsed < 1:
            log(f"RuntimeConfig: Valeur {parsed} < 1 ignorée ({source})",
                level="WARNING")
            return None
        return parsed

    @property
    def max_workers(self) -> int:
        """
        Nombre maximal de workers pour les traitements par lot.
        Returns:
            int: LUMIPREP_THREADS, sinon MAX_WORKERS du JSON, sinon nombre de
            coeurs physiques.
        """
        env_value = os.environ.get(self.ENV_THREADS)
        if env_value:
            parsed = self._positive_int(env_value, self.ENV_THREADS)
            if parsed:
                return parsed
        if "MAX_WORKERS" in self._config_data:
            parsed = self._positive_int(self._config_data["MAX_WORKERS"],
                                        "MAX_WORKERS")
            if parsed:
                return parsed
        return detect_worker_count()

    @property
    def output_format(self) -> str:
        """
        Format des images converties.
        Returns:
            str: 'pgm' ou 'png'
        """
        fmt = str(self._config_data.get(
            "OUTPUT_FORMAT", PreprocessConfig.DEFAULT_OUTPUT_FORMAT)).lower()
        if f".{fmt}" not in PreprocessConfig.GRAY_OUTPUT_EXTENSIONS:
            log(f"RuntimeConfig: OUTPUT_FORMAT '{fmt}' inconnu, utilisation de "
                f"'{PreprocessConfig.DEFAULT_OUTPUT_FORMAT}'",
                level="WARNING")
            return PreprocessConfig.DEFAULT_OUTPUT_FORMAT
        return fmt

    @property
    def min_megapixels_per_second(self) -> float:
        """
        Seuil de débit minimal de convert() vérifié par le test de performance.
        """
        raw = os.environ.get(self.ENV_MIN_MPX,
                             self._config_data.get(
                                 "MIN_MEGAPIXELS_PER_S",
                                 PreprocessConfig.DEFAULT_MIN_MEGAPIXELS_PER_S))
        try:
            return float(raw)
        except (TypeError, ValueError):
            log(f"RuntimeConfig: Seuil de débit invalide '{raw}'",
                level="WARNING")
            return PreprocessConfig.DEFAULT_MIN_MEGAPIXELS_PER_S

    @property
    def log_level(self) -> str:
        """Niveau de log demandé (INFO par défaut)."""
        level = str(self._config_data.get("LOG_LEVEL", "INFO")).upper()
        if level not in LOG_LEVELS:
            log(f"RuntimeConfig: LOG_LEVEL '{level}' inconnu", level="WARNING")
            return "INFO"
        return level

    def reload_config(self) -> None:
        """
        Recharge la configuration depuis le fichier.
        """
        log("RuntimeConfig: Rechargement de la configuration...", level="INFO")
        self._load_config()


# Instance globale pour l'utilisation dans l'application
runtime_config = RuntimeConfig()
