# -*- coding: utf-8 -*-
"""
Utilitaires système et logging.
"""
import logging
import logging.handlers
import os

import psutil

# Configuration avec dossier logs/
PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(
    os.path.abspath(__file__))))
LOGS_DIR = os.environ.get("LUMIPREP_LOG_DIR",
                          os.path.join(PROJECT_ROOT, "logs"))
LOG_FILE_NAME = "lumiprep.log"
LOG_LEVELS = ["DEEP_DEBUG", "DEBUG", "INFO", "WARNING", "ERROR"]
CURRENT_LOG_LEVEL = "INFO"
LEVEL_MAPPING = {
    "DEEP_DEBUG": 5,
    "DEBUG": 10,
    "INFO": 20,
    "WARNING": 30,
    "ERROR": 40
}


def setup_logging():
    """Configuration avec structure propre dans logs/"""
    logger = logging.getLogger("lumiprep")

    if logger.handlers:
        return logger

    logger.setLevel(LEVEL_MAPPING["DEEP_DEBUG"])
    logger.propagate = False

    formatter = logging.Formatter('[%(asctime)s] [%(levelname)s] %(message)s',
                                  datefmt='%Y-%m-%d %H:%M:%S')

    # LUMIPREP_LOG_DIR vide : pas de fichier de log
    if LOGS_DIR:
        try:
            os.makedirs(LOGS_DIR, exist_ok=True)
            file_handler = logging.handlers.RotatingFileHandler(
                os.path.join(LOGS_DIR, LOG_FILE_NAME),
                maxBytes=10 * 1024 * 1024,  # 10MB
                backupCount=5,
                encoding='utf-8')
            file_handler.setFormatter(formatter)
            file_handler.setLevel(logging.DEBUG)
            logger.addHandler(file_handler)
        except OSError:
            # Dossier non inscriptible (lecture seule, CI...) : console seule
            pass

    # Handler console (stderr : stdout reste réservé aux données)
    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    console_handler.setLevel(logging.DEBUG)
    logger.addHandler(console_handler)

    return logger


_logger = setup_logging()


def set_log_level(level):
    """
    Change le niveau de filtrage courant.

    Args:
        level (str): Un des niveaux de LOG_LEVELS

    Raises:
        ValueError: Si le niveau est inconnu
    """
    global CURRENT_LOG_LEVEL
    if level not in LOG_LEVELS:
        raise ValueError(f"Niveau de log inconnu: {level}")
    CURRENT_LOG_LEVEL = level


def log(*args, level="INFO"):
    """Fonction log avec filtrage par niveau"""
    try:
        current_level_index = LOG_LEVELS.index(CURRENT_LOG_LEVEL)
        message_level_index = LOG_LEVELS.index(level)

        if message_level_index < current_level_index:
            return
    except ValueError:
        pass

    message = " ".join(str(arg) for arg in args)

    # Mapping vers niveaux Python
    if level in ["DEEP_DEBUG", "DEBUG"]:
        _logger.debug(f"[{level}] {message}")
    elif level == "INFO":
        _logger.info(message)
    elif level == "WARNING":
        _logger.warning(message)
    elif level == "ERROR":
        _logger.error(message)
    else:
        _logger.info(message)


def detect_worker_count():
    """
    Détermine un nombre de workers raisonnable pour la machine courante.

    Returns:
        int: Nombre de coeurs physiques (ou logiques à défaut), au moins 1.
    """
    try:
        count = psutil.cpu_count(logical=False) or psutil.cpu_count()
    except Exception as e:
        log(f"SystemUtils: Erreur psutil.cpu_count: {e}", level="WARNING")
        count = None
    if not count:
        count = os.cpu_count() or 1
    log(f"SystemUtils: {count} worker(s) détecté(s)", level="DEBUG")
    return max(1, int(count))
