# -*- coding: utf-8 -*-
"""
Configuration du prétraitement en luminance pondérée.
"""


class PreprocessConfig:
    """
    Constantes centralisées : seuils d'élévation, coefficients, formats,
    préréglage d'entraînement darknet.
    """
    # --- Seuils d'élévation solaire (degrés) ---
    NIGHT_BELOW_DEG = 0.0  # e < 0 : nuit, conversion par défaut
    BLUE_UP_TO_DEG = 10.0  # 0 <= e <= 10 : filtre bleu (lever/coucher)
    RED_FROM_DEG = 30.0  # e >= 30 : filtre rouge (jour)
    # Entre les deux : mélange linéaire bleu -> rouge

    # --- Conversion par défaut (somme 0.9, telle que publiée) ---
    DEFAULT_WEIGHTS = (0.3, 0.1, 0.5)
    DEFAULT_WEIGHTS_SUM = 0.9
    ROUNDING_POLICY = "half-away-from-zero"

    # --- Tolérances ---
    WEIGHT_SUM_TOLERANCE = 1e-9
    STATS_TOLERANCE = 1e-12

    # --- Formats ---
    RGB_INPUT_EXTENSIONS = (".png", ".ppm")
    GRAY_OUTPUT_EXTENSIONS = {".pgm": "PPM", ".png": "PNG"}
    DEFAULT_OUTPUT_FORMAT = "pgm"
    MAX_DN = 255
    HISTOGRAM_BINS = 256

    # --- Dataset ---
    DEFAULT_TRAIN_FRACTION = 0.8
    MANIFEST_FILE = "manifest.jsonl"
    TRAIN_LIST_FILE = "train.txt"
    TEST_LIST_FILE = "test.txt"
    CLASSES_FILE = "classes.txt"
    SIDECAR_EXTENSION = ".json"
    ANNOTATION_EXTENSION = ".txt"
    # Classes du jeu de données aérien d'origine (5 x (220 + 25))
    DATASET_CLASSES = ["armed_vehicle", "aircraft", "helicopter", "tent", "ship"]

    # --- Darknet ---
    NET_SECTION_NAMES = ("net", "network")
    TRAINING_KEYS = ("learning_rate", "momentum", "max_batches", "steps",
                     "batch", "subdivisions")
    TRAINING_PRESET = {
        "learning_rate": "0.001",
        "momentum": "0.9",
        "max_batches": "2500",
        "steps": "2000,2250",
        "batch": "64",
        "subdivisions": "16",
    }
    GRAYSCALE_CHANNELS = 1

    # --- Synthèse de scènes ---
    SCENE_GROUND_RANGE = (70, 150)  # terrain gris neutre
    SCENE_TARGET_RANGE = (170, 235)  # cibles plus claires
    SCENE_BLOCK_SIZE = 8
    SCENE_GROUND_JITTER = 24
    SCENE_MIN_TARGET_PX = 4
    SCENE_MAX_TARGET_FRACTION = 0.25
    SCENE_PLACEMENT_ATTEMPTS = 200
    SCENE_DEFAULT_SIZE = 64
    SCENE_DEFAULT_TARGETS = 3
    SCENE_FILE_PREFIX = "scene_"
    # Élévation écrite dans le sidecar des scènes selon le filtre visé
    SCENE_SIDECAR_ELEVATION = {"red": 45.0, "blue": 5.0}
    CORPUS_SIZE = 200
    REPORT_FILE = "compensation_report.csv"
    REPORT_COLUMNS = ("scene_seed", "tint", "mode", "w_r", "w_g", "w_b",
                      "clamped", "delta_candidate", "delta_naive")
    DAYTIME_TINT = (0.9, 1.0, 1.25)
    SUNSET_TINT = (1.25, 1.0, 0.85)

    # --- Performances ---
    CONVERT_BAND_ROWS = 256  # lignes traitées par bande dans convert()
    DEFAULT_MIN_MEGAPIXELS_PER_S = 100.0
