# -*- coding: utf-8 -*-
"""
Ligne de commande lumiprep : une sous-commande par étape du pipeline.

Codes de sortie : 0 succès, 1 erreur d'usage, 2 erreur d'exécution ou de
données. Les données vont sur stdout, les diagnostics sur stderr, les
fichiers vers -o.
"""
import argparse
import json
import os
import sys
from typing import Optional

from src import __version__
from src.config.preprocess_config import PreprocessConfig
from src.config.runtime_config import runtime_config
from src.darknet.cfg_document import (changed_lines, load_cfg, save_cfg,
                                      serialize, set_channels,
                                      set_training_params)
from src.dataset.manifest import read_manifest, write_manifest
from src.dataset.pipeline import (FORCED_MODES, MODE_AUTO, MODE_NORMALIZED,
                                  process_dataset)
from src.dataset.split import (SplitSpec, emit_filelists, split_dataset,
                               split_summary)
from src.luminance.acquisition import (AcquisitionMeta, FilterMode,
                                       load_sidecar, mode_for_elevation,
                                       parse_timestamp, resolve_elevation,
                                       spec_for_mode)
from src.luminance.conversion import (ConversionSpec, convert,
                                      ensure_no_overwrite, filter_preview)
from src.luminance.histogram import (gray_histogram, pooled_histogram,
                                     stats_of, stats_report, tabulate)
from src.luminance.solar import solar_position
from src.raster.codec import load_gray, load_rgb, save_gray
from src.reports.report_templates import ReportTemplates
from src.synth.atmosphere import (SceneSpec, TintSpec, compare_with_locked,
                                  corpus_seeds, run_corpus, write_report_csv,
                                  write_scene_set)
from src.utils.errors import LumiprepError, UsageError
from src.utils.system_utils import log, set_log_level

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2

CONVERT_MODES = (MODE_AUTO, "red", "blue", "default", MODE_NORMALIZED)


class CliParser(argparse.ArgumentParser):
    """ArgumentParser qui lève UsageError au lieu de quitter."""

    def error(self, message):
        # "lumiprep cfg" -> "cfg: <message>"
        command = self.prog.split(" ", 1)[1:]
        raise UsageError(": ".join(command + [message]))


def _print_json(payload) -> None:
    print(json.dumps(payload, sort_keys=True, ensure_ascii=False))


def _add_metadata_flags(parser) -> None:
    group = parser.add_argument_group("métadonnées d'acquisition")
    group.add_argument("--elevation",
                       type=float,
                       help="élévation du soleil en degrés (prioritaire)")
    group.add_argument("--timestamp",
                       help="horodatage UTC ISO-8601 de la prise de vue")
    group.add_argument("--lat", type=float, help="latitude en degrés")
    group.add_argument("--lon", type=float, help="longitude en degrés")


def _meta_from_args(args) -> Optional[AcquisitionMeta]:
    if args.elevation is not None:
        if args.timestamp is not None:
            log("CLI: --elevation fourni, --timestamp ignoré", level="WARNING")
        return AcquisitionMeta(sun_elevation_deg=args.elevation)
    given = [v is not None for v in (args.timestamp, args.lat, args.lon)]
    if not any(given):
        return None
    if not all(given):
        raise UsageError("--timestamp, --lat et --lon s'utilisent ensemble")
    return AcquisitionMeta(timestamp_utc=parse_timestamp(args.timestamp),
                           latitude_deg=args.lat,
                           longitude_deg=args.lon)


def build_parser() -> CliParser:
    parser = CliParser(
        prog="lumiprep",
        description="Prétraitement en luminance pondérée d'images aériennes "
        "et préparation de jeux de données YOLOv3 mono-canal.")
    parser.add_argument("--version",
                        action="version",
                        version=f"%(prog)s {__version__}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v",
                           "--verbose",
                           action="store_true",
                           help="journalisation détaillée (DEBUG)")
    verbosity.add_argument("-q",
                           "--quiet",
                           action="store_true",
                           help="erreurs uniquement")
    commands = parser.add_subparsers(dest="command",
                                     metavar="COMMAND",
                                     required=True)

    stats = commands.add_parser(
        "stats", help="statistiques de l'histogramme RGB cumulé")
    stats.add_argument("image", help="image RGB (PNG ou PPM)")
    stats.add_argument("--processed",
                       help="image traitée à comparer (défaut : conversion "
                       "par défaut de l'image)")
    stats.add_argument("--json", action="store_true", help="sortie JSON")

    table = commands.add_parser("table", help="table de l'histogramme par DN")
    table.add_argument("image", help="image RGB, ou mono-canal avec --gray")
    table.add_argument("--csv", action="store_true", help="sortie CSV")
    table.add_argument("--gray",
                       action="store_true",
                       help="image mono-canal (PGM ou PNG gris)")
    table.add_argument("--all",
                       action="store_true",
                       help="inclure les DN sans pixel (texte)")

    conv = commands.add_parser("convert",
                               help="convertit une image en niveaux de gris")
    conv.add_argument("image", help="image RGB (PNG ou PPM)")
    conv.add_argument("--mode",
                      choices=CONVERT_MODES,
                      default=MODE_AUTO,
                      help="filtre : auto (selon l'élévation), red, blue, "
                      "default, normalized")
    _add_metadata_flags(conv)
    conv.add_argument("-o",
                      "--output",
                      required=True,
                      help="image de sortie (.pgm ou .png)")
    conv.add_argument("--preview",
                      help="bandeau défaut | rouge | bleu (.pgm ou .png)")
    conv.add_argument("--json", action="store_true", help="sortie JSON")

    batch = commands.add_parser("batch",
                                help="convertit un dossier d'images annotées")
    batch.add_argument("directory", help="dossier d'images et d'annotations")
    batch.add_argument("-o",
                       "--output",
                       required=True,
                       help="dossier de sortie")
    batch.add_argument("--mode",
                       choices=CONVERT_MODES,
                       default=MODE_AUTO,
                       help="filtre imposé à tout le lot (défaut : auto)")
    _add_metadata_flags(batch)
    batch.add_argument("--workers",
                       type=int,
                       help="nombre de workers (défaut : LUMIPREP_THREADS ou "
                       "nombre de coeurs)")
    batch.add_argument("--format",
                       choices=("pgm", "png"),
                       help="format de sortie")
    batch.add_argument("--strict",
                       action="store_true",
                       help="code 2 si une image échoue")
    batch.add_argument("--json", action="store_true", help="résumé JSON")

    split = commands.add_parser("split", help="partition train/test")
    split.add_argument("--manifest", required=True, help="manifest.jsonl")
    split.add_argument("--fraction",
                       type=float,
                       default=PreprocessConfig.DEFAULT_TRAIN_FRACTION,
                       help="fraction d'entraînement (défaut : 0.8)")
    split.add_argument("--seed", type=int, default=0, help="graine")
    split.add_argument("--stratify",
                       action="store_true",
                       help="stratifier par classe")
    split.add_argument("-o",
                       "--output",
                       help="dossier de sortie (défaut : celui du manifeste)")
    split.add_argument("--json", action="store_true", help="résumé JSON")

    cfg = commands.add_parser("cfg", help="réécrit un fichier .cfg darknet")
    cfg.add_argument("cfg_file", help="fichier .cfg")
    cfg.add_argument("--channels",
                     type=int,
                     help="nombre de canaux d'entrée (1 pour le gris)")
    cfg.add_argument("--paper-preset",
                     "--training-preset",
                     dest="training_preset",
                     action="store_true",
                     help="learning_rate=0.001, momentum=0.9, "
                     "max_batches=2500, steps=2000,2250, batch=64, "
                     "subdivisions=16")
    cfg.add_argument("-o",
                     "--output",
                     help="fichier de sortie (défaut : stdout)")
    cfg.add_argument("--json",
                     action="store_true",
                     help="résumé JSON (nécessite -o)")

    synth = commands.add_parser(
        "synth", help="scènes synthétiques teintées et rapport de compensation")
    synth.add_argument("--seed", type=int, default=0, help="première graine")
    synth.add_argument("--count",
                       type=int,
                       default=PreprocessConfig.CORPUS_SIZE,
                       help="nombre de scènes")
    synth.add_argument("--tint",
                       default=",".join(
                           str(g) for g in PreprocessConfig.DAYTIME_TINT),
                       help="gains FR,FG,FB (défaut : teinte de jour)")
    synth.add_argument("--mode",
                       choices=("red", "blue"),
                       default="red",
                       help="filtre évalué")
    synth.add_argument("--width",
                       type=int,
                       default=PreprocessConfig.SCENE_DEFAULT_SIZE,
                       help="largeur des scènes")
    synth.add_argument("--height",
                       type=int,
                       default=PreprocessConfig.SCENE_DEFAULT_SIZE,
                       help="hauteur des scènes")
    synth.add_argument("--targets",
                       type=int,
                       default=PreprocessConfig.SCENE_DEFAULT_TARGETS,
                       help="cibles par scène")
    synth.add_argument("--workers", type=int, help="nombre de workers")
    synth.add_argument("-o", "--output", required=True, help="dossier de sortie")
    synth.add_argument("--lock", help="écrit aussi le rapport de référence ici")
    synth.add_argument("--check",
                       help="compare au rapport de référence (code 2 si écart)")
    return parser


# --- Sous-commandes ---


def _cmd_stats(args) -> int:
    img = load_rgb(args.image)
    stats = stats_of(pooled_histogram(img))
    processed = (load_gray(args.processed) if args.processed else convert(
        img, ConversionSpec.default()))
    report = stats_report(img, processed)
    if args.json:
        _print_json(ReportTemplates.stats_payload(stats, report))
    else:
        label = os.path.splitext(os.path.basename(args.image))[0]
        sys.stdout.write(ReportTemplates.stats_text(stats, report, label))
    return EXIT_OK


def _cmd_table(args) -> int:
    if args.gray:
        histogram = gray_histogram(load_gray(args.image))
    else:
        histogram = pooled_histogram(load_rgb(args.image))
    table = tabulate(histogram)
    if args.csv:
        sys.stdout.write(ReportTemplates.histogram_table_csv(table))
    else:
        sys.stdout.write(
            ReportTemplates.histogram_table_text(table, include_empty=args.all))
    return EXIT_OK


def _resolve_convert(args, img_path, stats):
    """(spec, libellé du mode, élévation, azimut) pour convert."""
    if args.mode == MODE_NORMALIZED:
        return ConversionSpec.normalized_default(), MODE_NORMALIZED, None, None
    if args.mode in FORCED_MODES:
        mode = FORCED_MODES[args.mode]
        return spec_for_mode(mode, stats), str(mode), None, None

    meta = _meta_from_args(args)
    if meta is None:
        sidecar = os.path.splitext(img_path)[0] + \
            PreprocessConfig.SIDECAR_EXTENSION
        if not os.path.isfile(sidecar):
            raise UsageError("--mode auto nécessite --elevation ou "
                             "--timestamp/--lat/--lon (ou un sidecar JSON)")
        meta = load_sidecar(sidecar)
    elevation = resolve_elevation(meta)
    azimuth = None
    if meta.sun_elevation_deg is None:
        azimuth = solar_position(meta.timestamp_utc, meta.latitude_deg,
                                 meta.longitude_deg)[1]
    mode = mode_for_elevation(elevation)
    return spec_for_mode(mode, stats), str(mode), elevation, azimuth


def _cmd_convert(args) -> int:
    ensure_no_overwrite([args.image],
                        [p for p in (args.output, args.preview) if p])
    img = load_rgb(args.image)
    stats = stats_of(pooled_histogram(img))
    spec, mode_label, elevation, azimuth = _resolve_convert(
        args, args.image, stats)
    save_gray(convert(img, spec), args.output)
    if args.preview:
        save_gray(filter_preview(img, stats), args.preview)
    log(f"CLI: {args.image} -> {args.output} ({mode_label})", level="INFO")

    if args.json:
        _print_json({
            "input": args.image,
            "output": args.output,
            "filter_mode": mode_label,
            "elevation_deg": elevation,
            "azimuth_deg": azimuth,
            "spec": spec.as_dict(),
            "stats": stats.as_dict(),
        })
    else:
        sys.stdout.write(
            ReportTemplates.weight_report_text(spec.as_dict(), mode_label,
                                               elevation))
    return EXIT_OK


def _cmd_batch(args) -> int:
    if args.workers is not None and args.workers < 1:
        raise UsageError("--workers doit être >= 1")
    meta = _meta_from_args(args)
    records = process_dataset(args.directory,
                              args.output,
                              meta=meta,
                              mode=args.mode,
                              output_format=args.format,
                              workers=args.workers)
    failures = [r for r in records if not r.ok]
    manifest = os.path.join(args.output, PreprocessConfig.MANIFEST_FILE)
    if args.json:
        _print_json({
            "manifest": manifest,
            "processed": len(records),
            "succeeded": len(records) - len(failures),
            "failed": len(failures),
        })
    else:
        print(f"{len(records) - len(failures)} image(s) convertie(s), "
              f"{len(failures)} erreur(s)")
        print(f"manifeste : {manifest}")
    for record in failures:
        print(f"lumiprep: {record.source_path}: {record.error}",
              file=sys.stderr)
    if failures and args.strict:
        return EXIT_FAILURE
    return EXIT_OK


def _cmd_split(args) -> int:
    spec = SplitSpec(args.fraction, args.seed, args.stratify)
    records = split_dataset(read_manifest(args.manifest), spec)
    out_dir = args.output or os.path.dirname(os.path.abspath(args.manifest))
    os.makedirs(out_dir, exist_ok=True)
    write_manifest(records, os.path.join(out_dir,
                                         PreprocessConfig.MANIFEST_FILE))
    train_path, test_path = emit_filelists(records, out_dir)
    summary = split_summary(records)
    if args.json:
        _print_json({
            "train_list": train_path,
            "test_list": test_path,
            "classes": [{
                "class_id": class_id,
                **counts
            } for class_id, counts in summary.items()],
        })
    else:
        sys.stdout.write(ReportTemplates.split_summary_text(summary))
    return EXIT_OK


def _cmd_cfg(args) -> int:
    if args.channels is None and not args.training_preset:
        raise UsageError("cfg : --channels et/ou --paper-preset requis")
    if args.json and not args.output:
        raise UsageError("cfg : --json nécessite -o")
    original = load_cfg(args.cfg_file)
    doc = original
    if args.channels is not None:
        if args.channels < 1:
            raise UsageError("--channels doit être >= 1")
        doc = set_channels(doc, args.channels)
    if args.training_preset:
        doc = set_training_params(doc)
    changed = changed_lines(original, doc)

    if not args.output:
        sys.stdout.write(serialize(doc))
        return EXIT_OK
    save_cfg(doc, args.output)
    if args.json:
        _print_json({
            "output": args.output,
            "changed_lines": [index + 1 for index in changed],
        })
    else:
        print(f"{len(changed)} ligne(s) modifiée(s) -> {args.output}")
        for index in changed:
            print(f"  {index + 1}: {doc.lines[index].rstrip()}")
    return EXIT_OK


def _cmd_synth(args) -> int:
    if args.count < 1:
        raise UsageError("--count doit être >= 1")
    tint = TintSpec.parse(args.tint)
    template = SceneSpec(width=args.width,
                         height=args.height,
                         seed=args.seed,
                         target_count=args.targets)
    mode = FilterMode.red() if args.mode == "red" else FilterMode.blue()
    seeds = corpus_seeds(args.seed, args.count)

    write_scene_set(seeds, args.output, template, tint, sidecar_mode=args.mode)
    records = run_corpus(seeds, tint, mode, template, workers=args.workers)
    write_report_csv(records,
                     os.path.join(args.output, PreprocessConfig.REPORT_FILE))
    if args.lock:
        write_report_csv(records, args.lock)
    sys.stdout.write(ReportTemplates.compensation_summary_text(records))

    if args.check:
        differences = compare_with_locked(records, args.check)
        for line in differences:
            print(f"lumiprep: {line}", file=sys.stderr)
        if differences:
            return EXIT_FAILURE
    return EXIT_OK


HANDLERS = {
    "stats": _cmd_stats,
    "table": _cmd_table,
    "convert": _cmd_convert,
    "batch": _cmd_batch,
    "split": _cmd_split,
    "cfg": _cmd_cfg,
    "synth": _cmd_synth,
}


def _configure_logging(args) -> None:
    if args.verbose:
        set_log_level("DEBUG")
    elif args.quiet:
        set_log_level("ERROR")
    else:
        set_log_level(runtime_config.log_level)


def run(argv=None) -> int:
    """
    Analyse argv et exécute la sous-commande.

    Returns:
        int: 0 succès, 1 erreur d'usage, 2 erreur d'exécution
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"lumiprep: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help, --version
        return EXIT_OK if e.code in (None, 0) else EXIT_USAGE

    _configure_logging(args)
    try:
        return HANDLERS[args.command](args)
    except UsageError as e:
        print(f"lumiprep: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (LumiprepError, OSError, ValueError) as e:
        log(f"CLI: Erreur {type(e).__name__}: {e}", level="DEBUG")
        print(f"lumiprep: {e}", file=sys.stderr)
        return EXIT_FAILURE
