# -*- coding: utf-8 -*-
"""
Templates de rendu texte / CSV des rapports.

Ce module centralise la présentation des tables et rapports affichés par la
ligne de commande, séparée de la logique de calcul.
"""
import csv
import io
from typing import Dict, List, Optional, Sequence

from src.config.preprocess_config import PreprocessConfig
from src.luminance.histogram import ChannelStats, HistogramTable, StatsReport
from src.luminance.rounding import round2


class ReportTemplates:
    """
    Classe statique contenant les gabarits de rapports.
    """

    HISTOGRAM_CSV_HEADER = ("DN", "Npix", "Perc", "CumNpix", "CumPerc")
    STATS_HEADER = ("Image", "Mean (RGB)", "Std (RGB)", "Mean (gray)",
                    "Std (gray)")
    SEPARATOR = " | "

    # TABLES D'HISTOGRAMME
    @staticmethod
    def histogram_table_text(table: HistogramTable,
                             include_empty: bool = False) -> str:
        """
        Table alignée DN / Npix / Perc / CumNpix / CumPerc.

        Args:
            table (HistogramTable): Table tabulée
            include_empty (bool): Inclure les DN sans pixel

        Returns:
            str: Texte, une ligne par DN
        """
        header = ReportTemplates.HISTOGRAM_CSV_HEADER
        rows = [
            (str(row.dn), str(row.npix), f"{row.perc:.2f}", str(row.cum_npix),
             f"{row.cum_perc:.2f}") for row in table.rows
            if include_empty or row.npix
        ]
        widths = [
            max([len(header[i])] + [len(r[i]) for r in rows])
            for i in range(len(header))
        ]
        lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
        lines.extend("  ".join(v.rjust(w) for v, w in zip(r, widths))
                     for r in rows)
        lines.append(f"Total: {table.total}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def histogram_table_csv(table: HistogramTable) -> str:
        """CSV des 256 DN, en-tête DN,Npix,Perc,CumNpix,CumPerc."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(ReportTemplates.HISTOGRAM_CSV_HEADER)
        for row in table.rows:
            writer.writerow([
                row.dn, row.npix, f"{row.perc:.2f}", row.cum_npix,
                f"{row.cum_perc:.2f}"
            ])
        return buffer.getvalue()

    # STATISTIQUES
    @staticmethod
    def stats_text(stats: ChannelStats,
                   report: Optional[StatsReport] = None,
                   label: str = "image") -> str:
        lines = [
            f"mean    : {stats.mean:.6f}",
            f"std_dev : {stats.std_dev:.6f}",
            f"perc    : {stats.perc:.6f}",
        ]
        if report is not None:
            lines.append("")
            lines.append(ReportTemplates.SEPARATOR.join(
                ReportTemplates.STATS_HEADER))
            lines.append(report.row(label))
        return "\n".join(lines) + "\n"

    @staticmethod
    def stats_payload(stats: ChannelStats,
                      report: Optional[StatsReport] = None) -> dict:
        payload = {"stats": stats.as_dict()}
        if report is not None:
            payload["report"] = report.as_dict()
        return payload

    # POIDS
    @staticmethod
    def weight_report_text(spec_dict: dict,
                           filter_mode: str,
                           elevation_deg: Optional[float] = None) -> str:
        """Mode retenu et triplet appliqué, une information par ligne."""
        lines = [f"mode      : {filter_mode}"]
        if elevation_deg is not None:
            lines.append(f"elevation : {round2(elevation_deg):.2f} deg")
        lines.append(f"conversion: {spec_dict['mode']}")
        lines.append(f"w_r       : {spec_dict['w_r']:.6f}")
        lines.append(f"w_g       : {spec_dict['w_g']:.6f}")
        lines.append(f"w_b       : {spec_dict['w_b']:.6f}")
        if spec_dict.get("clamped"):
            lines.append("clamped   : oui")
        if spec_dict.get("fallback"):
            lines.append("fallback  : conversion par défaut (poids dégénérés)")
        return "\n".join(lines) + "\n"

    # PARTITION TRAIN / TEST
    @staticmethod
    def split_summary_text(summary: Dict,
                           class_names: Optional[List[str]] = None) -> str:
        """
        Effectifs par classe, dans le format du tableau de taille du jeu de
        données (Classe | Train | Test | Total).
        """
        names = class_names or PreprocessConfig.DATASET_CLASSES
        lines = [ReportTemplates.SEPARATOR.join(
            ("Class", "Train", "Test", "Total"))]
        total_train = total_test = 0
        for class_id, counts in summary.items():
            if class_id is None:
                name = "?"
            elif 0 <= class_id < len(names):
                name = names[class_id]
            else:
                name = str(class_id)
            train, test = counts["train"], counts["test"]
            total_train += train
            total_test += test
            lines.append(ReportTemplates.SEPARATOR.join(
                (name, str(train), str(test), str(train + test))))
        lines.append(ReportTemplates.SEPARATOR.join(
            ("Total", str(total_train), str(total_test),
             str(total_train + total_test))))
        return "\n".join(lines) + "\n"

    # COMPENSATION
    @staticmethod
    def compensation_summary_text(records: Sequence) -> str:
        if not records:
            return "Aucune scène\n"
        count = len(records)
        mean_candidate = sum(r.delta_candidate for r in records) / count
        mean_naive = sum(r.delta_naive for r in records) / count
        better = sum(1 for r in records if r.delta_candidate < r.delta_naive)
        return (f"scènes          : {count}\n"
                f"teinte          : {records[0].tint}\n"
                f"mode            : {records[0].mode}\n"
                f"delta candidat  : {mean_candidate:.4f} (moyenne)\n"
                f"delta naïf      : {mean_naive:.4f} (moyenne)\n"
                f"candidat < naïf : {better}/{count}\n")


def table_to_text(table: HistogramTable) -> str:
    return ReportTemplates.histogram_table_text(table)


def table_to_csv(table: HistogramTable) -> str:
    return ReportTemplates.histogram_table_csv(table)
