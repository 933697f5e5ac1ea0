# -*- coding: utf-8 -*-
"""
Règles d'arrondi communes (demi vers l'infini, « half away from zero »).
"""
import math
from decimal import Decimal, ROUND_HALF_UP

_HUNDREDTH = Decimal("0.01")


def round_half_away(value: float) -> int:
    """Arrondi entier, les demis s'éloignant de zéro (2.5 -> 3, -2.5 -> -3)."""
    return int(math.copysign(math.floor(abs(value) + 0.5), value))


def round2(value) -> float:
    """
    Arrondi à 2 décimales, demis vers l'infini, sur la représentation décimale
    la plus courte du flottant (128.725 -> 128.73).
    """
    return float(Decimal(repr(float(value))).quantize(_HUNDREDTH,
                                                      rounding=ROUND_HALF_UP))


def percent_hundredths(part: int, total: int) -> int:
    """
    Pourcentage part/total en centièmes, arrondi exact en arithmétique entière.

    Ex. 1392 / 73100 -> 190 (soit 1.90 %).
    """
    if total <= 0:
        raise ValueError("total doit être > 0")
    return (20000 * part + total) // (2 * total)
