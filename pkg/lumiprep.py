#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Point d'entrée de la ligne de commande lumiprep.
"""
import sys

from src.cli import run
from src.utils.system_utils import log


def main():
    """Point d'entrée principal."""
    try:
        sys.exit(run(sys.argv[1:]))
    except KeyboardInterrupt:
        log("CLI: Arrêt demandé par l'utilisateur", level="INFO")
        sys.exit(130)


if __name__ == "__main__":
    main()
