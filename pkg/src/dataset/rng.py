# -*- coding: utf-8 -*-
"""
Générateur pseudo-aléatoire portable pour les partitions et les scènes.

Congruentiel linéaire 64 bits (constantes MMIX de Knuth) :
    state = (state * 6364136223846793005 + 1442695040888963407) mod 2^64
Les tirages bornés utilisent la multiplication-décalage sur les 32 bits de
poids fort : randbelow(n) = (x >> 32) * n >> 32. Même séquence sur toutes les
plateformes et toutes les versions de Python.
"""

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407
MASK64 = (1 << 64) - 1


class Lcg64:
    """LCG 64 bits à graine fixée."""

    def __init__(self, seed: int):
        self.state = int(seed) & MASK64

    def next_u64(self) -> int:
        self.state = (self.state * MULTIPLIER + INCREMENT) & MASK64
        return self.state

    def randbelow(self, n: int) -> int:
        """Entier dans [0, n), n <= 2^32."""
        if n <= 0:
            raise ValueError("n doit être > 0")
        return ((self.next_u64() >> 32) * n) >> 32

    def randint(self, low: int, high: int) -> int:
        """Entier dans [low, high] (bornes incluses)."""
        return low + self.randbelow(high - low + 1)

    def shuffle(self, items: list) -> None:
        """Fisher-Yates en place, du dernier au premier élément."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]
