"""
Sementes determinísticas baseadas em contador (Philox).

Cada amostra usa uma subsequência derivada de (semente, índice), de modo que
execuções seriais e paralelas produzem exatamente os mesmos resultados.
"""

import numpy as np

MASK64 = (1 << 64) - 1


def philox_key(seed: int, index: int = 0) -> int:
    """Chave Philox de 128 bits: índice na metade alta, semente na baixa."""
    return ((int(index) & MASK64) << 64) | (int(seed) & MASK64)


def generator(seed: int, index: int = 0) -> np.random.Generator:
    """Gerador numpy independente para o par (seed, index)."""
    return np.random.Generator(np.random.Philox(key=philox_key(seed, index)))


def raw_words(seed: int, count: int, index: int = 0) -> np.ndarray:
    """``count`` palavras de 64 bits brutas da subsequência (seed, index)."""
    return np.random.Philox(key=philox_key(seed, index)).random_raw(count)


def substream_seed(seed: int, index: int) -> int:
    """
    Semente de 64 bits da amostra ``index``.

    Args:
        seed: Semente da execução.
        index: Índice da amostra (ou do reinício, do candidato...).

    Returns:
        Inteiro em [0, 2**64).

    Example:
        >>> substream_seed(7, 0) == substream_seed(7, 0)
        True
    """
    # índice deslocado: a subsequência 0 é reservada ao próprio tabuleiro
    return int(raw_words(seed, 1, index + 1)[0])
