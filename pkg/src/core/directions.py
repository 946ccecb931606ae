"""
Direções da rosa dos ventos.

Convenção de matriz: N diminui o índice de linha, E aumenta o de coluna.
Códigos 0..7 em sentido horário a partir de N.
"""

from enum import IntEnum
from typing import Dict, Tuple

import numpy as np


class Direction(IntEnum):
    """Os 8 ventos principais; o valor é o código canônico do formato texto."""

    N = 0
    NE = 1
    E = 2
    SE = 3
    S = 4
    SW = 5
    W = 6
    NW = 7

    @property
    def delta(self) -> Tuple[int, int]:
        """Vetor (di, dj) do raio."""
        return _DELTAS[self.value]

    @property
    def transpose(self) -> "Direction":
        """Reflexão pela diagonal NW-SE: (di, dj) -> (dj, di)."""
        di, dj = self.delta
        return DIRECTION_BY_DELTA[(dj, di)]

    @property
    def opposite(self) -> "Direction":
        return Direction((self.value + 4) % 8)

    @classmethod
    def from_delta(cls, delta: Tuple[int, int]) -> "Direction":
        try:
            return DIRECTION_BY_DELTA[tuple(delta)]
        except KeyError:
            raise ValueError(f"Delta inválido: {delta}") from None

    @classmethod
    def parse(cls, token: str) -> "Direction":
        """Aceita o nome (``"NE"``) ou o código (``"1"``)."""
        token = token.strip().upper()
        if token.isdigit():
            return cls(int(token))
        return cls[token]


_DELTAS: Tuple[Tuple[int, int], ...] = (
    (-1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
    (1, 0),
    (1, -1),
    (0, -1),
    (-1, -1),
)

DIRECTION_BY_DELTA: Dict[Tuple[int, int], Direction] = {
    delta: Direction(code) for code, delta in enumerate(_DELTAS)
}

# Tabelas para os kernels numba (constantes globais)
DI = np.array([d[0] for d in _DELTAS], dtype=np.int64)
DJ = np.array([d[1] for d in _DELTAS], dtype=np.int64)
TRANSPOSE_CODES = np.array([Direction(c).transpose.value for c in range(8)], dtype=np.int8)
