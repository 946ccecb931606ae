"""
Tabuleiros de tamanho ímpar n >= 3 e a relação "está direcionando para".

Posições são 1-based (linha i, coluna j) como no enunciado do jogo; os
arrays internos são 0-based.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, List, NamedTuple, Tuple, Union

import numpy as np

from src.core.directions import Direction
from src.core.exceptions import (
    BoardParameterError,
    InvalidPairError,
    PositionRangeError,
)
from src.utils.rng import raw_words

logger = logging.getLogger(__name__)

# Sorteios de 3 bits por palavra de 64 bits
_DRAWS_PER_WORD = 21


class Position(NamedTuple):
    """Posição 1-based (linha, coluna)."""

    i: int
    j: int

    def __str__(self) -> str:
        return f"({self.i},{self.j})"


PositionLike = Union[Position, Tuple[int, int]]


def check_size(n: int) -> int:
    """
    Valida o tamanho de um tabuleiro.

    Args:
        n: Tamanho pedido.

    Returns:
        O próprio n, como int.

    Raises:
        BoardParameterError: Se n for par, menor que 3 ou não inteiro.
    """
    if isinstance(n, bool) or int(n) != n:
        raise BoardParameterError(f"Tamanho inválido: {n!r}")
    n = int(n)
    if n < 3 or n % 2 == 0:
        raise BoardParameterError(f"O tamanho deve ser ímpar e >= 3 (recebido {n})")
    return n


def center_of(n: int) -> Position:
    c = (n + 1) // 2
    return Position(c, c)


def chebyshev_distance(n: int, pos: PositionLike) -> int:
    """d(v): distância de Chebyshev da posição ao centro."""
    c = (n + 1) // 2
    return max(abs(pos[0] - c), abs(pos[1] - c))


@dataclass(frozen=True, eq=False)
class Board:
    """
    Tabuleiro imutável: matriz n x n de códigos de direção (int8).

    Attributes:
        cells: Array (n, n) somente leitura com códigos 0..7.

    Example:
        >>> b = Board.uniform(3, Direction.SE)
        >>> b.targets((1, 1))
        [Position(i=2, j=2), Position(i=3, j=3)]
    """

    cells: np.ndarray

    topology = "plain"

    def __post_init__(self) -> None:
        cells = np.array(self.cells, dtype=np.int8, copy=True)
        if cells.ndim != 2 or cells.shape[0] != cells.shape[1]:
            raise BoardParameterError(f"O tabuleiro deve ser quadrado, recebido {cells.shape}")
        check_size(cells.shape[0])
        if cells.size and (cells.min() < 0 or cells.max() > 7):
            raise BoardParameterError("Códigos de direção devem estar em 0..7")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    # ===== CONSTRUTORES =====

    @classmethod
    def uniform(cls, n: int, direction: Direction) -> "Board":
        """Tabuleiro com a mesma direção em todas as casas."""
        n = check_size(n)
        return cls(np.full((n, n), int(direction), dtype=np.int8))

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Union[Direction, int, str]]]) -> "Board":
        """Constrói a partir de linhas de direções, códigos ou nomes."""
        grid = []
        for row in rows:
            grid.append(
                [Direction.parse(x) if isinstance(x, str) else Direction(int(x)) for x in row]
            )
        return cls(np.array(grid, dtype=np.int8))

    # ===== PROPRIEDADES =====

    @property
    def n(self) -> int:
        return self.cells.shape[0]

    @property
    def center(self) -> Position:
        return center_of(self.n)

    @property
    def start(self) -> Position:
        return Position(1, 1)

    def positions(self) -> Iterator[Position]:
        """Todas as posições em ordem de linha."""
        for i in range(1, self.n + 1):
            for j in range(1, self.n + 1):
                yield Position(i, j)

    def check_position(self, pos: PositionLike) -> Position:
        """Normaliza e valida uma posição."""
        try:
            i, j = int(pos[0]), int(pos[1])
        except (TypeError, ValueError, IndexError):
            raise PositionRangeError(f"Posição inválida: {pos!r}") from None
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise PositionRangeError(f"Posição {pos} fora do tabuleiro de tamanho {self.n}")
        return Position(i, j)

    def cell(self, pos: PositionLike) -> Direction:
        pos = self.check_position(pos)
        return Direction(int(self.cells[pos.i - 1, pos.j - 1]))

    def with_cell(self, pos: PositionLike, direction: Direction) -> "Board":
        """Cópia do tabuleiro com uma casa trocada (o original não muda)."""
        pos = self.check_position(pos)
        cells = self.cells.copy()
        cells[pos.i - 1, pos.j - 1] = int(direction)
        return type(self)(cells)

    # ===== RELAÇÃO DE MOVIMENTO =====

    def ray(self, pos: PositionLike, direction: Direction) -> List[Position]:
        """Alvos de ``pos`` se a casa apontasse para ``direction``."""
        pos = self.check_position(pos)
        di, dj = direction.delta
        out = []
        i, j = pos.i + di, pos.j + dj
        while 1 <= i <= self.n and 1 <= j <= self.n:
            out.append(Position(i, j))
            i += di
            j += dj
        return out

    def targets(self, pos: PositionLike) -> List[Position]:
        """Posições alcançáveis em uma jogada, em ordem crescente de passo t."""
        pos = self.check_position(pos)
        return self.ray(pos, self.cell(pos))

    def out_degree(self, pos: PositionLike) -> int:
        return len(self.targets(pos))

    # ===== IGUALDADE E REPRESENTAÇÃO =====

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Board) or other.topology != self.topology:
            return NotImplemented
        return np.array_equal(self.cells, other.cells)

    def __hash__(self) -> int:
        return hash((self.topology, self.n, self.cells.tobytes()))

    def __repr__(self) -> str:
        codes = "/".join("".join(str(c) for c in row) for row in self.cells)
        return f"{type(self).__name__}(n={self.n}, cells='{codes}')"


def targets(board: Board, pos: PositionLike) -> List[Position]:
    """
    Lista as posições para as quais a casa ``pos`` está direcionando.

    Args:
        board: Tabuleiro (plano ou toroidal).
        pos: Posição 1-based.

    Returns:
        Posições do raio, em ordem crescente de t; vazia se a seta sai do
        tabuleiro imediatamente.

    Raises:
        PositionRangeError: Se ``pos`` estiver fora do tabuleiro.

    Example:
        >>> targets(Board.uniform(3, Direction.E), (1, 3))
        []
    """
    return board.targets(pos)


def is_directing(board: Board, source: PositionLike, target: PositionLike) -> bool:
    """
    Verdadeiro sse ``board[source]`` está direcionando para ``target``.

    Raises:
        PositionRangeError: Se alguma posição estiver fora do tabuleiro.
        InvalidPairError: Se origem e destino coincidirem.
    """
    source = board.check_position(source)
    target = board.check_position(target)
    if source == target:
        raise InvalidPairError(f"Origem e destino coincidem: {source}")
    return target in board.targets(source)


def random_cells(n: int, seed: int) -> np.ndarray:
    """
    Códigos i.i.d. uniformes para um tabuleiro n x n.

    A casa de índice plano k usa os bits 3*(k % 21).. da palavra k // 21 da
    subsequência Philox da semente, logo o resultado não depende da ordem
    de iteração.
    """
    n = check_size(n)
    size = n * n
    words = raw_words(seed, math.ceil(size / _DRAWS_PER_WORD))
    idx = np.arange(size)
    shifts = (3 * (idx % _DRAWS_PER_WORD)).astype(np.uint64)
    codes = (words[idx // _DRAWS_PER_WORD] >> shifts) & np.uint64(7)
    return codes.astype(np.int8).reshape(n, n)


def random_board(n: int, seed: int) -> Board:
    """
    Sorteia um tabuleiro uniforme em Mat_{n x n}(D).

    Args:
        n: Tamanho ímpar >= 3.
        seed: Semente de 64 bits.

    Returns:
        Board determinístico dado (n, seed).

    Raises:
        BoardParameterError: Se n for par ou menor que 3.
    """
    return Board(random_cells(n, seed))
