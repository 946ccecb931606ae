"""Jogos: sequências de posições a partir de (1,1) e sua classificação."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Sequence, Tuple

from src.core.board import Board, Position, PositionLike
from src.core.exceptions import GameValidationError, PositionRangeError

logger = logging.getLogger(__name__)


class Outcome(str, Enum):
    WON = "won"
    LOST = "lost"
    IN_PROGRESS = "in-progress"


@dataclass(frozen=True)
class Game:
    """
    Jogo validado.

    Attributes:
        moves: Posições visitadas, começando em (1,1).
        outcome: Vitória, derrota ou jogo em andamento.
    """

    moves: Tuple[Position, ...]
    outcome: Outcome

    @property
    def turns(self) -> int:
        """Número de jogadas (transições)."""
        return len(self.moves) - 1

    @property
    def won(self) -> bool:
        return self.outcome is Outcome.WON

    def to_dict(self) -> Dict[str, Any]:
        return {
            "outcome": self.outcome.value,
            "turns": self.turns,
            "moves": [[p.i, p.j] for p in self.moves],
        }


def validate_game(board: Board, moves: Sequence[PositionLike]) -> Game:
    """
    Valida uma sequência de jogadas e classifica o resultado.

    Args:
        board: Tabuleiro (plano ou toroidal; usa ``board.targets``).
        moves: Posições, a primeira deve ser (1,1).

    Returns:
        Game com resultado ``won`` (última posição é o centro),
        ``lost`` (última posição não aponta para nada) ou ``in-progress``.

    Raises:
        GameValidationError: Sequência vazia, início fora de (1,1),
            transição ilegal ou continuação depois do centro / de uma casa
            morta. O índice aponta a jogada problemática.

    Example:
        >>> b = Board.uniform(3, Direction.SE)
        >>> validate_game(b, [(1, 1), (2, 2)]).outcome
        <Outcome.WON: 'won'>
    """
    if not moves:
        raise GameValidationError("Jogo vazio", 0)

    positions = []
    for idx, raw in enumerate(moves):
        try:
            positions.append(board.check_position(raw))
        except PositionRangeError as e:
            raise GameValidationError(str(e), idx) from None

    if positions[0] != board.start:
        raise GameValidationError(f"O jogo deve começar em {board.start}", 0)

    center = board.center
    for idx in range(1, len(positions)):
        previous = positions[idx - 1]
        if previous == center:
            raise GameValidationError("O jogo continua depois de alcançar o centro", idx)
        reachable = board.targets(previous)
        if not reachable:
            raise GameValidationError(f"O jogo continua depois da casa morta {previous}", idx)
        if positions[idx] not in reachable:
            raise GameValidationError(
                f"{previous} não está direcionando para {positions[idx]}", idx
            )

    last = positions[-1]
    if last == center:
        outcome = Outcome.WON
    elif not board.targets(last):
        outcome = Outcome.LOST
    else:
        outcome = Outcome.IN_PROGRESS

    logger.debug(f"Jogo validado: {outcome.value} após {len(positions) - 1} jogadas")
    return Game(moves=tuple(positions), outcome=outcome)
