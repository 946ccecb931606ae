"""
Construções explícitas: espiral de comprimento 2n-1, tabuleiros de grau
extremo e duplicação de linhas/colunas.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.core.board import Board, Position, check_size, center_of
from src.core.directions import Direction
from src.core.exceptions import BoardParameterError, ConstructionFailedError
from src.solver.bfs import solve
from src.utils.config import SPIRAL_REPAIR_BUDGET

logger = logging.getLogger(__name__)

# Ordem de desempate para a borda mais próxima
_OUTWARD_ORDER = (Direction.N, Direction.S, Direction.W, Direction.E)


# ===== ESPIRAL =====


def spiral_waypoints(n: int) -> List[Position]:
    """
    Cantos da espiral retangular para dentro, de (1,1) ao centro.

    (1,1) -> (1,n) -> (n,n) -> (n,1) -> (2,1) -> (2,n-1) -> (n-1,n-1) ->
    (n-1,2) -> (3,2) -> ... -> centro, com 2n-1 saltos.

    Example:
        >>> spiral_waypoints(3)
        [Position(i=1, j=1), Position(i=1, j=3), Position(i=3, j=3), Position(i=3, j=1), Position(i=2, j=1), Position(i=2, j=2)]
    """
    n = check_size(n)
    points = [Position(1, 1)]
    for m in range(1, 2 * n):
        r, phase = divmod(m - 1, 4)
        corners = (
            Position(r + 1, n - r),
            Position(n - r, n - r),
            Position(n - r, r + 1),
            Position(r + 2, r + 1),
        )
        points.append(corners[phase])
    return points


def _step_direction(a: Position, b: Position) -> Direction:
    di = int(np.sign(b.i - a.i))
    dj = int(np.sign(b.j - a.j))
    return Direction.from_delta((di, dj))


def outward_direction(n: int, pos: Position) -> Direction:
    """Direção para a borda mais próxima (desempate N, S, W, E)."""
    gaps = {
        Direction.N: pos.i - 1,
        Direction.S: n - pos.i,
        Direction.W: pos.j - 1,
        Direction.E: n - pos.j,
    }
    nearest = min(gaps.values())
    return next(d for d in _OUTWARD_ORDER if gaps[d] == nearest)


def spiral_skeleton(n: int) -> Tuple[Board, List[Position]]:
    """
    Tabuleiro base: cantos apontando para o próximo canto e demais casas
    apontando para a borda mais próxima.

    As casas de preenchimento começam na direção da borda mais próxima, e não
    em N: é a mesma direção que ``repair_spiral`` restaura primeiro, então o
    reparo parte de menos atalhos. Em casas cuja borda mais próxima é a de
    cima (e no centro, pelo desempate) o valor inicial continua sendo N.
    """
    n = check_size(n)
    waypoints = spiral_waypoints(n)
    cells = np.empty((n, n), dtype=np.int8)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            cells[i - 1, j - 1] = outward_direction(n, Position(i, j))
    for a, b in zip(waypoints, waypoints[1:]):
        cells[a.i - 1, a.j - 1] = _step_direction(a, b)
    return Board(cells), waypoints


def repair_spiral(
    board: Board, waypoints: Sequence[Position], budget: int = SPIRAL_REPAIR_BUDGET
) -> Board:
    """
    Remove atalhos que passam por casas de preenchimento.

    Enquanto o comprimento for menor que o número de saltos da espiral,
    toma o jogo mais curto e reaponta uma casa de preenchimento nele: de
    preferência uma que não aponta para a borda mais próxima (volta para
    ela), senão a primeira, escolhendo uma direção de raio vazio ou, na
    falta dela, a direção de raio mais longo ainda não tentada.

    Raises:
        ConstructionFailedError: Se o orçamento acabar antes da meta.
    """
    n = board.n
    goal = len(waypoints) - 1
    keep = set(waypoints)
    tried: Dict[Position, set] = {}
    for step in range(budget + 1):
        result = solve(board)
        if result.solvable and result.length >= goal:
            logger.debug(f"Espiral n={n} reparada em {step} passos")
            return board
        if not result.solvable:
            raise ConstructionFailedError(f"Espiral n={n} ficou insolúvel durante o reparo")
        fillers = [p for p in result.witness.moves[:-1] if p not in keep]
        if not fillers:
            break
        misaimed = [p for p in fillers if board.cell(p) != outward_direction(n, p)]
        if misaimed:
            cell = misaimed[0]
            board = board.with_cell(cell, outward_direction(n, cell))
            continue
        cell = fillers[0]
        seen = tried.setdefault(cell, {board.cell(cell)})
        options = [d for d in Direction if d not in seen]
        if not options:
            break
        options.sort(key=lambda d: (len(board.ray(cell, d)) > 0, -len(board.ray(cell, d)), d))
        seen.add(options[0])
        board = board.with_cell(cell, options[0])
    raise ConstructionFailedError(f"Reparo da espiral n={n} esgotou o orçamento de {budget} passos")


def spiral_board(n: int, repair_budget: int = SPIRAL_REPAIR_BUDGET) -> Board:
    """
    Tabuleiro de comprimento exatamente 2n-1 seguindo a espiral.

    As casas de preenchimento apontam para a borda mais próxima, logo só
    levam a anéis mais externos; o caminho pelos cantos é o único meio de
    avançar para dentro. O comprimento é sempre conferido por BFS.

    Raises:
        BoardParameterError: Se n for par ou menor que 5.
        ConstructionFailedError: Se a pós-condição não for atingida.

    Example:
        >>> solve(spiral_board(5)).length
        9
    """
    n = check_size(n)
    if n < 5:
        raise BoardParameterError(f"A espiral exige n >= 5 (recebido {n})")
    board, waypoints = spiral_skeleton(n)
    target = 2 * n - 1
    result = solve(board)
    if result.length != target:
        logger.warning(f"⚠️ Espiral n={n} com comprimento {result.length}, reparando")
        board = repair_spiral(board, waypoints, repair_budget)
        result = solve(board)
    if result.length != target:
        raise ConstructionFailedError(f"Espiral n={n} com comprimento {result.length}, esperado {target}")
    return board


# ===== GRAU EXTREMO =====


def extremal_degree_board(n: int, mode: str) -> Board:
    """
    Cada casa aponta na direção de raio mais longo ("max") ou mais curto
    ("min"); empates ficam com o menor código.

    Raises:
        BoardParameterError: Se ``mode`` não for "max" nem "min".
    """
    n = check_size(n)
    if mode not in ("max", "min"):
        raise BoardParameterError(f"Modo inválido {mode!r}: use 'max' ou 'min'")
    probe = Board.uniform(n, Direction.N)
    cells = np.empty((n, n), dtype=np.int8)
    for pos in probe.positions():
        lengths = [len(probe.ray(pos, d)) for d in Direction]
        best = max(lengths) if mode == "max" else min(lengths)
        cells[pos.i - 1, pos.j - 1] = lengths.index(best)
    return Board(cells)


# ===== DUPLICAÇÃO =====


def _repeat_counts(n: int, indices: Sequence[int], what: str) -> np.ndarray:
    counts = np.ones(n, dtype=np.int64)
    for idx in indices:
        if not 1 <= idx <= n:
            raise BoardParameterError(f"{what} {idx} fora de 1..{n}")
        counts[idx - 1] += 1
    return counts


def duplicate_expand(board: Board, rows: Sequence[int] = (), cols: Sequence[int] = ()) -> Board:
    """
    Repete as linhas e colunas indicadas (1-based), cada cópia adjacente à
    original.

    Args:
        board: Tabuleiro de origem.
        rows: Linhas a duplicar.
        cols: Colunas a duplicar.

    Returns:
        Tabuleiro (n + |rows|) x (n + |cols|).

    Raises:
        BoardParameterError: Se |rows| != |cols| ou se o novo tamanho for par.

    Example:
        >>> duplicate_expand(Board.uniform(11, Direction.E), [2, 9], [3, 7]).n
        13
    """
    rows, cols = list(rows), list(cols)
    if len(rows) != len(cols):
        raise BoardParameterError("Duplique o mesmo número de linhas e colunas")
    if len(rows) % 2:
        raise BoardParameterError("O número de duplicações deve ser par para manter n ímpar")
    n = board.n
    grid = np.repeat(board.cells, _repeat_counts(n, rows, "Linha"), axis=0)
    grid = np.repeat(grid, _repeat_counts(n, cols, "Coluna"), axis=1)
    expanded = type(board)(grid)
    logger.debug(f"Duplicação: n={n} -> n={expanded.n}")
    return expanded


def duplication_embedding(
    n: int, rows: Sequence[int] = (), cols: Sequence[int] = ()
) -> Dict[Position, Position]:
    """Posição original -> posição da primeira cópia no tabuleiro expandido."""
    row_start = np.concatenate(([0], np.cumsum(_repeat_counts(n, rows, "Linha"))[:-1])) + 1
    col_start = np.concatenate(([0], np.cumsum(_repeat_counts(n, cols, "Coluna"))[:-1])) + 1
    return {
        Position(i, j): Position(int(row_start[i - 1]), int(col_start[j - 1]))
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    }


def spiral_length_table(ns: Sequence[int]) -> List[Tuple[int, Optional[int]]]:
    """(n, comprimento BFS da espiral) para cada n."""
    return [(n, solve(spiral_board(n)).length) for n in ns]
