"""
Tabuleiros no toro: as bordas se identificam e cada casa aponta para todas
as outras casas da sua linha (t = 1..n-1, com volta).

Inclui a construção em espiral de comprimento 2n-1, as 4n "linhas" do
tabuleiro e o rastreamento de linhas eliminadas por um jogo.
"""

import logging
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.core.board import Board, Position, PositionLike, check_size, random_cells
from src.core.directions import Direction
from src.core.exceptions import ConstructionFailedError, GameValidationError
from src.core.game import Game, validate_game
from src.solver.bfs import SolveResult, solve_cells
from src.utils.config import DEFAULT_SEED
from src.utils.parallel import index_chunks, run_tasks
from src.utils.rng import substream_seed

logger = logging.getLogger(__name__)


class TorusBoard(Board):
    """
    Tabuleiro com semântica toroidal.

    Todo alvo é da forma pos + t·delta (mod n) para t = 1..n-1, então cada
    casa tem exatamente n-1 alvos e direções opostas são equivalentes.
    """

    topology = "torus"

    def ray(self, pos: PositionLike, direction: Direction) -> List[Position]:
        pos = self.check_position(pos)
        di, dj = direction.delta
        n = self.n
        return [
            Position((pos.i - 1 + t * di) % n + 1, (pos.j - 1 + t * dj) % n + 1)
            for t in range(1, n)
        ]

    @classmethod
    def from_board(cls, board: Board) -> "TorusBoard":
        return cls(board.cells)


def torus_targets(tb: TorusBoard, pos: PositionLike) -> List[Position]:
    """
    Alvos de ``pos`` no toro.

    Example:
        >>> tb = TorusBoard.uniform(5, Direction.SW)
        >>> Position(3, 3) in torus_targets(tb, (1, 5))
        True
    """
    return tb.targets(pos)


def solve_torus(tb: TorusBoard) -> SolveResult:
    """BFS de (1,1) ao centro com alvos toroidais."""
    return solve_cells(tb.cells, wrap=True)


def random_torus(n: int, seed: int) -> TorusBoard:
    return TorusBoard(random_cells(n, seed))


# ===== ESPIRAL =====


def torus_spiral_lines(n: int) -> List[Tuple[str, int]]:
    """
    Sequência de linhas da espiral: linha 1, coluna n, linha n, coluna 1,
    linha 2, coluna n-1, ... terminando na linha central (2n-1 linhas).
    """
    n = check_size(n)
    outside_in = []
    lo, hi = 1, n
    while lo <= hi:
        outside_in.append(lo)
        if hi != lo:
            outside_in.append(hi)
        lo, hi = lo + 1, hi - 1
    rows = outside_in
    # colunas: n, 1, n-1, 2, ... (a coluna central fica de fora)
    cols = [outside_in[k ^ 1] for k in range(n - 1)]
    lines: List[Tuple[str, int]] = []
    for m in range(n):
        lines.append(("row", rows[m]))
        if m < n - 1:
            lines.append(("col", cols[m]))
    return lines


def torus_spiral(n: int) -> TorusBoard:
    """
    Tabuleiro toroidal de comprimento exatamente 2n-1.

    Cada casa aponta ao longo da primeira linha escolhida que passa por ela
    (linha -> E, coluna -> S); as casas de saída (cruzamento de duas linhas
    consecutivas) apontam para a linha seguinte. Uma casa só é alcançada
    depois da primeira linha que a contém, e o centro só está na última.

    Raises:
        BoardParameterError: Se n for par ou menor que 3.
        ConstructionFailedError: Se a verificação por BFS falhar.
    """
    n = check_size(n)
    lines = torus_spiral_lines(n)
    row_rank = {idx: k for k, (kind, idx) in enumerate(lines) if kind == "row"}
    col_rank = {idx: k for k, (kind, idx) in enumerate(lines) if kind == "col"}

    cells = np.empty((n, n), dtype=np.int8)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            along_row = row_rank[i] < col_rank.get(j, len(lines))
            cells[i - 1, j - 1] = Direction.E if along_row else Direction.S

    # saídas: cruzamento da linha k com a linha k+1
    for k in range(len(lines) - 1):
        (kind, idx), (_, nxt) = lines[k], lines[k + 1]
        i, j = (idx, nxt) if kind == "row" else (nxt, idx)
        cells[i - 1, j - 1] = Direction.S if kind == "row" else Direction.E

    board = TorusBoard(cells)
    result = solve_torus(board)
    if result.length != 2 * n - 1:
        raise ConstructionFailedError(
            f"Espiral toroidal n={n} com comprimento {result.length}, esperado {2 * n - 1}"
        )
    return board


# ===== LINHAS =====


@dataclass(frozen=True)
class Line:
    """
    Uma das 4n linhas do toro.

    Attributes:
        kind: "row", "column", "diagonal" (SE/NW) ou "antidiagonal" (NE/SW).
        index: Linha i, coluna j, (i-j) mod n ou (i+j) mod n.
        positions: As n posições da linha.
    """

    kind: str
    index: int
    positions: Tuple[Position, ...]

    def __contains__(self, pos: object) -> bool:
        return pos in self.positions

    def __str__(self) -> str:
        return f"{self.kind}[{self.index}]"


_KIND_BY_DIRECTION = {
    Direction.E: "row",
    Direction.W: "row",
    Direction.N: "column",
    Direction.S: "column",
    Direction.SE: "diagonal",
    Direction.NW: "diagonal",
    Direction.NE: "antidiagonal",
    Direction.SW: "antidiagonal",
}


def _line_index(n: int, kind: str, pos: Position) -> int:
    if kind == "row":
        return pos.i
    if kind == "column":
        return pos.j
    if kind == "diagonal":
        return (pos.i - pos.j) % n
    return (pos.i + pos.j) % n


def _make_line(n: int, kind: str, index: int) -> Line:
    members = tuple(
        Position(i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if _line_index(n, kind, Position(i, j)) == index
    )
    return Line(kind, index, members)


def all_lines(n: int) -> List[Line]:
    """As 4n linhas: n linhas, n colunas, n diagonais e n antidiagonais."""
    n = check_size(n)
    out = [_make_line(n, "row", i) for i in range(1, n + 1)]
    out += [_make_line(n, "column", j) for j in range(1, n + 1)]
    out += [_make_line(n, "diagonal", d) for d in range(n)]
    out += [_make_line(n, "antidiagonal", d) for d in range(n)]
    return out


def line_of(n: int, pos: PositionLike, direction: Direction) -> Line:
    """A linha por ``pos`` na direção dada (a mesma para direções opostas)."""
    pos = Position(int(pos[0]), int(pos[1]))
    kind = _KIND_BY_DIRECTION[Direction(direction)]
    return _make_line(n, kind, _line_index(n, kind, pos))


# ===== RASTREAMENTO DE LINHAS =====


@dataclass(frozen=True)
class LineTraceReport:
    """
    Linha eliminada em cada jogada e revisitas encontradas.

    Attributes:
        steps: (índice da jogada, origem, linha eliminada).
        violations: Pares (l, m) com m >= l+2 e a posição m na linha da
            jogada l; qualquer violação prova que o jogo não é mínimo.
        lines_touched: Linhas distintas eliminadas.
    """

    n: int
    steps: Tuple[Tuple[int, Position, Line], ...]
    violations: Tuple[Tuple[int, int], ...]
    lines_touched: int

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "moves": len(self.steps),
            "lines": [str(line) for _, _, line in self.steps],
            "violations": [list(v) for v in self.violations],
            "lines_touched": self.lines_touched,
            "bound": 4 * self.n,
        }


def line_trace(tb: TorusBoard, game: Game) -> LineTraceReport:
    """
    Associa a cada jogada a linha que ela elimina e procura revisitas.

    Args:
        tb: Tabuleiro toroidal.
        game: Jogo válido em ``tb``.

    Raises:
        GameValidationError: Se o jogo não for válido no tabuleiro.
    """
    validated = validate_game(tb, game.moves)
    if validated.outcome != game.outcome:
        raise GameValidationError(
            f"Resultado declarado {game.outcome.value} difere de {validated.outcome.value}", 0
        )
    moves = validated.moves
    n = tb.n
    steps = []
    for l in range(len(moves) - 1):
        steps.append((l, moves[l], line_of(n, moves[l], tb.cell(moves[l]))))

    violations = []
    for l, _, line in steps:
        for m in range(l + 2, len(moves)):
            if moves[m] in line:
                violations.append((l, m))
    touched = len({(line.kind, line.index) for _, _, line in steps})
    if violations:
        logger.debug(f"⚠️ {len(violations)} revisitas de linha: o jogo não é mínimo")
    return LineTraceReport(n, tuple(steps), tuple(violations), touched)


# ===== VERIFICAÇÃO DA COTA 4n =====


@dataclass(frozen=True)
class TorusBoundReport:
    n: int
    samples: int
    solvable: int
    max_length: Optional[int]
    violations: int
    seed: int
    workers: int
    histogram: Dict[int, int]
    elapsed_ms: float

    @property
    def bound(self) -> int:
        return 4 * self.n

    def to_dict(self, timing: bool = True) -> Dict[str, object]:
        data = {
            "op": "bound-check",
            "variant": "torus",
            "n": self.n,
            "samples": self.samples,
            "solvable_samples": self.solvable,
            "max_length": self.max_length,
            "bound": self.bound,
            "violations": self.violations,
            "seed": self.seed,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }
        if timing:
            data["workers"] = self.workers
            data["elapsed_ms"] = round(self.elapsed_ms, 3)
        return data


def _torus_chunk(task: Tuple[int, int, int, int]) -> Dict[int, int]:
    n, seed, start, stop = task
    histogram: Dict[int, int] = {}
    for index in range(start, stop):
        result = solve_cells(random_cells(n, substream_seed(seed, index)), wrap=True)
        if result.solvable:
            histogram[result.length] = histogram.get(result.length, 0) + 1
    return histogram


def torus_bound_check(
    n: int, samples: int, seed: int = DEFAULT_SEED, workers: int = 1
) -> TorusBoundReport:
    """
    Sorteia tabuleiros toroidais e confere comprimento <= 4n nos solúveis.

    A amostra i usa a semente ``substream_seed(seed, i)``; o relatório não
    depende do número de workers.
    """
    n = check_size(n)
    began = time.perf_counter()
    tasks = [(n, seed, a, b) for a, b in index_chunks(samples)]
    histogram: Dict[int, int] = {}
    for part in run_tasks(_torus_chunk, tasks, workers):
        for length, count in part.items():
            histogram[length] = histogram.get(length, 0) + count

    solvable = sum(histogram.values())
    violations = sum(c for length, c in histogram.items() if length > 4 * n)
    max_length = max(histogram) if histogram else None
    if violations:
        logger.error(f"❌ {violations} tabuleiros toroidais acima de 4n em n={n}")
    else:
        logger.info(f"✅ Cota 4n confirmada em {samples} tabuleiros (n={n})")
    elapsed = (time.perf_counter() - began) * 1000
    return TorusBoundReport(n, samples, solvable, max_length, violations, seed, workers, histogram, elapsed)
