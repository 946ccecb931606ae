"""
Tabuleiros cúbicos n x n x n: cada casa aponta para um dos 26 vizinhos do
cubo unitário e o jogo vai do canto (1,1,1) ao centro.

Formato texto: ``cube <N>`` e N fatias separadas por linha em branco, cada
uma com N linhas de N letras a-z (deltas em ordem lexicográfica).
"""

import itertools
import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, NamedTuple, Tuple

import numba as nb
import numpy as np

from src.core.board import check_size
from src.core.board_io import parse_digit_rows, parse_size_token, split_lines
from src.core.exceptions import BoardParameterError, BoardParseError, PositionRangeError
from src.core.game import Game, Outcome
from src.solver.bfs import SolveResult
from src.stats.estimators import EstimateReport, bernoulli_estimate
from src.utils.config import DEFAULT_SEED
from src.utils.parallel import index_chunks, run_tasks
from src.utils.rng import generator, substream_seed

logger = logging.getLogger(__name__)

DELTAS3: Tuple[Tuple[int, int, int], ...] = tuple(
    d for d in itertools.product((-1, 0, 1), repeat=3) if d != (0, 0, 0)
)
LETTERS = "abcdefghijklmnopqrstuvwxyz"
_D3 = np.array(DELTAS3, dtype=np.int64)


class Position3(NamedTuple):
    i: int
    j: int
    k: int


def direction3_index(delta: Tuple[int, int, int]) -> int:
    """Código (0..25) do delta no cubo."""
    try:
        return DELTAS3.index(tuple(delta))
    except ValueError:
        raise BoardParameterError(f"Delta 3D inválido: {delta}") from None


@dataclass(frozen=True, eq=False)
class CubeBoard:
    """
    Tabuleiro cúbico imutável com códigos 0..25.

    Attributes:
        cells: Array (n, n, n) somente leitura.
    """

    cells: np.ndarray

    def __post_init__(self) -> None:
        cells = np.array(self.cells, dtype=np.int8, copy=True)
        if cells.ndim != 3 or len(set(cells.shape)) != 1:
            raise BoardParameterError(f"O cubo deve ser n x n x n, recebido {cells.shape}")
        check_size(cells.shape[0])
        if cells.min() < 0 or cells.max() > 25:
            raise BoardParameterError("Códigos 3D devem estar em 0..25")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    @property
    def n(self) -> int:
        return self.cells.shape[0]

    @property
    def start(self) -> Position3:
        return Position3(1, 1, 1)

    @property
    def center(self) -> Position3:
        c = (self.n + 1) // 2
        return Position3(c, c, c)

    @classmethod
    def uniform(cls, n: int, delta: Tuple[int, int, int]) -> "CubeBoard":
        n = check_size(n)
        return cls(np.full((n, n, n), direction3_index(delta), dtype=np.int8))

    def with_cell(self, pos: Tuple[int, int, int], delta: Tuple[int, int, int]) -> "CubeBoard":
        cells = self.cells.copy()
        i, j, k = self._check(pos)
        cells[i - 1, j - 1, k - 1] = direction3_index(delta)
        return CubeBoard(cells)

    def _check(self, pos: Tuple[int, int, int]) -> Position3:
        p = Position3(*(int(x) for x in pos))
        if not all(1 <= x <= self.n for x in p):
            raise PositionRangeError(f"Posição {tuple(p)} fora do cubo de tamanho {self.n}")
        return p

    def targets(self, pos: Tuple[int, int, int]) -> List[Position3]:
        p = self._check(pos)
        di, dj, dk = DELTAS3[self.cells[p.i - 1, p.j - 1, p.k - 1]]
        out = []
        i, j, k = p.i + di, p.j + dj, p.k + dk
        while all(1 <= x <= self.n for x in (i, j, k)):
            out.append(Position3(i, j, k))
            i, j, k = i + di, j + dj, k + dk
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CubeBoard):
            return NotImplemented
        return np.array_equal(self.cells, other.cells)

    def __hash__(self) -> int:
        return hash(self.cells.tobytes())


@nb.njit(cache=True)
def _bfs_cube(cells, n, deltas, target):
    """BFS no cubo a partir do canto; devolve (dist, parent, visited)."""
    size = n * n * n
    dist = np.full(size, -1, dtype=np.int32)
    parent = np.full(size, -1, dtype=np.int32)
    queue = np.empty(size, dtype=np.int32)
    head = 0
    tail = 1
    queue[0] = 0
    dist[0] = 0
    visited = 0
    while head < tail:
        u = queue[head]
        head += 1
        visited += 1
        if u == target:
            break
        code = cells[u]
        i = u // (n * n)
        j = (u // n) % n
        k = u % n
        for t in range(1, n):
            ni = i + t * deltas[code, 0]
            nj = j + t * deltas[code, 1]
            nk = k + t * deltas[code, 2]
            if ni < 0 or ni >= n or nj < 0 or nj >= n or nk < 0 or nk >= n:
                break
            v = (ni * n + nj) * n + nk
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                parent[v] = u
                queue[tail] = v
                tail += 1
    return dist, parent, visited


@dataclass(frozen=True)
class CubeSolveResult(SolveResult):
    """SolveResult do cubo: a testemunha guarda posições ``Position3``."""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "solvable": self.solvable,
            "length": self.length,
            "witness": [list(p) for p in self.witness.moves] if self.witness else None,
            "visited_count": self.visited_count,
        }


def _center_index(n: int) -> int:
    c = (n - 1) // 2
    return (c * n + c) * n + c


def _run_cube_bfs(cells: np.ndarray) -> Tuple[np.ndarray, np.ndarray, int]:
    n = cells.shape[0]
    flat = np.ascontiguousarray(cells, dtype=np.int8).ravel()
    return _bfs_cube(flat, n, _D3, _center_index(n))


def _cube_length(cells: np.ndarray) -> int:
    dist, _, _ = _run_cube_bfs(cells)
    return int(dist[_center_index(cells.shape[0])])


def solve_cube(cb: CubeBoard) -> CubeSolveResult:
    """
    Menor jogo de (1,1,1) ao centro do cubo, com a testemunha.

    Example:
        >>> solve_cube(CubeBoard.uniform(3, (1, 1, 1))).length
        1
    """
    n = cb.n
    target = _center_index(n)
    dist, parent, visited = _run_cube_bfs(cb.cells)
    if dist[target] < 0:
        return CubeSolveResult(False, None, None, int(visited))

    path = []
    v = target
    while v >= 0:
        path.append(Position3(v // (n * n) + 1, (v // n) % n + 1, v % n + 1))
        v = parent[v]
    path.reverse()
    logger.debug(f"BFS cubo n={n}: comprimento={dist[target]} visitados={visited}")
    return CubeSolveResult(True, int(dist[target]), Game(tuple(path), Outcome.WON), int(visited))


def random_cube(n: int, seed: int) -> CubeBoard:
    """Cubo com códigos i.i.d. uniformes em 0..25."""
    n = check_size(n)
    rng = generator(seed)
    return CubeBoard(rng.integers(0, 26, size=(n, n, n), dtype=np.int8))


def _cube_chunk(task: Tuple[int, int, int, int]) -> Tuple[int, Dict[int, int]]:
    n, seed, start, stop = task
    unsolvable = 0
    histogram: Dict[int, int] = {}
    for index in range(start, stop):
        length = _cube_length(random_cube(n, substream_seed(seed, index)).cells)
        if length < 0:
            unsolvable += 1
        else:
            histogram[length] = histogram.get(length, 0) + 1
    return unsolvable, histogram


def estimate_cube_stats(
    n: int, samples: int, seed: int = DEFAULT_SEED, workers: int = 1
) -> EstimateReport:
    """
    Estima P(solúvel) para cubos uniformes (relatório com ``variant="cube"``).

    A cota trivial é 7/26: só 7 dos 26 deltas do canto apontam para dentro.
    """
    n = check_size(n)
    if samples < 1:
        raise BoardParameterError(f"O número de amostras deve ser >= 1 (recebido {samples})")
    began = time.perf_counter()
    unsolvable = 0
    histogram: Dict[int, int] = {}
    tasks = [(n, seed, a, b) for a, b in index_chunks(samples)]
    for lost, part in run_tasks(_cube_chunk, tasks, workers):
        unsolvable += lost
        for length, count in part.items():
            histogram[length] = histogram.get(length, 0) + count

    solvable = samples - unsolvable
    p, stderr, ci = bernoulli_estimate(solvable, samples)
    hist = {str(k): v for k, v in sorted(histogram.items())}
    if unsolvable:
        hist["unsolvable"] = unsolvable
    if p > 7 / 26 + 3 * stderr:
        logger.warning(f"⚠️ P(solúvel) do cubo acima de 7/26: {p:.5f}")
    return EstimateReport(
        op="cube-stats",
        n=n,
        samples=samples,
        estimate=p,
        stderr=stderr,
        ci95=ci,
        seed=seed,
        workers=workers,
        histogram=hist,
        solvable_samples=solvable,
        elapsed_ms=(time.perf_counter() - began) * 1000,
        variant="cube",
    )


def exact_cube_length_one_fraction(n: int) -> Fraction:
    """
    Fração exata de cubos de comprimento 1: só a direção do canto importa.

    Example:
        >>> exact_cube_length_one_fraction(3)
        Fraction(1, 26)
    """
    n = check_size(n)
    hits = 0
    for delta in DELTAS3:
        probe = CubeBoard.uniform(n, delta)
        if probe.center in probe.targets(probe.start):
            hits += 1
    return Fraction(hits, len(DELTAS3))


def inward_corner_fraction() -> Fraction:
    """7/26: deltas do canto (1,1,1) com raio não vazio."""
    inward = sum(1 for d in DELTAS3 if min(d) >= 0)
    return Fraction(inward, len(DELTAS3))


# ===== FORMATO TEXTO =====


def serialize_cube(cb: CubeBoard) -> str:
    lines = [f"cube {cb.n}"]
    for s in range(cb.n):
        if s:
            lines.append("")
        lines.extend("".join(LETTERS[int(c)] for c in row) for row in cb.cells[s])
    return "\n".join(lines) + "\n"


def parse_cube(text: str) -> CubeBoard:
    """
    Lê um cubo no formato texto.

    Raises:
        BoardParseError: Cabeçalho, separador de fatias ou letra inválida.
    """
    lines = split_lines(text)
    header = lines[0].split(" ")
    if len(header) != 2 or header[0] != "cube":
        raise BoardParseError("Cabeçalho esperado: 'cube <N>'", 1, 1)
    n = parse_size_token(header[1], 1, 6)
    slabs = []
    cursor = 1
    for s in range(n):
        if s:
            if cursor >= len(lines) or lines[cursor] != "":
                raise BoardParseError("Fatias devem ser separadas por uma linha em branco", cursor + 1, 1)
            cursor += 1
        slabs.append(parse_digit_rows(lines[cursor : cursor + n], cursor + 1, n, LETTERS))
        cursor += n
    if cursor < len(lines):
        raise BoardParseError("Linhas extras depois do cubo", cursor + 1, 1)
    return CubeBoard(np.stack(slabs))


def read_cube(path: str) -> CubeBoard:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        return parse_cube(fh.read())
