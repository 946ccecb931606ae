"""
Busca em largura (BFS) sobre o grafo G(A) de um tabuleiro.

Os vizinhos são gerados sob demanda a partir do raio de cada casa, então o
custo é linear no número de arestas examinadas e a busca para no primeiro
desenfileiramento do alvo. Vizinhos são expandidos na ordem do raio
(t crescente), o que fixa uma testemunha determinística.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numba as nb
import numpy as np

from src.core.board import Board, Position, PositionLike
from src.core.directions import DI, DJ
from src.core.game import Game, Outcome

logger = logging.getLogger(__name__)

# Código de casa morta (entrada zero de um tabuleiro generalizado)
DEAD = -1


@nb.njit(cache=True)
def _bfs_grid(cells, n, source, target, wrap):
    """BFS em grade n x n; ``target < 0`` explora tudo o que é alcançável."""
    size = n * n
    dist = np.full(size, -1, dtype=np.int32)
    parent = np.full(size, -1, dtype=np.int32)
    queue = np.empty(size, dtype=np.int32)
    head = 0
    tail = 1
    queue[0] = source
    dist[source] = 0
    visited = 0
    while head < tail:
        u = queue[head]
        head += 1
        visited += 1
        if u == target:
            break
        code = cells[u]
        if code < 0:
            continue
        di = DI[code]
        dj = DJ[code]
        i = u // n
        j = u - i * n
        for t in range(1, n):
            ni = i + t * di
            nj = j + t * dj
            if wrap:
                ni = ni % n
                nj = nj % n
            elif ni < 0 or ni >= n or nj < 0 or nj >= n:
                break
            v = ni * n + nj
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                parent[v] = u
                queue[tail] = v
                tail += 1
    return dist, parent, visited


@dataclass(frozen=True)
class SolveResult:
    """
    Resultado de uma busca.

    Attributes:
        solvable: Se existe jogo vencedor.
        length: Comprimento mínimo (None se insolúvel).
        witness: Jogo vencedor mais curto (None se insolúvel).
        visited_count: Vértices desenfileirados pela BFS (diagnóstico).
    """

    solvable: bool
    length: Optional[int]
    witness: Optional[Game]
    visited_count: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "solvable": self.solvable,
            "length": self.length,
            "witness": [[p.i, p.j] for p in self.witness.moves] if self.witness else None,
            "visited_count": self.visited_count,
        }


def run_bfs(
    cells: np.ndarray, source: int, target: int = -1, wrap: bool = False
) -> Tuple[np.ndarray, np.ndarray, int]:
    """
    Executa o kernel BFS sobre um array (n, n) de códigos.

    Args:
        cells: Códigos 0..7, ou ``DEAD`` para casas que não apontam.
        source: Índice plano (0-based, ordem de linha) da origem.
        target: Índice plano do alvo, ou -1 para exploração completa.
        wrap: Semântica toroidal.

    Returns:
        (dist, parent, visited_count) com arrays planos de tamanho n*n.
    """
    n = cells.shape[0]
    flat = np.ascontiguousarray(cells, dtype=np.int8).ravel()
    return _bfs_grid(flat, n, int(source), int(target), bool(wrap))


def solve_cells(
    cells: np.ndarray,
    wrap: bool = False,
    source: Optional[Position] = None,
    target: Optional[Position] = None,
) -> SolveResult:
    """
    Resolve a partir de códigos crus (usado pelas variantes toro / F9).

    Args:
        cells: Array (n, n) de códigos (``DEAD`` permitido).
        wrap: Semântica toroidal.
        source: Origem (padrão (1,1)).
        target: Alvo (padrão o centro).
    """
    n = cells.shape[0]
    c = (n + 1) // 2
    source = source or Position(1, 1)
    target = target or Position(c, c)
    s = (source[0] - 1) * n + (source[1] - 1)
    t = (target[0] - 1) * n + (target[1] - 1)
    dist, parent, visited = run_bfs(cells, s, t, wrap)
    if dist[t] < 0:
        return SolveResult(False, None, None, int(visited))

    path = []
    v = t
    while v >= 0:
        path.append(Position(v // n + 1, v % n + 1))
        v = parent[v]
    path.reverse()
    witness = Game(moves=tuple(path), outcome=Outcome.WON)
    return SolveResult(True, int(dist[t]), witness, int(visited))


def solve(board: Board) -> SolveResult:
    """
    Decide se o tabuleiro é solúvel e calcula seu comprimento.

    Args:
        board: Tabuleiro plano (ou toroidal, pela topologia do objeto).

    Returns:
        SolveResult com comprimento = menor caminho de (1,1) ao centro em
        G(A) e a testemunha correspondente.

    Example:
        >>> solve(Board.uniform(3, Direction.SE)).length
        1
    """
    result = solve_cells(board.cells, wrap=board.topology == "torus")
    logger.debug(
        f"BFS n={board.n}: solúvel={result.solvable} comprimento={result.length} "
        f"visitados={result.visited_count}"
    )
    return result


def solve_from(board: Board, source: PositionLike, target: PositionLike) -> SolveResult:
    """Menor jogo de ``source`` até ``target`` (a regra do centro não se aplica)."""
    source = board.check_position(source)
    target = board.check_position(target)
    return solve_cells(board.cells, board.topology == "torus", source, target)


def distances_from(board: Board, source: PositionLike) -> np.ndarray:
    """Distâncias BFS (n, n) a partir de ``source``; -1 onde inalcançável."""
    source = board.check_position(source)
    n = board.n
    s = (source.i - 1) * n + (source.j - 1)
    dist, _, _ = run_bfs(board.cells, s, -1, board.topology == "torus")
    return dist.reshape(n, n)
