"""
Alcançabilidade em G(A): fecho, componentes fortemente conexas e o
conjunto de comprimentos de jogos vencedores.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import FrozenSet, List, Tuple

import numpy as np

from src.core.board import Board, Position, PositionLike
from src.core.directions import DI, DJ
from src.core.exceptions import BoardParameterError
from src.solver.bfs import run_bfs

logger = logging.getLogger(__name__)


def flat_index(n: int, pos: PositionLike) -> int:
    return (pos[0] - 1) * n + (pos[1] - 1)


def position_of(n: int, index: int) -> Position:
    return Position(index // n + 1, index % n + 1)


def edge_arrays(cells: np.ndarray, wrap: bool = False) -> Tuple[np.ndarray, np.ndarray]:
    """
    Arestas de G(A) como dois arrays de índices planos (origem, destino).

    As arestas saem agrupadas por origem em ordem de linha e, dentro de cada
    origem, na ordem do raio. Casas com código negativo não têm arestas.
    """
    n = cells.shape[0]
    flat = np.arange(n * n)
    ii, jj = np.divmod(flat, n)
    codes = np.asarray(cells, dtype=np.int64).ravel()
    alive = codes >= 0
    safe = np.where(alive, codes, 0)
    di, dj = DI[safe], DJ[safe]

    sources, targets = [], []
    for t in range(1, n):
        ni = ii + t * di
        nj = jj + t * dj
        if wrap:
            ni, nj = ni % n, nj % n
            ok = alive
        else:
            ok = alive & (ni >= 0) & (ni < n) & (nj >= 0) & (nj < n)
        sources.append(flat[ok])
        targets.append((ni * n + nj)[ok])

    src = np.concatenate(sources)
    dst = np.concatenate(targets)
    order = np.argsort(src, kind="stable")
    return src[order], dst[order]


def board_edges(board: Board) -> Tuple[np.ndarray, np.ndarray]:
    return edge_arrays(board.cells, board.topology == "torus")


def adjacency_matrix(board: Board) -> np.ndarray:
    """Matriz booleana (n², n²) de G(A), índices em ordem de linha."""
    size = board.n * board.n
    src, dst = board_edges(board)
    adj = np.zeros((size, size), dtype=bool)
    adj[src, dst] = True
    return adj


def reachability_closure(board: Board) -> np.ndarray:
    """
    Fecho reflexivo-transitivo de G(A).

    A entrada (u, v) é verdadeira sse existe caminho (possivelmente vazio)
    de u a v no grafo cru, sem a regra de parada no centro. Cada linha vem
    de uma BFS completa a partir de u.

    Returns:
        Matriz booleana (n², n²) indexada por posições em ordem de linha.
    """
    n = board.n
    size = n * n
    wrap = board.topology == "torus"
    closure = np.zeros((size, size), dtype=bool)
    for u in range(size):
        dist, _, _ = run_bfs(board.cells, u, -1, wrap)
        closure[u] = dist >= 0
    return closure


def reaches(board: Board, source: PositionLike, target: PositionLike) -> bool:
    """Existe caminho de ``source`` a ``target`` em G(A)?"""
    source = board.check_position(source)
    target = board.check_position(target)
    n = board.n
    dist, _, _ = run_bfs(
        board.cells, flat_index(n, source), flat_index(n, target), board.topology == "torus"
    )
    return bool(dist[flat_index(n, target)] >= 0)


# ===== COMPONENTES FORTEMENTE CONEXAS =====


@dataclass(frozen=True)
class Condensation:
    """
    Condensação de G(A) em um DAG.

    Componentes são numeradas na ordem em que o algoritmo de Tarjan as
    fecha (ordem topológica reversa): toda aresta do DAG vai de um id maior
    para um menor.

    Attributes:
        n: Tamanho do tabuleiro.
        component: Array (n, n) com o id da componente de cada posição.
        members: Posições de cada componente.
        dag_edges: Arestas (origem, destino) entre componentes, ordenadas.
    """

    n: int
    component: np.ndarray
    members: Tuple[Tuple[Position, ...], ...]
    dag_edges: Tuple[Tuple[int, int], ...]

    @property
    def num_components(self) -> int:
        return len(self.members)

    def component_of(self, pos: PositionLike) -> int:
        return int(self.component[pos[0] - 1, pos[1] - 1])

    def is_acyclic(self) -> bool:
        """Verifica o DAG pelo algoritmo de Kahn."""
        indegree = [0] * self.num_components
        out: List[List[int]] = [[] for _ in range(self.num_components)]
        for a, b in self.dag_edges:
            if a == b:
                return False
            out[a].append(b)
            indegree[b] += 1
        ready = deque(c for c in range(self.num_components) if indegree[c] == 0)
        seen = 0
        while ready:
            c = ready.popleft()
            seen += 1
            for d in out[c]:
                indegree[d] -= 1
                if indegree[d] == 0:
                    ready.append(d)
        return seen == self.num_components


def _tarjan(size: int, adjacency: List[List[int]]) -> Tuple[List[int], List[List[int]]]:
    # versão iterativa; a recursiva estoura a pilha para n grandes
    index = [-1] * size
    low = [0] * size
    on_stack = [False] * size
    comp_of = [-1] * size
    stack: List[int] = []
    components: List[List[int]] = []
    counter = 0

    for root in range(size):
        if index[root] != -1:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work = [(root, 0)]
        while work:
            v, pos = work[-1]
            if pos < len(adjacency[v]):
                work[-1] = (v, pos + 1)
                w = adjacency[v][pos]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue

            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp_of[w] = len(components)
                    component.append(w)
                    if w == v:
                        break
                components.append(sorted(component))
    return comp_of, components


def condensation(board: Board) -> Condensation:
    """
    Contrai cada componente fortemente conexa de G(A) em um vértice.

    Returns:
        Condensation cujo DAG é acíclico por construção (verificado).
    """
    n = board.n
    size = n * n
    src, dst = board_edges(board)
    adjacency: List[List[int]] = [[] for _ in range(size)]
    for a, b in zip(src.tolist(), dst.tolist()):
        adjacency[a].append(b)

    comp_of, components = _tarjan(size, adjacency)
    comp = np.array(comp_of, dtype=np.int32)
    dag = sorted({(int(comp[a]), int(comp[b])) for a, b in zip(src, dst) if comp[a] != comp[b]})
    result = Condensation(
        n=n,
        component=comp.reshape(n, n),
        members=tuple(tuple(position_of(n, v) for v in c) for c in components),
        dag_edges=tuple(dag),
    )
    if not result.is_acyclic():
        # não deve acontecer: Tarjan garante a ordem topológica
        raise RuntimeError("Condensação com ciclo")
    logger.debug(f"Condensação n={n}: {result.num_components} componentes")
    return result


def is_all_to_all(board: Board) -> bool:
    """Toda posição alcança toda posição (o DAG é um ponto)?"""
    return condensation(board).num_components == 1


# ===== COMPRIMENTOS DE JOGOS VENCEDORES =====


def winning_lengths(board: Board, cap: int) -> FrozenSet[int]:
    """
    Conjunto de k <= cap tais que existe jogo vencedor com exatamente k jogadas.

    Programação dinâmica por camadas sobre (posição, passo) com as arestas de
    saída do centro removidas: um jogo termina na primeira chegada ao centro.

    Args:
        board: Tabuleiro.
        cap: Maior comprimento considerado (>= 1).

    Raises:
        BoardParameterError: Se ``cap < 1``.
    """
    if cap < 1:
        raise BoardParameterError(f"cap deve ser >= 1 (recebido {cap})")
    n = board.n
    size = n * n
    center = flat_index(n, board.center)
    src, dst = board_edges(board)
    keep = src != center
    src, dst = src[keep], dst[keep]

    frontier = np.zeros(size, dtype=bool)
    frontier[flat_index(n, board.start)] = True
    lengths = set()
    for k in range(1, cap + 1):
        nxt = np.zeros(size, dtype=bool)
        nxt[dst[frontier[src]]] = True
        if nxt[center]:
            lengths.add(k)
        if not nxt.any():
            break
        frontier = nxt
    return frozenset(lengths)


def reverse_distances(board: Board) -> np.ndarray:
    """
    Distância de cada posição até o centro, marcando de trás para frente.

    Primeiro as posições que apontam para o centro, depois as que apontam
    para posições já marcadas, e assim por diante. Retorna array (n, n) com
    -1 onde o centro é inalcançável.
    """
    n = board.n
    size = n * n
    src, dst = board_edges(board)
    incoming: List[List[int]] = [[] for _ in range(size)]
    for a, b in zip(src.tolist(), dst.tolist()):
        incoming[b].append(a)

    center = flat_index(n, board.center)
    dist = np.full(size, -1, dtype=np.int32)
    dist[center] = 0
    queue = deque([center])
    while queue:
        v = queue.popleft()
        for u in incoming[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist.reshape(n, n)
