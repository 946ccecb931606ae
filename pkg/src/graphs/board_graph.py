"""
O grafo G(A) de um tabuleiro: graus, distâncias ao centro, totais de
arestas e exportação DOT.
"""

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from src.core.board import Board, Position, check_size, random_board
from src.core.game import Game
from src.solver.reachability import board_edges, position_of
from src.utils.config import DEFAULT_SEED
from src.utils.parallel import index_chunks, run_tasks
from src.utils.rng import substream_seed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoardGraph:
    """
    Grafo dirigido "duplamente enraizado" de um tabuleiro.

    Attributes:
        n: Tamanho do tabuleiro.
        edges: Arestas (u, v) com u direcionando para v.
        begin: Raiz inicial (1,1).
        end: Raiz final (o centro).
    """

    n: int
    edges: Tuple[Tuple[Position, Position], ...]
    begin: Position
    end: Position

    @property
    def vertices(self) -> Tuple[Position, ...]:
        return tuple(position_of(self.n, k) for k in range(self.n * self.n))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def out_degrees(self) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=np.int64)
        for u, _ in self.edges:
            out[u.i - 1, u.j - 1] += 1
        return out

    def in_degrees(self) -> np.ndarray:
        inn = np.zeros((self.n, self.n), dtype=np.int64)
        for _, v in self.edges:
            inn[v.i - 1, v.j - 1] += 1
        return inn

    def shortest_path_length(self) -> Optional[int]:
        """BFS de begin a end sobre a lista de arestas (parando em end)."""
        succ: Dict[Position, List[Position]] = {}
        for u, v in self.edges:
            succ.setdefault(u, []).append(v)
        dist = {self.begin: 0}
        frontier = [self.begin]
        while frontier:
            nxt = []
            for u in frontier:
                if u == self.end:
                    return dist[u]
                for v in succ.get(u, []):
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        nxt.append(v)
            frontier = nxt
        return None


def build_graph(board: Board) -> BoardGraph:
    """
    Constrói G(A): aresta (u, v) sse a casa u está direcionando para v.

    Example:
        >>> build_graph(Board.uniform(3, Direction.N)).num_edges
        9
    """
    n = board.n
    src, dst = board_edges(board)
    edges = tuple((position_of(n, a), position_of(n, b)) for a, b in zip(src.tolist(), dst.tolist()))
    return BoardGraph(n=n, edges=edges, begin=board.start, end=board.center)


# ===== GRAUS E DISTÂNCIA AO CENTRO =====


def distance_matrix(n: int) -> np.ndarray:
    """d(v) para todas as posições, array (n, n)."""
    c = (n - 1) // 2
    idx = np.arange(n)
    return np.maximum(np.abs(idx - c)[:, None], np.abs(idx - c)[None, :])


def distance_classes(n: int) -> Dict[int, int]:
    """Quantos vértices há a cada distância: 1 em d=0 e 8k em d=k."""
    values, counts = np.unique(distance_matrix(check_size(n)), return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}


@dataclass(frozen=True)
class DegreeViolation:
    position: Position
    rule: str
    value: int


@dataclass(frozen=True)
class DegreeReport:
    """
    Graus de saída/entrada e distância ao centro de cada vértice.

    Attributes:
        n: Tamanho.
        out_degree: Out(v), array (n, n).
        in_degree: In(v), array (n, n).
        distance: d(v), array (n, n).
        total_edges: Número total de arestas.
        violations: Regras violadas (vazio para tabuleiros planos).
    """

    n: int
    out_degree: np.ndarray
    in_degree: np.ndarray
    distance: np.ndarray
    total_edges: int
    violations: Tuple[DegreeViolation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_frame(self) -> pd.DataFrame:
        """Uma linha por vértice: i, j, d, out, in."""
        ii, jj = np.indices((self.n, self.n))
        return pd.DataFrame(
            {
                "i": ii.ravel() + 1,
                "j": jj.ravel() + 1,
                "d": self.distance.ravel(),
                "out": self.out_degree.ravel(),
                "in": self.in_degree.ravel(),
            }
        )


def degree_arrays(board: Board) -> Tuple[np.ndarray, np.ndarray, int]:
    """(Out, In, |E|) calculados direto dos arrays de arestas."""
    n = board.n
    src, dst = board_edges(board)
    out = np.bincount(src, minlength=n * n).reshape(n, n)
    inn = np.bincount(dst, minlength=n * n).reshape(n, n)
    return out, inn, int(src.size)


def degree_report(board: Board) -> DegreeReport:
    """
    Calcula graus e confere as desigualdades de grau.

    Para tabuleiros planos verifica, para todo v,
    (n-1)/2 - d(v) <= Out(v) <= (n-1)/2 + d(v), Out(centro) = (n-1)/2,
    Out((1,1)) em {0, n-1} e soma de Out = soma de In = |E|.
    """
    n = board.n
    half = (n - 1) // 2
    out, inn, total = degree_arrays(board)
    dist = distance_matrix(n)
    violations: List[DegreeViolation] = []

    if out.sum() != total or inn.sum() != total:
        violations.append(DegreeViolation(board.start, "sum-out-in", int(out.sum())))

    if board.topology == "plain":
        low = out < half - dist
        high = out > half + dist
        for i, j in zip(*np.nonzero(low | high)):
            violations.append(DegreeViolation(Position(i + 1, j + 1), "out-bounds", int(out[i, j])))
        c = half
        if out[c, c] != half:
            violations.append(DegreeViolation(board.center, "out-center", int(out[c, c])))
        if out[0, 0] not in (0, n - 1):
            violations.append(DegreeViolation(board.start, "out-start", int(out[0, 0])))

    if violations:
        logger.warning(f"⚠️ {len(violations)} violações de grau em n={n}")
    return DegreeReport(n, out, inn, dist, total, tuple(violations))


@dataclass(frozen=True)
class InDegreeReport:
    """
    Restrições do grau de entrada.

    Attributes:
        max_in: Maior In(v) observado.
        bound: 4(n-1).
        violations: Posições que violam In(v) <= 4(n-1) - 2 d(v) ou a
            consequência In(v) = 4(n-1) => d(v) = 0 e Out(v) = (n-1)/2.
    """

    n: int
    max_in: int
    bound: int
    violations: Tuple[DegreeViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def in_degree_constraint_check(board: Board) -> InDegreeReport:
    """
    Confere que In(v) grande força v perto do centro.

    Só casas nas 4 linhas por v podem apontar para v, e essas linhas somam
    4(n-1) - 2 d(v) casas além de v; daí In(v) <= 4(n-1) e, na igualdade,
    d(v) = 0 e Out(v) = (n-1)/2.
    """
    n = board.n
    out, inn, _ = degree_arrays(board)
    dist = distance_matrix(n)
    bound = 4 * (n - 1)
    violations: List[DegreeViolation] = []
    for i, j in zip(*np.nonzero(inn > bound - 2 * dist)):
        violations.append(DegreeViolation(Position(i + 1, j + 1), "in-line-bound", int(inn[i, j])))
    for i, j in zip(*np.nonzero(inn == bound)):
        if dist[i, j] != 0 or out[i, j] != (n - 1) // 2:
            violations.append(DegreeViolation(Position(i + 1, j + 1), "in-max", int(inn[i, j])))
    return InDegreeReport(n, int(inn.max()), bound, tuple(violations))


# ===== VARREDURA DE GRAUS =====


@dataclass(frozen=True)
class DegreeSweepReport:
    """
    Contagem de violações das regras de grau em tabuleiros aleatórios.

    Attributes:
        violations: Violações por regra (só regras com ocorrência).
        max_in: Maior In(v) visto em todas as amostras.
    """

    n: int
    samples: int
    seed: int
    workers: int
    violations: Dict[str, int]
    max_in: int
    elapsed_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self, timing: bool = True) -> Dict[str, object]:
        data: Dict[str, object] = {
            "op": "degrees",
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "violations": dict(sorted(self.violations.items())),
            "max_in": self.max_in,
            "in_bound": 4 * (self.n - 1),
        }
        if timing:
            data["workers"] = self.workers
            data["elapsed_ms"] = round(self.elapsed_ms, 3)
        return data


def _sweep_chunk(task: Tuple[int, int, int, int]) -> Tuple[Dict[str, int], int]:
    n, seed, start, stop = task
    counts: Dict[str, int] = {}
    max_in = 0
    for index in range(start, stop):
        board = random_board(n, substream_seed(seed, index))
        found = degree_report(board).violations + in_degree_constraint_check(board).violations
        for v in found:
            counts[v.rule] = counts.get(v.rule, 0) + 1
        max_in = max(max_in, int(degree_arrays(board)[1].max()))
    return counts, max_in


def degree_sweep(n: int, samples: int, seed: int = DEFAULT_SEED, workers: int = 1) -> DegreeSweepReport:
    """
    Confere as regras de grau em ``samples`` tabuleiros uniformes.

    A amostra i usa ``substream_seed(seed, i)``.
    """
    n = check_size(n)
    began = time.perf_counter()
    counts: Dict[str, int] = {}
    max_in = 0
    tasks = [(n, seed, a, b) for a, b in index_chunks(samples)]
    for part, top in run_tasks(_sweep_chunk, tasks, workers):
        for rule, c in part.items():
            counts[rule] = counts.get(rule, 0) + c
        max_in = max(max_in, top)
    if counts:
        logger.error(f"❌ Violações de grau em n={n}: {counts}")
    else:
        logger.info(f"✅ Regras de grau confirmadas em {samples} tabuleiros (n={n})")
    elapsed = (time.perf_counter() - began) * 1000
    return DegreeSweepReport(n, samples, seed, workers, counts, max_in, elapsed)


# ===== TOTAIS EXTREMOS DE ARESTAS =====


@dataclass(frozen=True)
class EdgeTotals:
    """
    Totais mínimo e máximo de arestas para o tamanho n.

    Attributes:
        min_total: (n-1)/2 + (n²-1)(n-3)/6, contado diretamente.
        max_total: (n-1)/2 + (n²-1)(5n-3)/6, contado diretamente.
        printed_min: n³/6 - n²/2 + 5n/6 - 1/2 (fórmula impressa).
        printed_max: 5n³/6 - n²/2 + n/6 - 1/2 (fórmula impressa).
        verified: Os tabuleiros extremos construídos atingem min/max.
    """

    n: int
    min_total: int
    max_total: int
    printed_min: Fraction
    printed_max: Fraction
    verified: bool

    @property
    def printed_offset(self) -> Fraction:
        """Diferença entre as fórmulas impressas e a contagem direta: (n-1)/2."""
        return self.printed_min - self.min_total

    def to_dict(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "min_total": self.min_total,
            "max_total": self.max_total,
            "printed_min": str(self.printed_min),
            "printed_max": str(self.printed_max),
            "printed_offset": str(self.printed_offset),
            "verified": self.verified,
        }


def extremal_edge_totals(n: int) -> EdgeTotals:
    """
    Totais extremos de arestas, conferidos por tabuleiros construídos.

    A contagem direta soma (n-1)/2 para o centro (d=0), enquanto as fórmulas
    impressas somam n-1 nesse termo; ambas são devolvidas lado a lado.

    Example:
        >>> t = extremal_edge_totals(3)
        >>> (t.min_total, t.max_total, t.printed_min, t.printed_max)
        (1, 17, Fraction(2, 1), Fraction(18, 1))
    """
    from src.search.constructions import extremal_degree_board

    n = check_size(n)
    half = (n - 1) // 2
    min_total = half + (n * n - 1) * (n - 3) // 6
    max_total = half + (n * n - 1) * (5 * n - 3) // 6
    printed_min = Fraction(n**3, 6) - Fraction(n**2, 2) + Fraction(5 * n, 6) - Fraction(1, 2)
    printed_max = Fraction(5 * n**3, 6) - Fraction(n**2, 2) + Fraction(n, 6) - Fraction(1, 2)

    counted_min = degree_arrays(extremal_degree_board(n, "min"))[2]
    counted_max = degree_arrays(extremal_degree_board(n, "max"))[2]
    verified = counted_min == min_total and counted_max == max_total
    if not verified:
        logger.error(f"❌ Totais construídos ({counted_min}, {counted_max}) divergem em n={n}")
    return EdgeTotals(n, min_total, max_total, printed_min, printed_max, verified)


# ===== EXPORTAÇÃO DOT =====


def _node_id(pos: Position) -> str:
    return f'"{pos.i}_{pos.j}"'


def export_dot(graph: BoardGraph, highlight: Optional[Game] = None) -> str:
    """
    Exporta G(A) como digrafo DOT.

    Vértices se chamam "i_j"; a raiz inicial e a final têm estilos próprios.
    Se ``highlight`` for dado, as arestas do jogo saem em negrito.
    """
    path_edges = set()
    if highlight is not None:
        path_edges = set(zip(highlight.moves, highlight.moves[1:]))

    lines = ["digraph board {", "  node [shape=circle];"]
    for v in graph.vertices:
        attrs = [f'label="{v.i},{v.j}"']
        if v == graph.begin:
            attrs += ["shape=doublecircle", "style=filled", "fillcolor=lightgray"]
        elif v == graph.end:
            attrs += ["shape=doublecircle", "style=filled", "fillcolor=gold"]
        lines.append(f"  {_node_id(v)} [{', '.join(attrs)}];")
    for u, v in graph.edges:
        style = " [penwidth=2.5, color=blue]" if (u, v) in path_edges else ""
        lines.append(f"  {_node_id(u)} -> {_node_id(v)}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
