"""
Censo exato dos 8^9 tabuleiros 3x3 e contagens exatas de tabuleiros curtos.

O censo percorre as 8^8 atribuições das casas fora do centro (a direção do
centro não altera nenhum jogo, então cada classe é multiplicada por 8) com
uma BFS em máscara de bits compilada por numba. Uma amostra aleatória dos
tabuleiros é conferida por um oráculo independente: fecho de Warshall e
potências booleanas da matriz de adjacência.
"""

import itertools
import logging
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Tuple

import numba as nb
import numpy as np

from src.core.board import Board, check_size
from src.core.directions import Direction
from src.core.exceptions import BoardParameterError
from src.stats.estimators import LengthDistribution
from src.utils.config import CENSUS_ORACLE_CHUNK, CENSUS_ORACLE_FRACTION, DEFAULT_SEED
from src.utils.parallel import run_tasks
from src.utils.rng import generator

logger = logging.getLogger(__name__)

CENSUS_SIZE = 3
_CELLS = CENSUS_SIZE * CENSUS_SIZE
_CENTER = _CELLS // 2
_FREE = np.array([k for k in range(1, _CELLS) if k != _CENTER], dtype=np.int64)


def target_table(n: int = CENSUS_SIZE) -> np.ndarray:
    """Tabela (casa, direção) -> máscara de bits dos alvos, para n = 3."""
    probe = Board.uniform(n, Direction.N)
    table = np.zeros((n * n, 8), dtype=np.int64)
    for pos in probe.positions():
        u = (pos.i - 1) * n + (pos.j - 1)
        for d in Direction:
            mask = 0
            for v in probe.ray(pos, d):
                mask |= 1 << ((v.i - 1) * n + (v.j - 1))
            table[u, d] = mask
    return table


@nb.njit(cache=True)
def _bitmask_length(table, codes, size, center_bit):
    # 0 = insolúvel
    reached = 1
    frontier = 1
    steps = 0
    while True:
        steps += 1
        nxt = 0
        for u in range(size):
            if (frontier >> u) & 1:
                nxt |= table[u, codes[u]]
        nxt &= ~reached
        if nxt & center_bit:
            return steps
        if nxt == 0:
            return 0
        reached |= nxt
        frontier = nxt


@nb.njit(cache=True)
def _census_shard(table, free, a11, size, center_bit):
    counts = np.zeros(size, dtype=np.int64)
    first = np.full(size, -1, dtype=np.int64)
    codes = np.zeros(size, dtype=np.int64)
    codes[0] = a11
    nfree = free.shape[0]
    for x in range(8**nfree):
        y = x
        for k in range(nfree):
            codes[free[k]] = y & 7
            y >>= 3
        length = _bitmask_length(table, codes, size, center_bit)
        counts[length] += 1
        if first[length] < 0:
            first[length] = x
    return counts, first


@nb.njit(cache=True)
def _batch_lengths(table, codes, center_bit):
    out = np.zeros(codes.shape[0], dtype=np.int64)
    size = codes.shape[1]
    for b in range(codes.shape[0]):
        out[b] = _bitmask_length(table, codes[b], size, center_bit)
    return out


def _shard_task(a11: int) -> Tuple[np.ndarray, np.ndarray]:
    return _census_shard(target_table(), _FREE, a11, _CELLS, 1 << _CENTER)


# ===== ORÁCULO =====


def _adjacency_rows(table: np.ndarray) -> np.ndarray:
    size = table.shape[0]
    bits = 1 << np.arange(size, dtype=np.int64)
    return (table[:, :, None] & bits[None, None, :]) != 0


def oracle_lengths(codes: np.ndarray) -> np.ndarray:
    """
    Comprimentos de um lote de tabuleiros 3x3 (0 = insolúvel) sem BFS.

    Args:
        codes: Array (B, 9) de códigos em ordem de linha.

    Returns:
        Array (B,) vindo de potências booleanas da adjacência (arestas do
        centro removidas); a solubilidade é conferida por um fecho de
        Warshall e qualquer divergência interna gera RuntimeError.
    """
    table = target_table()
    rows = _adjacency_rows(table)
    size = table.shape[0]
    adj = rows[np.arange(size)[None, :], codes]
    adj[:, _CENTER, :] = False

    batch = codes.shape[0]
    frontier = np.zeros((batch, size), dtype=np.uint8)
    frontier[:, 0] = 1
    lengths = np.zeros(batch, dtype=np.int64)
    adj8 = adj.astype(np.uint8)
    for k in range(1, size):
        frontier = (np.einsum("bu,buv->bv", frontier, adj8) > 0).astype(np.uint8)
        hit = (lengths == 0) & (frontier[:, _CENTER] == 1)
        lengths[hit] = k

    closure = adj | np.eye(size, dtype=bool)[None, :, :]
    for k in range(size):
        closure = closure | (closure[:, :, k, None] & closure[:, None, k, :])
    if not np.array_equal(closure[:, 0, _CENTER], lengths > 0):
        raise RuntimeError("Fecho de Warshall e potências booleanas divergem")
    return lengths


def decode_indices(indices: np.ndarray) -> np.ndarray:
    """Índice do tabuleiro em [0, 8^9) -> códigos (casa k = dígito octal k)."""
    shifts = 3 * np.arange(_CELLS, dtype=np.int64)
    return (indices[:, None] >> shifts[None, :]) & 7


def oracle_check(fraction: float, seed: int = DEFAULT_SEED) -> Tuple[int, int]:
    """
    Confere o kernel do censo contra o oráculo numa amostra aleatória.

    Returns:
        (tabuleiros conferidos, divergências).
    """
    total = 8**_CELLS
    count = int(round(fraction * total))
    if count <= 0:
        return 0, 0
    rng = generator(seed)
    indices = rng.integers(0, total, size=count, dtype=np.int64)
    table = target_table()
    mismatches = 0
    for start in range(0, count, CENSUS_ORACLE_CHUNK):
        codes = decode_indices(indices[start : start + CENSUS_ORACLE_CHUNK])
        expected = oracle_lengths(codes)
        got = _batch_lengths(table, codes, 1 << _CENTER)
        mismatches += int(np.count_nonzero(expected != got))
    if mismatches:
        logger.error(f"❌ Oráculo divergiu em {mismatches} de {count} tabuleiros")
    else:
        logger.info(f"✅ Oráculo confere {count} tabuleiros")
    return count, mismatches


# ===== CENSO =====


@dataclass(frozen=True)
class CensusResult:
    """
    Resultado completo do censo 3x3.

    Attributes:
        distribution: Contagens exatas por comprimento (total 8^9).
        start_solvable: Tabuleiros solúveis por direção de a11.
        max_length: ML(3).
        witness: Primeiro tabuleiro (ordem de enumeração) com comprimento ML(3).
        oracle_checked: Tabuleiros conferidos pelo oráculo.
        oracle_mismatches: Divergências encontradas.
    """

    distribution: LengthDistribution
    start_solvable: Dict[Direction, int]
    max_length: int
    witness: Board
    oracle_checked: int
    oracle_mismatches: int
    elapsed_ms: float = 0.0

    def to_dict(self, timing: bool = True) -> Dict[str, Any]:
        dist = self.distribution
        data: Dict[str, Any] = {
            "op": "census",
            "n": dist.n,
            "total": dist.total,
            "solvable": dist.solvable,
            "unsolvable": dist.unsolvable,
            "mean_length": dist.mean(),
            "max_length": self.max_length,
            "witness": ["".join(str(int(c)) for c in row) for row in self.witness.cells],
            "histogram": dist.histogram(),
            "start_solvable": {d.name: c for d, c in self.start_solvable.items()},
            "oracle_checked": self.oracle_checked,
            "oracle_mismatches": self.oracle_mismatches,
        }
        if timing:
            data["elapsed_ms"] = round(self.elapsed_ms, 3)
        return data


def _check_census_size(n: int) -> None:
    if check_size(n) != CENSUS_SIZE:
        raise BoardParameterError(f"O censo exato só é viável para n=3 (recebido {n})")


def run_census(
    n: int = CENSUS_SIZE,
    workers: int = 1,
    oracle_fraction: float = CENSUS_ORACLE_FRACTION,
    seed: int = DEFAULT_SEED,
) -> CensusResult:
    """
    Enumera todos os tabuleiros 3x3.

    Args:
        n: Deve ser 3.
        workers: Processos (um fragmento por direção de a11).
        oracle_fraction: Fração de 8^9 conferida pelo oráculo (0 desliga).
        seed: Semente da amostra do oráculo.

    Raises:
        BoardParameterError: Para n != 3.
    """
    _check_census_size(n)
    began = time.perf_counter()
    logger.info("🔄 Censo 3x3: 8^9 tabuleiros")
    shards = run_tasks(_shard_task, list(range(8)), workers)

    multiplicity = 8  # direção do centro
    counts: Dict[int, int] = {}
    unsolvable = 0
    start_solvable: Dict[Direction, int] = {}
    for a11, (shard_counts, _) in enumerate(shards):
        unsolvable += int(shard_counts[0]) * multiplicity
        for length in range(1, _CELLS):
            if shard_counts[length]:
                counts[length] = counts.get(length, 0) + int(shard_counts[length]) * multiplicity
        start_solvable[Direction(a11)] = int(shard_counts[1:].sum()) * multiplicity
    dist = LengthDistribution(CENSUS_SIZE, counts, unsolvable)

    max_length = dist.max_length
    a11 = next(a for a, (c, _) in enumerate(shards) if c[max_length] > 0)
    local = int(shards[a11][1][max_length])
    codes = np.zeros(_CELLS, dtype=np.int8)
    codes[0] = a11
    for k, cell in enumerate(_FREE):
        codes[cell] = (local >> (3 * k)) & 7
    witness = Board(codes.reshape(CENSUS_SIZE, CENSUS_SIZE))

    checked, mismatches = oracle_check(oracle_fraction, seed)
    elapsed = (time.perf_counter() - began) * 1000
    logger.info(f"✅ Censo concluído: |Sol_3|={dist.solvable}, ML(3)={max_length}")
    return CensusResult(dist, start_solvable, max_length, witness, checked, mismatches, elapsed)


def exact_census(n: int = CENSUS_SIZE, workers: int = 1) -> LengthDistribution:
    """
    Distribuição exata de comprimentos dos 8^9 tabuleiros 3x3.

    Example:
        >>> exact_census(3).counts[1]
        16777216
    """
    return run_census(n, workers, oracle_fraction=0.0).distribution


@lru_cache(maxsize=1)
def cached_census() -> CensusResult:
    """Censo sem oráculo, calculado uma vez por processo."""
    return run_census(oracle_fraction=0.0)


# ===== CONTAGEM DE TABULEIROS CURTOS =====


def count_short_boards(n: int, k: int) -> int:
    """
    Número exato de tabuleiros n x n de comprimento k, para k ∈ {1, 2}.

    Para cada direção de a11 só importam as casas do seu raio que conseguem
    apontar para o centro; elas são enumeradas e as demais casas entram como
    multiplicidade 8^(livres).

    Example:
        >>> count_short_boards(3, 2)
        7864320
    """
    n = check_size(n)
    if k not in (1, 2):
        raise BoardParameterError(f"k deve ser 1 ou 2 (recebido {k})")
    probe = Board.uniform(n, Direction.N)
    center = probe.center
    cells = n * n
    total = 0
    for a11 in Direction:
        first = probe.ray(probe.start, a11)
        if k == 1:
            if center in first:
                total += 8 ** (cells - 1)
            continue
        if center in first:
            continue
        relevant: List = [v for v in first if any(center in probe.ray(v, d) for d in Direction)]
        hits = sum(
            1
            for combo in itertools.product(Direction, repeat=len(relevant))
            if any(center in probe.ray(v, d) for v, d in zip(relevant, combo))
        )
        total += hits * 8 ** (cells - 1 - len(relevant))
    return total
