"""
Busca de tabuleiros longos por recozimento simulado e o valor exato ML(3).

Cada reinício tem seu próprio gerador Philox; os reinícios avançam em
rodadas de ``CHECKPOINT_EVERY`` iterações e, ao fim de cada rodada, o
melhor tabuleiro global é gravado como ponto de retomada.
"""

import json
import logging
import math
import os
import time
from dataclasses import dataclass, replace
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.core.board import Board, check_size
from src.core.board_io import read_board, serialize_board
from src.core.exceptions import BoardParameterError
from src.search.constructions import spiral_board
from src.solver.bfs import run_bfs, solve
from src.stats.census import CENSUS_SIZE, cached_census
from src.utils.config import (
    ANNEAL_BUDGET,
    ANNEAL_COOLING,
    ANNEAL_RESTARTS,
    ANNEAL_T0,
    ANNEAL_T_MIN,
    ANNEAL_UNSOLVABLE_SCORE,
    CHECKPOINT_EVERY,
    DEFAULT_SEED,
)
from src.utils.exporters import write_text
from src.utils.parallel import run_tasks
from src.utils.rng import generator, substream_seed

logger = logging.getLogger(__name__)


# ===== ML(3) EXATO =====


def ml_exact(n: int = CENSUS_SIZE) -> int:
    """
    ML(3): maior comprimento entre os tabuleiros 3x3 solúveis, via censo.

    Raises:
        BoardParameterError: Para n != 3.
    """
    if check_size(n) != CENSUS_SIZE:
        raise BoardParameterError(f"ML exato só é calculado para n=3 (recebido {n})")
    return cached_census().max_length


def ml_witness(n: int = CENSUS_SIZE) -> Board:
    """Tabuleiro 3x3 que atinge ML(3) (o primeiro na ordem do censo)."""
    ml_exact(n)
    return cached_census().witness


# ===== RELATÓRIO =====


@dataclass(frozen=True)
class SearchReport:
    """
    Resultado da busca de tabuleiros longos.

    Attributes:
        n: Tamanho.
        best_board: Melhor tabuleiro encontrado (sempre solúvel).
        best_length: solve(best_board).length.
        iterations: Iterações por reinício (acumuladas com a retomada).
        restarts: Número de reinícios.
        seed: Semente.
        accepted: Movimentos aceitos somando todos os reinícios.
        restart_lengths: Melhor comprimento de cada reinício.
    """

    n: int
    best_board: Board
    best_length: int
    iterations: int
    restarts: int
    seed: int
    accepted: int
    restart_lengths: Tuple[int, ...]
    elapsed_ms: float = 0.0

    @property
    def ratio(self) -> float:
        return self.best_length / self.n

    def to_dict(self, timing: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "op": "long-board",
            "n": self.n,
            "best_length": self.best_length,
            "ratio": self.ratio,
            "iterations": self.iterations,
            "restarts": self.restarts,
            "seed": self.seed,
            "accepted": self.accepted,
            "restart_lengths": list(self.restart_lengths),
            "board": serialize_board(self.best_board),
        }
        if timing:
            data["elapsed_ms"] = round(self.elapsed_ms, 3)
        return data


# ===== RECOZIMENTO =====


@dataclass(frozen=True)
class _RestartState:
    index: int
    cells: np.ndarray
    best_cells: np.ndarray
    current: int
    best: int
    temperature: float
    rng_state: Dict[str, Any]
    accepted: int = 0


def score_cells(cells: np.ndarray) -> int:
    """Comprimento do tabuleiro, ou a penalidade se for insolúvel."""
    n = cells.shape[0]
    center = (n * n) // 2
    dist, _, _ = run_bfs(cells, 0, center)
    return int(dist[center]) if dist[center] >= 0 else ANNEAL_UNSOLVABLE_SCORE


def _advance(task: Tuple[_RestartState, int]) -> _RestartState:
    state, steps = task
    bit_gen = np.random.Philox()
    bit_gen.state = state.rng_state
    rng = np.random.Generator(bit_gen)

    cells = state.cells.copy()
    best_cells = state.best_cells.copy()
    current, best, temperature, accepted = state.current, state.best, state.temperature, state.accepted
    n = cells.shape[0]
    center = (n * n) // 2

    for _ in range(steps):
        k = int(rng.integers(0, n * n - 1))
        k = k + 1 if k >= center else k
        i, j = divmod(k, n)
        code = int(rng.integers(0, 8))
        draw = rng.random()
        old = cells[i, j]
        if code == old:
            temperature = max(temperature * ANNEAL_COOLING, ANNEAL_T_MIN)
            continue
        cells[i, j] = code
        candidate = score_cells(cells)
        delta = candidate - current
        if delta >= 0 or draw < math.exp(delta / temperature):
            current = candidate
            accepted += 1
            if current > best:
                best = current
                best_cells = cells.copy()
        else:
            cells[i, j] = old
        temperature = max(temperature * ANNEAL_COOLING, ANNEAL_T_MIN)

    return replace(
        state,
        cells=cells,
        best_cells=best_cells,
        current=current,
        best=best,
        temperature=temperature,
        rng_state=bit_gen.state,
        accepted=accepted,
    )


# ===== PONTOS DE RETOMADA =====


def save_checkpoint(path: str, board: Board, length: int, iteration: int, seed: int) -> None:
    """Grava o tabuleiro (formato texto) e o arquivo lateral ``<path>.json``."""
    write_text(path, serialize_board(board))
    sidecar = {"length": length, "iter": iteration, "seed": seed}
    write_text(f"{path}.json", json.dumps(sidecar) + "\n")


def load_checkpoint(path: str) -> Tuple[Board, Dict[str, int]]:
    """
    Lê um ponto de retomada.

    Raises:
        BoardParseError: Se o tabuleiro estiver mal formado.
        FileNotFoundError: Se algum dos arquivos não existir.
    """
    board = read_board(path)
    with open(f"{path}.json", "r", encoding="utf-8") as fh:
        meta = json.load(fh)
    return board, meta


# ===== BUSCA =====


def long_board_search(
    n: int,
    budget: int = ANNEAL_BUDGET,
    restarts: int = ANNEAL_RESTARTS,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
    checkpoint: Optional[str] = None,
    resume: bool = False,
) -> SearchReport:
    """
    Recozimento simulado sobre mutações de uma casa, partindo da espiral.

    Args:
        n: Tamanho ímpar >= 5.
        budget: Iterações por reinício.
        restarts: Reinícios independentes.
        seed: Semente; o reinício r usa o fluxo Philox (seed, r + 1).
        workers: Processos.
        checkpoint: Caminho do ponto de retomada (opcional).
        resume: Parte do tabuleiro gravado em ``checkpoint``.

    Returns:
        SearchReport com o melhor tabuleiro; empates entre reinícios ficam
        com o de menor índice.

    Raises:
        BoardParameterError: Se n < 5, ``budget`` < 0 ou ``restarts`` < 1.
    """
    n = check_size(n)
    if n < 5:
        raise BoardParameterError(f"A busca exige n >= 5 (recebido {n})")
    if budget < 0 or restarts < 1:
        raise BoardParameterError("budget deve ser >= 0 e restarts >= 1")
    began = time.perf_counter()

    start = spiral_board(n)
    offset = 0
    run_seed = seed
    if resume and checkpoint and os.path.exists(checkpoint):
        saved, meta = load_checkpoint(checkpoint)
        if saved.n != n:
            raise BoardParameterError(f"Ponto de retomada com n={saved.n}, pedido n={n}")
        if int(meta.get("seed", seed)) != seed:
            logger.warning(f"⚠️ Ponto de retomada gravado com seed={meta.get('seed')}")
        offset = int(meta.get("iter", 0))
        run_seed = substream_seed(seed, offset)
        saved_length = solve(saved).length
        if saved_length is not None and saved_length >= 2 * n - 1:
            start = saved
        logger.info(f"🔄 Retomando de {checkpoint} (iter={offset})")

    initial = score_cells(start.cells)
    states = [
        _RestartState(
            index=r,
            cells=start.cells.copy(),
            best_cells=start.cells.copy(),
            current=initial,
            best=initial,
            temperature=ANNEAL_T0,
            rng_state=generator(run_seed, r + 1).bit_generator.state,
        )
        for r in range(restarts)
    ]

    done = 0
    while done < budget:
        steps = min(CHECKPOINT_EVERY, budget - done)
        states = run_tasks(_advance, [(s, steps) for s in states], workers)
        done += steps
        if checkpoint:
            leader = _leader(states)
            save_checkpoint(checkpoint, Board(leader.best_cells), leader.best, offset + done, seed)
        logger.debug(f"Busca n={n}: {done}/{budget} iterações, melhor {_leader(states).best}")

    leader = _leader(states)
    best_board = Board(leader.best_cells)
    best_length = solve(best_board).length
    if best_length != leader.best:
        raise RuntimeError("Comprimento registrado diverge da BFS")
    if checkpoint:
        save_checkpoint(checkpoint, best_board, best_length, offset + done, seed)

    report = SearchReport(
        n=n,
        best_board=best_board,
        best_length=best_length,
        iterations=offset + budget,
        restarts=restarts,
        seed=seed,
        accepted=sum(s.accepted for s in states),
        restart_lengths=tuple(s.best for s in states),
        elapsed_ms=(time.perf_counter() - began) * 1000,
    )
    logger.info(f"✅ Busca n={n}: comprimento {best_length} (razão {report.ratio:.3f})")
    return report


def _leader(states: List[_RestartState]) -> _RestartState:
    # max por comprimento; empate fica com o menor índice
    return max(states, key=lambda s: (s.best, -s.index))


def ratio_series(
    ns: Sequence[int],
    budget: int = ANNEAL_BUDGET,
    restarts: int = ANNEAL_RESTARTS,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
) -> pd.DataFrame:
    """
    Série (n, melhor comprimento, razão) para acompanhar ML(n)/n.

    Os valores são evidência empírica, nunca cotas provadas.
    """
    rows = []
    for n in ns:
        report = long_board_search(n, budget, restarts, seed, workers)
        rows.append(
            {
                "n": n,
                "spiral_length": 2 * n - 1,
                "best_length": report.best_length,
                "ratio": report.ratio,
            }
        )
    return pd.DataFrame(rows, columns=["n", "spiral_length", "best_length", "ratio"])
