"""
Estimadores Monte Carlo com sementes por amostra.

A amostra i usa ``substream_seed(seed, i)``; os blocos de amostras são
combinados por soma de contagens inteiras, então o relatório é idêntico
para qualquer número de workers.
"""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from scipy import stats as sps

from src.core.board import Board, check_size, random_cells
from src.core.directions import Direction
from src.core.exceptions import BoardParameterError, SamplingBudgetError
from src.solver.bfs import solve_cells
from src.utils.config import CONFIDENCE_LEVEL, DEFAULT_SEED, SAMPLING_MAX_ATTEMPTS
from src.utils.exporters import frame_to_csv
from src.utils.parallel import index_chunks, run_tasks
from src.utils.rng import substream_seed

logger = logging.getLogger(__name__)


# ===== DISTRIBUIÇÃO DE COMPRIMENTOS =====


@dataclass(frozen=True)
class LengthDistribution:
    """
    Contagem de tabuleiros por comprimento.

    Attributes:
        n: Tamanho.
        counts: Comprimento -> quantidade de tabuleiros solúveis.
        unsolvable: Quantidade de tabuleiros insolúveis.
    """

    n: int
    counts: Dict[int, int] = field(default_factory=dict)
    unsolvable: int = 0

    def __post_init__(self) -> None:
        limit = self.n * self.n - 1
        for length in self.counts:
            if not 1 <= length <= limit:
                raise BoardParameterError(f"Comprimento {length} fora de 1..{limit}")
        object.__setattr__(self, "counts", dict(sorted(self.counts.items())))

    @property
    def solvable(self) -> int:
        return sum(self.counts.values())

    @property
    def total(self) -> int:
        return self.solvable + self.unsolvable

    @property
    def max_length(self) -> Optional[int]:
        present = [k for k, c in self.counts.items() if c]
        return max(present) if present else None

    def fraction(self, length: int) -> float:
        """P(comprimento = length | solúvel)."""
        return self.counts.get(length, 0) / self.solvable if self.solvable else 0.0

    def tail_fraction(self, start: int) -> float:
        """P(comprimento >= start | solúvel)."""
        if not self.solvable:
            return 0.0
        return sum(c for k, c in self.counts.items() if k >= start) / self.solvable

    def mean(self) -> float:
        if not self.solvable:
            return float("nan")
        return sum(k * c for k, c in self.counts.items()) / self.solvable

    def variance(self) -> float:
        """Variância amostral (ddof=1) dos comprimentos."""
        m = self.solvable
        if m < 2:
            return 0.0
        mu = self.mean()
        return sum(c * (k - mu) ** 2 for k, c in self.counts.items()) / (m - 1)

    def merged(self, other: "LengthDistribution") -> "LengthDistribution":
        counts = dict(self.counts)
        for k, c in other.counts.items():
            counts[k] = counts.get(k, 0) + c
        return LengthDistribution(self.n, counts, self.unsolvable + other.unsolvable)

    def scaled(self, factor: int) -> "LengthDistribution":
        return LengthDistribution(
            self.n, {k: c * factor for k, c in self.counts.items()}, self.unsolvable * factor
        )

    def histogram(self) -> Dict[str, int]:
        data = {str(k): c for k, c in self.counts.items()}
        if self.unsolvable:
            data["unsolvable"] = self.unsolvable
        return data

    def to_frame(self) -> pd.DataFrame:
        """Uma linha por classe; comprimento 0 representa "insolúvel"."""
        rows = [(0, self.unsolvable)] + list(self.counts.items())
        frame = pd.DataFrame(rows, columns=["length", "count"])
        frame["fraction"] = frame["count"] / self.total if self.total else 0.0
        return frame

    def to_csv(self, path: Optional[str] = None) -> str:
        return frame_to_csv(self.to_frame(), path)


# ===== RELATÓRIO =====


@dataclass(frozen=True)
class EstimateReport:
    """
    Estimativa Monte Carlo com erro padrão e IC 95% (aproximação normal).

    Attributes:
        op: Operação ("solvable-prob", "expected-length", ...).
        n: Tamanho.
        samples: Tabuleiros sorteados.
        estimate: Estimativa pontual.
        stderr: Erro padrão.
        ci95: estimativa ± 1,96·stderr (ou Wilson, se pedido).
        seed: Semente.
        workers: Processos usados (só sai junto com elapsed_ms).
        histogram: Contagens por comprimento.
        solvable_samples: Amostras solúveis (quando se aplica).
        elapsed_ms: Tempo de execução.
        variant: "torus" ou "cube" para as extensões.
    """

    op: str
    n: int
    samples: int
    estimate: float
    stderr: float
    ci95: Tuple[float, float]
    seed: int
    workers: int
    histogram: Dict[str, int]
    solvable_samples: Optional[int] = None
    elapsed_ms: float = 0.0
    variant: Optional[str] = None
    distribution: Optional[LengthDistribution] = field(default=None, repr=False, compare=False)

    @property
    def acceptance_rate(self) -> Optional[float]:
        """Fração de sorteios aceitos pelo amostrador por rejeição."""
        if self.solvable_samples is None or not self.samples:
            return None
        return self.solvable_samples / self.samples

    def to_dict(self, timing: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {"op": self.op}
        if self.variant:
            data["variant"] = self.variant
        data.update(
            {
                "n": self.n,
                "samples": self.samples,
                "solvable_samples": self.solvable_samples,
                "estimate": self.estimate,
                "stderr": self.stderr,
                "ci95": [self.ci95[0], self.ci95[1]],
                "seed": self.seed,
                "histogram": self.histogram,
            }
        )
        if timing:
            data["workers"] = self.workers
            data["elapsed_ms"] = round(self.elapsed_ms, 3)
        return data


def z_score(confidence: float = CONFIDENCE_LEVEL) -> float:
    """
    Quantil normal bilateral para o nível de confiança.

    Example:
        >>> round(z_score(0.95), 2)
        1.96
    """
    if not 0 < confidence < 1:
        raise BoardParameterError(f"Nível de confiança deve estar em (0, 1) (recebido {confidence})")
    return float(sps.norm.ppf(1 - (1 - confidence) / 2))


def bernoulli_estimate(
    successes: int, trials: int, confidence: float = CONFIDENCE_LEVEL
) -> Tuple[float, float, Tuple[float, float]]:
    """(p, erro padrão, IC normal) para uma proporção."""
    z = z_score(confidence)
    p = successes / trials
    stderr = math.sqrt(p * (1 - p) / trials)
    return p, stderr, (p - z * stderr, p + z * stderr)


def wilson_interval(successes: int, trials: int, confidence: float = CONFIDENCE_LEVEL) -> Tuple[float, float]:
    """Intervalo de Wilson para uma proporção."""
    z = z_score(confidence)
    p = successes / trials
    denom = 1 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return center - half, center + half


def _check_samples(samples: int) -> int:
    if samples < 1:
        raise BoardParameterError(f"O número de amostras deve ser >= 1 (recebido {samples})")
    return int(samples)


# ===== PROBABILIDADE DE SER SOLÚVEL =====


def _solvable_chunk(task: Tuple[int, int, int, int]) -> LengthDistribution:
    n, seed, start, stop = task
    counts: Dict[int, int] = {}
    unsolvable = 0
    for index in range(start, stop):
        result = solve_cells(random_cells(n, substream_seed(seed, index)))
        if result.solvable:
            counts[result.length] = counts.get(result.length, 0) + 1
        else:
            unsolvable += 1
    return LengthDistribution(n, counts, unsolvable)


def estimate_solvable_probability(
    n: int,
    samples: int,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
    wilson: bool = False,
    progress: bool = False,
) -> EstimateReport:
    """
    Estima P(solúvel) para tabuleiros uniformes de tamanho n.

    Args:
        n: Tamanho ímpar >= 3.
        samples: Número de tabuleiros.
        seed: Semente da execução.
        workers: Processos.
        wilson: Usa o intervalo de Wilson em ``ci95``.
        progress: Barra de progresso no stderr.

    Returns:
        EstimateReport com o histograma de comprimentos dos solúveis.
    """
    n = check_size(n)
    samples = _check_samples(samples)
    began = time.perf_counter()
    logger.info(f"🔄 Estimando P(solúvel) n={n} com {samples} amostras")

    tasks = [(n, seed, a, b) for a, b in index_chunks(samples)]
    dist = LengthDistribution(n)
    for part in run_tasks(_solvable_chunk, tasks, workers, progress, "solvable-prob"):
        dist = dist.merged(part)

    p, stderr, ci = bernoulli_estimate(dist.solvable, samples)
    if wilson:
        ci = wilson_interval(dist.solvable, samples)
    report = EstimateReport(
        op="solvable-prob",
        n=n,
        samples=samples,
        estimate=p,
        stderr=stderr,
        ci95=ci,
        seed=seed,
        workers=workers,
        histogram=dist.histogram(),
        solvable_samples=dist.solvable,
        elapsed_ms=(time.perf_counter() - began) * 1000,
        distribution=dist,
    )
    logger.info(f"✅ P(solúvel) ≈ {p:.5f} ± {stderr:.5f}")
    return report


# ===== AMOSTRAGEM POR REJEIÇÃO =====


@dataclass(frozen=True)
class SolvableSample:
    board: Board
    length: int
    attempts: int

    @property
    def rejections(self) -> int:
        return self.attempts - 1


def sample_solvable(n: int, seed: int, max_attempts: int = SAMPLING_MAX_ATTEMPTS) -> SolvableSample:
    """
    Sorteia tabuleiros uniformes até obter um solúvel.

    A tentativa a usa ``substream_seed(seed, a)``; o resultado é uniforme em
    Sol_n.

    Raises:
        SamplingBudgetError: Se nenhuma de ``max_attempts`` tentativas servir.
    """
    n = check_size(n)
    for attempt in range(max_attempts):
        cells = random_cells(n, substream_seed(seed, attempt))
        result = solve_cells(cells)
        if result.solvable:
            return SolvableSample(Board(cells), result.length, attempt + 1)
    raise SamplingBudgetError(f"Nenhum tabuleiro solúvel em {max_attempts} tentativas (n={n})")


def sample_solvable_board(n: int, seed: int, max_attempts: int = SAMPLING_MAX_ATTEMPTS) -> Board:
    """
    Tabuleiro uniforme em Sol_n por rejeição.

    Example:
        >>> sample_solvable_board(5, 1).cell((1, 1)) in (Direction.E, Direction.SE, Direction.S)
        True
    """
    sample = sample_solvable(n, seed, max_attempts)
    logger.debug(f"Amostra solúvel após {sample.rejections} rejeições")
    return sample.board


def _length_chunk(task: Tuple[int, int, int, int, int]) -> Tuple[LengthDistribution, int, List[int]]:
    n, seed, start, stop, max_attempts = task
    counts: Dict[int, int] = {}
    attempts = 0
    starts = [0] * 8
    for index in range(start, stop):
        sample = sample_solvable(n, substream_seed(seed, index), max_attempts)
        counts[sample.length] = counts.get(sample.length, 0) + 1
        attempts += sample.attempts
        starts[int(sample.board.cells[0, 0])] += 1
    return LengthDistribution(n, counts), attempts, starts


def _draw_solvable(
    n: int, solvable_samples: int, seed: int, workers: int, progress: bool, max_attempts: int
) -> Tuple[LengthDistribution, int, List[int]]:
    tasks = [(n, seed, a, b, max_attempts) for a, b in index_chunks(solvable_samples)]
    dist = LengthDistribution(n)
    attempts = 0
    starts = [0] * 8
    for part, tried, first in run_tasks(_length_chunk, tasks, workers, progress, "expected-length"):
        dist = dist.merged(part)
        attempts += tried
        starts = [a + b for a, b in zip(starts, first)]
    return dist, attempts, starts


def estimate_expected_length(
    n: int,
    solvable_samples: int,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
    progress: bool = False,
    max_attempts: int = SAMPLING_MAX_ATTEMPTS,
) -> Tuple[EstimateReport, LengthDistribution]:
    """
    Estima o comprimento esperado de um tabuleiro solúvel uniforme.

    Args:
        n: Tamanho ímpar >= 3.
        solvable_samples: Quantidade de tabuleiros solúveis a sortear.
        seed: Semente; a amostra j usa ``substream_seed(seed, j)``.
        workers: Processos.

    Returns:
        (relatório, distribuição). ``samples`` no relatório conta todos os
        sorteios, inclusive os rejeitados.
    """
    n = check_size(n)
    solvable_samples = _check_samples(solvable_samples)
    began = time.perf_counter()
    logger.info(f"🔄 Estimando E_n n={n} com {solvable_samples} amostras solúveis")

    dist, attempts, _ = _draw_solvable(n, solvable_samples, seed, workers, progress, max_attempts)
    mean = dist.mean()
    stderr = math.sqrt(dist.variance() / dist.solvable)
    z = z_score()
    report = EstimateReport(
        op="expected-length",
        n=n,
        samples=attempts,
        estimate=mean,
        stderr=stderr,
        ci95=(mean - z * stderr, mean + z * stderr),
        seed=seed,
        workers=workers,
        histogram=dist.histogram(),
        solvable_samples=dist.solvable,
        elapsed_ms=(time.perf_counter() - began) * 1000,
        distribution=dist,
    )
    logger.info(f"✅ E_n ≈ {mean:.5f} ± {stderr:.5f} (aceitação {report.acceptance_rate:.4f})")
    return report, dist


def start_direction_test(
    n: int,
    solvable_samples: int,
    expected: Dict[Direction, int],
    seed: int = DEFAULT_SEED,
    workers: int = 1,
) -> Tuple[float, float, Dict[Direction, int]]:
    """
    Teste χ² da direção inicial a11 das amostras solúveis.

    Args:
        expected: Contagens de referência por direção (por exemplo as do
            censo); só as direções com contagem positiva entram no teste.

    Returns:
        (estatística, p-valor, contagens observadas).
    """
    _, _, starts = _draw_solvable(
        check_size(n), _check_samples(solvable_samples), seed, workers, False, SAMPLING_MAX_ATTEMPTS
    )
    observed = {Direction(d): starts[d] for d in range(8)}
    support = [d for d in Direction if expected.get(d, 0) > 0]
    f_obs = np.array([observed[d] for d in support], dtype=float)
    weights = np.array([expected[d] for d in support], dtype=float)
    f_exp = weights / weights.sum() * f_obs.sum()
    statistic, pvalue = sps.chisquare(f_obs, f_exp)
    return float(statistic), float(pvalue), observed
