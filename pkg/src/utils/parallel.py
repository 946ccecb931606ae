"""
Execução paralela determinística.

As tarefas são fatias fixas de índices; o resultado é devolvido na ordem
das tarefas, então a fusão não depende do número de workers.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Sequence, Tuple, TypeVar

from tqdm import tqdm

from src.utils.config import CHUNK_SIZE

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def index_chunks(total: int, chunk_size: int = CHUNK_SIZE) -> List[Tuple[int, int]]:
    """
    Divide [0, total) em intervalos consecutivos.

    Example:
        >>> index_chunks(5, 2)
        [(0, 2), (2, 4), (4, 5)]
    """
    chunk_size = max(1, int(chunk_size))
    return [(start, min(start + chunk_size, total)) for start in range(0, total, chunk_size)]


def run_tasks(
    func: Callable[[T], R],
    tasks: Sequence[T],
    workers: int = 1,
    progress: bool = False,
    desc: str = "",
) -> List[R]:
    """
    Aplica ``func`` a cada tarefa, em série ou num pool de processos.

    Args:
        func: Função de nível de módulo (precisa ser serializável).
        tasks: Argumentos, um por tarefa.
        workers: Número de processos; 1 executa no processo atual.
        progress: Mostra barra tqdm (stderr).
        desc: Rótulo da barra.

    Returns:
        Resultados na ordem das tarefas.
    """
    workers = max(1, int(workers))
    if workers == 1 or len(tasks) <= 1:
        iterator = tqdm(tasks, desc=desc, disable=not progress)
        return [func(task) for task in iterator]

    logger.debug(f"🔄 {len(tasks)} tarefas em {workers} processos")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = pool.map(func, tasks)
        return list(tqdm(results, total=len(tasks), desc=desc, disable=not progress))
