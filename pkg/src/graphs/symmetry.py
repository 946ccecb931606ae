"""
Simetrias de tabuleiros: reflexão R, transformações S^σ_τ, isomorfismo de
grafos duplamente enraizados, mudanças triviais e a varredura de simetrias.
"""

import itertools
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.core.board import Board, Position, PositionLike, check_size, random_board
from src.core.directions import TRANSPOSE_CODES, Direction
from src.core.exceptions import BoardParameterError, SizeMismatchError
from src.graphs.board_graph import degree_arrays
from src.solver.bfs import distances_from, solve
from src.solver.reachability import adjacency_matrix, flat_index, position_of, reverse_distances
from src.utils.config import CHUNK_SIZE, DEFAULT_SEED, ISO_NODE_BUDGET
from src.utils.parallel import run_tasks
from src.utils.rng import substream_seed

logger = logging.getLogger(__name__)


def reflect(board: Board) -> Board:
    """
    Reflexão pela diagonal principal: R(A)_ij = (a_ji)^T.

    Example:
        >>> reflect(Board.uniform(3, Direction.SE)) == Board.uniform(3, Direction.SE)
        True
    """
    return type(board)(TRANSPOSE_CODES[board.cells.T])


# ===== TRANSFORMAÇÕES S^σ_τ =====


def _check_permutation(values: Sequence[int], size: int, what: str) -> Tuple[int, ...]:
    values = tuple(int(v) for v in values)
    if sorted(values) != list(range(size)):
        raise BoardParameterError(f"{what} não é uma permutação de {size} elementos")
    return values


@dataclass(frozen=True)
class SymmetryCandidate:
    """
    Transformação (S^σ_τ A)_q = τ(a_σ(q)).

    Attributes:
        n: Tamanho dos tabuleiros.
        sigma: sigma[k] é o índice plano de σ(k).
        tau: tau[d] é o código de τ(d).
        name: Rótulo para relatórios.
    """

    n: int
    sigma: Tuple[int, ...]
    tau: Tuple[int, ...]
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "sigma", _check_permutation(self.sigma, self.n * self.n, "σ"))
        object.__setattr__(self, "tau", _check_permutation(self.tau, 8, "τ"))

    @property
    def key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return self.sigma, self.tau

    @classmethod
    def identity(cls, n: int) -> "SymmetryCandidate":
        n = check_size(n)
        return cls(n, tuple(range(n * n)), tuple(range(8)), "Id")

    @classmethod
    def reflection(cls, n: int) -> "SymmetryCandidate":
        """R como S^σ'_τ' com σ'(ij) = ji e τ' = transposição."""
        n = check_size(n)
        sigma = tuple(np.arange(n * n).reshape(n, n).T.ravel().tolist())
        return cls(n, sigma, tuple(TRANSPOSE_CODES.tolist()), "R")

    def compose(self, other: "SymmetryCandidate") -> "SymmetryCandidate":
        """self ∘ other (aplica ``other`` primeiro) = S^{σ_other ∘ σ_self}_{τ_self ∘ τ_other}."""
        if other.n != self.n:
            raise SizeMismatchError(f"Candidatos de tamanhos {self.n} e {other.n}")
        sigma = np.asarray(other.sigma)[np.asarray(self.sigma)]
        tau = np.asarray(self.tau)[np.asarray(other.tau)]
        return SymmetryCandidate(self.n, tuple(sigma.tolist()), tuple(tau.tolist()), f"{self.name}∘{other.name}")

    def inverse(self) -> "SymmetryCandidate":
        """(S^σ_τ)^{-1} = S^{σ^{-1}}_{τ^{-1}}."""
        return SymmetryCandidate(
            self.n,
            tuple(np.argsort(self.sigma).tolist()),
            tuple(np.argsort(self.tau).tolist()),
            f"{self.name}⁻¹",
        )


def apply_symmetry(cand: SymmetryCandidate, board: Board) -> Board:
    """
    Aplica S^σ_τ ao tabuleiro.

    Raises:
        SizeMismatchError: Se o candidato for de outro tamanho.
    """
    if cand.n != board.n:
        raise SizeMismatchError(f"Candidato para n={cand.n}, tabuleiro n={board.n}")
    flat = board.cells.ravel()
    tau = np.asarray(cand.tau, dtype=np.int8)
    new = tau[flat[np.asarray(cand.sigma)]]
    return type(board)(new.reshape(board.n, board.n))


def _signed_permutations() -> List[np.ndarray]:
    mats = []
    for perm in ((0, 1), (1, 0)):
        for si, sj in itertools.product((1, -1), repeat=2):
            m = np.zeros((2, 2), dtype=np.int64)
            m[0, perm[0]] = si
            m[1, perm[1]] = sj
            mats.append(m)
    return mats


def _dihedral_name(m: np.ndarray) -> str:
    if np.array_equal(m, np.eye(2, dtype=np.int64)):
        return "Id"
    if np.array_equal(m, np.array([[0, 1], [1, 0]])):
        return "R"
    return "dihedral[{},{};{},{}]".format(*m.ravel().tolist())


def dihedral_candidates(n: int) -> List[SymmetryCandidate]:
    """
    As 8 simetrias da grade com a ação induzida nas direções.

    Para o mapa g(q) = M(q - c) + c, o tabuleiro transformado tem
    σ = g^{-1} e τ = M agindo nos vetores de direção.
    """
    n = check_size(n)
    c = (n - 1) // 2
    out = []
    for m in _signed_permutations():
        inv = m.T  # matriz ortogonal
        sigma = []
        for k in range(n * n):
            vec = np.array(divmod(k, n)) - c
            i, j = inv @ vec + c
            sigma.append(int(i) * n + int(j))
        tau = [Direction.from_delta(tuple((m @ np.array(Direction(d).delta)).tolist())).value for d in range(8)]
        out.append(SymmetryCandidate(n, tuple(sigma), tuple(tau), _dihedral_name(m)))
    return out


def scan_family(n: int) -> List[SymmetryCandidate]:
    """
    Família da varredura: diedrais + Per(D) × {id, transposição}, sem repetições.
    """
    n = check_size(n)
    identity = tuple(range(n * n))
    transpose = SymmetryCandidate.reflection(n).sigma
    family: Dict[Tuple, SymmetryCandidate] = {}
    for cand in dihedral_candidates(n):
        family.setdefault(cand.key, cand)
    for sigma_name, sigma in (("id", identity), ("transpose", transpose)):
        for tau in itertools.permutations(range(8)):
            key = (sigma, tau)
            if key not in family:
                label = "".join(str(t) for t in tau)
                family[key] = SymmetryCandidate(n, sigma, tau, f"sigma={sigma_name};tau={label}")
    return list(family.values())


# ===== ISOMORFISMO =====


class IsoStatus(str, Enum):
    ISOMORPHIC = "isomorphic"
    NOT_ISOMORPHIC = "not-isomorphic"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class IsomorphismResult:
    """
    Resultado do teste de isomorfismo.

    Attributes:
        status: Isomorfos, não isomorfos ou orçamento esgotado.
        mapping: Bijeção de vértices de A para B (só quando isomorfos).
        nodes: Nós da árvore de busca visitados.
    """

    status: IsoStatus
    mapping: Optional[Dict[Position, Position]] = None
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.status is IsoStatus.ISOMORPHIC

    def to_dict(self) -> Dict[str, object]:
        mapping = None
        if self.mapping is not None:
            mapping = {f"{u.i}_{u.j}": f"{v.i}_{v.j}" for u, v in sorted(self.mapping.items())}
        return {"status": self.status.value, "mapping": mapping, "nodes": self.nodes}


class _BudgetExhausted(Exception):
    pass


def _profiles(board: Board) -> Tuple[np.ndarray, List[Tuple[int, int, int, int]]]:
    adj = adjacency_matrix(board)
    out = adj.sum(axis=1)
    inn = adj.sum(axis=0)
    forward = distances_from(board, board.start).ravel()
    backward = reverse_distances(board).ravel()
    profiles = [
        (int(out[v]), int(inn[v]), int(forward[v]), int(backward[v])) for v in range(adj.shape[0])
    ]
    return adj, profiles


def _search_order(adj: np.ndarray, roots: List[int], class_size: Dict[int, int]) -> List[int]:
    size = adj.shape[0]
    undirected = adj | adj.T
    order = list(roots)
    placed = np.zeros(size, dtype=bool)
    placed[roots] = True
    while len(order) < size:
        links = undirected[:, placed].sum(axis=1)
        best = min(
            (v for v in range(size) if not placed[v]),
            key=lambda v: (-int(links[v]), class_size[v], v),
        )
        order.append(best)
        placed[best] = True
    return order


def is_isomorphic(a: Board, b: Board, budget: int = ISO_NODE_BUDGET) -> IsomorphismResult:
    """
    Procura uma bijeção que preserve arestas e raízes entre G(A) e G(B).

    Backtracking com as raízes fixas e poda por perfil de vértice
    (Out, In, distância BFS a partir do início, distância BFS até o fim).

    Args:
        a: Primeiro tabuleiro.
        b: Segundo tabuleiro (mesmo n).
        budget: Máximo de nós da busca.

    Returns:
        IsomorphismResult; orçamento esgotado é reportado à parte de "falso".

    Raises:
        SizeMismatchError: Se os tamanhos diferirem.
    """
    if a.n != b.n:
        raise SizeMismatchError(f"Tamanhos diferentes: {a.n} e {b.n}")
    n = a.n
    adj_a, prof_a = _profiles(a)
    adj_b, prof_b = _profiles(b)

    if adj_a.sum() != adj_b.sum() or sorted(prof_a) != sorted(prof_b):
        return IsomorphismResult(IsoStatus.NOT_ISOMORPHIC)

    begin_a, end_a = flat_index(n, a.start), flat_index(n, a.center)
    begin_b, end_b = flat_index(n, b.start), flat_index(n, b.center)
    if prof_a[begin_a] != prof_b[begin_b] or prof_a[end_a] != prof_b[end_b]:
        return IsomorphismResult(IsoStatus.NOT_ISOMORPHIC)

    size = n * n
    by_profile: Dict[Tuple, List[int]] = {}
    for w in range(size):
        by_profile.setdefault(prof_b[w], []).append(w)
    class_size = {v: len(by_profile[prof_a[v]]) for v in range(size)}

    order = _search_order(adj_a, [begin_a, end_a], class_size)
    mapping = np.full(size, -1, dtype=np.int64)
    used = np.zeros(size, dtype=bool)
    nodes = 0

    def consistent(u: int, w: int, depth: int) -> bool:
        if adj_a[u, u] != adj_b[w, w]:
            return False
        done = np.asarray(order[:depth], dtype=np.int64)
        images = mapping[done]
        return np.array_equal(adj_a[u, done], adj_b[w, images]) and np.array_equal(
            adj_a[done, u], adj_b[images, w]
        )

    def extend(depth: int) -> bool:
        nonlocal nodes
        if depth == size:
            return True
        u = order[depth]
        if depth == 0:
            candidates = [begin_b]
        elif depth == 1:
            candidates = [end_b]
        else:
            candidates = by_profile[prof_a[u]]
        for w in candidates:
            if used[w]:
                continue
            nodes += 1
            if nodes > budget:
                raise _BudgetExhausted
            if not consistent(u, w, depth):
                continue
            mapping[u] = w
            used[w] = True
            if extend(depth + 1):
                return True
            used[w] = False
            mapping[u] = -1
        return False

    try:
        found = extend(0)
    except _BudgetExhausted:
        logger.warning(f"⚠️ Orçamento de isomorfismo esgotado ({budget} nós)")
        return IsomorphismResult(IsoStatus.BUDGET_EXHAUSTED, nodes=nodes)

    if not found:
        return IsomorphismResult(IsoStatus.NOT_ISOMORPHIC, nodes=nodes)

    # testemunha conferida aresta por aresta
    if not np.array_equal(adj_a, adj_b[np.ix_(mapping, mapping)]):
        raise RuntimeError("Bijeção encontrada não preserva as arestas")
    witness = {position_of(n, u): position_of(n, int(mapping[u])) for u in range(size)}
    return IsomorphismResult(IsoStatus.ISOMORPHIC, witness, nodes)


# ===== MUDANÇAS TRIVIAIS =====


def trivial_change_classes(board: Board) -> Dict[Position, Tuple[FrozenSet[Direction], ...]]:
    """
    Agrupa, para cada casa, as direções com o mesmo conjunto de alvos.

    No tabuleiro plano duas direções só coincidem quando ambos os raios são
    vazios; no toro direções opostas coincidem sempre.
    """
    classes: Dict[Position, Tuple[FrozenSet[Direction], ...]] = {}
    for pos in board.positions():
        groups: Dict[FrozenSet[Position], List[Direction]] = {}
        for d in Direction:
            groups.setdefault(frozenset(board.ray(pos, d)), []).append(d)
        classes[pos] = tuple(
            frozenset(g) for g in sorted(groups.values(), key=lambda g: min(g))
        )
    return classes


def trivial_changes(board: Board, pos: PositionLike) -> List[Direction]:
    """Direções que podem substituir a da casa sem mudar G(A)."""
    pos = board.check_position(pos)
    current = board.cell(pos)
    reach = frozenset(board.ray(pos, current))
    return [d for d in Direction if d != current and frozenset(board.ray(pos, d)) == reach]


# ===== VARREDURA DE SIMETRIAS =====


@dataclass(frozen=True)
class ScanReport:
    """
    Resultado da varredura por falsificação.

    Attributes:
        survivors: Nomes dos candidatos com S(A) ≅ A em todas as amostras.
        falsified_cheap: Candidatos refutados por invariantes baratos.
        falsified_iso: Candidatos refutados pelo teste completo.
        undecided: Candidatos cujo teste esgotou o orçamento.
    """

    n: int
    sample_size: int
    seed: int
    tested: int
    survivors: Tuple[str, ...]
    falsified_cheap: int
    falsified_iso: int
    undecided: Tuple[str, ...] = field(default_factory=tuple)
    elapsed_ms: float = 0.0

    def to_dict(self, timing: bool = True) -> Dict[str, object]:
        data = {
            "op": "symmetry-scan",
            "n": self.n,
            "samples": self.sample_size,
            "seed": self.seed,
            "tested": self.tested,
            "survivors": list(self.survivors),
            "falsified_cheap": self.falsified_cheap,
            "falsified_iso": self.falsified_iso,
            "undecided": list(self.undecided),
        }
        if timing:
            data["elapsed_ms"] = round(self.elapsed_ms, 3)
        return data


def _cheap_invariants(board: Board) -> Tuple:
    result = solve(board)
    out, inn, _ = degree_arrays(board)
    pairs = sorted(zip(out.ravel().tolist(), inn.ravel().tolist()))
    return result.solvable, result.length, tuple(pairs)


def _scan_chunk(task: Tuple) -> List[Tuple[int, str]]:
    n, sample_size, seed, budget, items = task
    verdicts = []
    for index, sigma, tau in items:
        cand = SymmetryCandidate(n, sigma, tau)
        stream = substream_seed(seed, index)
        verdict = "survivor"
        for j in range(sample_size):
            board = random_board(n, substream_seed(stream, j))
            image = apply_symmetry(cand, board)
            if _cheap_invariants(board) != _cheap_invariants(image):
                verdict = "cheap"
                break
            iso = is_isomorphic(image, board, budget)
            if iso.status is IsoStatus.NOT_ISOMORPHIC:
                verdict = "iso"
                break
            if iso.status is IsoStatus.BUDGET_EXHAUSTED:
                verdict = "undecided"
                break
        verdicts.append((index, verdict))
    return verdicts


def symmetry_scan(
    n: int = 3,
    sample_size: int = 1000,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
    candidates: Optional[Iterable[SymmetryCandidate]] = None,
    budget: int = ISO_NODE_BUDGET,
) -> ScanReport:
    """
    Testa quais candidatos preservam G(A) a menos de isomorfismo.

    O candidato k usa as amostras ``substream_seed(substream_seed(seed, k), j)``,
    então o resultado não depende da divisão entre workers. Sobreviventes são
    evidência, não prova.

    Example:
        >>> symmetry_scan(3, 20, candidates=dihedral_candidates(3)).survivors
        ('Id', 'R')
    """
    n = check_size(n)
    began = time.perf_counter()
    family = list(candidates) if candidates is not None else scan_family(n)
    items = [(k, c.sigma, c.tau) for k, c in enumerate(family)]
    chunk = max(1, CHUNK_SIZE // 2)
    tasks = [(n, sample_size, seed, budget, items[a : a + chunk]) for a in range(0, len(items), chunk)]

    logger.info(f"🔄 Varredura de simetrias: {len(family)} candidatos, {sample_size} amostras")
    verdicts: Dict[int, str] = {}
    for part in run_tasks(_scan_chunk, tasks, workers, progress=False):
        verdicts.update(dict(part))

    survivors = tuple(family[k].name for k in sorted(verdicts) if verdicts[k] == "survivor")
    undecided = tuple(family[k].name for k in sorted(verdicts) if verdicts[k] == "undecided")
    report = ScanReport(
        n=n,
        sample_size=sample_size,
        seed=seed,
        tested=len(family),
        survivors=survivors,
        falsified_cheap=sum(1 for v in verdicts.values() if v == "cheap"),
        falsified_iso=sum(1 for v in verdicts.values() if v == "iso"),
        undecided=undecided,
        elapsed_ms=(time.perf_counter() - began) * 1000,
    )
    logger.info(f"✅ Sobreviventes: {', '.join(survivors) or 'nenhum'}")
    return report
