"""
Testes de alcançabilidade: fecho, condensação e comprimentos vencedores,
conferidos contra oráculos matriciais independentes.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Adicionar raiz do projeto ao path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.core.board import Board, random_board
from src.core.directions import Direction
from src.core.exceptions import BoardParameterError
from src.solver.bfs import solve
from src.solver.reachability import (
    adjacency_matrix,
    condensation,
    flat_index,
    is_all_to_all,
    reachability_closure,
    reaches,
    winning_lengths,
)


def warshall(adj: np.ndarray) -> np.ndarray:
    """Fecho reflexivo-transitivo pelo algoritmo de Warshall."""
    closure = adj | np.eye(adj.shape[0], dtype=bool)
    for k in range(adj.shape[0]):
        closure = closure | (closure[:, k, None] & closure[None, k, :])
    return closure


def matrix_power_lengths(board: Board, cap: int) -> set:
    """Comprimentos vencedores por potências booleanas da adjacência."""
    adj = adjacency_matrix(board).astype(np.int64)
    center = flat_index(board.n, board.center)
    adj[center, :] = 0
    vector = np.zeros(adj.shape[0], dtype=np.int64)
    vector[0] = 1
    found = set()
    for k in range(1, cap + 1):
        vector = (vector @ adj > 0).astype(np.int64)
        if vector[center]:
            found.add(k)
    return found


class TestClosure:
    """Testes do fecho de alcançabilidade."""

    def test_concorda_com_warshall(self):
        """BFS por linha e Warshall coincidem em tabuleiros 5x5."""
        for seed in range(100):
            board = random_board(5, seed)
            assert np.array_equal(reachability_closure(board), warshall(adjacency_matrix(board)))

    def test_reflexivo(self, dead_start_board):
        """Toda posição alcança a si mesma."""
        assert reachability_closure(dead_start_board).diagonal().all()

    def test_solubilidade_pelo_fecho(self):
        """Solúvel sse (1,1) alcança o centro no fecho."""
        for seed in range(100):
            board = random_board(5, seed)
            center = flat_index(5, board.center)
            assert reachability_closure(board)[0, center] == solve(board).solvable

    def test_reaches(self, se_board):
        """reaches segue o grafo cru."""
        assert reaches(se_board, (1, 1), (3, 3))
        assert not reaches(se_board, (1, 1), (1, 2))


class TestCondensation:
    """Testes das componentes fortemente conexas."""

    def test_dag_aciclico(self):
        """A condensação é sempre acíclica."""
        for seed in range(50):
            assert condensation(random_board(7, seed)).is_acyclic()

    def test_componentes_pelo_fecho(self):
        """Mesma componente sse alcance mútuo."""
        board = random_board(5, 17)
        cond = condensation(board)
        closure = reachability_closure(board)
        mutual = closure & closure.T
        comp = cond.component.ravel()
        assert np.array_equal(mutual, comp[:, None] == comp[None, :])

    def test_arestas_do_dag_decrescem(self):
        """Tarjan numera em ordem topológica reversa."""
        cond = condensation(random_board(9, 4))
        assert all(a > b for a, b in cond.dag_edges)

    def test_tabuleiro_sem_ciclos(self):
        """Todo SE: cada casa é sua própria componente."""
        board = Board.uniform(3, Direction.SE)
        assert condensation(board).num_components == 9
        assert not is_all_to_all(board)

    def test_borda_em_ciclo(self):
        """Borda girando em sentido horário; ninguém entra no centro."""
        board = Board.from_rows([["E", "E", "S"], ["N", "E", "S"], ["N", "W", "W"]])
        assert not is_all_to_all(board)
        assert condensation(board).num_components == 2

    def test_todos_para_todos(self):
        """Com (1,2)=S o centro entra no ciclo da borda."""
        board = Board.from_rows([["E", "S", "S"], ["N", "E", "S"], ["N", "W", "W"]])
        assert is_all_to_all(board)
        assert reachability_closure(board).all()


class TestWinningLengths:
    """Testes do conjunto de comprimentos vencedores."""

    def test_concorda_com_potencias(self):
        """DP por camadas e potências booleanas coincidem (cap 30)."""
        for seed in range(100):
            board = random_board(5, seed)
            assert set(winning_lengths(board, 30)) == matrix_power_lengths(board, 30)

    def test_minimo_e_o_comprimento(self):
        """O menor comprimento vencedor é solve().length."""
        for seed in range(100):
            board = random_board(5, seed)
            lengths = winning_lengths(board, 40)
            result = solve(board)
            if result.solvable:
                assert min(lengths) == result.length
            else:
                assert not lengths

    def test_cap_invalido(self, se_board):
        """cap < 1 é rejeitado."""
        with pytest.raises(BoardParameterError):
            winning_lengths(se_board, 0)

    def test_jogo_termina_no_centro(self, se_board):
        """Sem arestas saindo do centro só há o jogo de comprimento 1."""
        assert winning_lengths(se_board, 10) == frozenset({1})
