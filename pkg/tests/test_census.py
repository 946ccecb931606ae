"""
Testes do censo exato 3x3 e das contagens de tabuleiros curtos.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Adicionar raiz do projeto ao path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.core.board import Board
from src.core.directions import Direction
from src.core.exceptions import BoardParameterError
from src.solver.bfs import solve
from src.stats.bounds import length_class_bounds, solvable_probability_lower_bound
from src.stats.census import (
    cached_census,
    count_short_boards,
    decode_indices,
    exact_census,
    oracle_check,
    oracle_lengths,
)
from src.utils.rng import generator


@pytest.fixture(scope="module")
def census():
    """Censo completo, calculado uma vez para o módulo."""
    return cached_census()


class TestCensus:
    """Testes das contagens exatas."""

    def test_total(self, census):
        """Todos os 8^9 tabuleiros são contados."""
        assert census.distribution.total == 8**9

    def test_comprimentos_um_e_dois(self, census):
        """8^8 de comprimento 1 e 30·8^6 de comprimento 2."""
        counts = census.distribution.counts
        assert counts[1] == 16777216
        assert counts[2] == 7864320

    def test_concorda_com_contagem_curta(self, census):
        """count_short_boards reproduz as classes 1 e 2."""
        counts = census.distribution.counts
        assert count_short_boards(3, 1) == counts[1]
        assert count_short_boards(3, 2) == counts[2]

    def test_direcao_inicial(self, census):
        """Só E, SE e S resolvem; SE resolve sempre."""
        start = census.start_solvable
        assert start[Direction.SE] == 8**8
        assert start[Direction.E] == start[Direction.S] > 0
        assert sum(start.values()) == census.distribution.solvable
        for d in (Direction.N, Direction.NE, Direction.W, Direction.SW, Direction.NW):
            assert start[d] == 0

    def test_cotas_exatas(self, census):
        """As cotas analíticas valem exatamente no censo."""
        dist = census.distribution
        classes = length_class_bounds(3)
        assert dist.solvable / dist.total >= float(solvable_probability_lower_bound(3))
        assert dist.solvable / dist.total <= 0.375
        assert dist.fraction(1) >= float(classes.length_one)
        assert dist.fraction(2) >= float(classes.length_two)
        assert dist.fraction(3) >= float(classes.length_three)
        assert dist.tail_fraction(4) <= float(classes.tail)

    def test_testemunha_do_maximo(self, census):
        """A testemunha tem comprimento ML(3)."""
        assert census.max_length == census.distribution.max_length
        assert solve(census.witness).length == census.max_length

    def test_exact_census(self, census):
        """exact_census devolve a mesma distribuição."""
        assert exact_census(3) == census.distribution

    def test_so_n3(self):
        """O censo exato rejeita n != 3."""
        with pytest.raises(BoardParameterError):
            exact_census(5)


class TestOracle:
    """Testes do oráculo independente."""

    def test_amostra_pequena(self):
        """O kernel e o oráculo concordam numa amostra."""
        checked, mismatches = oracle_check(1e-4, seed=3)
        assert checked == round(1e-4 * 8**9)
        assert mismatches == 0

    def test_concorda_com_bfs(self):
        """O oráculo concorda com a BFS principal."""
        indices = generator(8).integers(0, 8**9, size=300, dtype=np.int64)
        codes = decode_indices(indices)
        lengths = oracle_lengths(codes)
        for row, length in zip(codes, lengths):
            result = solve(Board(row.reshape(3, 3).astype(np.int8)))
            assert (result.length or 0) == length

    def test_fracao_zero(self):
        """Fração 0 desliga o oráculo."""
        assert oracle_check(0.0) == (0, 0)


class TestShortBoards:
    """Testes de count_short_boards."""

    @pytest.mark.parametrize("n", [3, 5, 7])
    def test_comprimento_um(self, n):
        """Comprimento 1 = 8^(n²-1)."""
        assert count_short_boards(n, 1) == 8 ** (n * n - 1)

    @pytest.mark.parametrize("n", [5, 7, 9])
    def test_comprimento_dois(self, n):
        """
        Comprimento 2 = 30·8^(n²-3), com o filtro das casas relevantes ativo.

        Em fração de todos os tabuleiros isso é 30/512 = 30·8^(n²-3) / 8^(n²),
        não uma razão sobre 8^(n²-3).
        """
        assert count_short_boards(n, 2) == 30 * 8 ** (n * n - 3)

    def test_k_invalido(self):
        """Só k = 1 ou 2."""
        with pytest.raises(BoardParameterError):
            count_short_boards(3, 3)
