"""
Testes do núcleo do tabuleiro: direções, alvos, jogos e sorteio.
"""

import sys
from pathlib import Path

import numpy as np
import pytest
from scipy import stats as sps

# Adicionar raiz do projeto ao path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.core.board import (
    Board,
    Position,
    center_of,
    chebyshev_distance,
    check_size,
    is_directing,
    random_board,
    random_cells,
    targets,
)
from src.core.directions import Direction
from src.core.exceptions import (
    BoardParameterError,
    GameValidationError,
    InvalidPairError,
    PositionRangeError,
)
from src.core.game import Outcome, validate_game


class TestDirection:
    """Testes da rosa dos ventos."""

    def test_codigos_horarios(self):
        """N=0 e os códigos seguem em sentido horário."""
        assert [d.name for d in Direction] == ["N", "NE", "E", "SE", "S", "SW", "W", "NW"]
        assert Direction.N.delta == (-1, 0)
        assert Direction.E.delta == (0, 1)
        assert Direction.SE.delta == (1, 1)

    def test_transposta_e_oposta(self):
        """Transposta troca N com W; oposta soma 4."""
        assert Direction.N.transpose is Direction.W
        assert Direction.SE.transpose is Direction.SE
        assert Direction.NE.transpose is Direction.SW
        assert Direction.E.opposite is Direction.W

    def test_parse(self):
        """Aceita nome ou código."""
        assert Direction.parse("ne") is Direction.NE
        assert Direction.parse("4") is Direction.S


class TestBoardConstruction:
    """Testes de criação e validação do tabuleiro."""

    @pytest.mark.parametrize("n", [1, 2, 4, 0, -3])
    def test_tamanho_invalido(self, n):
        """Tamanhos pares ou menores que 3 são rejeitados."""
        with pytest.raises(BoardParameterError):
            check_size(n)

    def test_tabuleiro_nao_quadrado(self):
        """Matriz retangular é rejeitada."""
        with pytest.raises(BoardParameterError):
            Board(np.zeros((3, 5), dtype=np.int8))

    def test_codigo_fora_da_faixa(self):
        """Códigos fora de 0..7 são rejeitados."""
        cells = np.zeros((3, 3), dtype=np.int8)
        cells[1, 1] = 8
        with pytest.raises(BoardParameterError):
            Board(cells)

    def test_imutavel(self, se_board):
        """with_cell devolve uma cópia e não altera o original."""
        changed = se_board.with_cell((1, 1), Direction.N)
        assert se_board.cell((1, 1)) is Direction.SE
        assert changed.cell((1, 1)) is Direction.N
        with pytest.raises(ValueError):
            se_board.cells[0, 0] = 0

    def test_centro_e_distancia(self):
        """Centro ((n+1)/2, (n+1)/2) e distância de Chebyshev."""
        assert center_of(5) == Position(3, 3)
        assert chebyshev_distance(5, (1, 1)) == 2
        assert chebyshev_distance(5, (3, 4)) == 1
        assert chebyshev_distance(5, (3, 3)) == 0


class TestTargets:
    """Testes da relação de direcionamento."""

    def test_alvos_em_ordem(self, se_board):
        """O raio lista os alvos em ordem crescente de passo."""
        assert targets(se_board, (1, 1)) == [Position(2, 2), Position(3, 3)]

    def test_raio_vazio(self):
        """Seta apontando para fora não tem alvos."""
        board = Board.uniform(3, Direction.E)
        assert targets(board, (1, 3)) == []
        assert board.out_degree((2, 1)) == 2

    def test_posicao_fora(self, se_board):
        """Posição fora do tabuleiro gera PositionRangeError."""
        with pytest.raises(PositionRangeError):
            targets(se_board, (0, 1))
        with pytest.raises(PositionRangeError):
            se_board.cell((4, 1))

    def test_is_directing(self, se_board):
        """is_directing segue o raio e rejeita pares iguais."""
        assert is_directing(se_board, (1, 1), (3, 3))
        assert not is_directing(se_board, (1, 1), (1, 2))
        with pytest.raises(InvalidPairError):
            is_directing(se_board, (2, 2), (2, 2))

    def test_grau_de_saida_do_centro(self):
        """O centro sempre alcança (n-1)/2 casas."""
        board = random_board(7, 3)
        assert board.out_degree(board.center) == 3


class TestRandomBoard:
    """Testes do sorteio determinístico."""

    def test_mesma_semente_mesmo_tabuleiro(self):
        """Mesma (n, seed) produz o mesmo tabuleiro."""
        assert random_board(9, 42) == random_board(9, 42)

    def test_sementes_diferentes(self):
        """Sementes diferentes produzem tabuleiros diferentes."""
        assert random_board(9, 1) != random_board(9, 2)

    def test_codigos_uniformes(self):
        """χ² sobre ~10^6 casas não rejeita a uniforme em 8 direções."""
        cells = random_cells(1001, 17).ravel()
        assert cells.size >= 10**6
        observed = np.bincount(cells, minlength=8)
        assert observed.size == 8
        _, pvalue = sps.chisquare(observed)
        assert pvalue > 1e-3

    def test_casas_vizinhas_independentes(self):
        """χ² dos pares (casa, casa à direita) contra a tabela 8x8 uniforme."""
        cells = random_cells(1001, 23)
        pairs = cells[:, :-1].astype(np.int64) * 8 + cells[:, 1:]
        observed = np.bincount(pairs.ravel(), minlength=64)
        _, pvalue = sps.chisquare(observed)
        assert pvalue > 1e-3


class TestValidateGame:
    """Testes de validação de jogos."""

    def test_jogo_vencedor(self, se_board):
        """Chegar ao centro é vitória."""
        game = validate_game(se_board, [(1, 1), (2, 2)])
        assert game.outcome is Outcome.WON
        assert game.turns == 1

    def test_jogo_perdido(self):
        """Parar numa casa morta é derrota."""
        board = Board.uniform(3, Direction.E)
        game = validate_game(board, [(1, 1), (1, 3)])
        assert game.outcome is Outcome.LOST

    def test_jogo_em_andamento(self):
        """Parar numa casa com alvos é jogo em andamento."""
        board = Board.uniform(3, Direction.E)
        assert validate_game(board, [(1, 1), (1, 2)]).outcome is Outcome.IN_PROGRESS

    def test_inicio_errado(self, se_board):
        """O jogo deve começar em (1,1)."""
        with pytest.raises(GameValidationError) as exc:
            validate_game(se_board, [(2, 2)])
        assert exc.value.index == 0

    def test_jogada_ilegal(self, se_board):
        """Transição fora do raio aponta o índice da jogada."""
        with pytest.raises(GameValidationError) as exc:
            validate_game(se_board, [(1, 1), (1, 2)])
        assert exc.value.index == 1

    def test_continua_depois_do_centro(self, se_board):
        """Não há jogadas depois do centro."""
        with pytest.raises(GameValidationError) as exc:
            validate_game(se_board, [(1, 1), (2, 2), (3, 3)])
        assert exc.value.index == 2

    def test_jogo_vazio(self, se_board):
        """Sequência vazia é inválida."""
        with pytest.raises(GameValidationError):
            validate_game(se_board, [])
