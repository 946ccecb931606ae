"""
Testes do modelo F9: aritmética do corpo, matrizes e formato texto.
"""

import itertools
import sys
from pathlib import Path

import numpy as np
import pytest

# Adicionar raiz do projeto ao path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.core.board import random_board
from src.core.directions import Direction
from src.core.exceptions import BoardParseError, SizeMismatchError
from src.extensions.f9 import (
    F9Element,
    GeneralizedBoard,
    dir_to_f9,
    f9_to_dir,
    gb_add,
    gb_mul,
    parse_generalized,
    schoolbook_mul,
    serialize_generalized,
    solve_generalized,
    sum_product_table,
)
from src.solver.bfs import solve
from src.utils.rng import generator

ELEMENTS = [F9Element.from_code(c) for c in range(9)]
UNITS = ELEMENTS[1:]


def random_generalized(n: int, seed: int) -> GeneralizedBoard:
    return GeneralizedBoard(generator(seed).integers(0, 9, size=(n, n), dtype=np.int8))


class TestField:
    """Testes da aritmética de F9."""

    def test_x_ao_quadrado(self):
        """x² = -1."""
        x = F9Element(0, 1)
        assert x * x == -F9Element.one()

    def test_distributiva(self):
        """a(b + c) = ab + ac para todos os trios."""
        for a, b, c in itertools.product(ELEMENTS, repeat=3):
            assert a * (b + c) == a * b + a * c

    def test_inversos(self):
        """Todo não nulo tem inverso."""
        for u in UNITS:
            assert u * u.inverse() == F9Element.one()
            assert u / u == F9Element.one()

    def test_zero_sem_inverso(self):
        """Zero não tem inverso."""
        with pytest.raises(ZeroDivisionError):
            F9Element.zero().inverse()

    def test_grupo_ciclico(self):
        """1 + x gera os 8 não nulos."""
        g = F9Element(1, 1)
        assert g.order() == 8
        assert {g**k for k in range(8)} == set(UNITS)
        assert F9Element(0, 1).order() == 4

    def test_texto(self):
        """Forma a + bx."""
        assert str(F9Element(1, 2)) == "1+2x"
        assert str(F9Element(0, 1)) == "x"
        assert str(F9Element(2, 0)) == "2"


class TestDirections:
    """Testes da identificação direções <-> F9*."""

    def test_bijecao(self):
        """As 8 direções cobrem os 8 não nulos."""
        assert {dir_to_f9(d) for d in Direction} == set(UNITS)
        for d in Direction:
            assert f9_to_dir(dir_to_f9(d)) == d

    def test_leste_e_norte(self):
        """E -> 1 e N -> x."""
        assert dir_to_f9(Direction.E) == F9Element.one()
        assert dir_to_f9(Direction.N) == F9Element(0, 1)

    def test_multiplicar_por_x_gira(self):
        """Multiplicar por x gira 90° no sentido anti-horário."""
        x = F9Element(0, 1)
        for d in Direction:
            turned = f9_to_dir(dir_to_f9(d) * x)
            assert turned == Direction((d - 2) % 8)

    def test_zero_nao_e_direcao(self):
        """Zero não corresponde a direção nenhuma."""
        with pytest.raises(ValueError):
            f9_to_dir(F9Element.zero())


class TestGeneralizedBoards:
    """Testes das matrizes sobre F9."""

    @pytest.mark.parametrize("seed", range(5))
    def test_produto_concorda_com_definicao(self, seed):
        """gb_mul (vetorizado) == schoolbook_mul."""
        a = random_generalized(5, seed)
        b = random_generalized(5, seed + 100)
        assert gb_mul(a, b) == schoolbook_mul(a, b)

    def test_identidades(self):
        """A + 0 = A e A · I = A."""
        a = random_generalized(3, 7)
        identity = GeneralizedBoard(np.eye(3, dtype=np.int8))
        assert gb_add(a, GeneralizedBoard.zeros(3)) == a
        assert gb_mul(a, identity) == a

    def test_tamanhos_diferentes(self):
        """Operar tamanhos diferentes é erro."""
        with pytest.raises(SizeMismatchError):
            gb_add(GeneralizedBoard.zeros(3), GeneralizedBoard.zeros(5))

    def test_mesmo_jogo_do_tabuleiro(self):
        """Sem zeros, o jogo é o do tabuleiro comum."""
        for seed in range(30):
            board = random_board(5, seed)
            gb = GeneralizedBoard.from_board(board)
            assert gb.to_board() == board
            assert solve_generalized(gb) == solve(board)

    def test_zero_e_casa_morta(self):
        """Uma entrada nula em (1,1) torna o jogo insolúvel."""
        gb = GeneralizedBoard.from_board(random_board(5, 1))
        codes = gb.codes.copy()
        codes[0, 0] = 0
        assert not solve_generalized(GeneralizedBoard(codes)).solvable

    def test_tabela_soma_produto(self):
        """Uma linha por par, com comprimentos anuláveis."""
        pairs = [(random_generalized(3, s), random_generalized(3, s + 1)) for s in range(4)]
        frame = sum_product_table(pairs)
        assert list(frame.columns) == ["pair", "len_a", "len_b", "len_sum", "len_product"]
        assert len(frame) == 4


class TestF9Format:
    """Testes do formato texto ``f9 <N>``."""

    def test_ida_e_volta(self):
        """parse(serialize(A)) == A."""
        gb = random_generalized(5, 3)
        assert parse_generalized(serialize_generalized(gb)) == gb

    def test_digito_invalido(self):
        """Dígito 9 é rejeitado."""
        with pytest.raises(BoardParseError):
            parse_generalized("f9 3\n000\n090\n000\n")

    def test_cabecalho(self):
        """Cabeçalho errado aponta a linha 1."""
        with pytest.raises(BoardParseError) as exc:
            parse_generalized("n 3 plain\n000\n000\n000\n")
        assert exc.value.line == 1
