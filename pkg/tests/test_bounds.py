"""
Testes das cotas analíticas exatas.
"""

import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Adicionar raiz do projeto ao path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.core.directions import Direction
from src.core.exceptions import BoardParameterError
from src.stats.bounds import (
    LIMIT_EXPECTED_LENGTH,
    LIMIT_SOLVABLE,
    bounds_report,
    conditional_solvable_bounds,
    escape_probability,
    expected_length_bracket,
    length_class_bounds,
    solvable_probability_lower_bound,
    solvable_probability_upper_bound,
)


class TestSolvableBounds:
    """Testes das cotas de P(solúvel)."""

    def test_valor_n3(self):
        """Cota inferior exata em n=3."""
        assert escape_probability(3) == Fraction(63, 64)
        assert solvable_probability_lower_bound(3) == Fraction(327, 2048)

    def test_cota_superior(self):
        """A cota superior é 3/8."""
        assert solvable_probability_upper_bound() == Fraction(3, 8) == LIMIT_SOLVABLE

    @pytest.mark.parametrize("n", [3, 5, 11, 51, 201])
    def test_ordenadas(self, n):
        """inferior <= 3/8 e cresce com n."""
        low = solvable_probability_lower_bound(n)
        assert low <= LIMIT_SOLVABLE
        assert solvable_probability_lower_bound(n + 2) > low

    def test_limite(self):
        """A cota inferior tende a 3/8."""
        assert abs(float(solvable_probability_lower_bound(2001)) - 0.375) < 1e-12

    def test_condicionais(self):
        """SE resolve sempre; direções para fora nunca."""
        bounds = conditional_solvable_bounds(5)
        assert bounds[Direction.SE] == 1
        assert bounds[Direction.E] == bounds[Direction.S]
        assert all(bounds[d] == 0 for d in (Direction.N, Direction.NE, Direction.W, Direction.SW, Direction.NW))

    def test_tamanho_invalido(self):
        """Tamanho par é rejeitado."""
        with pytest.raises(BoardParameterError):
            escape_probability(4)


class TestLengthClasses:
    """Testes das cotas por classe de comprimento."""

    def test_valores_n3(self):
        """Classes 1 e 2 constantes; classe 3 e cauda dependem de q."""
        classes = length_class_bounds(3)
        assert classes.length_one == Fraction(1, 3)
        assert classes.length_two == Fraction(5, 32)
        assert classes.length_three == Fraction(49, 6144)
        assert classes.tail == Fraction(63, 64) * Fraction(49, 96)

    @pytest.mark.parametrize("n", [3, 7, 101])
    def test_classe_tres_mais_cauda(self, n):
        """Classe 3 e cauda somam 49/96."""
        classes = length_class_bounds(n)
        assert classes.length_three + classes.tail == Fraction(49, 96)


class TestExpectedLength:
    """Testes do intervalo para E_n."""

    @pytest.mark.parametrize("n", [3, 5, 21, 101])
    def test_intervalo_contem_limite(self, n):
        """inferior <= 209/96 <= superior."""
        lower, upper = expected_length_bracket(n)
        assert lower <= LIMIT_EXPECTED_LENGTH <= upper

    def test_convergencia(self):
        """Ambos os extremos tendem a 209/96."""
        lower, upper = expected_length_bracket(5001)
        assert abs(float(lower) - 209 / 96) < 1e-9
        assert abs(float(upper) - 209 / 96) < 1e-9

    def test_variante_mais_folgada(self):
        """A constante 49/64 só alarga a cota superior."""
        plain = expected_length_bracket(51)
        loose = expected_length_bracket(51, loose_tail=True)
        assert plain[0] == loose[0]
        assert loose[1] > plain[1]

    def test_relatorio(self):
        """O relatório usa frações em texto."""
        report = bounds_report(3)
        assert report["op"] == "bounds"
        assert report["solvable_lower"] == "327/2048"
        assert report["solvable_upper"] == "3/8"
        assert report["expected_length_limit"] == "209/96"
        assert report["loose_tail"] is False
