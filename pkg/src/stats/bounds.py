"""
Cotas analíticas exatas (frações) para tabuleiros aleatórios.

Todas dependem de q = (63/64)^(n-2): a probabilidade de que nenhum dos
"jogos fáceis" de comprimento 2 e 3 esteja disponível.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from src.core.board import check_size
from src.core.directions import Direction

LIMIT_SOLVABLE = Fraction(3, 8)
LIMIT_EXPECTED_LENGTH = Fraction(209, 96)

_CLASS_ONE = Fraction(1, 3)
_CLASS_TWO = Fraction(5, 32)
_CLASS_THREE = Fraction(49, 96)
_LOOSE_TAIL = Fraction(49, 64)


def escape_probability(n: int) -> Fraction:
    """q = (63/64)^(n-2)."""
    n = check_size(n)
    return Fraction(63, 64) ** (n - 2)


def solvable_probability_lower_bound(n: int) -> Fraction:
    """
    Cota inferior para P(solúvel): (1/8)·[1 + 2·(1 - (7/8)·q)].

    Example:
        >>> solvable_probability_lower_bound(3)
        Fraction(327, 2048)
    """
    q = escape_probability(n)
    return Fraction(1, 8) * (1 + 2 * (1 - Fraction(7, 8) * q))


def solvable_probability_upper_bound() -> Fraction:
    """3/8: só a11 ∈ {E, SE, S} aponta para dentro do tabuleiro."""
    return LIMIT_SOLVABLE


def conditional_solvable_bounds(n: int) -> Dict[Direction, Fraction]:
    """
    Cota inferior de P(solúvel | a11 = d) para cada direção inicial.

    SE resolve sempre; E e S resolvem pelo menos com 1 - (7/8)·q; as
    demais direções saem do tabuleiro e dão probabilidade exatamente 0.
    """
    q = escape_probability(n)
    bounds = {d: Fraction(0) for d in Direction}
    bounds[Direction.SE] = Fraction(1)
    bounds[Direction.E] = 1 - Fraction(7, 8) * q
    bounds[Direction.S] = 1 - Fraction(7, 8) * q
    return bounds


@dataclass(frozen=True)
class LengthClassBounds:
    """
    Cotas para P(comprimento = k | solúvel).

    Attributes:
        length_one: Cota inferior da classe 1.
        length_two: Cota inferior da classe 2.
        length_three: Cota inferior da classe 3.
        tail: Cota superior para comprimento >= 4.
    """

    n: int
    length_one: Fraction
    length_two: Fraction
    length_three: Fraction
    tail: Fraction

    def as_dict(self) -> Dict[str, str]:
        return {
            "length_one_min": str(self.length_one),
            "length_two_min": str(self.length_two),
            "length_three_min": str(self.length_three),
            "tail_max": str(self.tail),
        }


def length_class_bounds(n: int) -> LengthClassBounds:
    """
    As quatro cotas das classes de comprimento.

    Example:
        >>> length_class_bounds(3).length_three
        Fraction(49, 6144)
    """
    q = escape_probability(n)
    return LengthClassBounds(
        n=n,
        length_one=_CLASS_ONE,
        length_two=_CLASS_TWO,
        length_three=(1 - q) * _CLASS_THREE,
        tail=q * _CLASS_THREE,
    )


def expected_length_bracket(n: int, loose_tail: bool = False) -> Tuple[Fraction, Fraction]:
    """
    Intervalo (inferior, superior) para o comprimento esperado E_n.

    inferior = 1/3 + 2·5/32 + 3·(1-q)·49/96
    superior = (1/3 + q·49/96) + 2·(5/32 + q·49/96) + 3·49/96 + n⁴·q·c

    com c = 49/96; ``loose_tail`` usa c = 49/64 na cauda. Ambos
    convergem para 209/96.

    Args:
        n: Tamanho ímpar >= 3.
        loose_tail: Usa a constante mais folgada da cauda.
    """
    q = escape_probability(n)
    lower = _CLASS_ONE + 2 * _CLASS_TWO + 3 * (1 - q) * _CLASS_THREE
    tail = _LOOSE_TAIL if loose_tail else _CLASS_THREE
    upper = (
        (_CLASS_ONE + q * _CLASS_THREE)
        + 2 * (_CLASS_TWO + q * _CLASS_THREE)
        + 3 * _CLASS_THREE
        + n**4 * q * tail
    )
    return lower, upper


def bounds_report(n: int, loose_tail: bool = False) -> Dict[str, object]:
    """Resumo serializável de todas as cotas para o tamanho n."""
    lower, upper = expected_length_bracket(n, loose_tail)
    return {
        "op": "bounds",
        "n": n,
        "solvable_lower": str(solvable_probability_lower_bound(n)),
        "solvable_lower_float": float(solvable_probability_lower_bound(n)),
        "solvable_upper": str(solvable_probability_upper_bound()),
        "length_classes": length_class_bounds(n).as_dict(),
        "expected_length_lower": float(lower),
        "expected_length_upper": float(upper),
        "expected_length_limit": str(LIMIT_EXPECTED_LENGTH),
        "loose_tail": loose_tail,
    }
