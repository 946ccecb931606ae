"""Exceções do domínio de tabuleiros."""

from typing import Optional


class WindroseError(Exception):
    """Base de todos os erros de domínio (código de saída 1 na CLI)."""


class BoardParameterError(WindroseError, ValueError):
    """Parâmetro inválido: tamanho par ou menor que 3, orçamento negativo, etc."""


class PositionRangeError(WindroseError, IndexError):
    """Posição fora do tabuleiro."""


class InvalidPairError(WindroseError, ValueError):
    """Par de posições inválido (origem igual ao destino)."""


class SizeMismatchError(WindroseError, ValueError):
    """Operação entre tabuleiros de tamanhos diferentes."""


class GameValidationError(WindroseError, ValueError):
    """Sequência de jogadas ilegal; `index` aponta a jogada problemática."""

    def __init__(self, message: str, index: int) -> None:
        super().__init__(f"{message} (jogada {index})")
        self.index = index


class BoardParseError(WindroseError, ValueError):
    """Texto de tabuleiro mal formado, com linha e coluna (base 1)."""

    def __init__(self, message: str, line: int, column: Optional[int] = None) -> None:
        where = f"linha {line}" if column is None else f"linha {line}, coluna {column}"
        super().__init__(f"{message} ({where})")
        self.line = line
        self.column = column


class ConstructionFailedError(WindroseError, RuntimeError):
    """Uma construção não atingiu sua pós-condição dentro do orçamento."""


class SamplingBudgetError(WindroseError, RuntimeError):
    """Amostragem por rejeição excedeu o número máximo de tentativas."""
