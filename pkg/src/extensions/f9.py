"""
O modelo F9: direções como elementos não nulos de F9 = F3[x]/(x² + 1).

Identificação usada (vetor unitário com componente leste a e norte b):
    d -> a + b·x, logo E -> 1, N -> x, NE -> 1+x, W -> -1 = 2.

Tabuleiros generalizados admitem entradas nulas, que não apontam para nada.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
import pandas as pd

from src.core.board import Board, check_size
from src.core.board_io import parse_digit_rows, parse_size_token, split_lines
from src.core.directions import Direction
from src.core.exceptions import BoardParseError, SizeMismatchError
from src.solver.bfs import DEAD, SolveResult, solve_cells

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class F9Element:
    """
    Elemento a + b·x de F9, com a, b em Z/3 e x² = -1.

    Example:
        >>> F9Element(1, 1) ** 2
        F9Element(a=0, b=2)
    """

    a: int
    b: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", int(self.a) % 3)
        object.__setattr__(self, "b", int(self.b) % 3)

    @property
    def code(self) -> int:
        """Código a + 3b do formato texto (0..8)."""
        return self.a + 3 * self.b

    @classmethod
    def from_code(cls, code: int) -> "F9Element":
        return cls(code % 3, code // 3)

    @classmethod
    def zero(cls) -> "F9Element":
        return cls(0, 0)

    @classmethod
    def one(cls) -> "F9Element":
        return cls(1, 0)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __add__(self, other: "F9Element") -> "F9Element":
        return F9Element(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "F9Element") -> "F9Element":
        return F9Element(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "F9Element":
        return F9Element(-self.a, -self.b)

    def __mul__(self, other: "F9Element") -> "F9Element":
        return F9Element(self.a * other.a - self.b * other.b, self.a * other.b + self.b * other.a)

    def __pow__(self, exponent: int) -> "F9Element":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = F9Element.one()
        for _ in range(exponent):
            result = result * self
        return result

    def inverse(self) -> "F9Element":
        if self.is_zero():
            raise ZeroDivisionError("Zero não tem inverso em F9")
        # a^8 = 1 no grupo multiplicativo
        return self**7

    def __truediv__(self, other: "F9Element") -> "F9Element":
        return self * other.inverse()

    def order(self) -> int:
        """Ordem multiplicativa (divide 8)."""
        if self.is_zero():
            raise ZeroDivisionError("Zero não tem ordem multiplicativa")
        power = self
        k = 1
        while power != F9Element.one():
            power = power * self
            k += 1
        return k

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        x = "x" if self.b == 1 else "2x"
        return x if self.a == 0 else f"{self.a}+{x}"


def dir_to_f9(d: Direction) -> F9Element:
    """Direção -> elemento não nulo (a = componente leste, b = norte)."""
    di, dj = Direction(d).delta
    return F9Element(dj, -di)


def f9_to_dir(e: F9Element) -> Direction:
    """
    Elemento não nulo -> direção.

    Raises:
        ValueError: Para o elemento zero.
    """
    if e.is_zero():
        raise ValueError("O elemento zero não corresponde a nenhuma direção")
    a = e.a if e.a < 2 else -1
    b = e.b if e.b < 2 else -1
    return Direction.from_delta((-b, a))


# código F9 (a + 3b) -> código de direção, DEAD para zero
CODE_TO_DIRECTION = np.array(
    [DEAD if c == 0 else f9_to_dir(F9Element.from_code(c)).value for c in range(9)], dtype=np.int8
)
DIRECTION_TO_CODE = np.array([dir_to_f9(Direction(d)).code for d in range(8)], dtype=np.int8)


# ===== TABULEIROS GENERALIZADOS =====


@dataclass(frozen=True, eq=False)
class GeneralizedBoard:
    """
    Matriz n x n sobre F9 (zero permitido), guardada como códigos a + 3b.
    """

    codes: np.ndarray

    def __post_init__(self) -> None:
        codes = np.array(self.codes, dtype=np.int8, copy=True)
        if codes.ndim != 2 or codes.shape[0] != codes.shape[1]:
            raise SizeMismatchError(f"Matriz deve ser quadrada, recebido {codes.shape}")
        check_size(codes.shape[0])
        if codes.min() < 0 or codes.max() > 8:
            raise ValueError("Códigos F9 devem estar em 0..8")
        codes.setflags(write=False)
        object.__setattr__(self, "codes", codes)

    @property
    def n(self) -> int:
        return self.codes.shape[0]

    @property
    def real(self) -> np.ndarray:
        return (self.codes % 3).astype(np.int64)

    @property
    def imag(self) -> np.ndarray:
        return (self.codes // 3).astype(np.int64)

    @classmethod
    def from_parts(cls, real: np.ndarray, imag: np.ndarray) -> "GeneralizedBoard":
        return cls((np.mod(real, 3) + 3 * np.mod(imag, 3)).astype(np.int8))

    @classmethod
    def from_board(cls, board: Board) -> "GeneralizedBoard":
        return cls(DIRECTION_TO_CODE[board.cells])

    @classmethod
    def zeros(cls, n: int) -> "GeneralizedBoard":
        return cls(np.zeros((n, n), dtype=np.int8))

    def element(self, i: int, j: int) -> F9Element:
        return F9Element.from_code(int(self.codes[i - 1, j - 1]))

    def has_zero(self) -> bool:
        return bool((self.codes == 0).any())

    def to_board(self) -> Board:
        """Tabuleiro plano equivalente; exige que não haja zeros."""
        if self.has_zero():
            raise ValueError("Tabuleiro generalizado com zeros não é um tabuleiro")
        return Board(CODE_TO_DIRECTION[self.codes])

    def solver_cells(self) -> np.ndarray:
        return CODE_TO_DIRECTION[self.codes]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GeneralizedBoard):
            return NotImplemented
        return np.array_equal(self.codes, other.codes)

    def __hash__(self) -> int:
        return hash(self.codes.tobytes())


def _check_same_size(a: GeneralizedBoard, b: GeneralizedBoard) -> None:
    if a.n != b.n:
        raise SizeMismatchError(f"Tamanhos diferentes: {a.n} e {b.n}")


def gb_add(a: GeneralizedBoard, b: GeneralizedBoard) -> GeneralizedBoard:
    """Soma entrada a entrada em F9."""
    _check_same_size(a, b)
    return GeneralizedBoard.from_parts(a.real + b.real, a.imag + b.imag)


def gb_mul(a: GeneralizedBoard, b: GeneralizedBoard) -> GeneralizedBoard:
    """
    Produto matricial sobre F9.

    Com A = Aa + Ab·x e B = Ba + Bb·x: C = (AaBa - AbBb) + (AaBb + AbBa)·x.
    """
    _check_same_size(a, b)
    real = a.real @ b.real - a.imag @ b.imag
    imag = a.real @ b.imag + a.imag @ b.real
    return GeneralizedBoard.from_parts(real, imag)


def solve_generalized(gb: GeneralizedBoard) -> SolveResult:
    """BFS em que casas nulas são mortas e as demais seguem sua direção."""
    return solve_cells(gb.solver_cells())


# ===== FORMATO TEXTO =====


def serialize_generalized(gb: GeneralizedBoard) -> str:
    """Cabeçalho ``f9 <N>`` seguido de N linhas de dígitos a + 3b."""
    rows = ["".join(str(int(c)) for c in row) for row in gb.codes]
    return "\n".join([f"f9 {gb.n}"] + rows) + "\n"


def parse_generalized(text: str) -> GeneralizedBoard:
    """
    Lê uma matriz F9 no formato texto.

    Raises:
        BoardParseError: Cabeçalho, tamanho ou dígito inválido.
    """
    lines = split_lines(text)
    header = lines[0].split(" ")
    if len(header) != 2 or header[0] != "f9":
        raise BoardParseError("Cabeçalho esperado: 'f9 <N>'", 1, 1)
    n = parse_size_token(header[1], 1, 4)
    grid = parse_digit_rows(lines[1:], 2, n, "012345678")
    if len(lines) > n + 1:
        raise BoardParseError("Linhas extras depois da matriz", n + 2, 1)
    return GeneralizedBoard(grid)


def read_generalized(path: str) -> GeneralizedBoard:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        return parse_generalized(fh.read())


# ===== EXPERIMENTOS =====


def schoolbook_mul(a: GeneralizedBoard, b: GeneralizedBoard) -> GeneralizedBoard:
    """Produto pela definição, elemento a elemento (referência para testes)."""
    _check_same_size(a, b)
    n = a.n
    out = np.zeros((n, n), dtype=np.int8)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            acc = F9Element.zero()
            for k in range(1, n + 1):
                acc = acc + a.element(i, k) * b.element(k, j)
            out[i - 1, j - 1] = acc.code
    return GeneralizedBoard(out)


def sum_product_table(pairs: Iterable[Tuple[GeneralizedBoard, GeneralizedBoard]]) -> pd.DataFrame:
    """
    Comprimentos de G(A), G(B), G(A+B) e G(AB) para cada par.

    Só gera dados; nenhuma relação entre as colunas é presumida.
    """
    rows: List[Dict[str, Optional[int]]] = []
    for k, (a, b) in enumerate(pairs):
        rows.append(
            {
                "pair": k,
                "len_a": solve_generalized(a).length,
                "len_b": solve_generalized(b).length,
                "len_sum": solve_generalized(gb_add(a, b)).length,
                "len_product": solve_generalized(gb_mul(a, b)).length,
            }
        )
    columns = ["pair", "len_a", "len_b", "len_sum", "len_product"]
    return pd.DataFrame(rows, columns=columns).astype(
        {c: "Int64" for c in columns[1:]}
    )
