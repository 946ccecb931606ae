"""
Formato texto v1 dos tabuleiros.

Linha 1: ``n <N> <plain|torus>``; depois N linhas com exatamente N dígitos
0-7 (códigos horários a partir de N). Fim de linha LF, sem espaços finais.
"""

import logging
from typing import List

import numpy as np

from src.core.board import Board, check_size
from src.core.exceptions import BoardParameterError, BoardParseError

logger = logging.getLogger(__name__)

TOPOLOGIES = ("plain", "torus")


def split_lines(text: str) -> List[str]:
    """
    Divide o texto em linhas LF, aceitando a ausência do LF final.

    Raises:
        BoardParseError: Se houver CR (fim de linha CRLF).
    """
    if text.endswith("\n"):
        text = text[:-1]
    lines = text.split("\n")
    for number, line in enumerate(lines, start=1):
        if "\r" in line:
            raise BoardParseError("Fim de linha deve ser LF", number, line.index("\r") + 1)
    return lines


def parse_size_token(token: str, line: int, column: int) -> int:
    if not token.isdigit():
        raise BoardParseError(f"Tamanho inválido {token!r}", line, column)
    try:
        return check_size(int(token))
    except BoardParameterError as e:
        raise BoardParseError(str(e), line, column) from None


def parse_digit_rows(
    lines: List[str], first_line: int, n: int, alphabet: str
) -> np.ndarray:
    """
    Lê n linhas de n símbolos de ``alphabet`` e devolve os índices.

    Args:
        lines: Linhas do bloco (exatamente n).
        first_line: Número (1-based) da primeira linha no texto original.
        n: Tamanho esperado.
        alphabet: Símbolos válidos; o índice no alfabeto é o código.

    Raises:
        BoardParseError: Linha faltando, linha irregular ou símbolo inválido.
    """
    lookup = {ch: code for code, ch in enumerate(alphabet)}
    grid = np.zeros((n, n), dtype=np.int8)
    if len(lines) < n:
        raise BoardParseError(f"Esperadas {n} linhas de casas", first_line + len(lines))
    for r, row in enumerate(lines[:n]):
        number = first_line + r
        for c, ch in enumerate(row):
            if c >= n:
                raise BoardParseError(f"Linha irregular: mais de {n} casas", number, c + 1)
            code = lookup.get(ch)
            if code is None:
                raise BoardParseError(f"Símbolo inválido {ch!r}", number, c + 1)
            grid[r, c] = code
        if len(row) < n:
            raise BoardParseError(f"Linha irregular: {len(row)} casas de {n}", number, len(row) + 1)
    return grid


def parse_board(text: str) -> Board:
    """
    Lê um tabuleiro no formato texto v1.

    Args:
        text: Conteúdo do arquivo.

    Returns:
        Board (cabeçalho ``plain``) ou TorusBoard (cabeçalho ``torus``).

    Raises:
        BoardParseError: Cabeçalho ruim, tamanho par, linha irregular ou
            caractere que não é dígito 0-7, com linha e coluna.

    Example:
        >>> parse_board("n 3 plain\\n333\\n333\\n333\\n").cell((1, 1))
        <Direction.SE: 3>
    """
    lines = split_lines(text)
    header = lines[0].split(" ")
    if len(header) != 3 or header[0] != "n":
        raise BoardParseError("Cabeçalho esperado: 'n <N> <plain|torus>'", 1, 1)
    n = parse_size_token(header[1], 1, 3)
    if header[2] not in TOPOLOGIES:
        raise BoardParseError(f"Topologia desconhecida {header[2]!r}", 1, 4 + len(header[1]))

    grid = parse_digit_rows(lines[1:], 2, n, "01234567")
    if len(lines) > n + 1:
        raise BoardParseError("Linhas extras depois do tabuleiro", n + 2, 1)

    if header[2] == "torus":
        from src.extensions.torus import TorusBoard

        return TorusBoard(grid)
    return Board(grid)


def serialize_board(board: Board) -> str:
    """
    Escreve o tabuleiro no formato texto canônico (cada linha termina em LF).

    Example:
        >>> serialize_board(Board.uniform(3, Direction.SE))
        'n 3 plain\\n333\\n333\\n333\\n'
    """
    rows = ["".join(str(int(c)) for c in row) for row in board.cells]
    return "\n".join([f"n {board.n} {board.topology}"] + rows) + "\n"


def read_board(path: str) -> Board:
    """Lê um tabuleiro de arquivo."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        return parse_board(fh.read())


def write_board(board: Board, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(serialize_board(board))
    logger.info(f"✅ Tabuleiro salvo em {path}")
