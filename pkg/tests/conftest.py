"""
PyTest Configuration - banco isolado e tabuleiros compartilhados.

Garante que os testes usem test_windrose.db e nunca o repositório de
resultados em data/.
"""

import logging
import os
import sys
from pathlib import Path

import numpy as np
import pytest

# Adicionar raiz do projeto ao path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

# Definir modo de teste ANTES de importar qualquer código que use connection.py
os.environ["TESTING_MODE"] = "1"

logger = logging.getLogger(__name__)


@pytest.fixture(scope="session", autouse=True)
def setup_test_environment():
    """
    Configura o ambiente de teste uma única vez por sessão.

    1. Confirma TESTING_MODE=1
    2. Cria as tabelas no banco de teste
    """
    from src.database.connection import CAMINHO_BANCO, TESTING_MODE, init_database

    logger.info(f"🗄️  Banco de teste: {CAMINHO_BANCO}")
    assert TESTING_MODE, "os testes devem rodar sobre o banco isolado"
    init_database()
    yield
    logger.debug(f"Banco de teste mantido em: {CAMINHO_BANCO}")


@pytest.fixture(scope="session", autouse=True)
def configure_test_logging():
    """Logging mais verboso para os pacotes do projeto."""
    logging.getLogger("src").setLevel(logging.DEBUG)


# ===== TABULEIROS =====


@pytest.fixture
def se_board():
    """3x3 com todas as casas em SE: comprimento 1."""
    from src.core.board import Board
    from src.core.directions import Direction

    return Board.uniform(3, Direction.SE)


@pytest.fixture
def dead_start_board():
    """3x3 com a11 = N: a casa inicial não aponta para nada."""
    from src.core.board import Board
    from src.core.directions import Direction

    return Board.uniform(3, Direction.N)


@pytest.fixture
def two_step_board():
    """3x3 com a11 = E e a12 = S: comprimento 2 por (1,1) -> (1,2) -> (2,2)."""
    from src.core.board import Board

    cells = np.zeros((3, 3), dtype=np.int8)
    cells[0, 0] = 2
    cells[0, 1] = 4
    return Board(cells)


@pytest.fixture
def board_file(tmp_path):
    """Grava um tabuleiro em arquivo e devolve o caminho."""
    from src.core.board_io import write_board

    def _write(board, name="board.txt"):
        path = tmp_path / name
        write_board(board, str(path))
        return str(path)

    return _write
