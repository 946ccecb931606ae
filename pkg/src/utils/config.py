"""
Configurações do windrose.

Lê variáveis de ambiente (e um arquivo .env opcional) uma única vez e
expõe constantes de módulo para os demais pacotes.
"""

import logging
import os

from dotenv import load_dotenv

# Carregar variáveis de ambiente
load_dotenv()

logger = logging.getLogger(__name__)

# Obter caminho da raiz do projeto (diretório acima de src/)
PROJETO_RAIZ = os.path.dirname(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
)


def _int_env(nome: str, padrao: int) -> int:
    """
    Lê uma variável de ambiente inteira, caindo no padrão se inválida.

    Args:
        nome: Nome da variável de ambiente.
        padrao: Valor usado quando a variável não existe ou é inválida.

    Returns:
        O valor inteiro lido.
    """
    bruto = os.getenv(nome)
    if bruto is None or not bruto.strip():
        return padrao
    try:
        return int(bruto)
    except ValueError:
        logger.warning(f"⚠️ {nome}={bruto!r} inválido, usando {padrao}")
        return padrao


# ===== EXECUÇÃO PARALELA =====
DEFAULT_WORKERS: int = max(1, _int_env("WINDROSE_WORKERS", 1))
# Amostras por tarefa enviada ao pool de processos
CHUNK_SIZE: int = 2_000

# ===== ARMAZENAMENTO DE RESULTADOS =====
DATA_PATH: str = os.getenv("WINDROSE_DATA_PATH") or os.path.join(PROJETO_RAIZ, "data")

# ===== SEMENTES =====
DEFAULT_SEED: int = 0

# ===== CONSTRUÇÕES =====
SPIRAL_REPAIR_BUDGET: int = 500

# ===== ISOMORFISMO =====
ISO_NODE_BUDGET: int = 2_000_000

# ===== RECOZIMENTO SIMULADO =====
ANNEAL_BUDGET: int = 20_000
ANNEAL_RESTARTS: int = 4
ANNEAL_T0: float = 2.0
ANNEAL_COOLING: float = 0.9995
ANNEAL_T_MIN: float = 0.01
ANNEAL_UNSOLVABLE_SCORE: int = -1
CHECKPOINT_EVERY: int = 5_000

# ===== AMOSTRAGEM =====
SAMPLING_MAX_ATTEMPTS: int = 100_000
# Nível dos intervalos de confiança (o quantil vem de scipy)
CONFIDENCE_LEVEL: float = 0.95

# ===== CENSO =====
CENSUS_ORACLE_FRACTION: float = 0.01
CENSUS_ORACLE_CHUNK: int = 50_000
