"""
Módulo de conexão SQLAlchemy com banco de dados SQLite.

Gerencia o engine e as sessions do repositório de resultados do windrose
(censos, experimentos de Monte Carlo e melhores tabuleiros da busca).
"""

import logging
import os
import sys
from contextlib import contextmanager
from typing import Generator

from sqlalchemy import Engine, create_engine
from sqlalchemy.orm import Session, declarative_base, sessionmaker

from src.utils.config import DATA_PATH, PROJETO_RAIZ

# Configurar logger
logger = logging.getLogger(__name__)


# ===== DETECÇÃO DE AMBIENTE DE TESTE =====
def is_test_env() -> bool:
    """
    Decide se o processo deve usar o banco isolado de testes.

    Vale quando TESTING_MODE=1, quando o pytest já foi importado ou quando
    o script em execução mora em uma pasta tests/.
    """
    if os.environ.get("TESTING_MODE") == "1" or "pytest" in sys.modules:
        return True
    if not sys.argv or not sys.argv[0]:
        return False
    script = os.path.abspath(sys.argv[0]).replace("\\", "/")
    return "/tests/" in script


TESTING_MODE = is_test_env()

if TESTING_MODE:
    CAMINHO_BANCO = os.path.join(PROJETO_RAIZ, "test_windrose.db")
    logger.warning(f"MODO TESTE DETECTADO - usando banco isolado: {CAMINHO_BANCO}")
else:
    CAMINHO_BANCO = os.path.join(DATA_PATH, "windrose.db")
    logger.debug(f"Banco de resultados: {CAMINHO_BANCO}")

DATABASE_URL = f"sqlite:///{CAMINHO_BANCO}"

# Engine criado sob demanda: comandos que não gravam nada não tocam o disco
_engine: "Engine | None" = None

SessionLocal = sessionmaker(
    class_=Session,
    expire_on_commit=False,
    autocommit=False,
    autoflush=False,
)

# Base declarativa para os modelos
Base = declarative_base()


def get_engine() -> Engine:
    """
    Retorna a instância do engine SQLAlchemy, criando-a na primeira chamada.

    Returns:
        Engine: Engine do banco de dados SQLAlchemy
    """
    global _engine
    if _engine is None:
        if not TESTING_MODE:
            os.makedirs(DATA_PATH, exist_ok=True)
        try:
            _engine = create_engine(
                DATABASE_URL,
                connect_args={"check_same_thread": False},
                echo=False,
                future=True,
            )
            SessionLocal.configure(bind=_engine)
            logger.info(f"✅ Engine SQLAlchemy criado em {DATABASE_URL}")
        except Exception as e:
            logger.error(f"❌ Erro ao criar engine: {e}")
            raise
    return _engine


@contextmanager
def get_db() -> Generator[Session, None, None]:
    """
    Sessão transacional: commit na saída normal, rollback em exceção.

    Yields:
        Session ligada ao banco de resultados.

    Example:
        >>> with get_db() as session:
        ...     session.query(CensusRecord).count()
    """
    get_engine()
    session = SessionLocal()
    try:
        yield session
        session.commit()
    except Exception as e:
        session.rollback()
        logger.error(f"❌ Sessão desfeita: {e}")
        raise
    finally:
        session.close()


def init_database() -> None:
    """
    Cria as tabelas de resultados caso não existam.

    Raises:
        Exception: Se a criação do banco falhar
    """
    try:
        # Importar modelos para registrá-los no Base
        from src.database import models  # noqa: F401

        Base.metadata.create_all(bind=get_engine())
        logger.info(f"✅ Tabelas de resultados prontas em {DATABASE_URL}")
    except Exception as e:
        logger.error(f"❌ Falha ao criar as tabelas: {e}")
        raise
