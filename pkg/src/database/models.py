"""
Modelos SQLAlchemy do repositório de resultados do windrose.

Guarda censos exatos, relatórios de experimentos e os melhores tabuleiros
encontrados pela busca, para comparar execuções e detectar instabilidade.
"""

from datetime import datetime
from typing import Any, Dict

from sqlalchemy import Column, DateTime, Index, Integer, String, Text, UniqueConstraint

from src.database.connection import Base


class CensusRecord(Base):
    """
    Uma linha da distribuição exata de comprimentos.

    Attributes:
        id: Identificador único
        n: Tamanho do tabuleiro
        length: Comprimento (0 = insolúvel)
        count: Número exato de tabuleiros
        created_at: Data/hora da gravação
    """

    __tablename__ = "census_records"

    id: int = Column(Integer, primary_key=True, autoincrement=True)
    n: int = Column(Integer, nullable=False, index=True)
    length: int = Column(Integer, nullable=False)
    count: int = Column(Integer, nullable=False)
    created_at: datetime = Column(DateTime, nullable=False, default=datetime.now)

    __table_args__ = (UniqueConstraint("n", "length", name="uq_census_n_length"),)

    def __repr__(self) -> str:
        return f"<CensusRecord(n={self.n}, length={self.length}, count={self.count})>"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "length": self.length,
            "count": self.count,
            "created_at": self.created_at.isoformat() if self.created_at else None,
        }


class ExperimentRecord(Base):
    """
    Relatório JSON de uma execução (estimador, varredura ou verificação).

    Attributes:
        id: Identificador único
        op: Operação ("solvable-prob", "bound-check", ...)
        variant: Variante ("torus", "cube") ou None para o tabuleiro plano
        n: Tamanho
        seed: Semente usada
        samples: Número de amostras
        report: Relatório serializado em JSON
        created_at: Data/hora da gravação
    """

    __tablename__ = "experiment_records"

    id: int = Column(Integer, primary_key=True, autoincrement=True)
    op: str = Column(String(40), nullable=False)
    variant: str = Column(String(20), nullable=True)
    n: int = Column(Integer, nullable=False)
    seed: int = Column(Integer, nullable=False)
    samples: int = Column(Integer, nullable=False, default=0)
    report: str = Column(Text, nullable=False)
    created_at: datetime = Column(DateTime, nullable=False, default=datetime.now)

    __table_args__ = (Index("idx_experiment_op_n", "op", "n"),)

    def __repr__(self) -> str:
        return f"<ExperimentRecord(op='{self.op}', n={self.n}, seed={self.seed})>"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "op": self.op,
            "variant": self.variant,
            "n": self.n,
            "seed": self.seed,
            "samples": self.samples,
            "report": self.report,
            "created_at": self.created_at.isoformat() if self.created_at else None,
        }


class SearchRecord(Base):
    """
    Melhor tabuleiro de uma busca de tabuleiros longos.

    Attributes:
        id: Identificador único
        n: Tamanho
        seed: Semente da busca
        best_length: Comprimento do tabuleiro
        board_text: Tabuleiro no formato texto
        created_at: Data/hora da gravação
    """

    __tablename__ = "search_records"

    id: int = Column(Integer, primary_key=True, autoincrement=True)
    n: int = Column(Integer, nullable=False, index=True)
    seed: int = Column(Integer, nullable=False)
    best_length: int = Column(Integer, nullable=False)
    board_text: str = Column(Text, nullable=False)
    created_at: datetime = Column(DateTime, nullable=False, default=datetime.now)

    def __repr__(self) -> str:
        return f"<SearchRecord(n={self.n}, best_length={self.best_length})>"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "n": self.n,
            "seed": self.seed,
            "best_length": self.best_length,
            "board_text": self.board_text,
            "created_at": self.created_at.isoformat() if self.created_at else None,
        }
