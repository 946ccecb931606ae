"""
Operações do repositório de resultados.

Todas as funções de escrita retornam ``(sucesso, mensagem)`` e nunca
propagam erros de banco: falhas são registradas no log com traceback.
"""

import json
import logging
from typing import Any, Dict, List, Optional, Tuple

from sqlalchemy.exc import IntegrityError

from src.database.connection import get_db
from src.database.models import CensusRecord, ExperimentRecord, SearchRecord
from src.stats.estimators import LengthDistribution

logger = logging.getLogger(__name__)


# ===== CENSO =====


def record_census(dist: LengthDistribution) -> Tuple[bool, str]:
    """
    Grava a distribuição exata de um censo.

    Se já existir um censo para o mesmo n, as contagens são comparadas:
    qualquer diferença indica instabilidade e nada é sobrescrito.

    Args:
        dist: Distribuição exata (comprimento 0 = insolúvel).

    Returns:
        Tuple with (success: bool, message: str).

    Example:
        >>> record_census(exact_census(3))
        (True, 'Censo n=3 gravado (17 linhas).')
    """
    rows = {0: dist.unsolvable} if dist.unsolvable else {}
    rows.update(dist.counts)
    try:
        with get_db() as session:
            existing = {
                r.length: r.count
                for r in session.query(CensusRecord).filter(CensusRecord.n == dist.n).all()
            }
            if existing:
                if existing != rows:
                    diff = sorted(set(existing.items()) ^ set(rows.items()))
                    logger.error(f"❌ Censo n={dist.n} diverge do gravado: {diff[:5]}")
                    return False, f"Censo n={dist.n} diverge do resultado gravado."
                logger.info(f"✅ Censo n={dist.n} confere com o gravado")
                return True, f"Censo n={dist.n} confere com o gravado."

            for length, count in sorted(rows.items()):
                session.add(CensusRecord(n=dist.n, length=length, count=count))
            logger.info(f"✅ Censo n={dist.n} gravado ({len(rows)} linhas)")
            return True, f"Censo n={dist.n} gravado ({len(rows)} linhas)."

    except IntegrityError as ie:
        logger.warning(f"⚠️ Censo n={dist.n} gravado em paralelo: {ie}")
        return False, "Censo já gravado por outra execução."
    except Exception as e:
        logger.error(f"❌ Erro ao gravar censo: {e}", exc_info=True)
        return False, "Erro ao gravar censo."


def get_census(n: int) -> Optional[LengthDistribution]:
    """
    Lê o censo gravado para n.

    Returns:
        LengthDistribution ou None se não houver registro (ou em erro).
    """
    try:
        with get_db() as session:
            records = session.query(CensusRecord).filter(CensusRecord.n == n).all()
            if not records:
                return None
            counts = {r.length: r.count for r in records if r.length > 0}
            unsolvable = sum(r.count for r in records if r.length == 0)
            return LengthDistribution(n, counts, unsolvable)
    except Exception as e:
        logger.error(f"❌ Erro ao ler censo n={n}: {e}", exc_info=True)
        return None


# ===== EXPERIMENTOS =====


def record_experiment(report: Dict[str, Any]) -> Tuple[bool, str]:
    """
    Grava um relatório JSON (saída de ``to_dict`` de qualquer relatório).

    Args:
        report: Dicionário com pelo menos "op" e "n".

    Returns:
        Tuple with (success: bool, message: str).
    """
    try:
        op = report.get("op")
        n = report.get("n")
        if not op or n is None:
            logger.warning(f"⚠️ Relatório sem 'op' ou 'n': {sorted(report)}")
            return False, "Relatório deve conter 'op' e 'n'."

        with get_db() as session:
            session.add(
                ExperimentRecord(
                    op=op,
                    variant=report.get("variant"),
                    n=int(n),
                    seed=int(report.get("seed", 0)),
                    samples=int(report.get("samples", report.get("sample_size", 0))),
                    report=json.dumps(report, ensure_ascii=False),
                )
            )
        logger.info(f"✅ Experimento {op} (n={n}) gravado")
        return True, f"Experimento {op} gravado."

    except Exception as e:
        logger.error(f"❌ Erro ao gravar experimento: {e}", exc_info=True)
        return False, "Erro ao gravar experimento."


def get_experiments(op: Optional[str] = None, n: Optional[int] = None) -> List[Dict[str, Any]]:
    """
    Lista experimentos gravados, do mais antigo ao mais recente.

    Args:
        op: Filtro opcional por operação.
        n: Filtro opcional por tamanho.

    Returns:
        Lista de dicionários; "report" já vem decodificado.
    """
    try:
        with get_db() as session:
            query = session.query(ExperimentRecord)
            if op is not None:
                query = query.filter(ExperimentRecord.op == op)
            if n is not None:
                query = query.filter(ExperimentRecord.n == n)
            result = []
            for record in query.order_by(ExperimentRecord.id).all():
                data = record.to_dict()
                data["report"] = json.loads(record.report)
                result.append(data)
            return result
    except Exception as e:
        logger.error(f"❌ Erro ao listar experimentos: {e}", exc_info=True)
        return []


# ===== BUSCA =====


def record_search(n: int, seed: int, best_length: int, board_text: str) -> Tuple[bool, str]:
    """
    Grava o melhor tabuleiro de uma busca.

    Returns:
        Tuple with (success: bool, message: str).
    """
    try:
        if best_length < 1:
            return False, "Só tabuleiros solúveis são gravados."
        with get_db() as session:
            session.add(SearchRecord(n=n, seed=seed, best_length=best_length, board_text=board_text))
        logger.info(f"✅ Busca n={n} gravada (comprimento {best_length})")
        return True, f"Busca n={n} gravada."
    except Exception as e:
        logger.error(f"❌ Erro ao gravar busca: {e}", exc_info=True)
        return False, "Erro ao gravar busca."


def get_best_search(n: int) -> Optional[Dict[str, Any]]:
    """
    Melhor busca gravada para n (maior comprimento; empate fica com a mais antiga).

    Returns:
        Dicionário do registro ou None.
    """
    try:
        with get_db() as session:
            record = (
                session.query(SearchRecord)
                .filter(SearchRecord.n == n)
                .order_by(SearchRecord.best_length.desc(), SearchRecord.id.asc())
                .first()
            )
            return record.to_dict() if record else None
    except Exception as e:
        logger.error(f"❌ Erro ao ler buscas n={n}: {e}", exc_info=True)
        return None
