"""
Saída legível por máquina: JSON na ordem do esquema e CSV via pandas.
"""

import json
import logging
import os
from typing import Any, Dict, Optional

import pandas as pd

logger = logging.getLogger(__name__)


def to_json(data: Dict[str, Any]) -> str:
    """JSON determinístico (ordem de inserção das chaves, LF final)."""
    return json.dumps(data, ensure_ascii=False, indent=2) + "\n"


def frame_to_csv(frame: pd.DataFrame, path: Optional[str] = None) -> str:
    """
    Converte um DataFrame em CSV e, se ``path`` for dado, grava o arquivo.

    Returns:
        O texto CSV.
    """
    text = frame.to_csv(index=False)
    if path:
        write_text(path, text)
    return text


def write_text(path: str, text: str) -> None:
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    logger.info(f"✅ Arquivo salvo: {path}")
