# gi/data_ingestion.py
"""Wczytywanie konfiguracji uruchomień (JSON) i plików próbek (CSV)."""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

import pandas as pd

from .errors import SchemaError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


# ─────────────────────────────────────────────────────────────
# Helpery do wczytywania
# ─────────────────────────────────────────────────────────────

def _detect_sep(sample: bytes) -> str:
    """
    Próbuje zgadnąć separator na podstawie pierwszych linii.
    Jeśli się nie uda – wraca przecinek.
    """
    text = sample.decode("utf-8", errors="ignore")
    candidates = [",", ";", "\t", "|"]
    counts = {sep: text.count(sep) for sep in candidates}
    best = max(counts, key=counts.get)
    return best if counts[best] else ","


def read_csv_smart(path: PathLike) -> pd.DataFrame:
    """CSV z auto-wykryciem separatora (np. próbki r,value zrzucone z innego narzędzia)."""
    path = Path(path)
    try:
        with path.open("rb") as fh:
            sep = _detect_sep(fh.read(4096))
        return pd.read_csv(path, sep=sep, float_precision="round_trip")
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
        raise SchemaError(f"invalid CSV in {path}: {exc}") from exc


def load_json(path: PathLike) -> Dict[str, Any]:
    """Konfiguracja uruchomienia; zły JSON -> SchemaError (kod wyjścia 2)."""
    path = Path(path)
    try:
        with path.open("r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON in {path}: {exc}") from exc
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError("run config must be a JSON object")
    logger.debug("wczytano konfigurację %s", path)
    return data


def dump_samples_csv(frame: pd.DataFrame, path: PathLike) -> None:
    """Zrzut próbek (--dump-samples); stała kolejność kolumn i format liczb."""
    frame.to_csv(Path(path), index=False, float_format="%.17g")

