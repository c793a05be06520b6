# gi/utils.py
"""Ogólne helpery: logowanie, RNG, równoległe mapowanie, wpisy kontroli, JSON."""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, TypeVar

import numpy as np

from .config import CONFIG

T = TypeVar("T")
R = TypeVar("R")

_logging_ready = False


def init_logging(level: Optional[str] = None) -> None:
    """Jednorazowa konfiguracja logowania dla CLI (stderr)."""
    global _logging_ready
    if _logging_ready:
        return
    logging.basicConfig(
        level=getattr(logging, (level or CONFIG.log_level).upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    _logging_ready = True


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    """Generator z ustalonym ziarnem – każdy pipeline zaczyna od własnego."""
    return np.random.default_rng(CONFIG.seed if seed is None else int(seed))


def parallel_map(fn: Callable[[T], R], items: Sequence[T], threads: int = 1) -> List[R]:
    """
    Mapowanie z zachowaniem kolejności. Wynik nie zależy od liczby wątków,
    bo agregujemy zawsze po uporządkowanej liście.
    """
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def make_check(name: str, residual: float, threshold: float, *, upper: bool = True, **extra: Any) -> Dict[str, Any]:
    """
    Jeden wpis kontroli w raporcie. Każda kontrola ma resztkę i próg –
    nie ma cichych "passed".
    """
    residual = float(residual)
    passed = residual <= threshold if upper else residual >= threshold
    entry: Dict[str, Any] = {
        "name": name,
        "residual": residual,
        "threshold": float(threshold),
        "passed": bool(passed and np.isfinite(residual)),
    }
    entry.update(extra)
    return entry


def max_abs(values: Iterable[Any]) -> float:
    vals = [abs(complex(v)) for v in values]
    return float(max(vals)) if vals else 0.0


def to_jsonable(obj: Any) -> Any:
    """Zamienia numpy / complex / Fraction na typy, które json.dumps rozumie."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    return obj


def dumps_report(report: Dict[str, Any]) -> str:
    """Kanoniczny JSON – te same dane dają te same bajty."""
    return json.dumps(to_jsonable(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
