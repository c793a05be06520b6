# gi/config.py
"""
Centralna konfiguracja warsztatu weryfikacyjnego.

Cel:
- jedno miejsce na domyślne tolerancje wszystkich kontroli (gram, metryka, twistor, ...),
- domyślne okno próbkowania dla dopasowań zaniku (r_min, r_max, liczba promieni i kierunków),
- domyślny seed i liczba wątków – raport ma być odtwarzalny z (config, seed),
- możliwość nadpisania wszystkiego zmiennymi środowiskowymi (prefiks GI_) albo plikiem .env.

Uwaga:
moduły obliczeniowe zakładają, że te wartości są spójne – więc zmieniaj je tutaj,
a nie w 5 różnych plikach.
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass
from typing import Any, Dict

from dotenv import load_dotenv

# .env jest opcjonalny – brak pliku to nie błąd
load_dotenv()


def _get_env(key: str, default: str) -> str:
    """Mały helper: pobiera zmienną środowiskową albo daje default."""
    return os.getenv(key, default)


@dataclass(frozen=True)
class WorkbenchConfig:
    # ─────────────────────────────────────────
    # Odtwarzalność
    # ─────────────────────────────────────────
    seed: int = int(_get_env("GI_SEED", "20150401"))
    threads: int = int(_get_env("GI_THREADS", "1"))
    log_level: str = _get_env("GI_LOG_LEVEL", "WARNING")
    schema_version: int = 1

    # ─────────────────────────────────────────
    # Okno próbkowania zaniku (asymptotyka)
    # ─────────────────────────────────────────
    r_min: float = float(_get_env("GI_R_MIN", "1e3"))
    r_max: float = float(_get_env("GI_R_MAX", "1e6"))
    n_radii: int = int(_get_env("GI_N_RADII", "64"))
    n_directions: int = int(_get_env("GI_N_DIRECTIONS", "16"))

    # ─────────────────────────────────────────
    # Różnice skończone
    # ─────────────────────────────────────────
    fd_step: float = float(_get_env("GI_FD_STEP", "0.02"))
    grid_nodes: int = int(_get_env("GI_GRID_NODES", "5"))
    n_points: int = int(_get_env("GI_N_POINTS", "16"))

    # ─────────────────────────────────────────
    # Tolerancje – po jednej na rodzinę kontroli
    # ─────────────────────────────────────────
    tol_gram: float = float(_get_env("GI_TOL_GRAM", "1e-10"))
    tol_metric: float = float(_get_env("GI_TOL_METRIC", "1e-8"))
    tol_order_ratio: float = float(_get_env("GI_TOL_ORDER_RATIO", "0.1"))
    tol_exponent: float = float(_get_env("GI_TOL_EXPONENT", "0.05"))
    tol_lead: float = float(_get_env("GI_TOL_LEAD", "1e-6"))
    tol_twistor: float = float(_get_env("GI_TOL_TWISTOR", "1e-10"))
    tol_involution: float = float(_get_env("GI_TOL_INVOLUTION", "1e-12"))
    tol_quadric: float = float(_get_env("GI_TOL_QUADRIC", "1e-8"))
    tol_period_orientation: float = float(_get_env("GI_TOL_PERIOD_ORIENTATION", "1e-6"))
    tol_period_additivity: float = float(_get_env("GI_TOL_PERIOD_ADDITIVITY", "1e-4"))
    tol_flux: float = float(_get_env("GI_TOL_FLUX", "1e-6"))

    # ─────────────────────────────────────────
    # Metody pomocnicze
    # ─────────────────────────────────────────
    def to_dict(self) -> Dict[str, Any]:
        """Zrzuca konfigurację do dict – przydaje się np. do echa wejścia w raporcie."""
        return asdict(self)

    def with_override(self, **kwargs: Any) -> "WorkbenchConfig":
        """Kopia z podmienionymi polami (None = bez zmian); CONFIG zostaje nietknięty."""
        data = self.to_dict()
        data.update({k: v for k, v in kwargs.items() if v is not None})
        return WorkbenchConfig(**data)

    def override_all_tolerances(self, tol: float) -> "WorkbenchConfig":
        """Flaga --tol z CLI: jedna wartość nadpisuje wszystkie tolerancje resztek."""
        keys = [k for k in self.to_dict() if k.startswith("tol_") and k not in ("tol_order_ratio", "tol_exponent")]
        return self.with_override(**{k: float(tol) for k in keys})


# globalna instancja, której używają pozostałe moduły
CONFIG = WorkbenchConfig()
