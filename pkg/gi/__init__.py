# gi/__init__.py
"""
gi – warsztat weryfikacyjny dla konstrukcji instantonów grawitacyjnych

Ten pakiet spina całą logikę domenową:
- config            – wspólna konfiguracja, tolerancje i okna próbkowania
- errors            – wyjątki naruszenia warunków wstępnych
- utils             – logowanie, RNG, równoległe mapowanie, wpisy kontroli
- geometry_core     – 2-formy w R⁴, macierz Grama trójki, d na siatce, metryka z trójki
- gibbons_hawking   – potencjały, połączenie Diraca, trójki Kählera, modele standardowe
- deformation       – przestrzeń V, operator D i tożsamość DD* = Δ
- asymptotics       – normy ważone, dopasowanie zaniku, wykładniki ALG / ALH
- kodaira           – kombinatoryka włókien osobliwych i klasyfikacja
- twistor           – krzywe spektralne, sklejanie, struktury rzeczywiste
- torelli           – systemy pierwiastków, okresy, macierze Cartana
- sampling          – deterministyczne próbkowanie kierunków, promieni i punktów
- data_ingestion    – wczytywanie JSON / CSV
- preprocessing     – normalizacja surowych słowników do typów domenowych
- cli               – podkomendy i raporty JSON

Z założenia:
- moduły obliczeniowe to czyste funkcje na niemutowalnych danych,
- tutaj trzymamy **publiczny interfejs** pakietu.
"""

from __future__ import annotations

from importlib import import_module
from typing import Any, Dict

__version__ = "0.1.0"

__all__ = [
    "config",
    "errors",
    "utils",
    "geometry_core",
    "gibbons_hawking",
    "deformation",
    "asymptotics",
    "kodaira",
    "twistor",
    "torelli",
    "sampling",
    "data_ingestion",
    "preprocessing",
    "cli",
    "get_submodule",
    "__version__",
]

_loaded_modules: Dict[str, Any] = {}


def get_submodule(name: str) -> Any:
    """
    Lazy loader dla podmodułów gi – CLI importuje tylko pipeline, który uruchamia
    (sympy ładuje się tylko dla deformation i twistor).

    Przykład:
        asym = get_submodule("asymptotics")
        asym.alg_delta(Fraction(1, 6))

    Jeśli moduł nie istnieje – KeyError.
    """
    if name in _loaded_modules:
        return _loaded_modules[name]

    try:
        mod = import_module(f"gi.{name}")
    except ModuleNotFoundError as exc:
        raise KeyError(f"Moduł '{name}' nie jest dostępny w pakiecie 'gi'.") from exc

    _loaded_modules[name] = mod
    return mod
