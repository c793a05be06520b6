# gi/errors.py
"""
Wyjątki warsztatu.

Zasada jak w reszcie pakietu: naruszenie warunku wstępnego operacji to wyjątek,
a "znaleziska" (naruszone tożsamości, resztki, pierwiastki znikające) to dane
zwracane w słowniku raportu.
"""

from __future__ import annotations


class WorkbenchError(ValueError):
    """Wspólna baza – CLI łapie ją jednym except."""


class SchemaError(WorkbenchError):
    """Konfiguracja uruchomienia nie przechodzi walidacji schematu."""


class InsufficientGridError(WorkbenchError):
    def __init__(self, detail: str = "") -> None:
        super().__init__(f"insufficient grid{': ' + detail if detail else ''}")


class PotentialPoleError(WorkbenchError):
    def __init__(self, detail: str = "") -> None:
        super().__init__(f"potential pole{': ' + detail if detail else ''}")


class DiracStringError(WorkbenchError):
    def __init__(self, detail: str = "") -> None:
        super().__init__(f"Dirac string{': ' + detail if detail else ''}")


class IndefiniteTripleError(WorkbenchError):
    def __init__(self, detail: str = "") -> None:
        super().__init__(f"indefinite triple{': ' + detail if detail else ''}")


class UnnormalizedTripleError(WorkbenchError):
    def __init__(self, detail: str = "") -> None:
        super().__init__(f"unnormalized triple{': ' + detail if detail else ''}")


class DegenerateSystemError(WorkbenchError):
    """Zdegenerowany układ liniowy albo zdegenerowana baza."""


class InconsistentParametersError(WorkbenchError):
    """Parametry nie pasują do siebie (np. typ włókna i ranga Dynkina)."""
