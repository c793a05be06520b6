# gi/kodaira.py
"""
Kombinatoryka włókien osobliwych: tożsamości Kodairy, klasyfikacja, generowanie.

Konfiguracja krzywych C = Σ n_i Θ_i opisana jest macierzą przecięć S
(na przekątnej (Θ_i²)), krotnościami n_i i liczbami a_i = (−KΘ_i).
Wszystko jest całkowitoliczbowe; naruszenia zwracamy jako dane.
"""

from __future__ import annotations

import logging
import numbers
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import InconsistentParametersError

logger = logging.getLogger(__name__)

FIBER_TAGS = ("Regular", "AChain", "DCase1", "DCase2", "DCase3", "Invalid")


# ─────────────────────────────────────────────────────────────
# Typy
# ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class CurveConfig:
    n: Tuple[int, ...]
    S: Tuple[Tuple[int, ...], ...]
    a: Tuple[int, ...]
    d: Optional[Tuple[int, ...]] = None
    d_mult: Optional[int] = None

    def __post_init__(self) -> None:
        n = tuple(int(v) for v in self.n)
        S = tuple(tuple(int(v) for v in row) for row in self.S)
        a = tuple(int(v) for v in self.a)
        size = len(n)
        if size == 0 or len(S) != size or any(len(row) != size for row in S) or len(a) != size:
            raise InconsistentParametersError("n, S and a must describe the same number of curves")
        if any(v <= 0 for v in n):
            raise InconsistentParametersError("multiplicities must be positive")
        if self.d is not None:
            d = tuple(int(v) for v in self.d)
            if len(d) != size:
                raise InconsistentParametersError("d must have one entry per curve")
            object.__setattr__(self, "d", d)
        if self.d_mult is not None:
            object.__setattr__(self, "d_mult", int(self.d_mult))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "a", a)

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.S, dtype=int)

    @property
    def has_divisor_data(self) -> bool:
        return self.d is not None or self.d_mult is not None

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"n": list(self.n), "S": [list(r) for r in self.S], "a": list(self.a)}
        if self.d is not None:
            out["d"] = list(self.d)
        if self.d_mult is not None:
            out["d_mult"] = self.d_mult
        return out


@dataclass(frozen=True)
class FiberType:
    tag: str
    m: Optional[int] = None
    reason: Optional[str] = None
    note: Optional[str] = None

    def __post_init__(self) -> None:
        if self.tag not in FIBER_TAGS:
            raise InconsistentParametersError(f"unknown fiber tag {self.tag!r}")
        if self.m is not None and (isinstance(self.m, bool) or not isinstance(self.m, numbers.Integral)):
            raise InconsistentParametersError(f"m must be an integer, got {self.m!r}")
        if self.tag == "AChain" and (self.m is None or self.m < 1):
            raise InconsistentParametersError("AChain needs m >= 1")
        if self.tag == "DCase3" and (self.m is None or self.m < 0):
            raise InconsistentParametersError("DCase3 needs m >= 0")

    @classmethod
    def from_dynkin(cls, family: str, k: int) -> "FiberType":
        """A_k -> AChain(k+1), D_k -> DCase3(k−2)."""
        if family == "A":
            return cls("AChain", k + 1)
        if family == "D":
            return cls("DCase3", k - 2)
        raise InconsistentParametersError(f"unknown Dynkin family {family!r}")

    def same_type(self, other: "FiberType") -> bool:
        return self.tag == other.tag and self.m == other.m

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"type": self.tag}
        if self.m is not None:
            out["m"] = self.m
        if self.reason:
            out["reason"] = self.reason
        if self.note:
            out["note"] = self.note
        return out


# ─────────────────────────────────────────────────────────────
# Walidacja
# ─────────────────────────────────────────────────────────────

def _violation(check: str, index: Optional[int], residual: int, message: str) -> Dict[str, Any]:
    return {"check": check, "index": index, "residual": int(residual), "message": message}


def virtual_genus(cfg: CurveConfig) -> List[float]:
    """π'(Θ_i) = ((Θ_i²) − a_i)/2 + 1 z adjunkcji 2π' − 2 − (Θ²) = (KΘ)."""
    s = cfg.matrix
    return [(int(s[i, i]) - cfg.a[i]) / 2 + 1 for i in range(len(cfg.n))]


def validate(cfg: CurveConfig) -> Dict[str, Any]:
    """Wszystkie naruszenia tożsamości Kodairy i warunków strukturalnych."""
    s = cfg.matrix
    size = len(cfg.n)
    n = np.array(cfg.n)
    violations: List[Dict[str, Any]] = []

    asym = np.argwhere(s != s.T)
    for i, j in asym:
        if i < j:
            violations.append(_violation("symmetry", int(i), int(s[i, j] - s[j, i]), f"S[{i},{j}] != S[{j},{i}]"))

    off = s - np.diag(np.diag(s))
    for i, j in np.argwhere(off < 0):
        violations.append(_violation("off_diagonal", int(i), int(s[i, j]), f"negative intersection S[{i},{j}]"))

    adjacency = csr_matrix(((off + off.T) > 0).astype(int))
    n_comp, _ = connected_components(adjacency, directed=False)
    if n_comp != 1:
        violations.append(_violation("connectivity", None, n_comp - 1, f"dual graph has {n_comp} components"))

    for i in range(size):
        residual = int(n @ s[i])
        if residual != 0:
            violations.append(_violation("fiber_identity", i, residual, "n_i(Θ_i²) + Σ n_j(Θ_iΘ_j) != 0"))

    genus = virtual_genus(cfg)
    for i, g in enumerate(genus):
        if g != int(g):
            violations.append(_violation("adjunction_parity", i, int(s[i, i]) - cfg.a[i], "(Θ²) − a not even"))
        elif g != 0:
            violations.append(_violation("adjunction", i, int(g), f"virtual genus {int(g)} != 0"))

    degree = int(n @ np.array(cfg.a))
    if degree != 2:
        violations.append(_violation("anticanonical_degree", None, degree - 2, "Σ n_i a_i != 2"))

    if cfg.d is not None:
        d_degree = int(n @ np.array(cfg.d))
        if d_degree != 2:
            violations.append(_violation("divisor_degree", None, d_degree - 2, "Σ n_i d_i != 2"))
        for i, (ai, di) in enumerate(zip(cfg.a, cfg.d)):
            if ai != di:
                violations.append(_violation("divisor_anticanonical", i, di - ai, "(DΘ_i) != (−KΘ_i)"))

    return {
        "valid": not violations,
        "violations": violations,
        "virtual_genus": genus,
        "anticanonical_degree": degree,
    }


# ─────────────────────────────────────────────────────────────
# Klasyfikacja
# ─────────────────────────────────────────────────────────────

def _neighbours(s: np.ndarray, i: int) -> List[int]:
    return [j for j in range(len(s)) if j != i and s[i, j] > 0]


def _walk_path(s: np.ndarray, start: int, allowed: set) -> List[int]:
    """Ścieżka od `start` po wierzchołkach z `allowed`; None-like (pusta) jeśli to nie ścieżka."""
    path = [start]
    prev = None
    current = start
    while True:
        nxt = [j for j in _neighbours(s, current) if j in allowed and j != prev]
        if len(nxt) > 1:
            return []
        if not nxt:
            return path
        prev, current = current, nxt[0]
        if current in path:
            return []
        path.append(current)


def _match_chain(cfg: CurveConfig) -> Optional[int]:
    s = cfg.matrix
    size = len(cfg.n)
    if size < 2 or any(v != 1 for v in cfg.n):
        return None
    ends = [i for i in range(size) if len(_neighbours(s, i)) == 1]
    if len(ends) != 2:
        return None
    path = _walk_path(s, ends[0], set(range(size)))
    if len(path) != size:
        return None
    for pos, i in enumerate(path):
        for j in _neighbours(s, i):
            if s[i, j] != 1:
                return None
        is_end = pos in (0, size - 1)
        if s[i, i] != (-1 if is_end else -2) or cfg.a[i] != (1 if is_end else 0):
            return None
    return size - 1


def _match_dcase3(cfg: CurveConfig) -> Optional[int]:
    s = cfg.matrix
    size = len(cfg.n)
    trunk = {i for i in range(size) if cfg.n[i] == 2}
    tips = [i for i in range(size) if cfg.n[i] == 1]
    if len(tips) != 2 or len(trunk) + 2 != size or any(v not in (1, 2) for v in cfg.n):
        return None
    heads = [i for i in trunk if s[i, i] == -1 and cfg.a[i] == 1]
    if len(heads) != 1:
        return None
    path = _walk_path(s, heads[0], trunk)
    if len(path) != len(trunk):
        return None
    last = path[-1]
    for t in tips:
        if _neighbours(s, t) != [last] or s[t, last] != 1:
            return None
    for i in range(size):
        if i != heads[0] and (s[i, i] != -2 or cfg.a[i] != 0):
            return None
        if any(s[i, j] != 1 for j in _neighbours(s, i)):
            return None
    return len(trunk) - 1


def classify(cfg: CurveConfig) -> FiberType:
    report = validate(cfg)
    if not report["valid"]:
        first = report["violations"][0]
        logger.debug("classify: %d naruszeń, pierwsze %s", len(report["violations"]), first["check"])
        return FiberType("Invalid", reason=f"{first['check']}: {first['message']}")

    s = cfg.matrix
    size = len(cfg.n)
    if size == 1:
        if cfg.n == (1,) and s[0, 0] == 0 and cfg.a == (2,):
            if cfg.d_mult == 2:
                return FiberType("DCase1")
            note = None if cfg.has_divisor_data else "no divisor data; DCase1 not distinguishable"
            return FiberType("Regular", note=note)
        return FiberType("Invalid", reason="single curve is not a regular fiber")

    chain = _match_chain(cfg)
    if chain is not None:
        if chain == 1 and cfg.d == (1, 1):
            return FiberType("DCase2", note="assumes (Θ₀Θ₁) = 1 with D through the common point of Θ₀ and Θ₁")
        return FiberType("AChain", chain)

    trunk = _match_dcase3(cfg)
    if trunk is not None:
        return FiberType("DCase3", trunk)

    return FiberType("Invalid", reason="configuration matches no supported fiber type")


# ─────────────────────────────────────────────────────────────
# Generowanie konfiguracji kanonicznych
# ─────────────────────────────────────────────────────────────

def _chain(m: int) -> CurveConfig:
    size = m + 1
    s = np.zeros((size, size), dtype=int)
    for i in range(size):
        s[i, i] = -1 if i in (0, m) else -2
        if i + 1 < size:
            s[i, i + 1] = s[i + 1, i] = 1
    a = [1 if i in (0, m) else 0 for i in range(size)]
    return CurveConfig(tuple([1] * size), tuple(map(tuple, s)), tuple(a))


def _dcase3(m: int) -> CurveConfig:
    size = m + 3
    s = np.zeros((size, size), dtype=int)
    for i in range(size):
        s[i, i] = -2
    s[0, 0] = -1
    for i in range(m):
        s[i, i + 1] = s[i + 1, i] = 1
    for tip in (m + 1, m + 2):
        s[m, tip] = s[tip, m] = 1
    n = [2] * (m + 1) + [1, 1]
    a = [1] + [0] * (size - 1)
    return CurveConfig(tuple(n), tuple(map(tuple, s)), tuple(a), d=tuple(a), d_mult=1)


def generate_fiber(t: FiberType, k: Optional[int] = None) -> CurveConfig:
    """
    Konfiguracja kanoniczna typu t. k to opcjonalna ranga Dynkina do kontroli
    zgodności: AChain(m) ma podgraf A_{m−1}, DCase3(m) – D_{m+2}.
    """
    if t.tag == "AChain":
        if k is not None and k != t.m - 1:
            raise InconsistentParametersError(f"AChain({t.m}) carries A_{t.m - 1}, not A_{k}")
        return _chain(t.m)
    if t.tag == "DCase3":
        if k is not None and k != t.m + 2:
            raise InconsistentParametersError(f"DCase3({t.m}) carries D_{t.m + 2}, not D_{k}")
        return _dcase3(t.m)
    if k is not None:
        raise InconsistentParametersError(f"{t.tag} takes no Dynkin rank")
    if t.tag == "Regular":
        return CurveConfig((1,), ((0,),), (2,))
    if t.tag == "DCase1":
        return CurveConfig((1,), ((0,),), (2,), d=(2,), d_mult=2)
    if t.tag == "DCase2":
        # (Θ₀Θ₁) = 1 wymusza tożsamość włókna
        return CurveConfig((1, 1), ((-1, 1), (1, -1)), (1, 1), d=(1, 1), d_mult=1)
    raise InconsistentParametersError(f"cannot generate {t.tag}")
