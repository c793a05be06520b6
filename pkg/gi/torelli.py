# gi/torelli.py
"""
Pierwiastki, okresy i kryterium osobliwości.

Model kratowy: klasa S_{β,−α} to e_β − e_α w Z^{k+1} (A_k), a klasy
S_{±β,±α} to ±e_β ± e_α w Z^k (D_k). Okres klasy to kombinacja liniowa
(b_α, Re a_α, Im a_α) o współczynnikach pierwiastka (stała = 1).
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import InconsistentParametersError
from .geometry_core import two_form_matrix
from .gibbons_hawking import GHChart, MonopoleConfig, gh_triple, safe_string_axes

logger = logging.getLogger(__name__)

RootVec = Tuple[int, ...]
FAMILIES = ("Ak", "Dk")

_NOTES = {
    ("Ak", 0): "A_0: H_2 = 0, no roots",
    ("Dk", 0): "D_0: H_2 = 0, no roots",
    ("Dk", 1): "D_1: H_2 generated by S_{+1,-1}; its self-intersection number is 0, so there are no roots",
}


# ─────────────────────────────────────────────────────────────
# Typy
# ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class RootSet:
    family: str
    k: int
    roots: Tuple[RootVec, ...]
    note: Optional[str] = None

    def __iter__(self):
        return iter(self.roots)

    def __len__(self) -> int:
        return len(self.roots)


@dataclass(frozen=True)
class TNParams:
    """(a_α, b_α) dla A_k (k+1 par) albo D_k (k par); wartości zdegenerowane są dozwolone."""

    family: str
    params: Tuple[Tuple[complex, float], ...]

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise InconsistentParametersError(f"unknown family {self.family!r}")
        object.__setattr__(self, "params", tuple((complex(a), float(b)) for a, b in self.params))

    @property
    def k(self) -> int:
        return len(self.params) - 1 if self.family == "Ak" else len(self.params)

    def coordinates(self) -> np.ndarray:
        """Macierz (n, 3) wierszy (b, Re a, Im a)."""
        return np.array([[b, a.real, a.imag] for a, b in self.params], dtype=float).reshape(-1, 3)


# ─────────────────────────────────────────────────────────────
# Pierwiastki
# ─────────────────────────────────────────────────────────────

def _unit(dim: int, i: int, sign: int = 1) -> np.ndarray:
    v = np.zeros(dim, dtype=int)
    v[i] = sign
    return v


def roots(family: str, k: int) -> RootSet:
    if family not in FAMILIES:
        raise InconsistentParametersError(f"unknown family {family!r}")
    if k < 0:
        raise InconsistentParametersError("k must be >= 0")
    note = _NOTES.get((family, k))
    if note is not None:
        return RootSet(family, k, (), note)

    out: List[RootVec] = []
    if family == "Ak":
        dim = k + 1
        for alpha, beta in itertools.permutations(range(dim), 2):
            out.append(tuple(int(v) for v in _unit(dim, beta) - _unit(dim, alpha)))
    else:
        for alpha, beta in itertools.combinations(range(k), 2):
            for sb, sa in itertools.product((1, -1), repeat=2):
                out.append(tuple(int(v) for v in _unit(k, beta, sb) + _unit(k, alpha, sa)))
    return RootSet(family, k, tuple(out))


def periods(p: TNParams, r: Sequence[int]) -> np.ndarray:
    """Σ_α r_α (b_α, Re a_α, Im a_α)."""
    coeffs = np.asarray(r, dtype=float)
    if coeffs.shape != (len(p.params),):
        raise InconsistentParametersError("root dimension does not match parameters")
    return coeffs @ p.coordinates()


def is_singular(p: TNParams, tol: float = 0.0) -> Tuple[bool, List[RootVec]]:
    """Prawda, gdy któryś pierwiastek ma zerowy wektor okresów."""
    vanishing = [r for r in roots(p.family, p.k) if np.max(np.abs(periods(p, r))) <= tol]
    if vanishing:
        logger.debug("is_singular: %d pierwiastków o zerowych okresach", len(vanishing))
    return bool(vanishing), vanishing


def zero_parameter_present(p: TNParams, tol: float = 0.0) -> bool:
    """D_k: jakaś para (a_α, b_α) = 0 – raportowane osobno, nie jako osobliwość."""
    return p.family == "Dk" and bool(np.any(np.max(np.abs(p.coordinates()), axis=1) <= tol))


def pairwise_degenerate(p: TNParams, tol: float = 0.0) -> bool:
    """Kryterium wprost: (a_α, b_α) = (a_β, b_β), a dla D_k także = −(a_β, b_β)."""
    coords = p.coordinates()
    for i, j in itertools.combinations(range(len(coords)), 2):
        if np.max(np.abs(coords[i] - coords[j])) <= tol:
            return True
        if p.family == "Dk" and np.max(np.abs(coords[i] + coords[j])) <= tol:
            return True
    return False


def singularity_report(p: TNParams, tol: float = 0.0) -> Dict[str, Any]:
    singular, vanishing = is_singular(p, tol)
    rs = roots(p.family, p.k)
    return {
        "singular": singular,
        "roots": [list(r) for r in vanishing],
        "periods": [periods(p, r).tolist() for r in rs],
        "zero_parameter_present": zero_parameter_present(p, tol),
        "note": rs.note,
    }


# ─────────────────────────────────────────────────────────────
# Macierze Cartana
# ─────────────────────────────────────────────────────────────

def simple_roots(family: str, k: int) -> np.ndarray:
    """A_k: e_{i+1} − e_i; D_k: e₂+e₁, e₂−e₁, e₃−e₂, …, e_k − e_{k−1}."""
    if family == "Ak":
        if k < 1:
            raise InconsistentParametersError("A_k needs k >= 1")
        return np.array([_unit(k + 1, i + 1) - _unit(k + 1, i) for i in range(k)])
    if family == "Dk":
        if k < 2:
            raise InconsistentParametersError("D_k needs k >= 2")
        rows = [_unit(k, 1) + _unit(k, 0), _unit(k, 1) - _unit(k, 0)]
        rows += [_unit(k, i + 1) - _unit(k, i) for i in range(1, k - 1)]
        return np.array(rows)
    raise InconsistentParametersError(f"unknown family {family!r}")


def cartan_matrix(family: str, k: int) -> np.ndarray:
    simple = simple_roots(family, k)
    return simple @ simple.T


def dynkin_cartan(family: str, k: int) -> np.ndarray:
    """
    Macierz Cartana z diagramu Dynkina: 2 na przekątnej, −1 na krawędziach.
    D_k w kolejności węzłów: dwa liście 0, 1 przy węźle 2, dalej łańcuch 2−3−…
    """
    size = k
    edges: List[Tuple[int, int]] = [(i, i + 1) for i in range(k - 1)] if family == "Ak" else []
    if family == "Dk":
        if k >= 3:
            edges = [(0, 2), (1, 2)] + [(i, i + 1) for i in range(2, k - 1)]
    mat = 2 * np.eye(size, dtype=int)
    for i, j in edges:
        mat[i, j] = mat[j, i] = -1
    return mat


# ─────────────────────────────────────────────────────────────
# Całka okresu na multi-Taub-NUT
# ─────────────────────────────────────────────────────────────

def tn_params_from_config(cfg: MonopoleConfig) -> TNParams:
    """Środek x ↦ (a, b) = (x³ + i x², x¹), tak że P_α(0) = −ā = −x³ + i x²."""
    if cfg.family != "Ak":
        raise InconsistentParametersError("only Ak configurations map to TN parameters")
    return TNParams("Ak", tuple((complex(c[2], c[1]), c[0]) for c in cfg.centers))


def complex_coordinate(point: Sequence[float]) -> complex:
    """z = −x³ + i x²."""
    return complex(-point[2], point[1])


def period_integral_numeric(
    cfg: MonopoleConfig,
    alpha: int,
    beta: int,
    n_s: int = 16,
    n_theta: int = 8,
) -> complex:
    """
    ∫ ω⁺ (ω⁺ = ω² + iω³ trójki GH) po π⁻¹(odcinek x_α → x_β).
    Parametryzacja x(s) = x_α + s(x_β − x_α), θ ∈ [0, T); orientacja ds∧dθ.
    """
    if cfg.family != "Ak":
        raise InconsistentParametersError("period integral is defined for Ak configurations")
    if alpha == beta:
        raise InconsistentParametersError("alpha and beta must differ")
    start = np.array(cfg.centers[alpha], dtype=float)
    end = np.array(cfg.centers[beta], dtype=float)
    direction = end - start
    if not np.any(direction):
        raise InconsistentParametersError("coincident centers")

    nodes, weights = np.polynomial.legendre.leggauss(n_s)
    s_nodes = 0.5 * (nodes + 1.0)
    s_weights = 0.5 * weights
    period = cfg.fiber_period
    thetas = period * np.arange(n_theta) / n_theta

    pts = start + s_nodes[:, None] * direction
    tangent_s = np.append(direction, 0.0)
    tangent_theta = np.array([0.0, 0.0, 0.0, 1.0])

    total = 0j
    for point, ws in zip(pts, s_weights):
        # składowa (s,θ) nie zależy od cechowania η: mapa struny osobno dla każdego węzła
        axes = safe_string_axes(cfg, point)
        for theta in thetas:
            triple, _ = gh_triple(cfg, GHChart(tuple(point), theta, axes))
            w_plus = two_form_matrix(np.asarray(triple.w2, dtype=complex) + 1j * np.asarray(triple.w3, dtype=complex))
            total += ws * (period / n_theta) * (tangent_s @ w_plus @ tangent_theta)
    return complex(total)


def calibrate_period_constant(cfg: MonopoleConfig, alpha: int = 0, beta: int = 1) -> complex:
    """c w ∫ = c·(z_β − z_α) z jednej pary referencyjnej."""
    dz = complex_coordinate(cfg.centers[beta]) - complex_coordinate(cfg.centers[alpha])
    if dz == 0:
        raise InconsistentParametersError("reference pair has equal complex coordinates")
    return period_integral_numeric(cfg, alpha, beta) / dz


def period_checks(cfg: MonopoleConfig) -> Dict[str, Any]:
    """Orientacja (α,β) vs (β,α), addytywność na trójkach i zgodność ze skalibrowaną stałą."""
    n = len(cfg.centers)
    if n < 2:
        raise InconsistentParametersError("need at least two centers")
    integrals = {
        (i, j): period_integral_numeric(cfg, i, j) for i, j in itertools.permutations(range(n), 2)
    }
    orientation = max(
        abs(integrals[(i, j)] + integrals[(j, i)]) / max(1.0, abs(integrals[(i, j)]))
        for i, j in itertools.combinations(range(n), 2)
    )
    additivity = 0.0
    for i, j, l in itertools.permutations(range(n), 3):
        lhs = integrals[(i, j)] + integrals[(j, l)]
        additivity = max(additivity, abs(lhs - integrals[(i, l)]) / max(1.0, abs(integrals[(i, l)])))

    constant: Optional[complex] = None
    linearity = 0.0
    for i, j in itertools.permutations(range(n), 2):
        dz = complex_coordinate(cfg.centers[j]) - complex_coordinate(cfg.centers[i])
        if dz == 0:
            continue
        if constant is None:
            constant = integrals[(i, j)] / dz
            continue
        linearity = max(linearity, abs(integrals[(i, j)] - constant * dz) / max(1.0, abs(integrals[(i, j)])))
    return {
        "integrals": {f"{i}->{j}": v for (i, j), v in integrals.items()},
        "orientation_residual": float(orientation),
        "additivity_residual": float(additivity),
        "constant": constant,
        "linearity_residual": float(linearity),
    }
