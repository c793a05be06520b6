# gi/geometry_core.py
"""
Algebra zewnętrzna 2-form w 4 współrzędnych.

Co tu jest:
- 2-forma w punkcie to tablica 6 współczynników w STAŁEJ kolejności
  (12, 13, 14, 23, 24, 34) – antysymetria jest domyślna, trzymamy tylko 6 liczb,
- iloczyn zewnętrzny 2∧2 -> współczynnik przy dx¹∧dx²∧dx³∧dx⁴,
- macierz Grama trójki (wedge_gram) i jej normalizacja,
- pochodna zewnętrzna na siatce 4D (różnice centralne rzędu 2, brzegi odrzucone),
- odtworzenie metryki z dodatnio określonej trójki i rzut SD/ASD.

Tablice mogą mieć dtype float, complex albo object (sympy) – wzory są te same.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Tuple

import numpy as np
from scipy import linalg

from .errors import (
    DegenerateSystemError,
    IndefiniteTripleError,
    InsufficientGridError,
    UnnormalizedTripleError,
)

logger = logging.getLogger(__name__)

TwoForm = np.ndarray  # kształt (..., 6), kolejność PAIRS

# ─────────────────────────────────────────────────────────────
# Kolejność współczynników i tablice iloczynu
# ─────────────────────────────────────────────────────────────

PAIRS: Tuple[Tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
TRIPLES: Tuple[Tuple[int, int, int], ...] = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))

# α∧β = α12β34 − α13β24 + α14β23 + α23β14 − α24β13 + α34β12
_WEDGE_PARTNER = np.array([5, 4, 3, 2, 1, 0])
_WEDGE_SIGN = np.array([1, -1, 1, 1, -1, 1])

_PAIR_INDEX = {p: i for i, p in enumerate(PAIRS)}


def _levi_civita4() -> np.ndarray:
    eps = np.zeros((4, 4, 4, 4))
    for perm in itertools.permutations(range(4)):
        inv = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
        eps[perm] = -1.0 if inv % 2 else 1.0
    return eps


_EPS = _levi_civita4()


def wedge(a: TwoForm, b: TwoForm):
    """Współczynnik a∧b przy dx¹∧dx²∧dx³∧dx⁴ (działa też na tablicach object)."""
    a = np.asarray(a)
    b = np.asarray(b)
    return np.sum(a * b[..., _WEDGE_PARTNER] * _WEDGE_SIGN, axis=-1)


def two_form_matrix(w: TwoForm) -> np.ndarray:
    """2-forma jako antysymetryczna macierz 4×4: ω(X, Y) = Xᵀ Ω Y."""
    w = np.asarray(w)
    m = np.zeros((4, 4), dtype=w.dtype)
    for idx, (a, b) in enumerate(PAIRS):
        m[a, b] = w[idx]
        m[b, a] = -w[idx]
    return m


def matrix_two_form(m: np.ndarray) -> TwoForm:
    m = np.asarray(m)
    return np.array([m[a, b] for a, b in PAIRS], dtype=m.dtype)


# ─────────────────────────────────────────────────────────────
# Trójka w punkcie
# ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class TripleAtPoint:
    w1: TwoForm
    w2: TwoForm
    w3: TwoForm

    def as_array(self) -> np.ndarray:
        """Macierz 3×6 – wiersze to ω¹, ω², ω³."""
        return np.stack([np.asarray(self.w1), np.asarray(self.w2), np.asarray(self.w3)])

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "TripleAtPoint":
        arr = np.asarray(arr)
        return cls(arr[0], arr[1], arr[2])

    def rotate(self, rot: np.ndarray) -> "TripleAtPoint":
        """Działanie macierzy 3×3 na (ω¹, ω², ω³)."""
        return TripleAtPoint.from_array(np.asarray(rot) @ self.as_array())


def flat_triple(dtype=float) -> TripleAtPoint:
    """
    Płaska trójka na R⁴:
    ω¹ = dx¹∧dx² + dx³∧dx⁴, ω² = dx¹∧dx³ + dx⁴∧dx², ω³ = dx¹∧dx⁴ + dx²∧dx³.
    """
    return TripleAtPoint(
        np.array([1, 0, 0, 0, 0, 1], dtype=dtype),
        np.array([0, 1, 0, 0, -1, 0], dtype=dtype),
        np.array([0, 0, 1, 1, 0, 0], dtype=dtype),
    )


def wedge_gram(t: TripleAtPoint) -> Tuple[np.ndarray, object]:
    """
    Zwraca (Q, vol): ω^i∧ω^j = 2·Q_ij·vol, gdzie vol = (ω¹∧ω¹)/2.
    Przy vol = 0 Q to surowe współczynniki iloczynów, a vol = 0 (raport, nie wyjątek).
    """
    rows = t.as_array()
    raw = np.array([[wedge(rows[i], rows[j]) for j in range(3)] for i in range(3)])
    vol = raw[0, 0] / 2
    if vol == 0:
        logger.debug("wedge_gram: zdegenerowana forma objętości")
        return raw, 0
    return raw / (2 * vol), vol


def is_definite(t: TripleAtPoint, tol: float = 1e-12) -> bool:
    q, vol = wedge_gram(t)
    if vol == 0 or abs(complex(vol)) <= tol:
        return False
    q = np.asarray(q, dtype=float)
    if not np.allclose(q, q.T, atol=tol):
        return False
    return bool(np.all(np.linalg.eigvalsh((q + q.T) / 2) > tol))


def normalize_triple(t: TripleAtPoint) -> TripleAtPoint:
    """Gram–Schmidt (symetryczny Q^{-1/2}) – po nim wedge_gram daje Q = I."""
    if not is_definite(t):
        raise IndefiniteTripleError("cannot normalize")
    q, _ = wedge_gram(t)
    q = np.asarray(q, dtype=float)
    evals, evecs = np.linalg.eigh((q + q.T) / 2)
    inv_sqrt = evecs @ np.diag(1.0 / np.sqrt(evals)) @ evecs.T
    return TripleAtPoint.from_array(inv_sqrt @ t.as_array())


# ─────────────────────────────────────────────────────────────
# Metryka z trójki, gwiazdka Hodge'a, rzut SD/ASD
# ─────────────────────────────────────────────────────────────

def metric_from_triple(t: TripleAtPoint, tol: float = 1e-9) -> np.ndarray:
    """
    Jedyna metryka g, dla której ω¹, ω², ω³ są samodualne i ortonormalne.

    Droga przez endomorfizmy: A = Ω₁⁻¹Ω₂, K = −A/s z K∘K = −Id,
    g(X, Y) = ω³(K⁻¹X, Y) (symetryzowane). Znak wybieramy tak,
    żeby g było dodatnio określone – na płaskim modelu wychodzi identyczność.
    """
    q, vol = wedge_gram(t)
    if vol == 0 or not is_definite(t):
        raise IndefiniteTripleError()
    q = np.asarray(q, dtype=float)
    if np.max(np.abs(q - np.eye(3))) > tol:
        raise UnnormalizedTripleError(f"max|Q - I| = {np.max(np.abs(q - np.eye(3))):.3e}")

    om1, om2, om3 = (two_form_matrix(np.asarray(w, dtype=float)) for w in (t.w1, t.w2, t.w3))
    a = linalg.solve(om1, om2)
    s = np.sqrt(-np.trace(a @ a) / 4.0)
    k = -a / s
    g = linalg.solve(k.T, om3)
    g = (g + g.T) / 2
    evals = np.linalg.eigvalsh(g)
    if np.all(evals < 0):
        g = -g
    elif not np.all(evals > 0):
        raise IndefiniteTripleError("reconstructed form is not definite")
    return g


def star2(g: np.ndarray) -> np.ndarray:
    """Gwiazdka Hodge'a na 2-formach jako macierz 6×6 w kolejności PAIRS."""
    g = np.asarray(g, dtype=float)
    det = np.linalg.det(g)
    if abs(det) < 1e-300:
        raise DegenerateSystemError("singular metric")
    ginv = np.linalg.inv(g)
    sqrt_det = np.sqrt(abs(det))
    out = np.zeros((6, 6))
    for col in range(6):
        unit = np.zeros(6)
        unit[col] = 1.0
        raised = ginv @ two_form_matrix(unit) @ ginv
        # (*α)_{cd} = ½ √|g| ε_{abcd} α^{ab}
        starred = 0.5 * sqrt_det * np.einsum("abcd,ab->cd", _EPS, raised)
        out[:, col] = matrix_two_form(starred)
    return out


def sd_project(w: TwoForm, g: np.ndarray) -> Tuple[TwoForm, TwoForm]:
    """Rozkład w = sd + asd z *sd = sd, *asd = −asd."""
    g = np.asarray(g, dtype=float)
    evals = np.linalg.eigvalsh((g + g.T) / 2)
    if np.any(evals <= 0):
        raise DegenerateSystemError("metric is singular or not positive-definite")
    star = star2(g)
    w = np.asarray(w)
    starred = star @ w
    return (w + starred) / 2, (w - starred) / 2


# ─────────────────────────────────────────────────────────────
# Pola form na siatce 4D
# ─────────────────────────────────────────────────────────────

MIN_NODES_PER_AXIS = 4


@dataclass(frozen=True)
class FormField:
    """
    Pole 2-form na osiowej siatce 4D.
    values ma kształt (n1, n2, n3, n4, 6); węzeł i ma współrzędne origin + i·spacing.
    """

    origin: np.ndarray
    spacing: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        spacing = np.asarray(self.spacing, dtype=float)
        if spacing.shape != (4,) or np.any(spacing <= 0):
            raise InsufficientGridError("spacing must be 4 positive numbers")
        values = np.asarray(self.values)
        values.setflags(write=False)
        object.__setattr__(self, "origin", np.asarray(self.origin, dtype=float))
        object.__setattr__(self, "spacing", spacing)
        object.__setattr__(self, "values", values)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(self.values.shape[:4])

    def coordinates(self) -> np.ndarray:
        """Siatka współrzędnych węzłów, kształt (n1, n2, n3, n4, 4)."""
        axes = [self.origin[a] + self.spacing[a] * np.arange(n) for a, n in enumerate(self.shape)]
        return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)

    @classmethod
    def from_function(
        cls,
        fn: Callable[[np.ndarray], np.ndarray],
        origin: Iterable[float],
        spacing: Iterable[float],
        shape: Iterable[int],
    ) -> "FormField":
        """fn dostaje tablicę współrzędnych (..., 4) i zwraca (..., 6)."""
        origin = np.asarray(list(origin), dtype=float)
        spacing = np.asarray(list(spacing), dtype=float)
        shape = tuple(int(n) for n in shape)
        axes = [origin[a] + spacing[a] * np.arange(n) for a, n in enumerate(shape)]
        coords = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
        return cls(origin, spacing, np.asarray(fn(coords)))


@dataclass(frozen=True)
class ThreeFormField:
    """3-forma na węzłach wewnętrznych; współczynniki (123, 124, 134, 234)."""

    origin: np.ndarray
    spacing: np.ndarray
    values: np.ndarray

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0


def interior_derivative(values: np.ndarray, axis: int, h: float) -> np.ndarray:
    """Różnica centralna wzdłuż osi `axis`, obcięta do węzłów wewnętrznych we wszystkich 4 osiach."""
    plus = [slice(1, -1)] * 4
    minus = [slice(1, -1)] * 4
    plus[axis] = slice(2, None)
    minus[axis] = slice(None, -2)
    return (values[tuple(plus)] - values[tuple(minus)]) / (2.0 * h)


def _check_grid(shape: Tuple[int, ...]) -> None:
    if len(shape) != 4 or min(shape) < MIN_NODES_PER_AXIS:
        raise InsufficientGridError(f"need >= {MIN_NODES_PER_AXIS} nodes per axis, got {shape}")


def exterior_derivative_fd(f: FormField) -> ThreeFormField:
    """
    dω na węzłach wewnętrznych: (dω)_{abc} = ∂_a ω_bc − ∂_b ω_ac + ∂_c ω_ab,
    pochodne to różnice centralne rzędu 2, węzły brzegowe są pomijane.
    """
    _check_grid(f.shape)
    derivs = [interior_derivative(f.values, a, f.spacing[a]) for a in range(4)]
    comps = []
    for a, b, c in TRIPLES:
        comps.append(
            derivs[a][..., _PAIR_INDEX[(b, c)]]
            - derivs[b][..., _PAIR_INDEX[(a, c)]]
            + derivs[c][..., _PAIR_INDEX[(a, b)]]
        )
    return ThreeFormField(f.origin + f.spacing, f.spacing, np.stack(comps, axis=-1))


def exterior_derivative_1form_fd(values: np.ndarray, spacing: np.ndarray) -> np.ndarray:
    """d 1-formy na siatce: (dα)_{ab} = ∂_a α_b − ∂_b α_a, wynik (..., 6) na węzłach wewnętrznych."""
    _check_grid(tuple(values.shape[:4]))
    derivs = [interior_derivative(values, a, spacing[a]) for a in range(4)]
    return np.stack([derivs[a][..., b] - derivs[b][..., a] for a, b in PAIRS], axis=-1)
