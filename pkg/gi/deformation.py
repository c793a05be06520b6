# gi/deformation.py
"""
Deformacje trójki: przestrzeń V, działanie pola wektorowego i płaski operator D.

V ⊂ SD³ to 4-wymiarowa podprzestrzeń z bazą
    e₁: θ = (ω¹, ω², ω³),   e₂: θ = (0, ω³, −ω²),
    e₃: θ = (−ω³, 0, ω¹),   e₄: θ = (ω², −ω¹, 0),
czyli θ^i = Σ_j M_ij ω^j z M = c₁·I + (antysymetryczna część c₂, c₃, c₄).

Dwa tryby:
- dokładny – wielomiany sympy o współczynnikach wymiernych (tło płaskie),
- numeryczny – te same wzory na siatce FormField, pochodne różnicami centralnymi.

Uwaga o skali: d_flat to operator z jawnego wzoru na R⁴; rzut punktowy
v_project(L_X ω) daje dokładnie połowę d_flat(X).
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from .errors import DegenerateSystemError, InconsistentParametersError
from .geometry_core import (
    PAIRS,
    FormField,
    TripleAtPoint,
    exterior_derivative_1form_fd,
    wedge,
)

logger = logging.getLogger(__name__)

COORDS: Tuple[sympy.Symbol, ...] = sympy.symbols("x1:5", real=True)

# θ^i = Σ_j E_a[i, j] ω^j
V_BASIS: Tuple[np.ndarray, ...] = (
    np.eye(3, dtype=int),
    np.array([[0, 0, 0], [0, 0, 1], [0, -1, 0]]),
    np.array([[0, 0, -1], [0, 0, 0], [1, 0, 0]]),
    np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]),
)

# Płaski operator D jako Σ_a M_a ∂_a: (wiersz c, oś ∂_a, kolumna f, znak)
_D_TERMS: Tuple[Tuple[int, int, int, int], ...] = (
    (0, 0, 0, 1), (0, 1, 1, 1), (0, 2, 2, 1), (0, 3, 3, 1),
    (1, 1, 0, 1), (1, 0, 1, -1), (1, 3, 2, 1), (1, 2, 3, -1),
    (2, 2, 0, 1), (2, 3, 1, -1), (2, 0, 2, -1), (2, 1, 3, 1),
    (3, 3, 0, 1), (3, 2, 1, 1), (3, 1, 2, -1), (3, 0, 3, -1),
)


def d_symbol_matrices() -> np.ndarray:
    """Macierze M_a (4×4×4) symbolu D; M_a M_bᵀ + M_b M_aᵀ = 2δ_ab·I."""
    mats = np.zeros((4, 4, 4), dtype=int)
    for row, axis, col, sign in _D_TERMS:
        mats[axis, row, col] = sign
    return mats


# ─────────────────────────────────────────────────────────────
# Typy
# ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class PolyVectorField:
    """X = Σ f^a ∂/∂x^a, f^a wielomiany wymierne w x¹..x⁴."""

    components: Tuple[sympy.Expr, sympy.Expr, sympy.Expr, sympy.Expr]
    max_degree: Optional[int] = None

    def __post_init__(self) -> None:
        comps = tuple(sympy.expand(sympy.sympify(c)) for c in self.components)
        if len(comps) != 4:
            raise InconsistentParametersError("vector field needs 4 components")
        for c in comps:
            if c == 0:
                continue
            poly = sympy.Poly(c, *COORDS)
            if not all(coef.is_rational for coef in poly.coeffs()):
                raise InconsistentParametersError("coefficients must be rational")
            if self.max_degree is not None and poly.total_degree() > self.max_degree:
                raise InconsistentParametersError(f"degree {poly.total_degree()} > {self.max_degree}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def random(cls, degree: int, rng: np.random.Generator, denominator: int = 5) -> "PolyVectorField":
        """Losowe pole stopnia ≤ degree z małymi współczynnikami wymiernymi."""
        monomials = [
            e for e in itertools.product(range(degree + 1), repeat=4) if sum(e) <= degree
        ]
        comps = []
        for _ in range(4):
            expr = sympy.Integer(0)
            for exps in monomials:
                num = int(rng.integers(-4, 5))
                if num == 0:
                    continue
                den = int(rng.integers(1, denominator + 1))
                term = sympy.Rational(num, den)
                for sym, e in zip(COORDS, exps):
                    term *= sym**e
                expr += term
            comps.append(expr)
        return cls(tuple(comps), degree)

    def lambdified(self):
        """Funkcja coords (..., 4) -> wartości (..., 4) dla trybu numerycznego."""
        fns = [sympy.lambdify(COORDS, c, "numpy") for c in self.components]

        def _eval(coords: np.ndarray) -> np.ndarray:
            args = [coords[..., a] for a in range(4)]
            zero = np.zeros(coords.shape[:-1])
            return np.stack([zero + fn(*args) for fn in fns], axis=-1)

        return _eval


@dataclass(frozen=True)
class VCoeffs:
    """Współczynniki (c₁..c₄) przy e₁..e₄ – wyrażenia sympy albo tablice."""

    c: Tuple[Any, Any, Any, Any]

    def matrix(self) -> np.ndarray:
        """M = Σ c_a E_a (3×3, dtype object)."""
        out = np.zeros((3, 3), dtype=object)
        for coef, basis in zip(self.c, V_BASIS):
            out = out + basis.astype(object) * coef
        return out

    def reconstitute(self, base: Any) -> np.ndarray:
        """θ^i = Σ_j M_ij ω^j na zadanej trójce bazowej, wynik (3, ..., 6)."""
        rows = _triple_rows(base)
        mat = self.matrix()
        return np.stack([sum(mat[i, j] * rows[j] for j in range(3)) for i in range(3)])

    def simplified(self) -> "VCoeffs":
        return VCoeffs(tuple(sympy.expand(v) if isinstance(v, sympy.Basic) else v for v in self.c))

    def equals(self, other: "VCoeffs") -> bool:
        """Równość dokładna (po rozwinięciu)."""
        return all(sympy.expand(sympy.sympify(a) - sympy.sympify(b)) == 0 for a, b in zip(self.c, other.c))


@dataclass(frozen=True)
class ProjectionResidual:
    """Co zostaje po rzucie na V: części ASD i 5-wymiarowe dopełnienie w SD³."""

    triple: np.ndarray
    asd: np.ndarray
    sd_complement: Tuple[Any, Any, Any, Any, Any]

    def max_abs(self) -> float:
        return _max_magnitude(self.triple)


# ─────────────────────────────────────────────────────────────
# Helpery wewnętrzne
# ─────────────────────────────────────────────────────────────

def _is_exact(arr: np.ndarray) -> bool:
    return np.asarray(arr).dtype == object


def _to_exact(arr: Any) -> np.ndarray:
    arr = np.asarray(arr)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = sympy.nsimplify(v) if isinstance(v, float) else sympy.sympify(v)
    return out


def _triple_rows(base: Any) -> np.ndarray:
    if isinstance(base, TripleAtPoint):
        return base.as_array()
    if isinstance(base, (list, tuple)) and base and isinstance(base[0], FormField):
        return np.stack([f.values for f in base])
    return np.asarray(base)


def _magnitude(v: Any) -> float:
    if isinstance(v, sympy.Basic):
        expanded = sympy.expand(v)
        if expanded == 0:
            return 0.0
        if expanded.free_symbols:
            return float(max(abs(c) for c in sympy.Poly(expanded, *COORDS).coeffs()))
        return float(abs(complex(expanded)))
    return float(abs(v))


def _max_magnitude(arr: Any) -> float:
    arr = np.asarray(arr)
    if arr.size == 0:
        return 0.0
    if arr.dtype == object:
        return max(_magnitude(v) for v in arr.ravel())
    return float(np.max(np.abs(arr)))


def _pairing(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """Macierz first^i∧second^j, kształt (3, 3, ...)."""
    return wedge(first[:, None], second[None, :])


def _combine(mat: np.ndarray, rows: np.ndarray, exact: bool) -> np.ndarray:
    """Σ_j mat[i, j]·ω^j dla i = 1, 2, 3."""
    if exact:
        return np.stack([sum(mat[i, j] * rows[j] for j in range(3)) for i in range(3)])
    return np.einsum("ij...,j...k->i...k", mat, rows)


def _align(rows: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """Stała baza (3, 6) rozciągnięta pod pole (3, ..., 6)."""
    extra = theta.ndim - rows.ndim
    if extra > 0:
        rows = rows.reshape(rows.shape[:1] + (1,) * extra + rows.shape[1:])
    return rows


def _sd_matrix(theta: np.ndarray, rows: np.ndarray, exact: bool) -> np.ndarray:
    """M = P·G⁻¹ z P_ij = θ^i∧ω^j, G_ij = ω^i∧ω^j; zdegenerowana baza -> wyjątek."""
    gram = _pairing(rows, rows)
    pair = _pairing(theta, rows)
    if exact:
        g = sympy.Matrix(3, 3, lambda i, j: sympy.sympify(gram[i, j]))
        if sympy.simplify(g.det()) == 0:
            raise DegenerateSystemError("degenerate base triple")
        p = sympy.Matrix(3, 3, lambda i, j: sympy.sympify(pair[i, j]))
        m = (p * g.inv()).applyfunc(sympy.expand)
        return np.array([[m[i, j] for j in range(3)] for i in range(3)], dtype=object)

    g = np.moveaxis(np.asarray(gram, dtype=float), (0, 1), (-2, -1))
    if np.any(np.abs(np.linalg.det(g)) < 1e-14):
        raise DegenerateSystemError("degenerate base triple")
    p = np.moveaxis(np.asarray(pair, dtype=float), (0, 1), (-2, -1))
    return np.moveaxis(p @ np.linalg.inv(g), (-2, -1), (0, 1))


# ─────────────────────────────────────────────────────────────
# Rzut na V
# ─────────────────────────────────────────────────────────────

def v_project(t: Any, base: Any) -> Tuple[VCoeffs, ProjectionResidual]:
    """
    Rozkład trójki form t względem V zbudowanego na `base`.

    Część SD: θ^i_SD = Σ_j M_ij ω^j. Współczynniki V to ślad/3 i część
    antysymetryczna M; reszta to ASD oraz bezśladowa symetryczna część M
    (dopełnienie wymiaru 5).
    """
    theta = _triple_rows(t)
    rows = _triple_rows(base)
    exact = _is_exact(theta) or _is_exact(rows)
    if exact:
        rows, theta = _to_exact(rows), _to_exact(theta)
    else:
        theta = np.asarray(theta, dtype=float)
        rows = np.asarray(rows, dtype=float)
    rows = _align(rows, theta)

    mat = _sd_matrix(theta, rows, exact)
    half = sympy.Rational(1, 2) if exact else 0.5
    third = sympy.Rational(1, 3) if exact else 1.0 / 3.0
    trace = mat[0, 0] + mat[1, 1] + mat[2, 2]
    coeffs = VCoeffs(
        (
            trace * third,
            (mat[1, 2] - mat[2, 1]) * half,
            (mat[2, 0] - mat[0, 2]) * half,
            (mat[0, 1] - mat[1, 0]) * half,
        )
    )
    if exact:
        coeffs = coeffs.simplified()

    antisym_v = np.empty(mat.shape, dtype=mat.dtype)
    for i in range(3):
        for j in range(3):
            antisym_v[i, j] = (mat[i, j] - mat[j, i]) * half + (trace * third if i == j else 0)
    sd = _combine(mat, rows, exact)
    in_v = _combine(antisym_v, rows, exact)
    asd = theta - sd
    residual_triple = theta - in_v

    sym = [[(mat[i, j] + mat[j, i]) * half for j in range(3)] for i in range(3)]
    complement = (
        sym[0][0] - trace * third,
        sym[1][1] - trace * third,
        sym[0][1],
        sym[0][2],
        sym[1][2],
    )
    if exact:
        residual_triple = np.vectorize(sympy.expand, otypes=[object])(residual_triple)
        asd = np.vectorize(sympy.expand, otypes=[object])(asd)
    return coeffs, ProjectionResidual(residual_triple, asd, complement)


def v_membership_residual(theta: Any, base: Any) -> float:
    """
    Relacje definiujące V: ω^i∧θ^j + ω^j∧θ^i = 0 (i≠j) oraz ω^i∧θ^i niezależne od i.
    Zwraca maksymalne naruszenie.
    """
    rows = _triple_rows(base)
    th = _triple_rows(theta)
    if _is_exact(th) or _is_exact(rows):
        rows, th = _to_exact(rows), _to_exact(th)
    values: List[Any] = []
    for i in range(3):
        for j in range(i + 1, 3):
            values.append(wedge(rows[i], th[j]) + wedge(rows[j], th[i]))
    diag = [wedge(rows[i], th[i]) for i in range(3)]
    values.append(diag[0] - diag[1])
    values.append(diag[1] - diag[2])
    return max(_max_magnitude(v) for v in values)


# ─────────────────────────────────────────────────────────────
# L_X ω = d(X⌟ω)
# ─────────────────────────────────────────────────────────────

def _contract_exact(x: PolyVectorField, row: np.ndarray) -> List[sympy.Expr]:
    """(X⌟ω)_b = Σ_a X^a ω_ab."""
    alpha = [sympy.Integer(0)] * 4
    for idx, (a, b) in enumerate(PAIRS):
        coef = sympy.sympify(row[idx])
        alpha[b] += x.components[a] * coef
        alpha[a] -= x.components[b] * coef
    return alpha


def _d_one_form_exact(alpha: Sequence[sympy.Expr]) -> np.ndarray:
    out = np.empty(6, dtype=object)
    for idx, (a, b) in enumerate(PAIRS):
        out[idx] = sympy.expand(sympy.diff(alpha[b], COORDS[a]) - sympy.diff(alpha[a], COORDS[b]))
    return out


def lie_deform(x: PolyVectorField, base: Any) -> Union[np.ndarray, List[FormField]]:
    """
    θ^i = d(X⌟ω^i) dla i = 1, 2, 3.

    base = TripleAtPoint / tablica (3, 6) wyrażeń -> wynik dokładny (3, 6) object;
    base = lista trzech FormField -> wynik na węzłach wewnętrznych siatki.
    """
    if isinstance(base, (list, tuple)) and base and isinstance(base[0], FormField):
        return _lie_deform_fd(x, base)
    rows = _to_exact(_triple_rows(base))
    return np.stack([_d_one_form_exact(_contract_exact(x, rows[i])) for i in range(3)])


def _lie_deform_fd(x: PolyVectorField, fields: Sequence[FormField]) -> List[FormField]:
    first = fields[0]
    coords = first.coordinates()
    xv = x.lambdified()(coords)
    out: List[FormField] = []
    for f in fields:
        alpha = np.zeros(f.values.shape[:4] + (4,))
        for idx, (a, b) in enumerate(PAIRS):
            alpha[..., b] += xv[..., a] * f.values[..., idx]
            alpha[..., a] -= xv[..., b] * f.values[..., idx]
        d_alpha = exterior_derivative_1form_fd(alpha, f.spacing)
        out.append(FormField(f.origin + f.spacing, f.spacing, d_alpha))
    logger.debug("lie_deform: FD na siatce %s", first.shape)
    return out


# ─────────────────────────────────────────────────────────────
# Płaski operator D, D* i DD*
# ─────────────────────────────────────────────────────────────

def _apply_d(f: Sequence[sympy.Expr]) -> Tuple[sympy.Expr, ...]:
    out = [sympy.Integer(0)] * 4
    for row, axis, col, sign in _D_TERMS:
        out[row] += sign * sympy.diff(f[col], COORDS[axis])
    return tuple(sympy.expand(v) for v in out)


def _apply_dstar(c: Sequence[sympy.Expr]) -> Tuple[sympy.Expr, ...]:
    out = [sympy.Integer(0)] * 4
    for row, axis, col, sign in _D_TERMS:
        out[col] += sign * sympy.diff(c[row], COORDS[axis])
    return tuple(sympy.expand(v) for v in out)


def d_flat(x: PolyVectorField) -> VCoeffs:
    """
    D(f¹∂₁ + … + f⁴∂₄) =
      (∂₁f¹ + ∂₂f² + ∂₃f³ + ∂₄f⁴) e₁ + (∂₂f¹ − ∂₁f² + ∂₄f³ − ∂₃f⁴) e₂
    + (∂₃f¹ − ∂₄f² − ∂₁f³ + ∂₂f⁴) e₃ + (∂₄f¹ + ∂₃f² − ∂₂f³ − ∂₁f⁴) e₄
    """
    return VCoeffs(_apply_d(x.components))


def dstar_flat(c: VCoeffs) -> PolyVectorField:
    """D* = Σ_a M_aᵀ ∂_a – wtedy DD* = Δ = Σ ∂_a²."""
    return PolyVectorField(_apply_dstar([sympy.sympify(v) for v in c.c]))


def ddstar_flat(c: VCoeffs) -> VCoeffs:
    return d_flat(dstar_flat(c))


def laplacian(c: VCoeffs) -> VCoeffs:
    return VCoeffs(tuple(sympy.expand(sum(sympy.diff(sympy.sympify(v), s, 2) for s in COORDS)) for v in c.c))
