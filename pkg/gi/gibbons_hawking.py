# gi/gibbons_hawking.py
"""
Ansatz Gibbonsa–Hawkinga: potencjał V, połączenie η, trójka Kählera i modele standardowe.

Konwencje:
- współrzędne mapy to (x¹, x², x³, θ); θ ma okres T = 8πm,
- każdy biegun to para (środek, ładunek q) z V = 1 + Σ q/|x − c|
  (Ak: q = 2m; DkSymmetric: −16m w zerze i 4m w ±x_α – pracujemy na nakryciu podwójnym),
- potencjał Diraca bieguna ze struną wzdłuż −x³ (south) lub +x³ (north),
  znak ustalony warunkiem dη = *dV z *dx¹ = dx²∧dx³.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DiracStringError, InconsistentParametersError, PotentialPoleError
from .geometry_core import FormField, TripleAtPoint

logger = logging.getLogger(__name__)

FAMILIES = ("Ak", "DkSymmetric")
STRING_AXES = ("south", "north")

# odległość uznawana za "na biegunie / na strunie" (względem skali punktu)
_POLE_EPS = 1e-13


# ─────────────────────────────────────────────────────────────
# Typy domenowe
# ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class MonopoleConfig:
    """
    Konfiguracja monopoli.

    Dla DkSymmetric `centers` to połowa listy {x_α}; pełny zbiór biegunów
    to {±x_α} plus człon w zerze. `model=True` oznacza model standardowy,
    który może nieść ujemną masę (D_k z k < 2).
    """

    family: str
    m: float
    centers: Tuple[Tuple[float, float, float], ...] = ()
    k: Optional[int] = None
    model: bool = False

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise InconsistentParametersError(f"unknown family {self.family!r}")
        centers = tuple(tuple(float(c) for c in p) for p in self.centers)
        if any(len(p) != 3 for p in centers):
            raise InconsistentParametersError("centers must be points in R^3")
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "m", float(self.m))

        if not self.model and not self.m > 0:
            raise InconsistentParametersError("m must be positive")

        pts = np.array(centers, dtype=float).reshape(-1, 3)
        if len(set(centers)) != len(centers):
            raise InconsistentParametersError("centers must be pairwise distinct")

        if self.family == "DkSymmetric":
            k = len(centers) if self.k is None else int(self.k)
            if k < 0:
                raise InconsistentParametersError("k must be >= 0")
            if k != len(centers):
                raise InconsistentParametersError(f"k={k} but {len(centers)} stored centers")
            object.__setattr__(self, "k", k)
            if np.any(np.all(pts == 0.0, axis=1)):
                raise InconsistentParametersError("stored center at the origin")
            for i in range(len(pts)):
                for j in range(i + 1, len(pts)):
                    if np.all(pts[i] == -pts[j]):
                        raise InconsistentParametersError("antipodal duplicate centers")
        else:
            rank = len(centers) - 1
            if self.k is not None and int(self.k) != rank:
                raise InconsistentParametersError(f"A_k with k={self.k} needs {int(self.k) + 1} centers")
            object.__setattr__(self, "k", rank)

    @property
    def fiber_period(self) -> float:
        """T = 8πm."""
        return 8.0 * np.pi * abs(self.m)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "m": self.m,
            "k": self.k,
            "centers": [list(c) for c in self.centers],
        }


@dataclass(frozen=True)
class GHChart:
    """Punkt mapy (x, θ) oraz wybór osi struny Diraca – jedna wartość albo lista per biegun."""

    x: Tuple[float, float, float]
    theta: float = 0.0
    string_axis: Union[str, Tuple[str, ...]] = "south"

    def axes_for(self, n_poles: int) -> Tuple[str, ...]:
        if isinstance(self.string_axis, str):
            axes = (self.string_axis,) * n_poles
        else:
            axes = tuple(self.string_axis)
        if len(axes) != n_poles or any(a not in STRING_AXES for a in axes):
            raise InconsistentParametersError(f"string_axis must name one of {STRING_AXES} per pole")
        return axes


# ─────────────────────────────────────────────────────────────
# Bieguny i potencjał
# ─────────────────────────────────────────────────────────────

def charges(cfg: MonopoleConfig) -> List[Tuple[np.ndarray, float]]:
    """Lista (środek, ładunek) – obie rodziny sprowadzamy do tej samej postaci."""
    if cfg.family == "Ak":
        return [(np.array(c, dtype=float), 2.0 * cfg.m) for c in cfg.centers]

    poles: List[Tuple[np.ndarray, float]] = [(np.zeros(3), -16.0 * cfg.m)]
    for c in cfg.centers:
        p = np.array(c, dtype=float)
        poles.append((p, 4.0 * cfg.m))
        poles.append((-p, 4.0 * cfg.m))
    return poles


def monopole_moment(cfg: MonopoleConfig) -> float:
    """Σq – współczynnik c w V = 1 + c/r + ..."""
    return float(sum(q for _, q in charges(cfg)))


def _as_points(x: Any) -> np.ndarray:
    pts = np.asarray(x, dtype=float)
    if pts.shape[-1] != 3:
        raise InconsistentParametersError("points must have last axis 3")
    return pts


def potential(cfg: MonopoleConfig, x: Any) -> Union[float, np.ndarray]:
    """V(x) = 1 + Σ q/|x − c|; x to punkt albo tablica (..., 3)."""
    pts = _as_points(x)
    out = np.ones(pts.shape[:-1])
    scale = 1.0 + np.linalg.norm(pts, axis=-1)
    for center, q in charges(cfg):
        dist = np.linalg.norm(pts - center, axis=-1)
        if np.any(dist <= _POLE_EPS * scale):
            raise PotentialPoleError(f"at center {center.tolist()}")
        out = out + q / dist
    return float(out) if out.ndim == 0 else out


def _inv_dist_minus_inv_norm(pts: np.ndarray, center: np.ndarray) -> np.ndarray:
    """1/|x − a| − 1/|x| bez kasowania: (2x·a − |a|²) / (|x||x−a|(|x| + |x−a|))."""
    r = np.linalg.norm(pts, axis=-1)
    d = np.linalg.norm(pts - center, axis=-1)
    num = 2.0 * np.sum(pts * center, axis=-1) - float(center @ center)
    return num / (r * d * (r + d))


def potential_remainder(cfg: MonopoleConfig, x: Any, lead: Optional[float] = None) -> np.ndarray:
    """V − 1 − lead/|x| liczone stabilnie; domyślnie lead = Σq."""
    pts = _as_points(x)
    lead = monopole_moment(cfg) if lead is None else float(lead)
    out = np.zeros(pts.shape[:-1])
    total = 0.0
    for center, q in charges(cfg):
        out = out + q * _inv_dist_minus_inv_norm(pts, center)
        total += q
    return out + (total - lead) / np.linalg.norm(pts, axis=-1)


def pole_sum_difference(cfg: MonopoleConfig, model: MonopoleConfig, x: Any) -> np.ndarray:
    """V_cfg − V_model w punktach x, bez odejmowania dwóch dużych liczb."""
    return potential_remainder(cfg, x, 0.0) - potential_remainder(model, x, 0.0)


# ─────────────────────────────────────────────────────────────
# Połączenie η (potencjały Diraca)
# ─────────────────────────────────────────────────────────────

def dirac_potential(rel: np.ndarray, q: float, axis: str = "south") -> np.ndarray:
    """
    Potencjał Diraca dla q/|x|, rel = x − c, wynik (..., 3).
    south: A = −q (x dy − y dx)/(r(r+z)),  north: A = q (x dy − y dx)/(r(r−z)).
    """
    rel = np.asarray(rel, dtype=float)
    xx, yy, zz = rel[..., 0], rel[..., 1], rel[..., 2]
    r = np.linalg.norm(rel, axis=-1)
    if axis == "south":
        den = r * (r + zz)
        sign = -1.0
    elif axis == "north":
        den = r * (r - zz)
        sign = 1.0
    else:
        raise InconsistentParametersError(f"unknown string axis {axis!r}")
    if np.any(den <= (_POLE_EPS * (1.0 + r)) ** 2):
        raise DiracStringError(f"{axis} string")
    coef = sign * q / den
    return np.stack([-coef * yy, coef * xx, np.zeros_like(zz)], axis=-1)


def _connection_vector(cfg: MonopoleConfig, pts: np.ndarray, axes: Sequence[str]) -> np.ndarray:
    out = np.zeros(pts.shape[:-1] + (3,))
    for (center, q), axis in zip(charges(cfg), axes):
        out = out + dirac_potential(pts - center, q, axis)
    return out


def connection_eta(cfg: MonopoleConfig, chart: GHChart) -> np.ndarray:
    """Współczynniki η = dθ + Σ A_α w bazie (dx¹, dx², dx³, dθ)."""
    pts = _as_points(chart.x)
    axes = chart.axes_for(len(charges(cfg)))
    potential(cfg, pts)  # biegun -> PotentialPoleError przed strunami
    a = _connection_vector(cfg, pts, axes)
    return np.concatenate([a, np.ones(a.shape[:-1] + (1,))], axis=-1)


def safe_string_axes(cfg: MonopoleConfig, x: Any) -> Tuple[str, ...]:
    """Dla każdego bieguna oś struny dalej od punktów x (jeden punkt albo tablica (..., 3))."""
    pts = _as_points(x).reshape(-1, 3)
    axes = []
    for center, _ in charges(cfg):
        rel = pts - center
        r = np.linalg.norm(rel, axis=-1)
        south = np.min((r + rel[:, 2]) / r)
        north = np.min((r - rel[:, 2]) / r)
        axes.append("south" if south >= north else "north")
    return tuple(axes)


# ─────────────────────────────────────────────────────────────
# Trójka i metryka
# ─────────────────────────────────────────────────────────────

def _triple_coefficients(v: np.ndarray, eta: np.ndarray) -> np.ndarray:
    """ω^i = dx^i∧η + V dx^j∧dx^k, wynik (..., 3, 6) w kolejności (12,13,14,23,24,34)."""
    a1, a2, a3 = eta[..., 0], eta[..., 1], eta[..., 2]
    one = eta[..., 3]
    zero = np.zeros_like(v)
    w1 = np.stack([a2, a3, one, v, zero, zero], axis=-1)
    w2 = np.stack([-a1, -v, zero, a3, one, zero], axis=-1)
    w3 = np.stack([v, -a1, zero, -a2, zero, one], axis=-1)
    return np.stack([w1, w2, w3], axis=-2)


def gh_metric(v: float, eta: np.ndarray) -> np.ndarray:
    """g = V (dx¹² + dx²² + dx³²) + V⁻¹ η⊗η."""
    eta = np.asarray(eta, dtype=float)
    g = np.outer(eta, eta) / v
    g[:3, :3] += v * np.eye(3)
    return g


def gh_triple(cfg: MonopoleConfig, chart: GHChart) -> Tuple[TripleAtPoint, np.ndarray]:
    v = np.asarray(potential(cfg, chart.x), dtype=float)
    eta = connection_eta(cfg, chart)
    coeffs = _triple_coefficients(v, eta)
    return TripleAtPoint.from_array(coeffs), gh_metric(float(v), eta)


def sample_triple_field(
    cfg: MonopoleConfig,
    origin: Iterable[float],
    spacing: Iterable[float],
    shape: Iterable[int],
    component: int,
    string_axis: Union[str, Tuple[str, ...]] = "south",
) -> FormField:
    """Jedna forma ω^component (0, 1, 2) trójki GH na siatce 4D (θ to czwarta oś)."""
    axes = GHChart((0.0, 0.0, 0.0), string_axis=string_axis).axes_for(len(charges(cfg)))

    def _fn(coords: np.ndarray) -> np.ndarray:
        pts = coords[..., :3]
        v = np.asarray(potential(cfg, pts))
        a = _connection_vector(cfg, pts, axes)
        eta = np.concatenate([a, np.ones(a.shape[:-1] + (1,))], axis=-1)
        return _triple_coefficients(v, eta)[..., component, :]

    return FormField.from_function(_fn, origin, spacing, shape)


# ─────────────────────────────────────────────────────────────
# Modele standardowe
# ─────────────────────────────────────────────────────────────

def standard_model(cfg: MonopoleConfig, recenter: bool = True) -> MonopoleConfig:
    """
    Model asymptotyczny h:
    - Ak: jeden środek w centroidzie (albo w zerze, gdy recenter=False) z całkowitą masą,
    - DkSymmetric: człon 1 + 8m(k−2)/r jako jeden środek w zerze z masą 4m(k−2).
    """
    if cfg.family == "Ak":
        n = len(cfg.centers)
        if n <= 1 and (recenter or n == 0 or cfg.centers[0] == (0.0, 0.0, 0.0)):
            return cfg
        center = np.mean(np.array(cfg.centers), axis=0) if recenter else np.zeros(3)
        return MonopoleConfig("Ak", cfg.m * n, (tuple(center.tolist()),), model=True)

    m_eff = 4.0 * cfg.m * (cfg.k - 2)
    if m_eff == 0:
        return MonopoleConfig("Ak", cfg.m, (), model=True)
    if m_eff < 0:
        logger.info("standard_model: D_%d model carries negative mass %.3g", cfg.k, m_eff)
    return MonopoleConfig("Ak", m_eff, ((0.0, 0.0, 0.0),), model=True)


# ─────────────────────────────────────────────────────────────
# Diagnostyka: strumień, nakładanie map, harmoniczność
# ─────────────────────────────────────────────────────────────

def _fd_curl(fn, pts: np.ndarray, h: float) -> np.ndarray:
    """rot pola wektorowego fn: (..., 3) -> (..., 3) różnicami centralnymi."""
    jac = np.zeros(pts.shape[:-1] + (3, 3))
    for b in range(3):
        step = np.zeros(3)
        step[b] = h
        jac[..., :, b] = (fn(pts + step) - fn(pts - step)) / (2.0 * h)
    return np.stack(
        [jac[..., 2, 1] - jac[..., 1, 2], jac[..., 0, 2] - jac[..., 2, 0], jac[..., 1, 0] - jac[..., 0, 1]],
        axis=-1,
    )


def _grad_potential(cfg: MonopoleConfig, pts: np.ndarray) -> np.ndarray:
    out = np.zeros(pts.shape)
    for center, q in charges(cfg):
        rel = pts - center
        r = np.linalg.norm(rel, axis=-1, keepdims=True)
        out = out - q * rel / r**3
    return out


def monopole_flux(
    cfg: MonopoleConfig,
    index: int,
    radius: float = 1.0,
    n_theta: int = 48,
    n_phi: int = 96,
    h: float = 1e-5,
) -> Dict[str, float]:
    """
    Strumień dη i *dV przez sferę wokół bieguna `index`.

    dη liczymy jako rot A różnicami skończonymi; na każdej półsferze
    biegun dostaje mapę ze struną po przeciwnej stronie, pozostałe bieguny
    – strunę skierowaną od sfery.
    """
    poles = charges(cfg)
    if not 0 <= index < len(poles):
        raise InconsistentParametersError(f"pole index {index} out of range")
    center, q = poles[index]
    others = [np.linalg.norm(c - center) for i, (c, _) in enumerate(poles) if i != index]
    if others and min(others) <= radius:
        raise InconsistentParametersError("sphere encloses another pole")

    base_axes = ["north" if c[2] >= center[2] else "south" for c, _ in poles]
    nodes, weights = np.polynomial.legendre.leggauss(n_theta)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    dphi = 2.0 * np.pi / n_phi

    flux_eta = 0.0
    flux_dv = 0.0
    for hemi, own_axis in ((1.0, "south"), (-1.0, "north")):
        axes = list(base_axes)
        axes[index] = own_axis
        u = 0.5 * (nodes + 1.0) * hemi  # cos θ w [0, 1] albo [−1, 0]
        wu = 0.5 * weights
        uu, pp = np.meshgrid(u, phi, indexing="ij")
        sin_t = np.sqrt(1.0 - uu**2)
        normal = np.stack([sin_t * np.cos(pp), sin_t * np.sin(pp), uu], axis=-1)
        pts = center + radius * normal
        w = (wu[:, None] * dphi) * radius**2

        curl = _fd_curl(lambda p: _connection_vector(cfg, p, axes), pts, h)
        flux_eta += float(np.sum(np.sum(curl * normal, axis=-1) * w))
        flux_dv += float(np.sum(np.sum(_grad_potential(cfg, pts) * normal, axis=-1) * w))

    expected = -4.0 * np.pi * q
    return {
        "flux_d_eta": flux_eta,
        "flux_star_dV": flux_dv,
        "expected": expected,
        "relative_error": abs(flux_eta - flux_dv) / abs(expected) if expected else abs(flux_eta - flux_dv),
    }


def chart_overlap_integral(cfg: MonopoleConfig, index: int, radius: float = 0.5, n: int = 256) -> Dict[str, float]:
    """
    ∮ (η_north − η_south) po okręgu wokół osi struny bieguna `index`.
    Wynik powinien być całkowitą wielokrotnością okresu włókna T.
    """
    center, q = charges(cfg)[index]
    t = 2.0 * np.pi * np.arange(n) / n
    pts = center + np.stack([radius * np.cos(t), radius * np.sin(t), np.zeros_like(t)], axis=-1)
    tangent = np.stack([-np.sin(t), np.cos(t), np.zeros_like(t)], axis=-1) * radius
    diff = dirac_potential(pts - center, q, "north") - dirac_potential(pts - center, q, "south")
    integral = float(np.sum(np.sum(diff * tangent, axis=-1)) * (2.0 * np.pi / n))
    ratio = integral / cfg.fiber_period
    return {
        "integral": integral,
        "period": cfg.fiber_period,
        "ratio": ratio,
        "integer_residual": abs(ratio - round(ratio)),
    }


def harmonic_residual(cfg: MonopoleConfig, x: Any, h: float) -> float:
    """7-punktowy laplasjan V w x; dla V harmonicznego to czysty błąd O(h²)."""
    pts = _as_points(x)
    lap = -6.0 * np.asarray(potential(cfg, pts))
    for b in range(3):
        step = np.zeros(3)
        step[b] = h
        lap = lap + np.asarray(potential(cfg, pts + step)) + np.asarray(potential(cfg, pts - step))
    return float(np.max(np.abs(lap / h**2)))


def monopole_equation_residual(cfg: MonopoleConfig, x: Any, h: float, string_axis: Union[str, Tuple[str, ...]] = "south") -> float:
    """max |rot A − ∇V| w x; rot liczony różnicami centralnymi, więc reszta to O(h²)."""
    pts = _as_points(x)
    axes = GHChart((0.0, 0.0, 0.0), string_axis=string_axis).axes_for(len(charges(cfg)))
    potential(cfg, pts)
    curl = _fd_curl(lambda p: _connection_vector(cfg, p, axes), pts, h)
    return float(np.max(np.abs(curl - _grad_potential(cfg, pts))))
