# gi/asymptotics.py
"""
Tempo zaniku i wykładniki rozpadu.

Pozwala:
- dopasować wykładnik potęgowy v ~ r^{-p} (regresja log-log),
- policzyć normy ważone r^δ oraz e^{δr} na pierścieniu R³×S¹,
- wyznaczyć wykładnik ALG δ(β) dokładnie (Fraction) i całą tabelę typów włókien,
- wyznaczyć wykładnik ALH δ = 2π·min |λ| po niezerowych λ z kraty dualnej,
- sprawdzić rozwinięcie V = 1 + c/r + reszta dla konfiguracji monopoli.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np
import pandas as pd
from scipy import stats

from .config import CONFIG, WorkbenchConfig
from .errors import DegenerateSystemError, InconsistentParametersError, InsufficientGridError
from .gibbons_hawking import MonopoleConfig, monopole_moment, pole_sum_difference, potential_remainder, standard_model
from .sampling import log_radii, random_directions
from .utils import make_rng, parallel_map

logger = logging.getLogger(__name__)

MIN_DECAY_SAMPLES = 8
MIN_DECAY_SPAN = 100.0

# typ włókna w nieskończoności -> β
ALG_FIBER_BETA: Dict[str, Fraction] = {
    "Regular": Fraction(1),
    "I0*": Fraction(1, 2),
    "II": Fraction(1, 6),
    "II*": Fraction(5, 6),
    "III": Fraction(1, 4),
    "III*": Fraction(3, 4),
    "IV": Fraction(1, 3),
    "IV*": Fraction(2, 3),
}


# ─────────────────────────────────────────────────────────────
# Typy
# ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class DecaySamples:
    """Próbki (r, |v|): promienie rosnące, ≥ 8 próbek, rozpiętość ≥ 10²."""

    r: np.ndarray
    v: np.ndarray

    def __post_init__(self) -> None:
        r = np.asarray(self.r, dtype=float)
        v = np.asarray(self.v, dtype=float)
        if r.ndim != 1 or r.shape != v.shape:
            raise InsufficientGridError("r and v must be 1-D of equal length")
        if r.size < MIN_DECAY_SAMPLES:
            raise InsufficientGridError(f"need >= {MIN_DECAY_SAMPLES} samples, got {r.size}")
        if np.any(r <= 0) or np.any(np.diff(r) <= 0):
            raise InsufficientGridError("radii must be positive and strictly increasing")
        if r[-1] / r[0] < MIN_DECAY_SPAN:
            raise InsufficientGridError(f"radii span {r[-1] / r[0]:.3g} < {MIN_DECAY_SPAN:g}")
        if np.any(v < 0) or not np.all(np.isfinite(v)):
            raise InconsistentParametersError("magnitudes must be finite and nonnegative")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "v", v)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"r": self.r, "value": self.v})


@dataclass(frozen=True)
class Lattice3:
    """Krata Λ ⊂ R³; wiersze basis to generatory."""

    basis: np.ndarray

    def __post_init__(self) -> None:
        b = np.asarray(self.basis, dtype=float)
        if b.shape != (3, 3):
            raise InconsistentParametersError("lattice basis must be 3x3")
        if abs(np.linalg.det(b)) < 1e-12:
            raise DegenerateSystemError("degenerate lattice basis")
        object.__setattr__(self, "basis", b)

    def dual_basis(self) -> np.ndarray:
        """Wiersze d_i z d_i·b_j = δ_ij."""
        return np.linalg.inv(self.basis).T


# ─────────────────────────────────────────────────────────────
# Dopasowanie wykładnika
# ─────────────────────────────────────────────────────────────

def decay_fit(s: DecaySamples) -> Tuple[float, float]:
    """(wykładnik, błąd standardowy) z regresji log v względem log r; zera są pomijane."""
    mask = s.v > 0
    dropped = int(np.count_nonzero(~mask))
    if dropped:
        logger.warning("decay_fit: pominięto %d zerowych próbek", dropped)
    if np.count_nonzero(mask) < 2:
        raise InsufficientGridError("fewer than 2 usable samples")
    fit = stats.linregress(np.log(s.r[mask]), np.log(s.v[mask]))
    stderr = float(fit.stderr) if np.isfinite(fit.stderr) else 0.0
    return float(-fit.slope), stderr


# ─────────────────────────────────────────────────────────────
# Normy ważone
# ─────────────────────────────────────────────────────────────

def annulus_quadrature(r1: float, r2: float, n: int = 32, fiber_length: float = 2.0 * np.pi) -> Tuple[np.ndarray, np.ndarray]:
    """
    Węzły i wagi Gaussa–Legendre'a dla funkcji radialnych na płaskim
    pierścieniu {r1 ≤ |x| ≤ r2} × S¹ długości fiber_length: waga zawiera 4πr²·L.
    """
    if not 0 < r1 < r2:
        raise InsufficientGridError("need 0 < R1 < R2")
    nodes, weights = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (r2 - r1)
    radii = r1 + half * (nodes + 1.0)
    return radii, weights * half * 4.0 * np.pi * radii**2 * fiber_length


def weighted_l2_norm(values: Any, radii: Any, weights: Any, delta: float) -> float:
    """√(Σ |φ|² r^δ w) – dyskretna wersja ∫ |φ|² r^δ dVol."""
    phi = np.asarray(values)
    return float(np.sqrt(np.sum(np.abs(phi) ** 2 * np.asarray(radii, dtype=float) ** delta * np.asarray(weights))))


def weighted_exp_norm(values: Any, radii: Any, weights: Any, delta: float) -> float:
    """Jak wyżej, z wagą e^{δr} (diagnostyka ALH)."""
    phi = np.asarray(values)
    return float(np.sqrt(np.sum(np.abs(phi) ** 2 * np.exp(delta * np.asarray(radii, dtype=float)) * np.asarray(weights))))


# ─────────────────────────────────────────────────────────────
# ALG i ALH
# ─────────────────────────────────────────────────────────────

def alg_delta(beta: Union[Fraction, int, str]) -> Fraction:
    """δ = min po całkowitych n < 2β z (2β − n)/β; minimum leży przy n = ⌈2β⌉ − 1."""
    beta = Fraction(beta)
    if not 0 < beta <= 1:
        raise InconsistentParametersError("beta must lie in (0, 1]")
    top = math.ceil(2 * beta) - 1
    candidates = [(2 * beta - n) / beta for n in range(top - 2, top + 1) if n < 2 * beta]
    return min(candidates)


def alg_delta_table() -> pd.DataFrame:
    """Tabela typ włókna / β / δ jako wymierne."""
    rows = [{"fiber": name, "beta": beta, "delta": alg_delta(beta)} for name, beta in ALG_FIBER_BETA.items()]
    return pd.DataFrame(rows, columns=["fiber", "beta", "delta"])


def shortest_dual_vector(lat: Lattice3) -> np.ndarray:
    """
    Najkrótszy niezerowy wektor Λ* przez pełne przeliczenie pudełka.
    Dla v = Σ c_i d_i mamy c_i = v·b_i, więc |c_i| ≤ R·|b_i| przy R = min |d_i|.
    """
    dual = lat.dual_basis()
    bound_r = float(np.min(np.linalg.norm(dual, axis=1)))
    bounds = [int(math.floor(bound_r * np.linalg.norm(b) + 1e-9)) for b in lat.basis]
    coeffs = np.array(
        [c for c in itertools.product(*(range(-k, k + 1) for k in bounds)) if any(c)],
        dtype=float,
    )
    vectors = coeffs @ dual
    return vectors[int(np.argmin(np.linalg.norm(vectors, axis=1)))]


def alh_delta(lat: Lattice3) -> float:
    return float(2.0 * np.pi * np.linalg.norm(shortest_dual_vector(lat)))


# ─────────────────────────────────────────────────────────────
# Próbki zaniku i rozwinięcie V
# ─────────────────────────────────────────────────────────────

def _window(config: Optional[WorkbenchConfig]) -> Tuple[np.ndarray, WorkbenchConfig]:
    cfg = config or CONFIG
    return log_radii(cfg.r_min, cfg.r_max, cfg.n_radii), cfg


def sample_decay(
    cfg: MonopoleConfig,
    model: Optional[MonopoleConfig] = None,
    config: Optional[WorkbenchConfig] = None,
    seed: Optional[int] = None,
) -> DecaySamples:
    """|V_cfg − V_model| na log-siatce promieni, uśrednione po losowych kierunkach."""
    radii, wcfg = _window(config)
    model = standard_model(cfg) if model is None else model
    dirs = random_directions(make_rng(wcfg.seed if seed is None else seed), wcfg.n_directions)

    def _one(direction: np.ndarray) -> np.ndarray:
        return np.abs(pole_sum_difference(cfg, model, radii[:, None] * direction))

    per_dir = parallel_map(_one, list(dirs), wcfg.threads)
    return DecaySamples(radii, np.mean(np.stack(per_dir), axis=0))


def expansion_fit(
    cfg: MonopoleConfig,
    config: Optional[WorkbenchConfig] = None,
    seed: Optional[int] = None,
) -> Dict[str, float]:
    """
    V ≈ 1 + c/r: c z dopasowania wielomianu w s = r_min/r do r·(V − 1),
    reszta V − 1 − Σq/r (bez kasowania) dopasowana przez decay_fit.
    """
    radii, wcfg = _window(config)
    dirs = random_directions(make_rng(wcfg.seed if seed is None else seed), wcfg.n_directions)

    def _scaled(direction: np.ndarray) -> np.ndarray:
        return radii * potential_remainder(cfg, radii[:, None] * direction, 0.0)

    def _rest(direction: np.ndarray) -> np.ndarray:
        return np.abs(potential_remainder(cfg, radii[:, None] * direction))

    scaled = np.mean(np.stack(parallel_map(_scaled, list(dirs), wcfg.threads)), axis=0)
    s = radii[0] / radii
    lead = float(np.polynomial.polynomial.polyfit(s, scaled, 3)[0])

    rest = np.mean(np.stack(parallel_map(_rest, list(dirs), wcfg.threads)), axis=0)
    exponent, stderr = decay_fit(DecaySamples(radii, rest))
    return {
        "lead_coeff": lead,
        "monopole_moment": monopole_moment(cfg),
        "remainder_exponent": exponent,
        "stderr": stderr,
    }


def expansion_check(
    cfg: MonopoleConfig,
    config: Optional[WorkbenchConfig] = None,
    seed: Optional[int] = None,
) -> Tuple[float, float]:
    """(lead_coeff, remainder_exponent)."""
    res = expansion_fit(cfg, config, seed)
    return res["lead_coeff"], res["remainder_exponent"]
