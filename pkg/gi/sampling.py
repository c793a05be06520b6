# gi/sampling.py
"""
Deterministyczne próbkowanie dla kontroli numerycznych.

Pozwala:
- wylosować kierunki na sferze S² (dopasowania zaniku uśredniają po kierunkach),
- zbudować log-równomierną siatkę promieni,
- wylosować punkty zespolone (ζ, z) i parametry krzywych spektralnych.

Każda funkcja bierze jawny np.random.Generator – raport zależy tylko od (config, seed).
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

from .errors import InsufficientGridError


# ─────────────────────────────────────────────────────────────
# Przestrzeń rzeczywista
# ─────────────────────────────────────────────────────────────

def random_directions(rng: np.random.Generator, n: int) -> np.ndarray:
    """n wektorów jednostkowych (n, 3), rozkład jednostajny na S²."""
    raw = rng.standard_normal((n, 3))
    return raw / np.linalg.norm(raw, axis=1, keepdims=True)


def log_radii(r_min: float, r_max: float, n: int) -> np.ndarray:
    if not 0 < r_min < r_max:
        raise InsufficientGridError("need 0 < r_min < r_max")
    return np.geomspace(r_min, r_max, n)


def random_points_in_shell(
    rng: np.random.Generator, n: int, r_inner: float, r_outer: float
) -> np.ndarray:
    """Punkty w powłoce r_inner ≤ |x| ≤ r_outer (promień jednostajny, nie objętościowo)."""
    dirs = random_directions(rng, n)
    radii = rng.uniform(r_inner, r_outer, size=n)
    return dirs * radii[:, None]


# ─────────────────────────────────────────────────────────────
# Przestrzeń zespolona
# ─────────────────────────────────────────────────────────────

def random_complex(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    return scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2.0)


def random_spectral_params(
    rng: np.random.Generator, n: int, scale: float = 1.0
) -> List[Tuple[complex, float]]:
    """Parametry (a_α, b_α) dla P_α(ζ) = aζ² + 2bζ − ā."""
    a = random_complex(rng, n, scale)
    b = scale * rng.standard_normal(n)
    return [(complex(ai), float(bi)) for ai, bi in zip(a, b)]


def random_zeta(rng: np.random.Generator, n: int, r_min: float = 0.3, r_max: float = 3.0) -> np.ndarray:
    """Punkty ζ w pierścieniu r_min ≤ |ζ| ≤ r_max – z dala od 0 i ∞."""
    mod = rng.uniform(r_min, r_max, size=n)
    arg = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return mod * np.exp(1j * arg)

