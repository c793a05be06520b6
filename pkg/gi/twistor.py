# gi/twistor.py
"""
Algebra map twistorowych i krzywych spektralnych.

Co tu jest:
- P_α(ζ) = a_α ζ² + 2 b_α ζ − ā_α i ich tożsamość rzeczywistości,
- Π(η − P_α) modulo η² − wη − z jako para wielomianów (p, q) w z,
- redukcja do kwadryki x² − z y² (D_k) i niezmienniki grupy dwuściennej,
- sklejanie map i struktura rzeczywista dla A_k (zmienne ζ, z, ρ, ξ),
- macierz przejścia (P, Q) dla D_k i prawo zachowania P² − zQ²,
- forma ω(ζ) = ω⁺ + 2ζω¹ − ζ²ω̄⁺ na prostej twistorowej.

Tryb numeryczny: complex + numpy.polynomial.Polynomial.
Tryb dokładny: gdy parametry są obiektami sympy – te same wzory na sympy.
"""

from __future__ import annotations

import cmath
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy
from numpy.polynomial import Polynomial

from .errors import DegenerateSystemError, InconsistentParametersError
from .geometry_core import TripleAtPoint, wedge
from .sampling import random_complex, random_zeta

logger = logging.getLogger(__name__)

Z = sympy.Symbol("z")
CPoly = Union[Polynomial, sympy.Poly]
FAMILIES = ("Ak", "Dk")

# poniżej tej wartości |2√z/ζ| sinh(u)/√z liczymy z szeregu
_SINHC_SERIES = 1e-4


def _is_exact(*values: Any) -> bool:
    return any(isinstance(v, (sympy.Basic, Fraction)) for v in values)


def _exactify(v: Any) -> Any:
    if isinstance(v, Fraction):
        return sympy.Rational(v.numerator, v.denominator)
    return sympy.sympify(v)


def _conj(v: Any) -> Any:
    return v.conjugate()


# ─────────────────────────────────────────────────────────────
# Dane spektralne
# ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class SpectralData:
    """A_k: k+1 par (a, b); D_k: k par."""

    family: str
    k: int
    params: Tuple[Tuple[Any, Any], ...]

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise InconsistentParametersError(f"unknown family {self.family!r}")
        if self.k < 0:
            raise InconsistentParametersError("k must be >= 0")
        params = tuple((a, b) for a, b in self.params)
        expected = self.k + 1 if self.family == "Ak" else self.k
        if len(params) != expected:
            raise InconsistentParametersError(f"{self.family} with k={self.k} needs {expected} parameter pairs")
        for _, b in params:
            if _is_exact(b):
                if not _exactify(b).is_real:
                    raise InconsistentParametersError("b must be real")
            elif isinstance(b, complex) and b.imag != 0:
                raise InconsistentParametersError("b must be real")
        object.__setattr__(self, "params", params)

    @property
    def exact(self) -> bool:
        return any(_is_exact(a, b) for a, b in self.params)

    def transformed(self) -> "SpectralData":
        """Parametry w mapie ζ̃ = 1/ζ: P_α(ζ) = ζ² P̃_α(ζ̃) daje (ã, b̃) = (−ā, b)."""
        return SpectralData(self.family, self.k, tuple((-_conj(a), b) for a, b in self.params))


def spectral_eval(sd: SpectralData, zeta: Any) -> List[Any]:
    if sd.exact or _is_exact(zeta):
        zeta = _exactify(zeta)
        return [sympy.expand(_exactify(a) * zeta**2 + 2 * _exactify(b) * zeta - _conj(_exactify(a))) for a, b in sd.params]
    return [complex(a) * zeta**2 + 2.0 * float(b) * zeta - complex(a).conjugate() for a, b in sd.params]


def reality_residual(sd: SpectralData, zeta: complex) -> float:
    """max |P_α(−1/ζ̄) + conj(P_α(ζ))/ζ̄²|."""
    zb = complex(zeta).conjugate()
    left = spectral_eval(sd, -1.0 / zb)
    right = spectral_eval(sd, zeta)
    return max((abs(l + complex(r).conjugate() / zb**2) for l, r in zip(left, right)), default=0.0)


# ─────────────────────────────────────────────────────────────
# Arytmetyka mod η² − wη − z
# ─────────────────────────────────────────────────────────────

def mod_quadratic(roots: Sequence[Any], w: Any = 0) -> Tuple[CPoly, CPoly]:
    """
    Π(η − P_α) = p(z) + η q(z) modulo η² ≡ wη + z.
    Mnożenie (p + qη)(η − P) = (−Pp + zq) + (p − Pq + wq)η.
    """
    if _is_exact(w, *roots):
        p: Any = sympy.Integer(1)
        q: Any = sympy.Integer(0)
        w_e = _exactify(w)
        for root in roots:
            r = _exactify(root)
            p, q = sympy.expand(-r * p + Z * q), sympy.expand(p - r * q + w_e * q)
        return sympy.Poly(p, Z), sympy.Poly(q, Z)

    z = Polynomial([0j, 1 + 0j])
    w_p = w if isinstance(w, Polynomial) else Polynomial([complex(w)])
    p = Polynomial([1 + 0j])
    q = Polynomial([0j])
    for root in roots:
        r = complex(root)
        p, q = -r * p + z * q, p - r * q + w_p * q
    return p.trim(), q.trim()


def _poly_eval(poly: CPoly, z0: Any) -> Any:
    if isinstance(poly, sympy.Poly):
        return sympy.expand(poly.as_expr().subs(Z, z0))
    return complex(poly(z0))


def _poly_shift_div(poly: CPoly) -> CPoly:
    """r(z) = (p(z) − p(0)) / z – dzielenie dokładne."""
    if isinstance(poly, sympy.Poly):
        quotient, remainder = sympy.div(poly - poly.eval(0), sympy.Poly(Z, Z))
        return quotient
    coef = np.asarray(poly.coef)
    return Polynomial(coef[1:] if coef.size > 1 else np.array([0j]))


# ─────────────────────────────────────────────────────────────
# Redukcja do kwadryki (D_k)
# ─────────────────────────────────────────────────────────────

def quadric_rhs(roots: Sequence[Any], z0: Any, y: Any, exact: bool = False) -> Any:
    """(1/−z)(Π(z − P²) − Π(−P²)) + 2 Π(−iP) y."""
    unit = sympy.I if exact else 1j
    prod_shift = 1
    prod_zero = 1
    prod_i = 1
    for r in roots:
        prod_shift *= z0 - r**2
        prod_zero *= -(r**2)
        prod_i *= -unit * r
    return (prod_shift - prod_zero) / (-z0) + 2 * prod_i * y


def chiklr_reduce(sd: SpectralData, zeta: Any, z0: Any, rho0: Any, rho1: Any) -> Tuple[Any, Any, Any]:
    """
    Rozwiązuje ρ₀ξ₀ + z₀ρ₁ξ₁ = p(z₀), ρ₁ξ₀ + ρ₀ξ₁ = q(z₀) i zwraca
    (x, y, reszta kwadryki) z x = i^k(ρ₁ξ₀ − ρ₀ξ₁), y = i^k(−2ρ₁ξ₁ + r(z₀)).
    W trybie dokładnym reszta to dokładna różnica (0 dla poprawnych wzorów).
    """
    exact = sd.exact or _is_exact(zeta, z0, rho0, rho1)
    if exact:
        zeta, z0, rho0, rho1 = (_exactify(v) for v in (zeta, z0, rho0, rho1))
    if z0 == 0:
        raise DegenerateSystemError("evaluate limit separately")

    roots = spectral_eval(sd, zeta)
    p, q = mod_quadratic(roots)
    p0, q0 = _poly_eval(p, z0), _poly_eval(q, z0)
    r0 = _poly_eval(_poly_shift_div(p), z0)

    det = rho0**2 - z0 * rho1**2
    if (sympy.simplify(det) == 0) if exact else abs(det) < 1e-300:
        raise DegenerateSystemError("degenerate linear system rho0^2 - z0 rho1^2 = 0")
    xi0 = (p0 * rho0 - z0 * rho1 * q0) / det
    xi1 = (rho0 * q0 - rho1 * p0) / det

    ik = sympy.I**sd.k if exact else 1j**sd.k
    x = ik * (rho1 * xi0 - rho0 * xi1)
    y = ik * (-2 * rho1 * xi1 + r0)
    lhs = x**2 - z0 * y**2
    rhs = quadric_rhs(roots, z0, y, exact)
    if exact:
        return sympy.simplify(x), sympy.simplify(y), sympy.simplify(sympy.expand(lhs - rhs))
    residual = abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))
    return complex(x), complex(y), float(residual)


# ─────────────────────────────────────────────────────────────
# A_k: sklejanie i struktura rzeczywista
# ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class TwistorPointAk:
    zeta: complex
    z: complex
    rho: complex
    xi: complex


def variety_product(sd: SpectralData, zeta: complex, z: complex) -> complex:
    out = 1 + 0j
    for value in spectral_eval(sd, zeta):
        out *= z - value
    return out


def variety_residual(sd: SpectralData, pt: TwistorPointAk) -> float:
    prod = variety_product(sd, pt.zeta, pt.z)
    return abs(pt.rho * pt.xi - prod) / max(1.0, abs(prod))


def sample_variety_point_ak(sd: SpectralData, rng: np.random.Generator, zeta: Optional[complex] = None) -> TwistorPointAk:
    """Losowy punkt ρξ = Π(z − P_α(ζ)): ζ, z, ρ losowe, ξ z równania."""
    zeta = complex(random_zeta(rng, 1)[0]) if zeta is None else complex(zeta)
    z = complex(random_complex(rng, 1)[0])
    rho = complex(random_complex(rng, 1)[0])
    while abs(rho) < 1e-3:
        rho = complex(random_complex(rng, 1)[0])
    return TwistorPointAk(zeta, z, rho, variety_product(sd, zeta, z) / rho)


def glue_check_ak(sd: SpectralData, pt: TwistorPointAk) -> Dict[str, Any]:
    """
    Przejście do mapy ζ̃ = 1/ζ: z̃ = z/ζ², ρ̃ = e^{−z/ζ}ζ^{−k−1}ρ, ξ̃ = e^{z/ζ}ζ^{−k−1}ξ,
    i reszta |ρ̃ξ̃ − Π(z̃ − P̃_α(ζ̃))| względem max(1, |Π|).
    """
    if pt.zeta == 0:
        raise DegenerateSystemError("zeta = 0 has no glued image")
    zeta, z = pt.zeta, pt.z
    k = sd.k
    logger.debug("glue_check_ak: zeta=%s k=%d", zeta, k)
    zt = 1.0 / zeta
    z_tilde = z / zeta**2
    scale = zeta ** (-k - 1)
    # iloczyn: wykładniki łączymy przed exp
    product = pt.rho * pt.xi * scale**2 * cmath.exp(-z / zeta + z / zeta)
    target = variety_product(sd.transformed(), zt, z_tilde)
    residual = abs(product - target) / max(1.0, abs(target))
    return {
        "zeta_tilde": zt,
        "z_tilde": z_tilde,
        "rho_tilde": cmath.exp(-z / zeta) * scale * pt.rho,
        "xi_tilde": cmath.exp(z / zeta) * scale * pt.xi,
        "residual": float(residual),
        "reference": float(abs(target)),
    }


def real_structure_ak(pt: TwistorPointAk, k: int) -> TwistorPointAk:
    """τ(ζ, z, ρ, ξ) = (−1/ζ̄, −z̄/ζ̄², e^{z̄/ζ̄}(1/ζ̄)^{k+1} ξ̄, e^{−z̄/ζ̄}(−1/ζ̄)^{k+1} ρ̄)."""
    if pt.zeta == 0:
        raise DegenerateSystemError("tau undefined at zeta = 0")
    zb = pt.zeta.conjugate()
    zbar = pt.z.conjugate()
    phase = zbar / zb
    return TwistorPointAk(
        -1.0 / zb,
        -zbar / zb**2,
        cmath.exp(phase) * (1.0 / zb) ** (k + 1) * pt.xi.conjugate(),
        cmath.exp(-phase) * (-1.0 / zb) ** (k + 1) * pt.rho.conjugate(),
    )


def point_distance(p1: TwistorPointAk, p2: TwistorPointAk) -> float:
    """Maksymalna względna różnica współrzędnych."""
    pairs = ((p1.zeta, p2.zeta), (p1.z, p2.z), (p1.rho, p2.rho), (p1.xi, p2.xi))
    return max(abs(a - b) / max(1.0, abs(a)) for a, b in pairs)


# ─────────────────────────────────────────────────────────────
# D_k: macierz przejścia (P, Q)
# ─────────────────────────────────────────────────────────────

def _sinhc(s: complex, zeta: complex) -> complex:
    """sinh(2s/ζ)/s z granicą 2/ζ przy s -> 0."""
    u = 2.0 * s / zeta
    if abs(u) < _SINHC_SERIES:
        return (2.0 / zeta) * (1.0 + u**2 / 6.0 + u**4 / 120.0)
    return cmath.sinh(u) / s


def transition_matrix(z: complex, zeta: complex, k: int, branch: int = 1) -> np.ndarray:
    """ζ^{−2k}·[[cosh u, −s sinh u], [−ζ² sinh(u)/s, ζ² cosh u]] z s = ±√z, u = 2s/ζ."""
    if zeta == 0:
        raise DegenerateSystemError("transition undefined at zeta = 0")
    s = branch * cmath.sqrt(complex(z))
    u = 2.0 * s / zeta
    ch = cmath.cosh(u)
    shc = _sinhc(s, zeta)
    s_sh = s * s * shc  # s·sinh(u)
    scale = zeta ** (-2 * k)
    return scale * np.array([[ch, -s_sh], [-(zeta**2) * shc, zeta**2 * ch]], dtype=complex)


def transition_pq(P: complex, Q: complex, z: complex, zeta: complex, k: int, branch: int = 1) -> Tuple[complex, complex]:
    mat = transition_matrix(z, zeta, k, branch)
    out = mat @ np.array([P, Q], dtype=complex)
    return complex(out[0]), complex(out[1])


def transition_z(z: complex, zeta: complex) -> complex:
    return z / zeta**4


def spectral_conservation(sd: SpectralData, zeta: complex, z0: complex, rho0: complex, rho1: complex) -> Dict[str, float]:
    """
    P = yz + Π(−iP_α), Q = x z redukcji: P² − zQ² = Π(z − P_α²);
    po przejściu P̃² − z̃Q̃² = ζ^{−4k}(P² − zQ²) = Π(z̃ − P̃_α(ζ̃)²).
    """
    x, y, quad = chiklr_reduce(sd, zeta, z0, rho0, rho1)
    roots = spectral_eval(sd, zeta)
    prod_i = 1 + 0j
    target = 1 + 0j
    for r in roots:
        prod_i *= -1j * r
        target *= z0 - r**2
    P = y * z0 + prod_i
    Q = x
    conserved = P**2 - z0 * Q**2
    before = abs(conserved - target) / max(1.0, abs(target))

    Pt, Qt = transition_pq(P, Q, z0, zeta, sd.k)
    zt = transition_z(z0, zeta)
    after_val = Pt**2 - zt * Qt**2
    scaled = zeta ** (-4 * sd.k) * conserved
    after = abs(after_val - scaled) / max(1.0, abs(scaled))

    tilde_target = 1 + 0j
    for r in spectral_eval(sd.transformed(), 1.0 / zeta):
        tilde_target *= zt - r**2
    tilde = abs(after_val - tilde_target) / max(1.0, abs(tilde_target))
    return {
        "quadric_residual": float(quad),
        "conservation_residual": float(before),
        "transition_residual": float(after),
        "transformed_curve_residual": float(tilde),
    }


def real_structure_pq(zeta: complex, z: complex, P: complex, Q: complex) -> Tuple[complex, complex, complex, complex]:
    """Struktura rzeczywista D_k na (ζ, z, P, Q): (−ζ̄, z̄, P̄, −Q̄)."""
    return (-complex(zeta).conjugate(), complex(z).conjugate(), complex(P).conjugate(), -complex(Q).conjugate())


# ─────────────────────────────────────────────────────────────
# Grupa dwuścienna
# ─────────────────────────────────────────────────────────────

def dihedral_invariants(u: complex, v: complex, k: int) -> Tuple[complex, complex, complex, float]:
    """x = uv(u^N − v^N)/2, y = (u^N + v^N)/2, z = u²v², N = 2k − 4; reszta |x² − zy² + z^{k−1}|."""
    if k < 3:
        raise InconsistentParametersError("binary dihedral invariants need k >= 3")
    n = 2 * k - 4
    un, vn = u**n, v**n
    x = u * v * (un - vn) / 2
    y = (un + vn) / 2
    z = u**2 * v**2
    residual = abs(x**2 - z * y**2 + z ** (k - 1))
    return complex(x), complex(y), complex(z), float(residual)


def dihedral_generators(u: complex, v: complex, k: int) -> List[Tuple[complex, complex]]:
    """Obrazy (u, v) pod dwoma generatorami: obrót o e^{±iπ/(k−2)} i (u, v) -> (v, −u)."""
    phase = cmath.exp(1j * np.pi / (k - 2))
    return [(phase * u, v / phase), (v, -u)]


# ─────────────────────────────────────────────────────────────
# Forma na prostej twistorowej
# ─────────────────────────────────────────────────────────────

def twistor_line_form(t: TripleAtPoint, zeta: complex) -> np.ndarray:
    """ω(ζ) = (ω² + iω³) + 2ζω¹ − ζ²(ω² − iω³)."""
    w1, w2, w3 = (np.asarray(w, dtype=complex) for w in (t.w1, t.w2, t.w3))
    return (w2 + 1j * w3) + 2 * zeta * w1 - zeta**2 * (w2 - 1j * w3)


def line_form_checks(t: TripleAtPoint, zeta: complex) -> Dict[str, float]:
    """Degeneracja ω(ζ)∧ω(ζ) = 0 oraz rzeczywistość ω(−1/ζ̄) = −conj(ω(ζ))/ζ̄²."""
    omega = twistor_line_form(t, zeta)
    zb = complex(zeta).conjugate()
    mirrored = twistor_line_form(t, -1.0 / zb)
    return {
        "degeneracy": float(abs(wedge(omega, omega))),
        "reality": float(np.max(np.abs(mirrored + np.conj(omega) / zb**2))),
    }
