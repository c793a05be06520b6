# tests/test_asymptotics.py
import logging
from fractions import Fraction

import numpy as np
import pytest

from gi.asymptotics import (
    ALG_FIBER_BETA,
    DecaySamples,
    Lattice3,
    alg_delta,
    alg_delta_table,
    alh_delta,
    annulus_quadrature,
    decay_fit,
    expansion_check,
    expansion_fit,
    sample_decay,
    shortest_dual_vector,
    weighted_exp_norm,
    weighted_l2_norm,
)
from gi.config import CONFIG
from gi.errors import DegenerateSystemError, InconsistentParametersError, InsufficientGridError
from gi.gibbons_hawking import MonopoleConfig, standard_model

BETAS = ["1", "1/2", "1/6", "5/6", "1/4", "3/4", "1/3", "2/3"]
DELTAS = ["1", "2", "2", "4/5", "2", "2/3", "2", "1/2"]


@pytest.mark.parametrize("beta, delta", list(zip(BETAS, DELTAS)))
def test_alg_delta_table_values(beta, delta):
    assert alg_delta(Fraction(beta)) == Fraction(delta)


def test_alg_delta_table_frame():
    table = alg_delta_table()
    assert list(table.columns) == ["fiber", "beta", "delta"]
    assert [str(d) for d in table["delta"]] == DELTAS
    assert list(table["beta"]) == list(ALG_FIBER_BETA.values())


@pytest.mark.parametrize("beta", [Fraction(0), Fraction(-1, 2), Fraction(3, 2)])
def test_alg_delta_out_of_range(beta):
    with pytest.raises(InconsistentParametersError):
        alg_delta(beta)


def test_decay_fit_exact_power_law():
    r = np.geomspace(1.0, 1e4, 20)
    exponent, stderr = decay_fit(DecaySamples(r, 5.0 * r**-3))
    assert exponent == pytest.approx(3.0, abs=1e-10)
    assert stderr < 1e-8


def test_decay_fit_picks_dominant_term():
    r = np.geomspace(1e3, 1e6, 64)
    exponent, _ = decay_fit(DecaySamples(r, r**-2 + r**-3))
    assert 1.99 <= exponent <= 2.01


def test_decay_fit_drops_zeros(caplog):
    r = np.geomspace(1.0, 1e3, 10)
    v = r**-2.0
    v[3] = 0.0
    with caplog.at_level(logging.WARNING, logger="gi.asymptotics"):
        exponent, _ = decay_fit(DecaySamples(r, v))
    assert exponent == pytest.approx(2.0, abs=1e-10)
    assert "pominięto 1" in caplog.text


@pytest.mark.parametrize(
    "r, v",
    [
        (np.geomspace(1.0, 1e3, 7), np.ones(7)),
        (np.geomspace(1.0, 50.0, 10), np.ones(10)),
        (np.geomspace(1.0, 1e3, 10)[::-1], np.ones(10)),
    ],
)
def test_insufficient_samples(r, v):
    with pytest.raises(InsufficientGridError):
        DecaySamples(r, v)


def test_weighted_norm_of_constant():
    r1, r2 = 1.0, 3.0
    radii, weights = annulus_quadrature(r1, r2, n=16, fiber_length=2 * np.pi)
    volume = 4.0 / 3.0 * np.pi * (r2**3 - r1**3) * 2 * np.pi
    assert weighted_l2_norm(np.ones_like(radii), radii, weights, 0.0) == pytest.approx(np.sqrt(volume), rel=1e-12)
    assert weighted_exp_norm(np.ones_like(radii), radii, weights, 0.0) == pytest.approx(np.sqrt(volume), rel=1e-12)


def test_weighted_norm_grows_with_delta():
    radii, weights = annulus_quadrature(2.0, 10.0)
    phi = radii**-2.0
    assert weighted_l2_norm(phi, radii, weights, 1.0) > weighted_l2_norm(phi, radii, weights, 0.0)


@pytest.mark.parametrize(
    "basis, expected",
    [
        (np.eye(3), 2 * np.pi),
        (np.diag([1.0, 2.0, 3.0]), 2 * np.pi / 3),
        (np.array([[1.0, 0.0, 0.0], [0.5, np.sqrt(3) / 2, 0.0], [0.0, 0.0, 4.0]]), 2 * np.pi / 4),
    ],
)
def test_alh_delta(basis, expected):
    assert alh_delta(Lattice3(basis)) == pytest.approx(expected, rel=1e-12)


def test_shortest_dual_vector_pairs_integrally():
    lat = Lattice3(np.array([[1.0, 0.2, 0.0], [0.0, 1.3, 0.4], [0.3, 0.0, 0.9]]))
    v = shortest_dual_vector(lat)
    pairing = lat.basis @ v
    assert np.allclose(pairing, np.round(pairing))
    assert np.linalg.norm(v) <= np.min(np.linalg.norm(lat.dual_basis(), axis=1)) + 1e-12


def test_degenerate_lattice():
    with pytest.raises(DegenerateSystemError):
        Lattice3(np.array([[1.0, 0, 0], [2.0, 0, 0], [0, 0, 1.0]]))


# ─────────────────────────────────────────────────────────────
# Rozwinięcie V
# ─────────────────────────────────────────────────────────────

DK4 = MonopoleConfig("DkSymmetric", 1.0, ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0), (1.0, 1.0, 1.0)))


def test_expansion_dk():
    lead, exponent = expansion_check(DK4)
    assert lead == pytest.approx(16.0, abs=1e-6)
    assert exponent == pytest.approx(3.0, abs=0.05)


def test_expansion_ak_uncentered():
    cfg = MonopoleConfig("Ak", 1.0, ((1.0, 0.0, 0.0), (0.0, 2.0, 0.0), (0.0, 0.0, 0.5)))
    fit = expansion_fit(cfg)
    assert fit["lead_coeff"] == pytest.approx(6.0, abs=1e-6)
    assert fit["remainder_exponent"] == pytest.approx(2.0, abs=0.05)


def test_expansion_ak_centered():
    cfg = MonopoleConfig("Ak", 0.5, ((1.0, 0.0, 0.0), (-1.0, 0.0, 0.0)))
    lead, exponent = expansion_check(cfg)
    assert lead == pytest.approx(2.0, abs=1e-6)
    assert exponent == pytest.approx(3.0, abs=0.05)


def test_recentering_raises_ak_decay_rate():
    cfg = MonopoleConfig("Ak", 1.0, ((0.0, 0.0, 0.0), (3.0, 0.0, 0.0)))
    exponent, _ = decay_fit(sample_decay(cfg, standard_model(cfg, recenter=False)))
    assert exponent == pytest.approx(2.0, abs=0.05)
    exponent, _ = decay_fit(sample_decay(cfg, standard_model(cfg)))
    assert exponent == pytest.approx(3.0, abs=0.05)


def test_sample_decay_against_standard_model():
    samples = sample_decay(DK4, standard_model(DK4))
    assert samples.r.size == CONFIG.n_radii
    exponent, _ = decay_fit(samples)
    assert exponent == pytest.approx(3.0, abs=0.05)


def test_sample_decay_independent_of_threads():
    a = sample_decay(DK4, config=CONFIG.with_override(threads=1), seed=3)
    b = sample_decay(DK4, config=CONFIG.with_override(threads=4), seed=3)
    assert np.array_equal(a.v, b.v)
