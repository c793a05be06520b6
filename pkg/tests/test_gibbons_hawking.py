# tests/test_gibbons_hawking.py
import numpy as np
import pytest

from gi.errors import DiracStringError, InconsistentParametersError, PotentialPoleError
from gi.geometry_core import exterior_derivative_fd, flat_triple, metric_from_triple, wedge_gram
from gi.gibbons_hawking import (
    GHChart,
    MonopoleConfig,
    chart_overlap_integral,
    connection_eta,
    gh_triple,
    harmonic_residual,
    monopole_equation_residual,
    monopole_flux,
    monopole_moment,
    potential,
    safe_string_axes,
    sample_triple_field,
    standard_model,
)

AK2 = MonopoleConfig("Ak", 1.0, ((1.0, 0.0, 0.0), (-0.5, 0.8, 0.1), (0.2, -0.3, 1.2)))
DK4 = MonopoleConfig("DkSymmetric", 1.0, ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0), (1.0, 1.0, 1.0)))


def _random_points(rng, n, scale=3.0):
    return rng.uniform(-scale, scale, size=(n, 3))


def test_single_center_potential():
    cfg = MonopoleConfig("Ak", 0.5, ((0.0, 0.0, 0.0),))
    assert potential(cfg, (0.0, 0.0, 2.0)) == pytest.approx(1.0 + 1.0 / 2.0)


def test_potential_pole():
    with pytest.raises(PotentialPoleError):
        potential(AK2, AK2.centers[1])


def test_monopole_moment_dk():
    # −16m + 2k·4m = 8m(k−2)
    assert monopole_moment(DK4) == pytest.approx(16.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(family="Ak", m=1.0, centers=((0, 0, 0), (0, 0, 0))),
        dict(family="Ak", m=0.0, centers=((0, 0, 0),)),
        dict(family="DkSymmetric", m=1.0, centers=((0, 0, 0),)),
        dict(family="DkSymmetric", m=1.0, centers=((1, 0, 0), (-1, 0, 0))),
        dict(family="DkSymmetric", m=1.0, centers=((1, 0, 0),), k=2),
        dict(family="Bk", m=1.0, centers=()),
    ],
)
def test_invalid_configs(kwargs):
    with pytest.raises(InconsistentParametersError):
        MonopoleConfig(**kwargs)


def test_dirac_string():
    cfg = MonopoleConfig("Ak", 1.0, ((0.0, 0.0, 0.0),))
    with pytest.raises(DiracStringError):
        connection_eta(cfg, GHChart((0.0, 0.0, -1.0), string_axis="south"))
    eta = connection_eta(cfg, GHChart((0.0, 0.0, -1.0), string_axis="north"))
    assert eta[3] == 1.0


def test_flat_limit_matches_relabelled_flat_triple():
    cfg = MonopoleConfig("Ak", 1.0, ())
    triple, g = gh_triple(cfg, GHChart((0.3, -0.2, 0.7), 1.1))
    flat = flat_triple()
    assert np.allclose(triple.w3, flat.w1)
    assert np.allclose(-np.asarray(triple.w2), flat.w2)
    assert np.allclose(triple.w1, flat.w3)
    assert np.allclose(g, np.eye(4))


@pytest.mark.parametrize("cfg", [AK2, DK4])
def test_gram_and_metric(cfg, rng):
    for x in _random_points(rng, 20):
        chart = GHChart(tuple(x), 0.0, safe_string_axes(cfg, x))
        triple, g = gh_triple(cfg, chart)
        q, vol = wedge_gram(triple)
        v = potential(cfg, x)
        assert np.max(np.abs(q - np.eye(3))) < 1e-10
        assert vol == pytest.approx(v, rel=1e-12)
        assert np.max(np.abs(metric_from_triple(triple) - g)) / np.max(np.abs(g)) < 1e-8


def test_standard_models():
    model = standard_model(DK4)
    assert model.family == "Ak" and model.model
    assert model.m == pytest.approx(8.0)
    assert model.centers == ((0.0, 0.0, 0.0),)

    low = standard_model(MonopoleConfig("DkSymmetric", 1.0, ((1.0, 0.0, 0.0),)))
    assert low.m == pytest.approx(-4.0)

    ak = standard_model(AK2)
    assert ak.m == pytest.approx(3.0)
    assert np.allclose(ak.centers[0], np.mean(np.array(AK2.centers), axis=0))


@pytest.mark.parametrize("cfg", [AK2, DK4])
def test_closedness_converges_second_order(cfg):
    x0 = np.array([2.1, -1.7, 2.4])
    axes = safe_string_axes(cfg, x0)
    for component in range(3):
        errors = []
        for h in (0.02, 0.01):
            field = sample_triple_field(cfg, np.append(x0, 0.0) - 2 * h, [h] * 4, [5] * 4, component, axes)
            errors.append(float(np.max(np.abs(exterior_derivative_fd(field).values[1, 1, 1, 1]))))
        assert errors[0] / errors[1] == pytest.approx(4.0, rel=0.1)


@pytest.mark.parametrize("cfg", [AK2, DK4])
def test_monopole_equation_converges(cfg):
    x0 = np.array([-2.2, 1.9, 2.3])
    axes = safe_string_axes(cfg, x0)
    e1 = monopole_equation_residual(cfg, x0, 0.02, axes)
    e2 = monopole_equation_residual(cfg, x0, 0.01, axes)
    assert e1 / e2 == pytest.approx(4.0, rel=0.1)


def test_harmonic_residual_converges():
    x0 = np.array([1.8, 2.0, -2.5])
    assert harmonic_residual(DK4, x0, 0.02) / harmonic_residual(DK4, x0, 0.01) == pytest.approx(4.0, rel=0.1)


@pytest.mark.parametrize("index", [0, 1, 2])
def test_flux_around_pole(index):
    flux = monopole_flux(AK2, index, radius=0.5)
    assert flux["expected"] == pytest.approx(-8.0 * np.pi)
    assert flux["relative_error"] < 1e-6
    assert flux["flux_star_dV"] == pytest.approx(flux["expected"], rel=1e-6)


def test_flux_origin_pole_dk():
    flux = monopole_flux(DK4, 0, radius=0.4)
    assert flux["expected"] == pytest.approx(64.0 * np.pi)
    assert flux["relative_error"] < 1e-6


def test_sphere_enclosing_other_pole():
    with pytest.raises(InconsistentParametersError):
        monopole_flux(AK2, 0, radius=5.0)


@pytest.mark.parametrize("cfg, expected", [(AK2, 1.0), (DK4, -8.0)])
def test_chart_overlap_is_multiple_of_period(cfg, expected):
    res = chart_overlap_integral(cfg, 0)
    assert res["ratio"] == pytest.approx(expected, abs=1e-9)
    assert res["integer_residual"] < 1e-9
