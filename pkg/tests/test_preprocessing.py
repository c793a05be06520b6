# tests/test_preprocessing.py
from fractions import Fraction

import numpy as np
import pandas as pd
import pytest

from gi.errors import InconsistentParametersError, InsufficientGridError, SchemaError
from gi.preprocessing import (
    beta_from_value,
    curve_config_from_dict,
    decay_samples_from_dict,
    decay_samples_from_frame,
    lattice_from_dict,
    monopole_config_from_dict,
    normalize_family,
    spectral_data_from_dict,
    tn_params_from_dict,
)


@pytest.mark.parametrize(
    "value, allowed, expected",
    [
        ("A_k", ("Ak", "Dk"), "Ak"),
        ("multi-Taub-NUT", ("Ak", "DkSymmetric"), "Ak"),
        ("Dk", ("Ak", "DkSymmetric"), "DkSymmetric"),
        ("DkSymmetric", ("Ak", "Dk"), "Dk"),
        ("d", ("Ak", "Dk"), "Dk"),
    ],
)
def test_normalize_family(value, allowed, expected):
    assert normalize_family(value, allowed) == expected


def test_unknown_family():
    with pytest.raises(SchemaError):
        normalize_family("E8", ("Ak", "Dk"))


def test_monopole_config_key_aliases():
    cfg = monopole_config_from_dict({"Type": "A", "Mass": 0.5, "centres": [[0, 0, 0], [1, 0, 0]]})
    assert cfg.family == "Ak"
    assert cfg.m == 0.5
    assert cfg.centers == ((0.0, 0.0, 0.0), (1.0, 0.0, 0.0))


def test_monopole_config_missing_mass():
    with pytest.raises(SchemaError, match="m"):
        monopole_config_from_dict({"family": "Ak", "centers": []})


def test_monopole_config_inconsistent_k():
    with pytest.raises(InconsistentParametersError):
        monopole_config_from_dict({"family": "Ak", "m": 1.0, "k": 3, "centers": [[0, 0, 0]]})


def test_spectral_params_formats():
    sd = spectral_data_from_dict(
        {"family": "Dk", "params": [{"a_re": 1.0, "a_im": -1.0, "b": 0.5}, {"a": [0.0, 2.0], "b": 1.0}, [3.0, 0.0, -1.0]]}
    )
    assert sd.k == 3
    assert sd.params == ((1 - 1j, 0.5), (2j, 1.0), (3 + 0j, -1.0))


def test_spectral_default_k_for_ak():
    sd = spectral_data_from_dict({"family": "Ak", "params": [[0, 1, 0], [1, 0, 0]]})
    assert sd.k == 1


def test_bad_parameter_triple():
    with pytest.raises(SchemaError):
        tn_params_from_dict({"family": "Dk", "params": [[1.0, 2.0]]})


def test_curve_config_requires_fields():
    with pytest.raises(SchemaError):
        curve_config_from_dict({"n": [1], "S": [[0]]})
    cfg = curve_config_from_dict({"n": [1], "S": [[0]], "a": [2], "d_mult": 2})
    assert cfg.d_mult == 2 and cfg.d is None


def test_lattice_from_dict():
    lat = lattice_from_dict({"generators": [[1, 0, 0], [0, 1, 0], [0, 0, 2]]})
    assert np.allclose(lat.dual_basis(), np.diag([1.0, 1.0, 0.5]))


@pytest.mark.parametrize("value", ["3/4", 0.75, [3, 4]])
def test_beta_from_value(value):
    assert beta_from_value(value) == Fraction(3, 4)


@pytest.mark.parametrize("value", ["abc", [1, 0], [3], None])
def test_unreadable_beta(value):
    with pytest.raises(SchemaError):
        beta_from_value(value)


def test_decay_samples_from_frame_sorts_and_aliases():
    r = np.geomspace(1.0, 1e3, 10)
    df = pd.DataFrame({"Radius": r[::-1], "error": (r**-2.0)[::-1]})
    samples = decay_samples_from_frame(df)
    assert np.all(np.diff(samples.r) > 0)
    assert samples.v[0] == pytest.approx(1.0)


def test_decay_samples_missing_column():
    with pytest.raises(SchemaError):
        decay_samples_from_frame(pd.DataFrame({"r": [1.0], "x": [2.0]}))


def test_decay_samples_from_dict_short():
    with pytest.raises(InsufficientGridError):
        decay_samples_from_dict({"r": [1.0, 10.0], "v": [1.0, 0.1]})
