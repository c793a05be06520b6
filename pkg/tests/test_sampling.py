# tests/test_sampling.py
import numpy as np
import pytest

from gi.errors import InsufficientGridError
from gi.sampling import log_radii, random_directions, random_zeta


def test_log_radii_is_geometric():
    r = log_radii(1e3, 1e6, 4)
    assert np.allclose(r, [1e3, 1e4, 1e5, 1e6])


@pytest.mark.parametrize("r_min, r_max", [(0.0, 1.0), (5.0, 5.0), (10.0, 1.0)])
def test_log_radii_rejects_bad_window(r_min, r_max):
    with pytest.raises(InsufficientGridError):
        log_radii(r_min, r_max, 8)


def test_random_directions_are_unit(rng):
    assert np.allclose(np.linalg.norm(random_directions(rng, 32), axis=1), 1.0)


def test_random_zeta_stays_in_annulus(rng):
    mod = np.abs(random_zeta(rng, 64, 0.5, 2.0))
    assert np.all((mod >= 0.5) & (mod <= 2.0))
