# tests/test_deformation.py
import numpy as np
import pytest
import sympy

from gi.deformation import (
    COORDS,
    V_BASIS,
    PolyVectorField,
    VCoeffs,
    d_flat,
    d_symbol_matrices,
    ddstar_flat,
    laplacian,
    lie_deform,
    v_membership_residual,
    v_project,
)
from gi.errors import DegenerateSystemError, InconsistentParametersError
from gi.geometry_core import PAIRS, TRIPLES, FormField, exterior_derivative_fd, flat_triple
from gi.gibbons_hawking import MonopoleConfig, safe_string_axes, sample_triple_field

x1, x2, x3, x4 = COORDS


def test_symbol_matrices_satisfy_clifford_relation():
    mats = d_symbol_matrices()
    for a in range(4):
        for b in range(4):
            lhs = mats[a] @ mats[b].T + mats[b] @ mats[a].T
            assert np.array_equal(lhs, 2 * (a == b) * np.eye(4, dtype=int))


def test_euler_component_gives_e1():
    c = d_flat(PolyVectorField((x1, 0, 0, 0)))
    assert c.equals(VCoeffs((1, 0, 0, 0)))


def test_rotation_field_coefficients():
    field = PolyVectorField((x2, 0, 0, 0))
    assert d_flat(field).equals(VCoeffs((0, 1, 0, 0)))
    coeffs, _ = v_project(lie_deform(field, flat_triple()), flat_triple())
    assert coeffs.equals(VCoeffs((0, sympy.Rational(1, 2), 0, 0)))


def test_euler_field_projects_to_twice_e1():
    euler = PolyVectorField((x1, x2, x3, x4))
    coeffs, residual = v_project(lie_deform(euler, flat_triple()), flat_triple())
    assert coeffs.equals(VCoeffs((2, 0, 0, 0)))
    assert residual.max_abs() == 0.0


@pytest.mark.parametrize("degree", [1, 2, 3, 4, 5])
def test_d_flat_is_twice_pointwise_projection(degree, rng):
    for _ in range(3):
        field = PolyVectorField.random(degree, rng)
        coeffs, _ = v_project(lie_deform(field, flat_triple()), flat_triple())
        doubled = VCoeffs(tuple(2 * v for v in coeffs.c))
        assert d_flat(field).equals(doubled)


def _exact_d(row):
    index = {p: i for i, p in enumerate(PAIRS)}
    return [
        sympy.expand(
            sympy.diff(row[index[(b, c)]], COORDS[a])
            - sympy.diff(row[index[(a, c)]], COORDS[b])
            + sympy.diff(row[index[(a, b)]], COORDS[c])
        )
        for a, b, c in TRIPLES
    ]


@pytest.mark.parametrize("degree", [1, 3, 5])
def test_lie_deform_is_closed_exactly(degree, rng):
    theta = lie_deform(PolyVectorField.random(degree, rng), flat_triple())
    for row in theta:
        assert all(c == 0 for c in _exact_d(row))


def test_lie_deform_is_closed_on_gh_grid():
    cfg = MonopoleConfig("Ak", 1.0, ((1.0, 0.0, 0.0), (-0.5, 0.8, 0.1), (0.2, -0.3, 1.2)))
    x0 = np.array([2.1, -1.7, 2.4])
    axes = safe_string_axes(cfg, x0)
    field = PolyVectorField((x2, -x1, x1 * x3, 1))
    for h in (0.02, 0.01):
        origin = np.append(x0, 0.0) - 3 * h
        triple = [sample_triple_field(cfg, origin, [h] * 4, [7] * 4, i, axes) for i in range(3)]
        for theta in lie_deform(field, triple):
            assert exterior_derivative_fd(theta).max_abs() < h**2


@pytest.mark.parametrize("degree", [2, 4, 6])
def test_ddstar_is_laplacian(degree, rng):
    polys = PolyVectorField.random(degree, rng).components
    c = VCoeffs(polys)
    assert ddstar_flat(c).equals(laplacian(c))


def test_laplacian_of_square():
    assert laplacian(VCoeffs((x1**2, 0, 0, 0))).equals(VCoeffs((2, 0, 0, 0)))


def test_basis_elements_lie_in_v():
    flat = flat_triple()
    for k in range(4):
        unit = [0, 0, 0, 0]
        unit[k] = 1
        theta = VCoeffs(tuple(unit)).reconstitute(flat)
        assert v_membership_residual(theta, flat) == 0.0


def test_traceless_symmetric_part_is_not_in_v():
    flat = flat_triple()
    theta = np.stack([flat.w1, -flat.w2, np.zeros(6)])
    assert v_membership_residual(theta, flat) > 0.5
    coeffs, residual = v_project(theta, flat)
    assert max(abs(complex(v)) for v in residual.sd_complement) > 0.5
    assert abs(coeffs.c[0]) < 1e-14


def test_random_field_rejects_irrational_coefficients():
    with pytest.raises(InconsistentParametersError):
        PolyVectorField((sympy.sqrt(2) * x1, 0, 0, 0))


def test_degree_bound():
    with pytest.raises(InconsistentParametersError):
        PolyVectorField((x1**3, 0, 0, 0), max_degree=2)


def test_degenerate_base():
    zero = np.zeros((3, 6), dtype=object)
    with pytest.raises(DegenerateSystemError):
        v_project(flat_triple().as_array().astype(object), zero)


def test_numeric_mode_on_grid():
    flat = flat_triple()
    fields = [
        FormField.from_function(lambda c, w=w: np.broadcast_to(w, c.shape[:-1] + (6,)), [0.1, 0.2, -0.3, 0.0], [0.1] * 4, [4] * 4)
        for w in flat.as_array()
    ]
    deformed = lie_deform(PolyVectorField((x1, x2, x3, x4)), fields)
    assert deformed[0].shape == (2, 2, 2, 2)
    coeffs, residual = v_project(deformed, flat)
    assert np.allclose(coeffs.c[0], 2.0, atol=1e-10)
    for v in coeffs.c[1:]:
        assert np.allclose(v, 0.0, atol=1e-10)
    assert residual.max_abs() < 1e-10


def test_v_basis_antisymmetric_parts():
    for basis in V_BASIS[1:]:
        assert np.array_equal(basis, -basis.T)
