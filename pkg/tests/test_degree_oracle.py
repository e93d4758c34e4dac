import numpy as np
import pytest
from sympy.polys.domains import QQ

from milnordeg import SOLID_ANGLE_ORACLE, WINDING_ORACLE, ArityError, ZeroOnSphere
from milnordeg.degree_oracle import (
    directions,
    oracle_degree,
    oracle_degree_at_infinity,
    oracle_local_degree,
    solid_angle_degree_3d,
    stable_degree,
    winding_degree_2d,
)
from milnordeg.poly import FloatMap, PolyMap, parse_map

XY = ["x", "y"]
XYZ = ["x", "y", "z"]


@pytest.mark.parametrize(
    ["text", "degree"],
    [
        ("x, y", 1),
        ("x, -y", -1),
        ("x^3 - 3*x*y^2, 3*x^2*y - y^3", 3),
        ("x + 2, y", 0),
    ],
)
def test_winding_number(text, degree):
    result = winding_degree_2d(parse_map(text, XY), 1)
    assert (result.degree, result.method) == (degree, WINDING_ORACLE)
    assert result.parameters["radius"] == QQ(1)


@pytest.mark.parametrize(
    ["text", "degree"],
    [("x, y, z", 1), ("x^2 - y^2, 2*x*y, z", 2), ("x + 2, y, z", 0)],
)
def test_solid_angle(text, degree):
    result = solid_angle_degree_3d(parse_map(text, XYZ), 1)
    assert (result.degree, result.method) == (degree, SOLID_ANGLE_ORACLE)


@pytest.mark.parametrize(
    ["text", "variables"],
    [("x^2 - y^2, 2*x*y", XY), ("x, y, z^3", XYZ), ("x, -y", XY)],
)
def test_antipodal_law(text, variables):
    F = parse_map(text, variables)
    negated = PolyMap([-f for f in F])
    sign = (-1) ** F.arity
    assert oracle_degree(negated, 1).degree == sign * oracle_degree(F, 1).degree


def test_no_oracle_beyond_three_variables():
    with pytest.raises(ArityError):
        oracle_degree(parse_map("x, y, z, w", ["x", "y", "z", "w"]), 1)


def test_shape_must_be_square():
    with pytest.raises(ArityError):
        winding_degree_2d(parse_map("x, y, x*y", XY), 1)


def test_zero_on_circle():
    with pytest.raises(ZeroOnSphere):
        winding_degree_2d(parse_map("x - 1, y", XY), 1)


def test_stable_degree_skips_radii_with_zeros():
    result = stable_degree(parse_map("x - 1, y", XY), [QQ(1), QQ(2), QQ(4)])
    assert result.degree == 1
    assert result.parameters["previous_radius"] == QQ(2)
    assert result.diagnostics


def test_local_and_infinity_degrees_differ():
    F = parse_map("x^3 - x, y", XY)
    assert oracle_local_degree(F).degree == -1
    assert oracle_degree_at_infinity(F).degree == 1


def test_cancelled_sample_next_to_a_zero():
    fmap = FloatMap(parse_map("x - 1/3, y", XY))
    points = np.array([[1.0, 0.0], [1 / 3 + 1e-12, 0.0]])

    with pytest.raises(ZeroOnSphere, match="nearly vanishes"):
        directions(fmap, points)


def test_directions_are_unit_vectors():
    fmap = FloatMap(parse_map("x - 1/3, y", XY))
    units = directions(fmap, np.array([[1.0, 0.0], [0.0, 1.0]]))
    assert np.allclose(np.linalg.norm(units, axis=1), 1)
