import pytest

from milnordeg import (
    BEZOUTIAN_SIGNATURE,
    INFINITY_SIGNATURE,
    NotZeroDimensional,
    OriginNotIsolated,
)
from milnordeg.poly import parse_map
from milnordeg.signature import (
    BilinearFormRecord,
    _exact,
    degree_at_infinity_elk,
    functional_signatures,
    local_degree_elk,
    positive_rescale_reduction,
    signature_of_form,
)

XY = ["x", "y"]
XYZ = ["x", "y", "z"]

local_degrees = [
    ("2*x, 2*y", XY, 1),
    ("2*x, -2*y", XY, -1),
    ("3*x^2 - 3*y^2, -6*x*y", XY, -2),
    ("x^2 - y^2, 2*x*y", XY, 2),
    ("x, y, z", XYZ, 1),
    ("-x, -y, -z", XYZ, -1),
    ("x, y, -z", XYZ, -1),
]


def test_signature_of_a_diagonal_form():
    form = BilinearFormRecord((), _exact([[2, 0, 0], [0, -3, 0], [0, 0, 5]]))
    triple = signature_of_form(form)
    assert (triple.positive, triple.negative, triple.zero) == (2, 1, 0)
    assert triple.signature == 1


def test_signature_needs_a_hyperbolic_split():
    form = BilinearFormRecord((), _exact([[0, 1, 0], [1, 0, 0], [0, 0, 0]]))
    triple = signature_of_form(form)
    assert (triple.signature, triple.dimension, triple.zero) == (0, 3, 1)


@pytest.mark.parametrize(["text", "variables", "degree"], local_degrees)
def test_local_degree(text, variables, degree):
    assert local_degree_elk(parse_map(text, variables)).degree == degree


@pytest.mark.parametrize(["text", "variables", "degree"], local_degrees[:4])
def test_functional_independence(text, variables, degree):
    assert set(functional_signatures(parse_map(text, variables))) == {degree}


def test_nonvanishing_map_has_degree_zero():
    result = local_degree_elk(parse_map("x + 1, y", XY))
    assert result.degree == 0
    assert result.diagnostics


def test_other_zeros_need_localization():
    F = parse_map("x^3 - x, y", XY)

    with pytest.raises(OriginNotIsolated):
        local_degree_elk(F)

    assert local_degree_elk(F, localize=True).degree == -1


def test_non_isolated_origin():
    with pytest.raises(NotZeroDimensional):
        local_degree_elk(parse_map("x, x", XY))


@pytest.mark.parametrize(
    ["text", "degree", "method"],
    [
        ("x, y", 1, INFINITY_SIGNATURE),
        ("x^2 - 1, y", 0, INFINITY_SIGNATURE),
        ("x^2, y", 0, BEZOUTIAN_SIGNATURE),
        ("x^3, y", 1, BEZOUTIAN_SIGNATURE),
    ],
)
def test_degree_at_infinity(text, degree, method):
    result = degree_at_infinity_elk(parse_map(text, XY), cross_check=False)
    assert (result.degree, result.method) == (degree, method)


def test_degree_at_infinity_cross_check():
    result = degree_at_infinity_elk(parse_map("x^2 - 1, y", XY))
    assert result.cross_check.degree == 0
    assert not result.conflict


def test_degree_at_infinity_without_zeros():
    result = degree_at_infinity_elk(parse_map("x^2 + 1, y", XY), cross_check=False)
    assert result.degree == 0
    assert result.dimension == 2


def test_rescale_reduction_keeps_polynomial_maps():
    F = parse_map("x, y", XY)
    assert positive_rescale_reduction(F) is F
