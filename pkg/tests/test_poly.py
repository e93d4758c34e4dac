import pytest

from milnordeg import ArityError, IndexRangeError, ParseError, UnknownIdentifier
from milnordeg.poly import (
    PolyMap,
    RationalFunctionMap,
    complex_real_form,
    differentiate,
    evaluate,
    format_map,
    format_polynomial,
    gradient,
    jacobian_determinant,
    make_ring,
    omega,
    parse_map,
    parse_polynomial,
    poly_arith,
    rho,
    split_variables,
    translate,
)

XY = ["x", "y"]


@pytest.mark.parametrize(
    ["text", "expected"],
    [
        ("x + x^2*y", "x^2*y + x"),
        ("(x - y)*(x + y)", "x^2 - y^2"),
        ("-x + 1/2", "-x + 1/2"),
        ("(x^2 + y^2 - 4)^2", "x^4 + 2*x^2*y^2 + y^4 - 8*x^2 - 8*y^2 + 16"),
        ("2/4*x", "1/2*x"),
        ("x - x", "0"),
    ],
)
def test_canonical_form(text, expected):
    assert format_polynomial(parse_polynomial(text, XY)) == expected


def test_equal_inputs_print_alike():
    first = parse_polynomial("y*x + x*y", XY)
    second = parse_polynomial("2*x*y", XY)
    assert first == second
    assert format_polynomial(first) == format_polynomial(second)


@pytest.mark.parametrize(
    ["text", "position"],
    [("x + ", 4), ("x * (y", 6), ("x ^ 1/2", 5), ("2/0", 2)],
)
def test_parse_errors_carry_positions(text, position):
    with pytest.raises(ParseError) as exc:
        parse_polynomial(text, XY)

    assert exc.value.position == position


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifier):
        parse_polynomial("x + z", XY)


def test_map_error_positions_span_the_whole_text():
    with pytest.raises(UnknownIdentifier) as exc:
        parse_map("x, w", XY)

    assert exc.value.position == 3


def test_repeated_variables():
    with pytest.raises(ValueError):
        split_variables("x, y, x")


def test_map_components_share_a_ring():
    x = make_ring(XY).gens[0]
    (t,) = make_ring(["t"]).gens

    with pytest.raises(ArityError):
        PolyMap([x, t])


def test_arithmetic():
    x, y = make_ring(XY).gens
    assert format_polynomial(poly_arith(x + y, 2, "pow")) == "x^2 + 2*x*y + y^2"
    assert format_polynomial(poly_arith(x, "1/3", "scale")) == "1/3*x"

    with pytest.raises(ValueError):
        poly_arith(x, -1, "pow")


def test_derivatives():
    f = parse_polynomial("x^3 - 3*x*y^2", XY)
    assert format_map(gradient(f)) == "3*x^2 - 3*y^2, -6*x*y"
    assert format_polynomial(differentiate(f, 1)) == "-6*x*y"

    with pytest.raises(IndexRangeError):
        differentiate(f, -1)


def test_standard_functions():
    ring = make_ring(["x", "y", "z"])
    assert evaluate(rho(ring), [1, 2, 2]) == 9
    assert evaluate(omega(ring), [1, 1, 0]) == 2


def test_evaluate_checks_arity():
    with pytest.raises(ArityError):
        evaluate(parse_polynomial("x", XY), [1])


def test_jacobian_determinant():
    F = parse_map("x^2 - y^2, 2*x*y", XY)
    assert format_polynomial(jacobian_determinant(F)) == "4*x^2 + 4*y^2"

    with pytest.raises(ArityError):
        jacobian_determinant(parse_map("x", XY))


def test_translate():
    f = parse_polynomial("x*y", XY)
    assert format_polynomial(translate(f, (1, -1))) == "x*y - x + y - 1"


def test_complex_real_form():
    P, Q = complex_real_form("z^3 - 3*z", ["z"])
    assert format_polynomial(P) == "re_z^3 - 3*re_z*im_z^2 - 3*re_z"
    assert format_polynomial(Q) == "3*re_z^2*im_z - im_z^3 - 3*im_z"


def test_rational_function_map():
    numerators = parse_map("x, y", XY)
    rmap = RationalFunctionMap(numerators, (1, 2))
    assert [format_polynomial(d) for d in rmap.denominators] == [
        "1/2*x^2 + 1/2*y^2 + 1",
        "1/4*x^4 + 1/2*x^2*y^2 + 1/4*y^4 + x^2 + y^2 + 1",
    ]

    with pytest.raises(ArityError):
        RationalFunctionMap(numerators, (1,))


def test_rational_function_map_offset():
    numerators = parse_map("lam, x, y", ["lam", "x", "y"])
    rmap = RationalFunctionMap(numerators, (0, 1, 1), offset=1)
    assert format_polynomial(rmap.denominators[1]) == "1/2*x^2 + 1/2*y^2 + 1"
    assert rmap.denominators[0] == 1
