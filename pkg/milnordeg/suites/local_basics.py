"""
Formulas at the origin on the planar and spatial examples whose answers are
known by hand: local degrees of quadratic and cubic gradients, tube fibers
of a definite and an indefinite form, links of lines and planes, and the
Milnor numbers of simple complex singularities.
"""

suite = [
    {
        "name": "definite gradient",
        "command": "local-degree",
        "vars": "x,y",
        "map": "2*x, 2*y",
        "expected": {"LOCAL_DEGREE": 1},
    },
    {
        "name": "saddle gradient",
        "command": "local-degree",
        "vars": "x,y",
        "map": "2*x, -2*y",
        "expected": {"LOCAL_DEGREE": -1},
    },
    {
        "name": "monkey saddle gradient",
        "command": "local-degree",
        "vars": "x,y",
        "map": "3*x^2 - 3*y^2, -6*x*y",
        "expected": {"LOCAL_DEGREE": -2},
    },
    {
        "name": "saddle fiber",
        "command": "chi-fiber-tube",
        "vars": "x,y",
        "map": "x^2 - y^2",
        "params": {"mode": "khimshiashvili"},
        "expected": {"KHIMSHIASHVILI": 2},
    },
    {
        "name": "circle fiber",
        "command": "chi-fiber-tube",
        "vars": "x,y",
        "map": "x^2 + y^2",
        "params": {"mode": "khimshiashvili"},
        "expected": {"KHIMSHIASHVILI": 0},
    },
    {
        "name": "empty fiber",
        "command": "chi-fiber-tube",
        "vars": "x,y",
        "map": "x^2 + y^2",
        "params": {"mode": "khimshiashvili", "sign": -1},
        "expected": {"KHIMSHIASHVILI": 0},
    },
    {
        "name": "line link",
        "command": "chi-link0",
        "vars": "x,y",
        "zeros": "x",
        "expected": {"SZAFRANIEC_LINK0": 2},
    },
    {
        "name": "point link",
        "command": "chi-link0",
        "vars": "x,y",
        "zeros": "x, y",
        "expected": {"SZAFRANIEC_LINK0": 0},
    },
    {
        "name": "plane link",
        "command": "chi-link0",
        "vars": "x,y,z",
        "zeros": "x",
        "expected": {"SZAFRANIEC_LINK0": 0},
    },
    {
        "name": "double point",
        "command": "milnor-number",
        "vars": "z",
        "poly": "z^2",
        "expected": {"MILNOR_CHI": 2},
    },
    {
        "name": "cubic",
        "command": "milnor-number",
        "vars": "z",
        "poly": "z^3 - 3*z",
        "params": {"total": True},
        "expected": {"MILNOR_CHI": 3},
    },
    {
        "name": "node",
        "command": "milnor-number",
        "vars": "z1,z2",
        "poly": "z1^2 + z2^2",
        "expected": {"MILNOR_CHI": 0},
    },
]
