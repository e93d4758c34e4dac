"""
Formulas at infinity on the line, the circle and the doubled circle: degrees
at infinity, links at infinity, the semitame level identities and the global
sphere fiber.
"""

suite = [
    {
        "name": "identity at infinity",
        "command": "infinity-degree",
        "vars": "x,y",
        "map": "x, y",
        "expected": {"INFINITY_DEGREE": 1},
    },
    {
        "name": "fold at infinity",
        "command": "infinity-degree",
        "vars": "x,y",
        "map": "x^2 - 1, y",
        "expected": {"INFINITY_DEGREE": 0},
    },
    {
        "name": "half plane",
        "command": "chi-link-inf",
        "vars": "x,y",
        "poly": "x",
        "expected": {"LINK_INF_LE": 1, "LINK_INF_GE": 1, "LINK_INF_EQ": 2},
    },
    {
        "name": "disc",
        "command": "chi-link-inf",
        "vars": "x,y",
        "poly": "x^2 + y^2 - 1",
        "expected": {"LINK_INF_LE": 0, "LINK_INF_GE": 0, "LINK_INF_EQ": 0},
    },
    {
        "name": "compact circle",
        "command": "chi-link-inf",
        "vars": "x,y",
        "poly": "(x^2 + y^2 - 4)^2",
        "params": {"closed_set": True},
        "expected": {"CLOSED_SET_LINK_INF": 0},
    },
    {
        "name": "half plane levels",
        "command": "semitame",
        "vars": "x,y",
        "poly": "x",
        "expected": {"SEMITAME_LEVELS:le": 1, "SEMITAME_LEVELS:ge": 1},
    },
    {
        "name": "compact circle levels",
        "command": "semitame",
        "vars": "x,y",
        "poly": "(x^2 + y^2 - 4)^2",
        "params": {"closed_set": True},
        "expected": {"GLOBAL_SZA": 0, "CLOSED_SET_MINUS_DEGREE": 1},
    },
    {
        "name": "line sphere fiber",
        "command": "chi-global-fiber",
        "vars": "x,y",
        "map": "x",
        "expected": {"GLOBAL_SPHERE_FIBER": 1, "LINK_INF_COMPONENT_RELATION": 2},
    },
    {
        "name": "identity sphere fiber",
        "command": "chi-global-fiber",
        "vars": "x,y",
        "map": "x, y",
        "expected": {"GLOBAL_SPHERE_FIBER": 1, "LINK_INF_COMPONENT_RELATION": 2},
    },
]
