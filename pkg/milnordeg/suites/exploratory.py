"""
Report-only examples beyond the reach of the oracles. Broughton's polynomial
x + x^2 y is read as a complex map, i.e. its real and imaginary parts in four
real variables; its global sphere fiber is a thrice punctured 2-sphere.
"""

suite = [
    {
        "name": "broughton",
        "command": "chi-global-fiber",
        "vars": "x,y",
        "map": "x + x^2*y",
        "params": {"complex": True},
        "expected": {"GLOBAL_SPHERE_FIBER": -1},
    },
]
