from collections import Counter

import numpy as np
import pytest
from sympy.polys.domains import QQ

from milnordeg import ArityError, UnstableAtBudget, chi_oracle
from milnordeg.chi_oracle import (
    PERTURBATION,
    Box,
    SignComplex,
    chi_on_circle,
    chi_on_sphere2,
    chi_region_grid,
    circle_zero_set_chi,
    isolate_real_roots,
    label_simplices,
    link_complex,
    mixed_simplices,
    perturbed,
    sphere_complex,
    stable_link,
    zero_set_chi,
)
from milnordeg.mesh import SimplicialMesh, project_radially, sphere_simplices
from milnordeg.poly import make_ring, parse_map, parse_polynomial

XY = ["x", "y"]
XYZ = ["x", "y", "z"]


@pytest.mark.parametrize(
    ["text", "relation", "chi"],
    [
        ("x", "eq", 2),
        ("x", "le", 1),
        ("x", ">=", 1),
        ("x^2 + y^2 - 4", "le", 0),
        ("x^2 + y^2 - 4", "ge", 0),
        ("x*y", "eq", 4),
    ],
)
def test_chi_on_circle(text, relation, chi):
    assert chi_on_circle(parse_polynomial(text, XY), 1, relation) == chi


def test_sign_complex():
    circle = SignComplex(Counter({(0, "0"): 2, (1, "+"): 1, (1, "-"): 1}))
    assert circle.counts("ge") == {"V": 2, "E": 1}
    assert circle.chi() == 0
    assert circle.additivity_holds(0)
    assert not circle.additivity_holds(2)


def test_label_simplices_splits_crossing_edges():
    simplices = [np.array([[0], [1]]), np.array([[0, 1]])]
    cells = SignComplex(label_simplices(np.array([True, False]), simplices))
    assert cells.cells[(0, "0")] == 1
    assert (cells.chi("le"), cells.chi("ge"), cells.chi("eq")) == (1, 1, 1)


@pytest.mark.parametrize(["text", "chi"], [("x, y", 0), ("x, x*y", 2), ("y", 2)])
def test_circle_zero_set(text, chi):
    assert circle_zero_set_chi(parse_map(text, XY), 1) == chi


def test_isolating_intervals_are_disjoint():
    (t,) = make_ring(["t"]).gens
    intervals = isolate_real_roots((t**2 - 2) * (t - 3))
    assert len(intervals) == 3

    for (_, upper), (lower, _) in zip(intervals, intervals[1:]):
        assert upper <= lower


def test_no_real_roots():
    (t,) = make_ring(["t"]).gens
    assert isolate_real_roots(t**2 + 1) == []


def test_sphere_band():
    band = sphere_complex(parse_map("z^2 - 1/4", XYZ), 1)
    assert (band.chi("le"), band.chi("ge"), band.chi("eq")) == (0, 2, 0)
    assert band.additivity_holds(2)
    assert band.parameters["radius"] == QQ(1)


@pytest.mark.parametrize(["relation", "chi"], [("eq", 0), ("le", 1), ("ge", 1)])
def test_chi_on_sphere(relation, chi):
    z = parse_polynomial("z", XYZ)
    assert chi_on_sphere2(z, 1, relation) == chi


def test_link_complex_dispatches_on_arity():
    assert link_complex(parse_polynomial("x", XY), 1).chi("eq") == 2
    assert link_complex(parse_polynomial("z", XYZ), 1).chi("eq") == 0

    with pytest.raises(ArityError):
        link_complex(parse_polynomial("x", ["x", "y", "z", "w"]), 1)


def test_zero_set_needs_few_equations():
    with pytest.raises(ArityError):
        zero_set_chi(parse_map("x, y, z", XYZ), 1)


def test_sphere_needs_three_variables():
    with pytest.raises(ArityError):
        sphere_complex(parse_map("x", XY), 1)


def test_perturbed_moves_the_level():
    def compute(level):
        if not level:
            raise UnstableAtBudget("mesh disagrees")

        return level

    result, level, notes = perturbed(compute, 0)
    assert result == level == PERTURBATION
    assert len(notes) == 2


def test_perturbed_gives_up():
    def compute(level):
        raise UnstableAtBudget("mesh disagrees")

    with pytest.raises(UnstableAtBudget, match="mesh disagrees"):
        perturbed(compute, 0)


def test_region_grid():
    f = parse_polynomial("x^2 - y^2", XY)
    assert chi_region_grid([(f, "eq", "1/10")], Box(1)) == 2
    g = parse_polynomial("x^2 + y^2", XY)
    assert chi_region_grid([(g, "le", "1/4")], Box(1)) == 1


def test_shell_keeps_norms_between_radii():
    kept = Box(2, inner=1).keeps(np.array([0.5, 1.5, 2.5]))
    assert kept.tolist() == [False, True, False]


def test_refined_sphere_mesh_stays_a_sphere():
    vertices, simplices = sphere_simplices(0)
    mesh = SimplicialMesh(vertices, simplices[2], project_radially)
    keys, _ = mesh.skeleton()
    first = mesh.refine(keys[:5])
    _, refined = mesh.skeleton()

    assert first == 12
    assert len(refined[2]) > 20
    assert len(refined[0]) - len(refined[1]) + len(refined[2]) == 2
    assert np.allclose(np.linalg.norm(mesh.coordinates(), axis=1), 1)


def test_mixed_simplices_need_every_equation_to_change_sign():
    values = np.array([[-1.0, 1.0], [1.0, 1.0], [1.0, -1.0], [2.0, 3.0]])
    keep = np.ones(4, bool)
    tops = np.array([[0, 1, 2], [0, 1, 3]])
    assert mixed_simplices(values, keep, tops).tolist() == [True, False]
    assert mixed_simplices(values[:, :0], keep, tops).tolist() == [False, False]


def test_sphere_refines_only_where_signs_change():
    band = sphere_complex(parse_map("z^2 - 1/4", XYZ), 1)
    uniform = 20 * 4 ** (band.parameters["depth"] + band.parameters["round"])
    assert band.parameters["round"] >= 1
    assert band.parameters["simplices"] < uniform


def test_stable_link_moves_a_tangent_level(monkeypatch):
    def link(f, radius, level):
        if not level:
            raise UnstableAtBudget("tangent level")

        return SignComplex(Counter({(0, "+"): 2}))

    monkeypatch.setattr(chi_oracle, "link_complex", link)
    value, level, notes = stable_link(parse_polynomial("x", XY), 1, "ge")
    assert (value, level) == (2, PERTURBATION)
    assert notes[0] == "level 0: tangent level"
