#!/usr/bin/env python
# vim: sw=4:ts=4:expandtab

"""
milnordeg.chi_oracle
~~~~~~~~~~~~~~~~~~~~

Provides Euler characteristics of sign sets `{f <= c}`, `{f = c}`, `{f >= c}`
on circles (exactly) and 2-spheres (by mesh refinement), and of fibers inside
balls (by Kuhn grids)

Every sphere result comes from a `SignComplex`: each open simplex of a mesh
splits into open cells labelled `-`, `0` or `+` by the sign of the piecewise
linear interpolation of `f - c` (a vertex value of exactly `c` counts as `+`).
The Euler characteristic of a sign set is the alternating count of its cells.

Examples:
    basic usage::

        >>> from milnordeg.poly import parse_polynomial
        >>> f = parse_polynomial("x", ["x", "y"])
        >>> chi_on_circle(f, 1, "eq"), chi_on_circle(f, 1, "le")
        (2, 1)
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from sympy.polys.domains import QQ

from . import ArityError, UnstableAtBudget
from .mesh import (
    SimplicialMesh,
    kuhn_grid,
    project_radially,
    restrict,
    sphere_simplices,
)
from .poly import FloatMap, PolyMap, make_ring, total_degree
from .utils import get_relation, max_depth, to_float, to_rational

logger = logging.getLogger(__name__)

ALLOWED = {"le": "-0", "ge": "+0", "eq": "0"}
CELL_NAMES = ("V", "E", "F", "T")
GRID_RESOLUTIONS = {1: 32, 2: 32, 3: 12}
MAX_SIMPLICES = 400000
PERTURBATION = QQ(1, 1024)


@dataclass
class SignComplex:
    """Open cells with a dimension and a sign label

    Attributes:
        cells (Counter): Number of cells per `(dimension, label)`.
        source (str): Description of the region and threshold.
        parameters (dict): Radius, depth or resolution of the mesh.

    Examples:
        >>> circle = SignComplex(Counter({(0, "0"): 2, (1, "+"): 1, (1, "-"): 1}))
        >>> circle.chi("le"), circle.chi("eq"), circle.chi()
        (1, 2, 0)
        >>> circle.counts("le")
        {'V': 2, 'E': 1}
    """

    cells: Counter = field(default_factory=Counter)
    source: str = ""
    parameters: dict = field(default_factory=dict)

    def __str__(self):
        return ", ".join(f"chi({relation}) {self.chi(relation)}" for relation in ALLOWED)

    def select(self, relation=None):
        allowed = ALLOWED[get_relation(relation)] if relation else None
        selected = Counter()

        for (dim, label), count in self.cells.items():
            if allowed is None or label in allowed:
                selected[dim] += count

        return selected

    def chi(self, relation=None):
        return sum((-1) ** dim * count for dim, count in self.select(relation).items())

    def counts(self, relation=None):
        selected = self.select(relation)
        top = max(dim for dim, _ in self.cells) if self.cells else 0
        return {CELL_NAMES[dim]: selected[dim] for dim in range(top + 1)}

    def additivity_holds(self, expected):
        """Whether chi(>=) + chi(<=) - chi(=) is the Euler characteristic of the sphere"""
        return self.chi("ge") + self.chi("le") - self.chi("eq") == expected


def label_simplices(positive, simplices):
    """Sign cells of a simplicial complex from the vertex signs

    Args:
        positive (np.ndarray): Boolean per vertex, `f - c >= 0`.
        simplices (List[np.ndarray]): Vertex index rows, per dimension.

    Returns:
        (Counter): Cell counts per `(dimension, label)`.
    """
    cells = Counter()

    for dim, rows in enumerate(simplices):
        if not len(rows):
            continue

        signs = positive[rows]
        has_positive = signs.any(axis=1)
        has_negative = (~signs).any(axis=1)
        cells[(dim, "+")] += int(has_positive.sum())
        cells[(dim, "-")] += int(has_negative.sum())

        if dim:
            cells[(dim - 1, "0")] += int((has_positive & has_negative).sum())

    return +cells


class Constraint(NamedTuple):
    poly: object
    relation: str = "eq"
    level: object = 0


@dataclass(frozen=True)
class Box:
    """A ball of the given radius, or a shell when `inner` is set"""

    radius: object
    inner: object = None

    def keeps(self, norms):
        outer = to_float(to_rational(self.radius))
        kept = norms <= outer * (1 + 1e-12)

        if self.inner is not None:
            kept &= norms >= to_float(to_rational(self.inner))

        return kept


def _circle_numerator(f, radius, level):
    """`(1 + t^2)^d (f - level)` along the rational parametrization of the circle"""
    ring = make_ring(["t"])
    (t,) = ring.gens
    r = to_rational(radius)
    degree = total_degree(f)
    x, y, w = 1 - t**2, 2 * t, 1 + t**2
    numerator = -to_rational(level) * w**degree

    for (a, b), coeff in f.iterterms():
        numerator += coeff * r ** (a + b) * x**a * y**b * w ** (degree - a - b)

    return numerator


def _variations(sequence, point):
    values = [s(point) for s in sequence]
    signs = [v > 0 for v in values if v]
    return sum(1 for prev, curr in zip(signs, signs[1:]) if prev != curr)


def _cauchy_bound(p):
    lead = abs(p.LC)
    return 1 + max((abs(c) / lead for c in p.itercoeffs()), default=QQ(0))


def isolate_real_roots(p):
    """Disjoint intervals `(a, b]` each holding one real root of `p`

    Interval ends are never roots, so each `b` is a sample point strictly
    between consecutive roots.

    Examples:
        >>> ring = make_ring(["t"])
        >>> (t,) = ring.gens
        >>> [(str(a), str(b)) for a, b in isolate_real_roots(t**2 - 1)]
        [('-2', '0'), ('0', '2')]
    """
    if p.is_ground:
        return []

    square_free = p.sqf_part()
    sequence = square_free.sturm()
    bound = _cauchy_bound(square_free)

    def split(low, high):
        count = _variations(sequence, low) - _variations(sequence, high)

        if not count:
            return []
        elif count == 1:
            return [(low, high)]

        for fraction in (QQ(1, 2), QQ(1, 3), QQ(2, 3), QQ(2, 5), QQ(3, 5)):
            middle = low + (high - low) * fraction

            if square_free(middle):
                return split(low, middle) + split(middle, high)

        raise UnstableAtBudget("root isolation did not find a non root split point")

    return split(-bound, bound)


def circle_complex(f, radius, level=0):
    """Exact sign complex of `f - level` on the circle of the given radius

    Zeros come from Sturm isolation of the parametrized numerator, plus the
    point `(-R, 0)` missed by the parametrization. Arcs between zeros are
    signed by exact evaluation.

    Examples:
        >>> from milnordeg.poly import parse_polynomial
        >>> f = parse_polynomial("x^2 + y^2 - 4", ["x", "y"])
        >>> circle_complex(f, 1).chi("le")
        0
    """
    f = PolyMap([f])[0]

    if f.ring.ngens != 2:
        raise ArityError(f"circle oracle needs 2 variables, got {f.ring.ngens}")

    numerator = _circle_numerator(f, radius, level)
    r = to_rational(radius)
    at_infinity = f(-r, QQ(0)) - to_rational(level)
    source = f"circle of radius {r}, level {level}"
    parameters = {"radius": r}

    if not numerator:
        return SignComplex(Counter({(0, "0"): 1, (1, "0"): 1}), source, parameters)

    intervals = isolate_real_roots(numerator)
    zeros = len(intervals) + (0 if at_infinity else 1)

    if not zeros:
        label = "+" if at_infinity > 0 else "-"
        return SignComplex(Counter({(0, label): 1, (1, label): 1}), source, parameters)

    bound = _cauchy_bound(numerator.sqf_part()) + 1
    samples = [high for _, high in intervals[:-1]]

    if at_infinity:
        samples.append(bound)
    else:
        samples.extend([bound, -bound] if intervals else [bound])

    cells = Counter({(0, "0"): zeros})

    for sample in samples:
        cells[(1, "+" if numerator(sample) > 0 else "-")] += 1

    return SignComplex(cells, source, parameters)


def chi_on_circle(f, radius, relation, level=0):
    """Euler characteristic of `{x on the circle: f(x) rel level}`, exactly

    Examples:
        >>> from milnordeg.poly import parse_polynomial
        >>> f = parse_polynomial("x^2 + y^2 - 4", ["x", "y"])
        >>> chi_on_circle(f, 1, "<=")
        0
    """
    return circle_complex(f, radius, level).chi(relation)


def circle_zero_set_chi(components, radius):
    """Number of common zeros of several polynomials on a circle

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> circle_zero_set_chi(parse_map("x, y", ["x", "y"]), 1)
        0
        >>> circle_zero_set_chi(parse_map("x, x*y", ["x", "y"]), 1)
        2
    """
    components = PolyMap(components)

    if len(components) == 1:
        return chi_on_circle(components[0], radius, "eq")

    r = to_rational(radius)
    numerators = [_circle_numerator(h, r, 0) for h in components]
    nonzero = [p for p in numerators if p]

    if not nonzero:
        return 0

    common = nonzero[0]

    for p in nonzero[1:]:
        common = common.gcd(p)

    at_infinity = not any(h(-r, QQ(0)) for h in components)
    return len(isolate_real_roots(common)) + int(at_infinity)


def _vertex_values(fmap, points, level):
    """Values of `f - level` at the vertices, exact where float cancellation bites"""
    shift = to_rational(level)
    values = fmap(points) - to_float(shift)
    scale = np.abs(values).max(initial=0.0)

    tiny = (np.abs(values) <= 1e-9 * scale).any(axis=1) if scale else np.ones(len(points), bool)

    for i in np.flatnonzero(tiny):
        exact = [v - shift for v in fmap.exact(points[i])]
        values[i] = [0.0 if not v else (1e-300 if v > 0 else -1e-300) for v in exact]

    return values


def mixed_simplices(values, keep, tops):
    """Top simplices on which every column of `values` changes sign

    Without columns, the simplices straddling the boundary of `keep`. Either
    way a simplex with no kept vertex is never mixed.

    Examples:
        >>> values = np.array([[-1.0], [1.0], [2.0], [3.0]])
        >>> keep = np.array([True, True, True, False])
        >>> mixed_simplices(values, keep, np.array([[0, 1, 2], [1, 2, 3]])).tolist()
        [True, False]
    """
    kept = keep[tops]

    if values.shape[1]:
        signs = values[tops] >= 0
        changes = signs.any(axis=1) & ~signs.all(axis=1)
        return changes.all(axis=1) & kept.any(axis=1)

    return kept.any(axis=1) & ~kept.all(axis=1)


def adaptive_complex(mesh, evaluate, cells_of, rounds, relations=(None,)):
    """Refine the mixed simplices of a mesh until two rounds agree

    Args:
        mesh (SimplicialMesh): The starting mesh.
        evaluate (Callable): Vertex coordinates to `(values, keep)`.
        cells_of (Callable): `(values, keep, simplices)` to a cell `Counter`.
        rounds (int): Largest number of refinement rounds.
        relations (Sequence[str]): Relations whose characteristics must agree.

    Returns:
        (SignComplex): The complex of the accepted round.

    Raises:
        UnstableAtBudget: The characteristics still change after the last
            round, or the mesh outgrows `MAX_SIMPLICES`.
    """
    values, keep = evaluate(mesh.coordinates())
    previous = None

    for current in range(rounds + 1):
        keys, simplices = mesh.skeleton()
        cells = cells_of(values, keep, simplices)
        result = SignComplex(+cells, parameters={"round": current, "simplices": len(keys)})
        signature = tuple(result.chi(relation) for relation in relations)
        logger.debug("refinement round %d (%d simplices): chi %s", current, len(keys), signature)

        if signature == previous:
            return result
        elif len(keys) > MAX_SIMPLICES:
            raise UnstableAtBudget(f"characteristics {previous} then {signature} with {len(keys)} simplices")

        previous = signature
        mixed = mixed_simplices(values, keep, simplices[-1])
        first = mesh.refine(key for key, flag in zip(keys, mixed) if flag)

        if first < len(mesh.points):
            new_values, new_keep = evaluate(mesh.coordinates(first))
            values = np.concatenate([values, new_values])
            keep = np.concatenate([keep, new_keep])

    raise UnstableAtBudget(f"characteristics {signature} still change after {rounds} refinements")


def _sphere_cells(values, keep, simplices):
    if values.shape[1] == 1:
        return label_simplices(values[:, 0] >= 0, simplices)

    # two equations: a triangle carries a zero when its image surrounds 0
    inside = _surrounds_origin(values[simplices[2]])
    return Counter({(0, "0"): int(inside.sum())})


def _surrounds_origin(images):
    """Whether 0 is interior to the convex hull of each row of planar points"""
    angles = np.sort(np.arctan2(images[..., 1], images[..., 0]), axis=1)
    gaps = np.diff(angles, axis=1)
    wrap = 2 * math.pi - (angles[:, -1] - angles[:, 0])
    widest = np.maximum(gaps.max(axis=1, initial=0.0), wrap)
    nonzero = np.linalg.norm(images, axis=2).min(axis=1) > 0
    return (widest < math.pi) & nonzero


def sphere_complex(components, radius, level=0, depth=None):
    """Sign complex on a 2-sphere, refined where the signs change

    The icosphere of the first depth is refined by bisecting the longest edge
    of every triangle whose vertex signs are mixed (in every component). The
    complex is accepted when two consecutive rounds agree.

    Args:
        components (PolyMap): One polynomial (sign sets) or two (common zeros)
            in 3 variables.
        radius (Union[QQ, int, str]): Sphere radius.
        level (Union[QQ, int, str]): Threshold.
        depth (int): Depth of the starting icosphere (default 3).

    Returns:
        (SignComplex): The complex of the accepted round.

    Raises:
        UnstableAtBudget: The characteristics keep changing.

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> band = sphere_complex(parse_map("z^2 - 1/4", ["x", "y", "z"]), 1)
        >>> band.chi("le"), band.chi("ge"), band.chi("eq")
        (0, 2, 0)
    """
    components = PolyMap(components)

    if components.arity != 3 or len(components) > 2:
        raise ArityError("sphere oracle needs 3 variables and at most 2 polynomials")

    first = depth or 3
    rounds = 2 * (max(first + 1, max_depth()) - first) + 2
    relations = ("le", "ge", "eq") if len(components) == 1 else ("eq",)
    fmap = FloatMap(components)
    scale = to_float(to_rational(radius))
    vertices, simplices = sphere_simplices(first)
    mesh = SimplicialMesh(vertices, simplices[2], project_radially)

    def evaluate(points):
        return _vertex_values(fmap, scale * points, level), np.ones(len(points), bool)

    result = adaptive_complex(mesh, evaluate, _sphere_cells, rounds, relations)
    result.source = f"sphere of radius {radius}, level {level}"
    result.parameters.update(depth=first, radius=to_rational(radius))
    return result


def chi_on_sphere2(f, radius, relation, level=0):
    """Euler characteristic of `{x on the 2-sphere: f(x) rel level}`

    Examples:
        >>> from milnordeg.poly import parse_polynomial
        >>> z = parse_polynomial("z", ["x", "y", "z"])
        >>> chi_on_sphere2(z, 1, "eq"), chi_on_sphere2(z, 1, "le")
        (0, 1)
    """
    return sphere_complex([f], radius, level).chi(relation)


def link_complex(f, radius, level=0):
    """Sign complex on the circle (2 variables) or 2-sphere (3 variables)"""
    arity = f.ring.ngens

    if arity == 2:
        return circle_complex(f, radius, level)
    elif arity == 3:
        return sphere_complex([f], radius, level)
    else:
        raise ArityError(f"no sphere oracle for arity {arity}")


def zero_set_chi(components, radius):
    """Euler characteristic of the common zero set of polynomials on a sphere"""
    components = PolyMap(components)

    if components.arity == 2:
        return circle_zero_set_chi(components, radius)
    elif components.arity == 3 and len(components) <= 2:
        return sphere_complex(components, radius).chi("eq")
    else:
        raise ArityError(f"no zero set oracle for {len(components)} polynomials in arity {components.arity}")


def perturbed(compute, level, step=None):
    """Run `compute(level)`, moving the level when the mesh result is unstable

    The level moves up, then down, by `step` (default: 1/16 of a nonzero
    level, `PERTURBATION` for level 0).

    Returns:
        (Tuple[object, QQ, List[str]]): The result, the level used and notes
            on every attempt.

    Examples:
        >>> def compute(level):
        ...     if level <= 1:
        ...         raise UnstableAtBudget("values 1 then 2")
        ...     return 3
        >>> result, level, notes = perturbed(compute, 1)
        >>> result, str(level)
        (3, '17/16')
        >>> notes
        ['level 1: values 1 then 2', 'level moved from 1 to 17/16: 3']
    """
    level = to_rational(level)
    step = to_rational(step) if step else (abs(level) / 16 if level else PERTURBATION)
    notes = []

    for candidate in (level, level + step, level - step):
        try:
            result = compute(candidate)
        except UnstableAtBudget as err:
            notes.append(f"level {candidate}: {err}")
        else:
            if candidate != level:
                notes.append(f"level moved from {level} to {candidate}: {result}")

            return result, candidate, notes

    raise UnstableAtBudget("; ".join(notes))


def stable_link(f, radius, relation, level=0):
    """Characteristic of a sign set on a sphere, moving a degenerate level

    Returns:
        (Tuple[int, QQ, List[str]]): The characteristic, the level used and
            notes (empty unless the level moved).

    Examples:
        >>> from milnordeg.poly import parse_polynomial
        >>> value, level, notes = stable_link(parse_polynomial("x", ["x", "y"]), 1, "le")
        >>> value, str(level), notes
        (1, '0', [])
    """
    return perturbed(lambda candidate: link_complex(f, radius, candidate).chi(relation), level)


def _grid_values(constraints, box, points):
    """Equation values (one column per equation) and the region mask"""
    keep = box.keeps(np.linalg.norm(points, axis=1))
    equations = []

    for constraint in constraints:
        relation = get_relation(constraint.relation)
        values = FloatMap([constraint.poly])(points)[:, 0] - to_float(to_rational(constraint.level))

        if relation == "eq":
            equations.append(values)
        elif relation == "le":
            keep &= values <= 0
        else:
            keep &= values >= 0

    images = np.column_stack(equations) if equations else np.empty((len(points), 0))
    return images, keep


def _grid_cells(images, keep, simplices):
    simplices = restrict(simplices, keep)
    p = images.shape[1]

    if not p:
        return Counter({(dim, "0"): len(rows) for dim, rows in enumerate(simplices) if len(rows)})
    elif p == 1:
        labelled = label_simplices(images[:, 0] >= 0, simplices)
        return Counter({key: count for key, count in labelled.items() if key[1] == "0"})

    cells = Counter()

    for dim, rows in enumerate(simplices):
        if dim >= p and len(rows):
            inside = _surrounds_origin(images[rows])
            cells[(dim - p, "0")] += int(inside.sum())

    return +cells


def region_complex(constraints, box, arity=None):
    """Grid complex of a region, refined near sign changes

    Equations cut the grid into cells of codimension p (p at most 2);
    inequalities and the ball select a full subcomplex. Simplices where every
    equation changes sign (or, without equations, straddling the region's
    boundary) are bisected until two consecutive rounds agree.

    Raises:
        UnstableAtBudget: The characteristic keeps changing.
    """
    constraints = [Constraint(*c) for c in constraints]
    arity = arity or constraints[0].poly.ring.ngens
    equations = sum(get_relation(c.relation) == "eq" for c in constraints)

    if arity not in GRID_RESOLUTIONS or equations > min(2, arity):
        raise ArityError(f"no grid oracle for {equations} equations in arity {arity}")

    resolution = GRID_RESOLUTIONS[arity]
    points, simplices = kuhn_grid(arity, resolution)
    mesh = SimplicialMesh(to_float(to_rational(box.radius)) * points, simplices[-1])

    def evaluate(coordinates):
        return _grid_values(constraints, box, coordinates)

    result = adaptive_complex(mesh, evaluate, _grid_cells, 2 * max_depth())
    result.source = f"grid of {resolution} cells per side"
    result.parameters["resolution"] = resolution
    return result


def chi_region_grid(constraints, box, arity=None):
    """Euler characteristic of a semi-algebraic region inside a ball

    Args:
        constraints (Iterable[Constraint]): `(poly, relation, level)` triples.
        box (Box): The ball (or shell).
        arity (int): Number of variables (default: from the first polynomial).

    Examples:
        >>> from milnordeg.poly import parse_polynomial
        >>> f = parse_polynomial("x^2 - y^2", ["x", "y"])
        >>> chi_region_grid([(f, "eq", "1/10")], Box(1))
        2
        >>> g = parse_polynomial("x^2 + y^2", ["x", "y"])
        >>> chi_region_grid([(g, "le", "1/4")], Box(1))
        1
    """
    return region_complex(constraints, box, arity).chi()
