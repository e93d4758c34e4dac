#!/usr/bin/env python
# vim: sw=4:ts=4:expandtab

"""
milnordeg.degree_oracle
~~~~~~~~~~~~~~~~~~~~~~~

Provides numerical mapping degrees on circles (winding numbers) and on
2-spheres (signed solid angles), the independent check of every symbolic
degree in arity 2 and 3

Examples:
    basic usage::

        >>> from milnordeg.poly import parse_map
        >>> winding_degree_2d(parse_map("x^2 - y^2, 2*x*y", ["x", "y"]), 1).degree
        2
"""

import logging
import math

import numpy as np

from . import (
    SOLID_ANGLE_ORACLE,
    WINDING_ORACLE,
    ArityError,
    BudgetExceeded,
    DegenerateImageTriangle,
    UnstableAtBudget,
    ZeroOnSphere,
)
from .mesh import icosphere
from .poly import FloatMap, PolyMap
from .report import DegreeResult
from .utils import DEFAULTS, doublings, halvings, max_depth, to_float, to_rational

logger = logging.getLogger(__name__)

GATE = 0.05
CANCELLATION = 1e-8
MAX_SAMPLES = 2**16
NUDGE = 2.0**-20


def _check_shape(pmap, arity):
    pmap = PolyMap(pmap)

    if pmap.arity != arity or len(pmap) != arity:
        msg = f"expected a map R^{arity} -> R^{arity}, got {len(pmap)} components on {pmap.arity} variables"
        raise ArityError(msg)

    return pmap


def _exact_direction(fmap, point):
    exact = fmap.exact(point)

    if not any(exact):
        raise ZeroOnSphere(f"the map vanishes at {tuple(round(float(v), 6) for v in point)}")

    biggest = max(abs(v) for v in exact)
    values = np.array([to_float(v / biggest) for v in exact])
    return values / np.linalg.norm(values)


def directions(fmap, points):
    """Unit vectors `F(x) / |F(x)|` at the sample points

    Samples whose float value is lost to cancellation are evaluated again in
    exact arithmetic at the binary rational nearest to the sample, and at two
    rational points perturbed by `NUDGE` times the sample's norm. A quarter
    turn between those directions means a zero lies next to the sample.

    Raises:
        ZeroOnSphere: The map vanishes at, or next to, a sample.

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> fmap = FloatMap(parse_map("x - 1/3, y", ["x", "y"]))
        >>> directions(fmap, np.array([[1.0, 0.0], [1 / 3 + 1e-12, 0.0]]))
        Traceback (most recent call last):
        ...
        milnordeg.ZeroOnSphere: the map nearly vanishes next to (0.333333, 0.0)
    """
    values = fmap(points)
    norms = np.linalg.norm(values, axis=1)
    scale = norms.max(initial=0.0)
    suspicious = np.flatnonzero(norms <= CANCELLATION * scale) if scale else range(len(points))

    for i in suspicious:
        point = points[i]
        here = _exact_direction(fmap, point)
        offset = NUDGE * np.linalg.norm(point) * np.ones_like(point)

        for nudged in (point + offset, point - offset):
            if np.dot(here, _exact_direction(fmap, nudged)) <= 0:
                point = tuple(round(float(v), 6) for v in point)
                raise ZeroOnSphere(f"the map nearly vanishes next to {point}")

        values[i], norms[i] = here, 1.0

    return values / norms[:, None]


def _winding(fmap, radius, angles):
    points = radius * np.column_stack([np.cos(angles), np.sin(angles)])
    units = directions(fmap, points)
    phases = np.arctan2(units[:, 1], units[:, 0])
    steps = np.diff(np.append(phases, phases[0]))
    return (steps + math.pi) % (2 * math.pi) - math.pi


def _refine(angles, mask):
    ends = np.append(angles[1:], 2 * math.pi)
    middles = (angles[mask] + ends[mask]) / 2
    return np.sort(np.concatenate([angles, middles]))


def winding_degree_2d(pmap, radius, samples=64):
    """Winding number of a planar map around a circle

    The circle is bisected where the image turns by a quarter turn or more
    between samples. Once every step is small, one uniform refinement must
    reproduce the degree.

    Args:
        pmap (PolyMap): A map R^2 -> R^2.
        radius (Union[QQ, int, str]): Radius of the circle.
        samples (int): Initial number of equally spaced samples.

    Returns:
        (DegreeResult): The degree, with the radius and final sample count.

    Raises:
        ZeroOnSphere: The map vanishes on the circle.
        BudgetExceeded: More than 65536 samples would be needed.
        UnstableAtBudget: The total turn is not within 0.05 of an integer.

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> F = parse_map("3*x^2 - 3*y^2, -6*x*y", ["x", "y"])
        >>> winding_degree_2d(F, "1/2").degree
        -2
        >>> winding_degree_2d(parse_map("x, y", ["x", "y"]), 0)
        Traceback (most recent call last):
        ...
        milnordeg.ZeroOnSphere: the map vanishes at (0.0, 0.0)
    """
    fmap = FloatMap(_check_shape(pmap, 2))
    rational = to_rational(radius)
    r = to_float(rational)
    angles = np.linspace(0, 2 * math.pi, samples, endpoint=False)
    previous = None

    while True:
        if len(angles) > MAX_SAMPLES:
            raise BudgetExceeded(f"more than {MAX_SAMPLES} samples on the circle of radius {rational}")

        steps = _winding(fmap, r, angles)
        coarse = np.abs(steps) >= math.pi / 2

        if coarse.any():
            angles = _refine(angles, coarse)
            previous = None
            continue

        total = steps.sum() / (2 * math.pi)
        degree = round(total)

        if abs(total - degree) >= GATE:
            raise UnstableAtBudget(f"total turn {total:.4f} is not near an integer")
        elif previous == degree:
            break

        previous = degree
        angles = _refine(angles, np.ones(len(angles), dtype=bool))

    parameters = {"radius": rational, "samples": len(angles)}
    return DegreeResult(degree, WINDING_ORACLE, parameters)


def _solid_angles(units, faces):
    a, b, c = (units[faces[:, i]] for i in range(3))
    numerator = np.einsum("ij,ij->i", a, np.cross(b, c))
    dots = np.einsum("ij,ij->i", a, b) + np.einsum("ij,ij->i", b, c) + np.einsum("ij,ij->i", c, a)
    denominator = 1 + dots
    degenerate = (np.abs(numerator) < 1e-12) & (denominator < 1e-9)
    return 2 * np.arctan2(numerator, denominator), degenerate


def solid_angle_degree_3d(pmap, radius, depth=None):
    """Degree of a map R^3 -> R^3 on a sphere, by signed solid angles

    Each oriented mesh triangle contributes the signed area of the spherical
    triangle spanned by the normalized images of its corners. Two consecutive
    mesh depths must give the same degree.

    Args:
        pmap (PolyMap): A map R^3 -> R^3.
        radius (Union[QQ, int, str]): Radius of the sphere.
        depth (int): First mesh depth (default 2).

    Returns:
        (DegreeResult): The degree, with the radius and accepted depth.

    Raises:
        ZeroOnSphere: The map vanishes on a mesh vertex.
        DegenerateImageTriangle: An image triangle spans antipodal points at
            the deepest mesh.
        UnstableAtBudget: Consecutive depths never agree.

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> names = ["x", "y", "z"]
        >>> solid_angle_degree_3d(parse_map("-x, -y, -z", names), 1).degree
        -1
        >>> solid_angle_degree_3d(parse_map("x, y, -z", names), 2).degree
        -1
    """
    fmap = FloatMap(_check_shape(pmap, 3))
    rational = to_rational(radius)
    r = to_float(rational)
    first = 2 if depth is None else depth
    last = max(first + 1, max_depth())
    previous, problem = None, None

    for level in range(first, last + 1):
        vertices, faces = icosphere(level)
        units = directions(fmap, r * vertices)
        angles, degenerate = _solid_angles(units, faces)

        if degenerate.any():
            problem = DegenerateImageTriangle(
                f"{degenerate.sum()} degenerate image triangles at depth {level}"
            )
            previous = None
            continue

        total = angles.sum() / (4 * math.pi)
        degree = round(total)
        logger.debug("depth %d: total solid angle %.6f", level, total)

        if abs(total - degree) >= GATE:
            problem = UnstableAtBudget(f"total solid angle {total:.4f} at depth {level}")
            previous = None
        elif previous == degree:
            parameters = {"radius": rational, "depth": level}
            return DegreeResult(degree, SOLID_ANGLE_ORACLE, parameters)
        else:
            previous = degree

    raise problem or UnstableAtBudget(f"depths {first} to {last} never agree")


def oracle_degree(pmap, radius, **kwargs):
    """Dispatch to the oracle of the map's arity

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> oracle_degree(parse_map("x, y", ["x", "y"]), 1).method
        'winding_oracle'
        >>> oracle_degree(parse_map("x, y, z, w", ["x", "y", "z", "w"]), 1)
        Traceback (most recent call last):
        ...
        milnordeg.ArityError: no degree oracle for arity 4
    """
    arity = PolyMap(pmap).arity

    if arity == 2:
        return winding_degree_2d(pmap, radius, **kwargs)
    elif arity == 3:
        return solid_angle_degree_3d(pmap, radius, **kwargs)
    else:
        raise ArityError(f"no degree oracle for arity {arity}")


def stable_degree(pmap, radii):
    """The degree on the first pair of consecutive radii that agree

    Radii where the map vanishes on the sphere are skipped.

    Raises:
        UnstableAtBudget: No two consecutive radii agree.
    """
    previous, notes = None, []

    for radius in radii:
        try:
            result = oracle_degree(pmap, radius)
        except ZeroOnSphere as err:
            notes.append(f"radius {radius}: {err}")
            previous = None
            continue

        if previous is not None and previous.degree == result.degree:
            result.parameters["previous_radius"] = previous.parameters["radius"]
            result.diagnostics.extend(notes)
            return result

        previous = result

    radii = ", ".join(str(r) for r in radii)
    raise UnstableAtBudget(f"no two consecutive radii among {radii} agree")


def oracle_local_degree(pmap, epsilon=None):
    """Degree on small spheres around the origin, halving the radius

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> oracle_local_degree(parse_map("2*x, -2*y", ["x", "y"])).degree
        -1
    """
    start = to_rational(epsilon or DEFAULTS["epsilon"])
    return stable_degree(pmap, halvings(start, DEFAULTS["radius_steps"]))


def oracle_degree_at_infinity(pmap, radius=None):
    """Degree on large spheres, doubling the radius

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> oracle_degree_at_infinity(parse_map("x^2 - 1, y", ["x", "y"])).degree
        0
    """
    start = to_rational(radius or DEFAULTS["radius"])
    return stable_degree(pmap, doublings(start, DEFAULTS["radius_steps"]))
