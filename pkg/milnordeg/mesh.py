#!/usr/bin/env python
# vim: sw=4:ts=4:expandtab

"""
milnordeg.mesh
~~~~~~~~~~~~~~

Provides the simplicial meshes sampled by the oracles: subdivided icosahedra
on the unit sphere, Kuhn triangulations of cubical grids and their conforming
refinement by edge bisection

Examples:
    basic usage::

        >>> vertices, faces = icosphere(1)
        >>> len(vertices) - len(sphere_edges(faces)) + len(faces)
        2
"""

import functools
import itertools as it

import numpy as np

GOLDEN = (1 + 5**0.5) / 2

ICOSAHEDRON_VERTICES = [
    (-1, GOLDEN, 0),
    (1, GOLDEN, 0),
    (-1, -GOLDEN, 0),
    (1, -GOLDEN, 0),
    (0, -1, GOLDEN),
    (0, 1, GOLDEN),
    (0, -1, -GOLDEN),
    (0, 1, -GOLDEN),
    (GOLDEN, 0, -1),
    (GOLDEN, 0, 1),
    (-GOLDEN, 0, -1),
    (-GOLDEN, 0, 1),
]

ICOSAHEDRON_FACES = [
    (0, 11, 5),
    (0, 5, 1),
    (0, 1, 7),
    (0, 7, 10),
    (0, 10, 11),
    (1, 5, 9),
    (5, 11, 4),
    (11, 10, 2),
    (10, 7, 6),
    (7, 1, 8),
    (3, 9, 4),
    (3, 4, 2),
    (3, 2, 6),
    (3, 6, 8),
    (3, 8, 9),
    (4, 9, 5),
    (2, 4, 11),
    (6, 2, 10),
    (8, 6, 7),
    (9, 8, 1),
]


def _normalize(points):
    return points / np.linalg.norm(points, axis=1, keepdims=True)


def orient_outward(vertices, faces):
    """Flip the faces whose normal points towards the origin"""
    a, b, c = (vertices[faces[:, i]] for i in range(3))
    inward = np.einsum("ij,ij->i", np.cross(b - a, c - a), a + b + c) < 0
    faces = faces.copy()
    faces[inward] = faces[inward][:, [0, 2, 1]]
    return faces


def _subdivide(vertices, faces):
    count = len(faces)
    edges = np.concatenate([faces[:, [0, 1]], faces[:, [1, 2]], faces[:, [2, 0]]])
    unique, inverse = np.unique(np.sort(edges, axis=1), axis=0, return_inverse=True)
    midpoints = _normalize(vertices[unique].mean(axis=1))
    middle = inverse.reshape(-1) + len(vertices)
    ab, bc, ca = middle[:count], middle[count : 2 * count], middle[2 * count :]
    a, b, c = faces.T
    children = [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
    new_faces = np.concatenate([np.stack(child, axis=1) for child in children])
    return np.concatenate([vertices, midpoints]), new_faces


@functools.lru_cache(maxsize=None)
def icosphere(depth):
    """Unit sphere mesh: the icosahedron split `depth` times, 4 to 1

    Faces are oriented counterclockwise seen from outside.

    Returns:
        (Tuple[np.ndarray, np.ndarray]): Vertices (V x 3) and faces (F x 3).

    Examples:
        >>> vertices, faces = icosphere(2)
        >>> vertices.shape, faces.shape
        ((162, 3), (320, 3))
    """
    vertices = _normalize(np.array(ICOSAHEDRON_VERTICES, dtype=float))
    faces = np.array(ICOSAHEDRON_FACES, dtype=int)

    for _ in range(depth):
        vertices, faces = _subdivide(vertices, faces)

    faces = orient_outward(vertices, faces)
    vertices.flags.writeable = False
    faces.flags.writeable = False
    return vertices, faces


def sphere_edges(faces):
    edges = np.concatenate([faces[:, [0, 1]], faces[:, [1, 2]], faces[:, [2, 0]]])
    return np.unique(np.sort(edges, axis=1), axis=0)


def sphere_simplices(depth):
    """Vertices and the simplices of every dimension of an icosphere

    Examples:
        >>> _, simplices = sphere_simplices(0)
        >>> [len(s) for s in simplices]
        [12, 30, 20]
    """
    vertices, faces = icosphere(depth)
    points = np.arange(len(vertices)).reshape(-1, 1)
    return vertices, [points, sphere_edges(faces), np.sort(faces, axis=1)]


def unique_faces(tops, size):
    """All faces with `size` vertices of a list of top simplices"""
    columns = it.combinations(range(tops.shape[1]), size)
    faces = np.concatenate([tops[:, list(cols)] for cols in columns])
    return np.unique(np.sort(faces, axis=1), axis=0)


@functools.lru_cache(maxsize=None)
def kuhn_grid(arity, resolution):
    """Kuhn triangulation of the grid with `resolution` cells per side on [-1, 1]^n

    Every cube is cut into n! simplices along the monotone lattice paths from
    its lowest to its highest corner; neighbouring cubes share faces.

    Returns:
        (Tuple[np.ndarray, List[np.ndarray]]): Vertex coordinates and, for
            each dimension, the simplices as sorted vertex index rows.

    Examples:
        >>> points, simplices = kuhn_grid(2, 1)
        >>> [len(s) for s in simplices]
        [4, 5, 2]
        >>> points, simplices = kuhn_grid(3, 1)
        >>> len(simplices[3])
        6
    """
    shape = (resolution + 1,) * arity
    corners = np.array(list(it.product(range(resolution), repeat=arity)), dtype=int)
    tops = []

    for permutation in it.permutations(range(arity)):
        current = corners.copy()
        path = [np.ravel_multi_index(current.T, shape)]

        for axis in permutation:
            current = current.copy()
            current[:, axis] += 1
            path.append(np.ravel_multi_index(current.T, shape))

        tops.append(np.stack(path, axis=1))

    tops = np.concatenate(tops)
    axis_points = np.linspace(-1.0, 1.0, resolution + 1)
    points = np.array(list(it.product(axis_points, repeat=arity)))
    simplices = [unique_faces(tops, size) for size in range(1, arity + 2)]
    return points, simplices


def restrict(simplices, keep):
    """Keep the simplices all of whose vertices are marked in `keep`"""
    return [s[keep[s].all(axis=1)] for s in simplices]


def project_radially(point):
    return point / np.linalg.norm(point)


class SimplicialMesh:
    """A conforming simplicial mesh refined by bisecting edges

    Bisecting an edge splits every top simplex containing it in two, so
    neighbouring simplices keep sharing whole faces in any dimension.

    Attributes:
        points (List[np.ndarray]): Vertex coordinates, in creation order.
        tops (dict): Top simplices (sorted vertex tuples) by key.
        project (Callable): Applied to new midpoints (`project_radially`
            keeps sphere meshes on the sphere).

    Examples:
        >>> points, simplices = kuhn_grid(2, 1)
        >>> mesh = SimplicialMesh(points, simplices[-1])
        >>> keys, _ = mesh.skeleton()
        >>> mesh.refine(keys)
        4
        >>> [len(s) for s in mesh.skeleton()[1]]
        [5, 8, 4]
    """

    def __init__(self, points, tops, project=None):
        self.points = [np.asarray(point, dtype=float) for point in points]
        self.tops = {}
        self.around = {}
        self.project = project
        self.created = 0

        for top in tops:
            self._add(tuple(sorted(int(v) for v in top)))

    def __len__(self):
        return len(self.tops)

    def _add(self, top):
        key = self.created
        self.created += 1
        self.tops[key] = top

        for edge in it.combinations(top, 2):
            self.around.setdefault(edge, set()).add(key)

    def _remove(self, key):
        top = self.tops.pop(key)

        for edge in it.combinations(top, 2):
            keys = self.around[edge]
            keys.discard(key)

            if not keys:
                del self.around[edge]

    def coordinates(self, start=0):
        return np.array(self.points[start:], dtype=float).reshape(-1, len(self.points[0]))

    def longest_edge(self, key):
        def length(edge):
            a, b = edge
            return float(np.sum((self.points[a] - self.points[b]) ** 2)), edge

        return max(it.combinations(self.tops[key], 2), key=length)

    def bisect(self, edge):
        """Split every top simplex around an edge at its midpoint"""
        a, b = edge
        middle = (self.points[a] + self.points[b]) / 2
        self.points.append(self.project(middle) if self.project else middle)
        m = len(self.points) - 1

        for key in sorted(self.around.get(edge, ())):
            top = self.tops[key]
            self._remove(key)

            for old in (a, b):
                self._add(tuple(sorted(m if v == old else v for v in top)))

        return m

    def refine(self, keys):
        """Bisect the longest edge of each listed simplex still in the mesh

        Returns:
            (int): Index of the first new vertex.
        """
        first = len(self.points)

        for key in keys:
            if key in self.tops:
                self.bisect(self.longest_edge(key))

        return first

    def skeleton(self):
        """Keys of the top simplices and the simplices of every dimension

        Returns:
            (Tuple[list, List[np.ndarray]]): The keys, in the row order of
                the last array, and sorted vertex index rows per dimension.
        """
        keys = list(self.tops)
        tops = np.array([self.tops[key] for key in keys], dtype=int)
        lower = [unique_faces(tops, size) for size in range(1, tops.shape[1])]
        return keys, lower + [tops]
