#!/usr/bin/env python
# vim: sw=4:ts=4:expandtab

"""
milnordeg.signature
~~~~~~~~~~~~~~~~~~~

Provides mapping degrees as signatures of exact bilinear forms on quotient
algebras: the local degree at an isolated zero, and the degree at infinity
of a polynomial self map with finitely many complex zeros

Examples:
    basic usage::

        >>> from milnordeg.poly import parse_map
        >>> local_degree_elk(parse_map("2*x, -2*y", ["x", "y"])).degree
        -1
"""

import logging
import random
from dataclasses import dataclass

import numpy as np
from sympy.polys.domains import QQ

from . import (
    BEZOUTIAN_SIGNATURE,
    INFINITY_SIGNATURE,
    LOCAL_SIGNATURE,
    ArityError,
    DegenerateFunctional,
    MilnorError,
    NotZeroDimensional,
    OriginNotIsolated,
)
from .degree_oracle import oracle_degree_at_infinity
from .poly import (
    PolyMap,
    RationalFunctionMap,
    determinant,
    embed,
    evaluate,
    jacobian_determinant,
    make_ring,
    variable_names,
)
from .quotient import (
    IdealRecord,
    coordinates,
    domain_matrix,
    groebner_basis,
    local_component,
    multiplication_matrix,
    origin_is_only_zero,
    quotient_basis,
    trace,
)
from .report import DegreeResult

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SignatureTriple:
    positive: int
    negative: int
    zero: int

    @property
    def signature(self):
        return self.positive - self.negative

    @property
    def dimension(self):
        return self.positive + self.negative + self.zero


@dataclass(frozen=True)
class BilinearFormRecord:
    basis: tuple
    matrix: object
    functional_tag: str = ""


def _exact(rows):
    return np.array([[QQ.convert(v) for v in row] for row in rows], dtype=object).reshape(
        len(rows), len(rows)
    )


def signature_of_form(form):
    """Inertia of a symmetric rational form by congruence diagonalization

    A nonzero diagonal entry is used as a pivot. When the remaining diagonal
    is zero, a nonzero off diagonal entry splits off a hyperbolic plane,
    counted as one positive and one negative square.

    Args:
        form (BilinearFormRecord): The form.

    Returns:
        (SignatureTriple): Positive, negative and zero counts.

    Examples:
        >>> form = BilinearFormRecord((), _exact([[0, 1], [1, 0]]))
        >>> signature_of_form(form)
        SignatureTriple(positive=1, negative=1, zero=0)
        >>> form = BilinearFormRecord((), _exact([[1, 0, 0], [0, -1, 0], [0, 0, 0]]))
        >>> signature_of_form(form)
        SignatureTriple(positive=1, negative=1, zero=1)
    """
    matrix = np.array(form.matrix, dtype=object)

    if not np.array_equal(matrix, matrix.T):
        raise ValueError("bilinear form matrix is not symmetric")

    positive = negative = zero = 0

    while matrix.shape[0]:
        size = matrix.shape[0]
        diagonal = [i for i in range(size) if matrix[i, i]]

        if diagonal:
            pivot = diagonal[0]
            value = matrix[pivot, pivot]

            if value > 0:
                positive += 1
            else:
                negative += 1

            rest = [i for i in range(size) if i != pivot]
            column = matrix[rest, pivot]
            matrix = matrix[np.ix_(rest, rest)] - np.outer(column, column) / value
            continue

        pairs = [(i, j) for i in range(size) for j in range(i + 1, size) if matrix[i, j]]

        if not pairs:
            zero += size
            break

        i, j = pairs[0]
        value = matrix[i, j]
        positive += 1
        negative += 1
        rest = [k for k in range(size) if k not in (i, j)]
        block = matrix[np.ix_(rest, [i, j])]
        matrix = matrix[np.ix_(rest, rest)] - (block[:, [1, 0]] @ block.T) / value

    return SignatureTriple(positive, negative, zero)


def _parents(algebra):
    """Yield each standard monomial with a (variable, parent) factorization"""
    for monom in algebra.basis:
        if not any(monom):
            yield monom, None, None
        else:
            k = next(i for i, exp in enumerate(monom) if exp)
            yield monom, k, monom[:k] + (monom[k] - 1,) + monom[k + 1 :]


def functional_form(algebra, functional, tag=""):
    """The form `(a, b) -> functional(a * b)` on the quotient basis

    Row `i` is `functional @ M(b_i)`, built from the row of a divisor of
    `b_i` times one multiplication matrix.

    Args:
        algebra (QuotientAlgebra): The algebra.
        functional (Sequence[QQ]): Values of the functional on the basis.
        tag (str): Description of the functional.

    Returns:
        (BilinearFormRecord): The symmetric form.
    """
    rows = {}

    for monom, k, parent in _parents(algebra):
        if parent is None:
            rows[monom] = np.array(list(functional), dtype=object)
        else:
            rows[monom] = rows[parent] @ algebra.mult_matrices[k]

    size = algebra.dimension
    matrix = np.vstack([rows[m] for m in algebra.basis]).reshape(size, size)
    return BilinearFormRecord(algebra.basis, matrix, tag)


def _square(pmap):
    pmap = PolyMap(pmap)

    if len(pmap) != pmap.arity:
        raise ArityError(f"a {len(pmap)} component map on {pmap.arity} variables is not square")

    return pmap


def local_algebra(grad_map, budget=None, localize=False):
    """The quotient algebra of a map vanishing at the origin, and its Jacobian class

    Returns:
        (Tuple[QuotientAlgebra, np.ndarray]): The algebra and the coordinates
            of the Jacobian determinant.

    Raises:
        NotZeroDimensional: Infinitely many complex zeros.
        OriginNotIsolated: Complex zeros away from the origin, unless
            `localize` is set.
    """
    F = _square(grad_map)
    algebra = quotient_basis(groebner_basis(IdealRecord(F), budget))

    if isinstance(algebra, NotZeroDimensional):
        raise algebra
    elif not (localize or origin_is_only_zero(algebra)):
        raise OriginNotIsolated("the map has complex zeros other than the origin")

    return algebra, coordinates(algebra, jacobian_determinant(F))


def _vanishes_at_origin(F):
    return all(not evaluate(f, [0] * F.arity) for f in F)


SEPARATING_WEIGHTS = (lambda i: i + 1, lambda i: 3**i, lambda i: 5**i)


def _complement(algebra, nullity):
    """Image of a high power of a linear form vanishing only at the origin"""
    size = algebra.dimension

    for weights in SEPARATING_WEIGHTS:
        combination = sum(
            (m * weights(i) for i, m in enumerate(algebra.mult_matrices)),
            np.full((size, size), QQ(0), dtype=object),
        )
        power = domain_matrix(combination).pow(size)

        if power.rank() == size - nullity:
            return power.columnspace()

    raise DegenerateFunctional("no linear form separates the origin from the other zeros")


def localized_form(algebra, jacobian):
    """The form `(a, b) -> <J0, a * b>` on the local summand at the origin

    `J0` is the Jacobian class projected onto the local summand along the
    summand of the remaining zeros.

    Raises:
        DegenerateFunctional: The projected Jacobian class vanishes.
    """
    local = local_component(algebra)
    size, nullity = algebra.dimension, len(local)
    columns = domain_matrix(local.T) if nullity else None
    complement = _complement(algebra, nullity)
    frame = columns.hstack(complement) if nullity < size else columns
    rhs = domain_matrix(jacobian.reshape(size, 1))
    weights = np.array(frame.lu_solve(rhs).to_list(), dtype=object).reshape(size)
    projected = local.T @ weights[:nullity]

    if not any(projected):
        raise DegenerateFunctional("the Jacobian class vanishes on the local summand")

    matrices = monomial_matrices(algebra)
    blank = np.full((size, size), QQ(0), dtype=object)
    products = [
        sum((matrices[m] * u[j] for j, m in enumerate(algebra.basis)), blank) for u in local
    ]
    matrix = np.array(
        [[projected.dot(product @ v) for v in local] for product in products], dtype=object
    ).reshape(nullity, nullity)
    return BilinearFormRecord(tuple(range(nullity)), matrix, "local summand")


def local_degree_elk(grad_map, budget=None, localize=False):
    """Local degree at the origin as the signature of a functional form

    The functional is dual to the Jacobian class `c`: `phi(v) = <c, v> / <c, c>`,
    so `phi(J) = 1`. With `localize`, other complex zeros are allowed and the
    form is restricted to the summand of the algebra supported at the origin.

    Args:
        grad_map (PolyMap): A square map.
        budget (Budget): Groebner basis caps.
        localize (bool): Split off the zeros away from the origin.

    Returns:
        (DegreeResult): The degree, annotated with the local algebra dimension.

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> local_degree_elk(parse_map("2*x, 2*y", ["x", "y"])).degree
        1
        >>> F = parse_map("3*x^2 - 3*y^2, -6*x*y", ["x", "y"])
        >>> result = local_degree_elk(F)
        >>> result.degree, result.dimension
        (-2, 4)
        >>> F = parse_map("x^3 - x, y", ["x", "y"])
        >>> result = local_degree_elk(F, localize=True)
        >>> result.degree, result.dimension
        (-1, 1)
    """
    F = _square(grad_map)

    if not _vanishes_at_origin(F):
        return DegreeResult(0, LOCAL_SIGNATURE, diagnostics=["the map does not vanish at the origin"])

    algebra, jacobian = local_algebra(F, budget, localize)

    if localize and not origin_is_only_zero(algebra):
        form = localized_form(algebra, jacobian)
        dimension = len(form.basis)
    else:
        norm = jacobian.dot(jacobian)

        if not norm:
            raise DegenerateFunctional("the Jacobian class vanishes in the local algebra")

        form = functional_form(algebra, jacobian / norm, "dual to the Jacobian class")
        dimension = algebra.dimension

    triple = signature_of_form(form)
    logger.debug("local signature %s on a local algebra of dimension %d", triple, dimension)
    return DegreeResult(triple.signature, LOCAL_SIGNATURE, dimension=dimension)


def functional_signatures(grad_map, count=5, seed=0, budget=None):
    """Signatures of forms built from random admissible functionals

    Functionals are random small integer vectors, kept when positive on the
    Jacobian class. All signatures must agree with the local degree.

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> functional_signatures(parse_map("2*x, -2*y", ["x", "y"]))
        [-1, -1, -1, -1, -1]
    """
    F = _square(grad_map)
    algebra, jacobian = local_algebra(F, budget)
    generator = random.Random(seed)
    signatures = []

    while len(signatures) < count:
        functional = np.array(
            [QQ(generator.randint(-9, 9)) for _ in algebra.basis], dtype=object
        )

        if functional.dot(jacobian) > 0:
            form = functional_form(algebra, functional, "random admissible")
            signatures.append(signature_of_form(form).signature)

    return signatures


def _is_invertible(matrix):
    return bool(domain_matrix(matrix).det())


def monomial_matrices(algebra):
    """Multiplication matrix of every standard monomial, built along divisor chains"""
    size = algebra.dimension
    matrices = {}

    for monom, k, parent in _parents(algebra):
        if parent is None:
            matrix = np.full((size, size), QQ(0), dtype=object)
            np.fill_diagonal(matrix, QQ(1))
        else:
            matrix = matrices[parent] @ algebra.mult_matrices[k]

        matrices[monom] = matrix

    return matrices


def _trace_functional(algebra):
    matrices = monomial_matrices(algebra)
    return np.array([trace(matrices[m]) for m in algebra.basis], dtype=object)


def bezoutian_form(algebra, pmap):
    """The Bezoutian of a square map, reduced on both sides to the quotient basis

    Its signature counts every real zero with its local degree, degenerate
    zeros included.

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> from milnordeg.quotient import IdealRecord, groebner_basis, quotient_basis
        >>> F = parse_map("x^3", ["x"])
        >>> algebra = quotient_basis(groebner_basis(IdealRecord(F)))
        >>> signature_of_form(bezoutian_form(algebra, F)).signature
        1
    """
    F = _square(pmap)
    n = F.arity
    names = variable_names(F.ring)
    big = make_ring(names + [f"{name}_dual" for name in names])
    entries = []

    for f in F:
        row = []

        for j in range(n):
            before = [n + i if i < j else i for i in range(n)]
            after = [n + i if i <= j else i for i in range(n)]
            difference = embed(f, big, before) - embed(f, big, after)
            row.append(difference.exquo(big.gens[j] - big.gens[n + j]))

        entries.append(row)

    theta = determinant(entries)
    size = algebra.dimension
    cache = {}

    def coords(monom):
        if monom not in cache:
            cache[monom] = coordinates(algebra, algebra.ring.from_dict({monom: QQ(1)}))

        return cache[monom]

    matrix = np.full((size, size), QQ(0), dtype=object)

    for monom, coeff in theta.iterterms():
        matrix += np.outer(coords(monom[:n]), coords(monom[n:])) * coeff

    return BilinearFormRecord(algebra.basis, (matrix + matrix.T) / 2, "bezoutian")


def degree_at_infinity_elk(pmap, budget=None, cross_check=True):
    """Degree on a large sphere of a map with finitely many complex zeros

    When every zero is simple (the Jacobian class is a unit of the algebra) the
    degree is the signature of the twisted trace form `Tr(M(J a b))`;
    otherwise the Bezoutian form is used. Maps of arity at most 3 are also
    checked by the numerical oracle.

    Args:
        pmap (PolyMap): A square map.
        budget (Budget): Groebner basis caps.
        cross_check (bool): Run the oracle when the arity allows it.

    Returns:
        (DegreeResult): The degree.

    Raises:
        NotZeroDimensional: Infinitely many complex zeros.

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> degree_at_infinity_elk(parse_map("x, y", ["x", "y"]), cross_check=False).degree
        1
        >>> result = degree_at_infinity_elk(parse_map("x^2, y", ["x", "y"]), cross_check=False)
        >>> result.degree, result.method
        (0, 'bezoutian_signature')
    """
    F = _square(pmap)
    algebra = quotient_basis(groebner_basis(IdealRecord(F), budget))

    if isinstance(algebra, NotZeroDimensional):
        raise algebra

    if not algebra.dimension:
        result = DegreeResult(0, INFINITY_SIGNATURE, diagnostics=["no complex zeros"], dimension=0)
    else:
        jacobian = multiplication_matrix(algebra, jacobian_determinant(F))

        if _is_invertible(jacobian):
            functional = _trace_functional(algebra) @ jacobian
            form = functional_form(algebra, functional, "twisted trace")
            method = INFINITY_SIGNATURE
        else:
            form = bezoutian_form(algebra, F)
            method = BEZOUTIAN_SIGNATURE

        degree = signature_of_form(form).signature
        result = DegreeResult(degree, method, dimension=algebra.dimension)

    logger.debug("degree at infinity %d by %s", result.degree, result.method)

    if cross_check and F.arity <= 3:
        try:
            result.check_with(oracle_degree_at_infinity(F))
        except MilnorError as err:
            result.diagnostics.append(f"oracle unavailable: {err}")

    return result


def positive_rescale_reduction(rmap):
    """Clear the positive omega denominators of a rational function map

    Multiplying each component by its own (positive) denominator does not
    change the degree on any sphere where the map does not vanish.

    Examples:
        >>> from milnordeg.poly import format_map, parse_map
        >>> rmap = RationalFunctionMap(parse_map("-x, -y", ["x", "y"]), (2, 2))
        >>> format_map(positive_rescale_reduction(rmap))
        '-x, -y'
    """
    if isinstance(rmap, PolyMap):
        return rmap

    return rmap.numerators
