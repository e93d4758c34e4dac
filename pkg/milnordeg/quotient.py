#!/usr/bin/env python
# vim: sw=4:ts=4:expandtab

"""
milnordeg.quotient
~~~~~~~~~~~~~~~~~~

Provides reduced Groebner bases over the rationals and the finite dimensional
quotient algebra toolkit (standard monomials, multiplication matrices and the
nilpotency test)

Matrices are numpy object arrays holding exact `QQ` entries. Column `j` of a
multiplication matrix holds the coordinates of `p * basis[j]`.

Examples:
    basic usage::

        >>> from milnordeg.poly import parse_map
        >>> gb = groebner_basis(IdealRecord(parse_map("x^2 - 1", ["x"])))
        >>> algebra = quotient_basis(gb)
        >>> algebra.dimension
        2
        >>> origin_is_only_zero(algebra)
        False
"""

import itertools as it
import logging
from dataclasses import dataclass, field

import numpy as np
from sympy.polys.domains import QQ
from sympy.polys.groebnertools import spoly
from sympy.polys.matrices import DomainMatrix
from sympy.polys.monomials import (
    monomial_deg,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)

from . import NotZeroDimensional, ResourceLimitExceeded
from .poly import (
    PolyMap,
    coerce,
    format_polynomial,
    make_ring,
    total_degree,
    variable_names,
)
from .utils import term_budget

logger = logging.getLogger(__name__)

WORK_PER_TERM = 50


@dataclass(frozen=True)
class IdealRecord:
    generators: PolyMap
    order: str = "grevlex"

    def __post_init__(self):
        object.__setattr__(self, "generators", PolyMap(self.generators))


@dataclass(frozen=True)
class Budget:
    """Caps on a Groebner basis run

    Attributes:
        terms (int): Largest total number of terms over the basis, and over
            a remainder while it is reduced.
        basis (int): Largest number of basis elements.
        degree (int): Largest total degree of a basis element.
        pairs (int): Largest number of critical pairs taken from the queue.
        work (int): Largest number of term operations spent reducing
            (default: `WORK_PER_TERM` times `terms`).

    Examples:
        >>> Budget(terms=100).work
        5000
    """

    terms: int = field(default_factory=term_budget)
    basis: int = 2000
    degree: int = 400
    pairs: int = 20000
    work: int = None

    def __post_init__(self):
        if self.work is None:
            object.__setattr__(self, "work", WORK_PER_TERM * self.terms)


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced, monic Groebner basis sorted by decreasing leading monomial"""

    elements: tuple
    order: str
    ring: object

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    @property
    def leading_monomials(self):
        return [g.LM for g in self.elements]

    @property
    def is_unit(self):
        return any(not any(lm) for lm in self.leading_monomials)


@dataclass(frozen=True)
class QuotientAlgebra:
    gb: GroebnerBasis
    basis: tuple
    mult_matrices: tuple

    @property
    def dimension(self):
        return len(self.basis)

    @property
    def ring(self):
        return self.gb.ring

    @property
    def index(self):
        return {monom: j for j, monom in enumerate(self.basis)}


class _Run:
    """A single Buchberger run with the sugar selection strategy"""

    def __init__(self, ring, budget):
        self.ring = ring
        self.budget = budget
        self.basis = []
        self.sugars = []
        self.pairs = set()
        self.taken = 0
        self.work = 0

    def fail(self, msg):
        raise ResourceLimitExceeded(msg, basis_size=len(self.basis))

    def check_budget(self, h):
        terms = sum(map(len, self.basis))

        if terms > self.budget.terms:
            self.fail(f"term budget {self.budget.terms} exceeded")
        elif len(self.basis) > self.budget.basis:
            self.fail(f"basis budget {self.budget.basis} exceeded")
        elif total_degree(h) > self.budget.degree:
            self.fail(f"degree budget {self.budget.degree} exceeded")

    def spend(self, amount, remainder, rest):
        self.work += amount

        if len(remainder) + len(rest) > self.budget.terms:
            self.fail(f"term budget {self.budget.terms} exceeded while reducing")
        elif self.work > self.budget.work:
            self.fail(f"work budget {self.budget.work} exceeded while reducing")

    def reduce(self, f):
        """Remainder of `f` on division by the current basis, within budget"""
        remainder, rest = self.ring.zero, f.copy()
        self.spend(0, remainder, rest)

        while rest:
            monom = rest.leading_expv()
            coeff = rest[monom]
            divisor = next((g for g in self.basis if monomial_divides(g.LM, monom)), None)

            if divisor is None:
                remainder[monom] = coeff
                del rest[monom]
                self.spend(1, remainder, rest)
                continue

            shift = monomial_div(monom, divisor.LM)
            factor = coeff / divisor.LC

            for term, value in divisor.iterterms():
                target = monomial_mul(term, shift)
                updated = rest.get(target, QQ(0)) - factor * value

                if updated:
                    rest[target] = updated
                else:
                    del rest[target]

            self.spend(len(divisor), remainder, rest)

        return remainder

    def add(self, h, sugar):
        self.basis.append(h.monic())
        self.sugars.append(sugar)
        new = len(self.basis) - 1
        self.pairs.update((i, new) for i in range(new))
        self.check_budget(h)

    def lcm(self, pair):
        i, j = pair
        return monomial_lcm(self.basis[i].LM, self.basis[j].LM)

    def sugar(self, pair):
        degree = monomial_deg(self.lcm(pair))
        return max(self.sugars[k] + degree - monomial_deg(self.basis[k].LM) for k in pair)

    def selection_key(self, pair):
        return self.sugar(pair), self.ring.order(self.lcm(pair)), pair

    def is_pending(self, i, k):
        return (min(i, k), max(i, k)) in self.pairs

    def is_useless(self, pair):
        i, j = pair
        first, second = self.basis[i].LM, self.basis[j].LM
        lcm = self.lcm(pair)

        # coprime leading monomials
        if monomial_mul(first, second) == lcm:
            return True

        # chain criterion
        for k, g in enumerate(self.basis):
            if k in pair or not monomial_divides(g.LM, lcm):
                continue
            elif not (self.is_pending(i, k) or self.is_pending(j, k)):
                return True

        return False

    def run(self, generators):
        for g in generators:
            h = self.reduce(g)

            if h:
                self.add(h, total_degree(g))

        while self.pairs:
            pair = min(self.pairs, key=self.selection_key)
            self.pairs.remove(pair)
            self.taken += 1

            if self.taken > self.budget.pairs:
                self.fail(f"pair budget {self.budget.pairs} exceeded")

            if self.is_useless(pair):
                continue

            i, j = pair
            h = self.reduce(spoly(self.basis[i], self.basis[j], self.ring))

            if h:
                self.add(h, self.sugar(pair))

        return self.basis


def _reduce(basis, ring):
    minimal = []

    for idx, g in enumerate(basis):
        divisors = (
            other
            for pos, other in enumerate(basis)
            if pos != idx and monomial_divides(other.LM, g.LM)
            and (other.LM != g.LM or pos < idx)
        )

        if not any(True for _ in divisors):
            minimal.append(g)

    reduced = []

    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        reduced.append((g.rem(others) if others else g).monic())

    return sorted(reduced, key=lambda g: ring.order(g.LM), reverse=True)


def groebner_basis(ideal, budget=None):
    """The reduced Groebner basis of an ideal

    Args:
        ideal (IdealRecord): Generators and monomial order.
        budget (Budget): Resource caps (default: `Budget()`).

    Returns:
        (GroebnerBasis): The reduced basis, in the order's ring.

    Raises:
        ResourceLimitExceeded: The run outgrew the budget.

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> gb = groebner_basis(IdealRecord(parse_map("2*x, -2*y", ["x", "y"])))
        >>> [format_polynomial(g) for g in gb]
        ['x', 'y']
        >>> gb = groebner_basis(IdealRecord(parse_map("x^2 - 1", ["x"])))
        >>> [format_polynomial(g) for g in gb]
        ['x^2 - 1']
    """
    budget = budget or Budget()
    source = ideal.generators
    ring = make_ring(variable_names(source.ring), ideal.order)
    generators = sorted(
        (coerce(g, ring) for g in source if g),
        key=lambda g: (ring.order(g.LM), len(g)),
    )
    basis = _Run(ring, budget).run(generators)
    elements = tuple(_reduce(basis, ring))
    logger.debug("groebner basis of %d elements for %d generators", len(elements), len(source))
    return GroebnerBasis(elements, ideal.order, ring)


def satisfies_buchberger(gb):
    """Whether every S-polynomial of the basis reduces to zero"""
    elements = list(gb)
    return not any(
        spoly(f, g, gb.ring).rem(elements) for f, g in it.combinations(elements, 2)
    )


def normal_form(p, gb):
    """Remainder of `p` on division by a Groebner basis

    Examples:
        >>> from milnordeg.poly import parse_map, parse_polynomial
        >>> gb = groebner_basis(IdealRecord(parse_map("x^2 - 1", ["x"])))
        >>> format_polynomial(normal_form(parse_polynomial("x^3", ["x"]), gb))
        'x'
    """
    p = coerce(p, gb.ring)
    return p.rem(list(gb.elements)) if gb.elements else p


def _monomial(ring, monom):
    return ring.from_dict({monom: QQ(1)})


def coordinates(algebra, p):
    """Coordinates of the normal form of `p` on the quotient basis"""
    index = algebra.index
    vector = np.full(algebra.dimension, QQ(0), dtype=object)

    for monom, coeff in normal_form(p, algebra.gb).iterterms():
        vector[index[monom]] = coeff

    return vector


def _matrix_of(algebra, products):
    columns = [coordinates(algebra, p) for p in products]
    size = algebra.dimension
    matrix = np.column_stack(columns) if columns else np.empty((0, 0), dtype=object)
    matrix = matrix.reshape(size, size)
    matrix.flags.writeable = False
    return matrix


def quotient_basis(gb):
    """Standard monomials and multiplication matrices of a zero dimensional ideal

    The unit ideal yields the zero algebra (dimension 0).

    Args:
        gb (GroebnerBasis): A reduced Groebner basis.

    Returns:
        (Union[QuotientAlgebra, NotZeroDimensional]): The algebra, or the marker
            naming a variable without a pure power among the leading monomials.

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> gb = groebner_basis(IdealRecord(parse_map("x^2 - 1", ["x"])))
        >>> quotient_basis(gb).mult_matrices[0].tolist() == [[0, 1], [1, 0]]
        True
        >>> gb = groebner_basis(IdealRecord(parse_map("x*y", ["x", "y"])))
        >>> quotient_basis(gb).variable
        'x'
    """
    ring = gb.ring
    names = variable_names(ring)
    lms = gb.leading_monomials

    if gb.is_unit:
        empty = tuple(np.empty((0, 0), dtype=object) for _ in names)
        return QuotientAlgebra(gb, (), empty)

    bounds = []

    for i, name in enumerate(names):
        pure = [lm[i] for lm in lms if lm[i] and sum(lm) == lm[i]]

        if not pure:
            return NotZeroDimensional(name)

        bounds.append(min(pure))

    candidates = it.product(*(range(bound) for bound in bounds))
    basis = [m for m in candidates if not any(monomial_divides(lm, m) for lm in lms)]
    basis = tuple(sorted(basis, key=ring.order))
    algebra = QuotientAlgebra(gb, basis, ())
    matrices = tuple(
        _matrix_of(algebra, [_monomial(ring, monomial_mul(b, unit)) for b in basis])
        for unit in _units(len(names))
    )
    algebra = QuotientAlgebra(gb, basis, matrices)
    assert all(np.array_equal(a @ b, b @ a) for a, b in it.combinations(matrices, 2))
    logger.debug("quotient algebra of dimension %d", algebra.dimension)
    return algebra


def _units(n):
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def multiplication_matrix(algebra, p):
    """Matrix of multiplication by `p` on the quotient basis

    Examples:
        >>> from milnordeg.poly import parse_map, parse_polynomial
        >>> gb = groebner_basis(IdealRecord(parse_map("x^2", ["x"])))
        >>> x = parse_polynomial("x", ["x"])
        >>> multiplication_matrix(quotient_basis(gb), x).tolist() == [[0, 0], [1, 0]]
        True
    """
    p = coerce(p, algebra.ring)
    return _matrix_of(algebra, [p.mul_monom(b) for b in algebra.basis])


def trace(matrix):
    return sum(matrix.diagonal(), QQ(0))


def origin_is_only_zero(algebra):
    """Whether the origin is the only complex zero of the ideal

    Every variable must act nilpotently: `x_i ** d` vanishes in the algebra
    for `d` its dimension.

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> F = parse_map("x^2, x*y, y^2", ["x", "y"])
        >>> algebra = quotient_basis(groebner_basis(IdealRecord(F)))
        >>> algebra.dimension, origin_is_only_zero(algebra)
        (3, True)
    """
    if not algebra.dimension:
        return False

    one = np.full(algebra.dimension, QQ(0), dtype=object)
    one[algebra.index[(0,) * algebra.ring.ngens]] = QQ(1)

    for matrix in algebra.mult_matrices:
        vector = one

        for _ in range(algebra.dimension):
            vector = matrix @ vector

        if any(vector):
            return False

    return True


def domain_matrix(matrix):
    """An exact numpy matrix as a `DomainMatrix` over QQ"""
    rows = [[QQ.convert(v) for v in row] for row in matrix]
    return DomainMatrix(rows, (len(rows), len(rows[0]) if rows else 0), QQ)


def local_component(algebra):
    """Basis of the summand of the algebra supported at the origin

    These are the elements killed by a high power of every variable, one
    basis vector per row.

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> F = parse_map("x^2 - x, y", ["x", "y"])
        >>> local_component(quotient_basis(groebner_basis(IdealRecord(F)))).shape
        (1, 2)
    """
    size = algebra.dimension

    if not size:
        return np.empty((0, 0), dtype=object)

    powers = [domain_matrix(m).pow(size) for m in algebra.mult_matrices]
    kernel = powers[0].vstack(*powers[1:]).nullspace().to_list()
    return np.array(kernel, dtype=object).reshape(len(kernel), size)


def local_multiplicity(algebra):
    """Dimension of the local algebra at the origin

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> F = parse_map("x^3 - x^2, y^2 - y", ["x", "y"])
        >>> local_multiplicity(quotient_basis(groebner_basis(IdealRecord(F))))
        2
    """
    return len(local_component(algebra))
