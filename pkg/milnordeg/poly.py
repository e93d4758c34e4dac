#!/usr/bin/env python
# vim: sw=4:ts=4:expandtab

"""
milnordeg.poly
~~~~~~~~~~~~~~

Provides exact sparse polynomials over the rationals, the expression parser
and the auxiliary polynomials (rho, omega, sums of squares, Jacobian minors)
used throughout the package

Polynomials are `sympy.polys.rings.PolyElement` instances of a ring over `QQ`
whose generators are the declared variables, in order. Variables are
positional: names only matter for parsing and printing.

Examples:
    basic usage::

        >>> ring = make_ring(["x", "y"])
        >>> f = parse_polynomial("x + x^2*y", ["x", "y"])
        >>> format_polynomial(f)
        'x^2*y + x'
        >>> evaluate(f, [1, 1]) == 2
        True

Attributes:
    ORDERS (dict): Supported monomial orders by tag.
"""

import functools
import itertools as it
import re
from dataclasses import dataclass

import numpy as np
from sympy import Symbol
from sympy.polys.domains import QQ
from sympy.polys.orderings import grevlex, lex
from sympy.polys.rings import PolyRing

from . import ArityError, IndexRangeError, ParseError, UnknownIdentifier
from .utils import format_rational, to_float, to_rational

ORDERS = {"grevlex": grevlex, "lex": lex}

TOKENS = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>\S))")


@functools.lru_cache(maxsize=None)
def _make_ring(names, order):
    return PolyRing(tuple(Symbol(name) for name in names), QQ, ORDERS[order])


def make_ring(names, order="grevlex"):
    """The polynomial ring over QQ with the given variables

    Args:
        names (Sequence[str]): The variable names, in order.
        order (str): Monomial order tag, `grevlex` or `lex`.

    Returns:
        (PolyRing): The (cached) ring.

    Examples:
        >>> make_ring(["x", "y"]) is make_ring(("x", "y"))
        True
        >>> make_ring(["x", "y"]).ngens
        2
    """
    return _make_ring(tuple(names), order)


def variable_names(ring):
    return [str(symbol) for symbol in ring.symbols]


@dataclass(frozen=True)
class PolyMap:
    """A polynomial map given by its components, all in one ring

    Examples:
        >>> F = parse_map("x, -y", ["x", "y"])
        >>> F.arity, len(F)
        (2, 2)
        >>> format_map(F)
        'x, -y'
    """

    components: tuple

    def __post_init__(self):
        components = tuple(self.components)
        object.__setattr__(self, "components", components)

        if not components:
            raise ArityError("a polynomial map needs at least one component")

        rings = {p.ring for p in components}

        if len(rings) > 1:
            raise ArityError("map components live in different rings")

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __getitem__(self, index):
        return self.components[index]

    @property
    def ring(self):
        return self.components[0].ring

    @property
    def arity(self):
        return self.ring.ngens


@dataclass(frozen=True)
class RationalFunctionMap:
    """A map whose i-th component is `numerators[i] / omega ** powers[i]`

    Since omega >= 1 everywhere, every denominator is positive on R^n. The
    first `offset` variables (the multiplier of an augmented map) do not
    enter omega.
    """

    numerators: PolyMap
    powers: tuple
    offset: int = 0

    def __post_init__(self):
        powers = tuple(int(power) for power in self.powers)
        object.__setattr__(self, "powers", powers)

        if len(powers) != len(self.numerators):
            raise ArityError("one omega power is needed per component")

        if any(power < 0 for power in powers):
            raise ValueError("omega powers must be non-negative")

    @property
    def ring(self):
        return self.numerators.ring

    @property
    def denominators(self):
        gens = self.ring.gens[self.offset :]
        omega_ = 1 + sum((x**2 for x in gens), self.ring.zero) * QQ(1, 2)
        return tuple(omega_**power for power in self.powers)


class _Parser:
    """Recursive descent parser for the polynomial grammar"""

    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.gens = dict(zip(variable_names(ring), ring.gens))
        self.tokens = self.tokenize(text)
        self.pos = 0

    @staticmethod
    def tokenize(text):
        tokens = []

        for match in TOKENS.finditer(text):
            kind = match.lastgroup

            if kind:
                tokens.append((kind, match.group(kind), match.start(kind)))

        tokens.append(("end", "", len(text)))
        return tokens

    @property
    def current(self):
        return self.tokens[self.pos]

    def advance(self):
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def accept(self, op):
        kind, value, _ = self.current

        if kind == "op" and value == op:
            self.pos += 1
            return True

        return False

    def fail(self, message=None):
        kind, value, position = self.current
        described = "end of input" if kind == "end" else repr(value)
        raise ParseError(message or f"unexpected {described}", position)

    def parse(self):
        result = self.expr()

        if self.current[0] != "end":
            self.fail()

        return result

    def expr(self):
        negate = False

        if self.accept("-"):
            negate = True
        else:
            self.accept("+")

        result = self.term()
        result = -result if negate else result

        while True:
            if self.accept("+"):
                result += self.term()
            elif self.accept("-"):
                result -= self.term()
            else:
                return result

    def term(self):
        result = self.factor()

        while self.accept("*"):
            result *= self.factor()

        return result

    def factor(self):
        base = self.base()

        if self.accept("^"):
            kind, value, _ = self.current

            if kind != "int":
                self.fail("exponent must be a non-negative integer")

            self.advance()
            base = base ** int(value)

        return base

    def base(self):
        kind, value, position = self.current

        if kind == "int":
            self.advance()
            numerator = int(value)

            if self.accept("/"):
                kind, value, position = self.current

                if kind != "int":
                    self.fail("expected a positive integer denominator")

                self.advance()

                if not int(value):
                    raise ParseError("zero denominator", position)

                return self.ring(QQ(numerator, int(value)))

            return self.ring(numerator)
        elif kind == "ident":
            self.advance()

            try:
                return self.gens[value]
            except KeyError:
                raise UnknownIdentifier(f"unknown identifier {value!r}", position) from None
        elif self.accept("("):
            result = self.expr()

            if not self.accept(")"):
                self.fail("expected ')'")

            return result
        else:
            self.fail()


def parse_polynomial(text, variables, order="grevlex"):
    """Parse an expression into a canonical polynomial

    The grammar is `expr := ['+'|'-'] term (('+'|'-') term)*`,
    `term := factor ('*' factor)*`, `factor := base ('^' int)?`,
    `base := int ('/' int)? | ident | '(' expr ')'`.

    Args:
        text (str): The expression.
        variables (Sequence[str]): The declared variables, in order.
        order (str): Monomial order of the resulting ring.

    Returns:
        (PolyElement): The polynomial.

    Examples:
        >>> p = parse_polynomial("0*x + 3/3", ["x"])
        >>> p == 1, len(p)
        (True, 1)
        >>> parse_polynomial("x^y", ["x", "y"])
        Traceback (most recent call last):
        ...
        milnordeg.ParseError: exponent must be a non-negative integer at position 2
        >>> parse_polynomial("x + w", ["x"])
        Traceback (most recent call last):
        ...
        milnordeg.UnknownIdentifier: unknown identifier 'w' at position 4
    """
    return _Parser(text, make_ring(variables, order)).parse()


def parse_map(text, variables, order="grevlex"):
    """Parse comma separated components into a `PolyMap`

    Examples:
        >>> len(parse_map("2*x, -2*y", ["x", "y"]))
        2
    """
    ring = make_ring(variables, order)
    components = []
    offset = 0

    for chunk in text.split(","):
        try:
            components.append(_Parser(chunk, ring).parse())
        except ParseError as err:
            # report positions relative to the whole text
            message = str(err).rsplit(" at position", 1)[0]
            raise type(err)(message, err.position + offset) from None

        offset += len(chunk) + 1

    return PolyMap(components)


def split_variables(text):
    """
    >>> split_variables(" x, y ,z")
    ['x', 'y', 'z']
    """
    names = [name.strip() for name in text.split(",") if name.strip()]

    if len(set(names)) != len(names):
        raise ValueError(f"repeated variable in {text!r}")

    return names


def _format_monomial(monom, names):
    factors = (
        name if exp == 1 else f"{name}^{exp}" for name, exp in zip(names, monom) if exp
    )
    return "*".join(factors)


def format_polynomial(p):
    """Print a polynomial in canonical form

    Terms come in descending monomial order and coefficients print as `a/b`.

    Examples:
        >>> ring = make_ring(["x", "y"])
        >>> format_polynomial(omega(ring) ** 2)
        '1/4*x^4 + 1/2*x^2*y^2 + 1/4*y^4 + x^2 + y^2 + 1'
        >>> format_polynomial(ring.zero)
        '0'
    """
    names = variable_names(p.ring)
    pieces = []

    for monom, coeff in p.terms():
        mono = _format_monomial(monom, names)
        magnitude = -coeff if coeff < 0 else coeff

        if mono and magnitude == 1:
            text = mono
        elif mono:
            text = f"{format_rational(magnitude)}*{mono}"
        else:
            text = format_rational(magnitude)

        if pieces:
            pieces.append(f" - {text}" if coeff < 0 else f" + {text}")
        else:
            pieces.append(f"-{text}" if coeff < 0 else text)

    return "".join(pieces) or "0"


def format_map(pmap):
    return ", ".join(map(format_polynomial, pmap))


def coerce(p, ring):
    """Move a polynomial into a ring of the same arity (positional variables)"""
    if p.ring == ring:
        return p
    elif p.ring.ngens != ring.ngens:
        raise ArityError(f"arity {p.ring.ngens} does not match arity {ring.ngens}")

    return ring.from_dict(dict(p))


def poly_arith(lhs, rhs, kind):
    """Exact arithmetic on polynomials

    Args:
        lhs (PolyElement): Left operand.
        rhs (Union[PolyElement, int, QQ]): Right operand, an exponent for `pow`
            and a rational for `scale`.
        kind (str): One of `add`, `sub`, `mul`, `pow`, `scale`.

    Returns:
        (PolyElement): The canonical result.

    Examples:
        >>> x, y = make_ring(["x", "y"]).gens
        >>> format_polynomial(poly_arith(x + y, x - y, "mul"))
        'x^2 - y^2'
        >>> poly_arith(x + y, 0, "pow") == 1
        True
        >>> poly_arith(x, make_ring(["x"]).gens[0], "add")
        Traceback (most recent call last):
        ...
        milnordeg.ArityError: arity 1 does not match arity 2
    """
    if kind == "pow":
        if int(rhs) < 0:
            raise ValueError("exponent must be non-negative")

        return lhs ** int(rhs)
    elif kind == "scale":
        return lhs * to_rational(rhs)

    rhs = coerce(rhs, lhs.ring)

    if kind == "add":
        return lhs + rhs
    elif kind == "sub":
        return lhs - rhs
    elif kind == "mul":
        return lhs * rhs
    else:
        raise ValueError(f"unknown operation {kind!r}")


def differentiate(p, index):
    """Formal partial derivative with respect to the variable at `index`

    Examples:
        >>> f = parse_polynomial("x^3 - 3*x*y^2", ["x", "y"])
        >>> format_polynomial(differentiate(f, 0))
        '3*x^2 - 3*y^2'
        >>> differentiate(f, 2)
        Traceback (most recent call last):
        ...
        milnordeg.IndexRangeError: variable index 2 out of range for arity 2
    """
    if not 0 <= index < p.ring.ngens:
        raise IndexRangeError(f"variable index {index} out of range for arity {p.ring.ngens}")

    return p.diff(p.ring.gens[index])


def gradient(p):
    """
    >>> format_map(gradient(omega(make_ring(["x", "y", "z"]))))
    'x, y, z'
    """
    return PolyMap(differentiate(p, i) for i in range(p.ring.ngens))


def evaluate(p, point):
    """Exact value of a polynomial at a rational point

    Examples:
        >>> ring = make_ring(["x", "y"])
        >>> evaluate(rho(ring), [1, 2]) == 5
        True
        >>> evaluate(omega(ring), ["0", "0"]) == 1
        True
    """
    values = [to_rational(v) for v in point]

    if len(values) != p.ring.ngens:
        raise ArityError(f"point of length {len(values)} for arity {p.ring.ngens}")

    return p(*values)


def evaluate_map(pmap, point):
    return tuple(evaluate(p, point) for p in pmap)


def rho(ring):
    """Squared distance to the origin"""
    return sum((x**2 for x in ring.gens), ring.zero)


def omega(ring):
    """
    >>> format_polynomial(omega(make_ring(["x"])))
    '1/2*x^2 + 1'
    """
    return 1 + rho(ring) * QQ(1, 2)


def sum_of_squares(components):
    """
    >>> F = parse_map("x, y - 1", ["x", "y"])
    >>> format_polynomial(sum_of_squares(F))
    'x^2 + y^2 - 2*y + 1'
    """
    components = PolyMap(components)
    return sum((h**2 for h in components), components.ring.zero)


def build_standard(kind, arg):
    """Build rho(n), omega(n) or the sum of squares of given polynomials

    Args:
        kind (str): One of `rho`, `omega`, `sum_of_squares`.
        arg (Union[PolyRing, Iterable[PolyElement]]): The ring for `rho`
            and `omega`, the polynomials for `sum_of_squares`.

    Examples:
        >>> format_polynomial(build_standard("rho", make_ring(["x", "y"])))
        'x^2 + y^2'
    """
    builders = {"rho": rho, "omega": omega, "sum_of_squares": sum_of_squares}
    return builders[kind](arg)


def total_degree(p):
    """
    >>> total_degree(parse_polynomial("x^2*y + y", ["x", "y"]))
    3
    """
    return max((sum(monom) for monom in p.itermonoms()), default=0)


def determinant(rows):
    """Determinant of a square matrix of polynomials by cofactor expansion"""
    if len(rows) == 1:
        return rows[0][0]

    result = rows[0][0].ring.zero

    for j, entry in enumerate(rows[0]):
        if entry:
            minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
            result += (-1) ** j * entry * determinant(minor)

    return result


def jacobian_rows(F, extra_rows=None):
    rows = [list(gradient(f)) for f in F]
    rows.extend(list(gradient(g)) for g in extra_rows or [])
    return rows


def jacobian_minors(F, extra_rows=None, minor_size=None):
    """All minors of a given size of the stacked Jacobian matrix

    Rows are the gradients of the components of `F` followed by those of
    `extra_rows`. Minors come ordered by row subset, then column subset.

    Examples:
        >>> ring = make_ring(["x", "y"])
        >>> f = parse_polynomial("x^2 - y^2", ["x", "y"])
        >>> [format_polynomial(m) for m in jacobian_minors([f], [omega(ring)], 2)]
        ['4*x*y']
        >>> jacobian_minors(gradient(rho(ring)), minor_size=2) == [4]
        True
    """
    rows = jacobian_rows(F, extra_rows)
    arity = len(rows[0])
    minor_size = minor_size or min(len(rows), arity)

    if not 1 <= minor_size <= min(len(rows), arity):
        raise IndexRangeError(f"minor size {minor_size} out of range")

    pairs = it.product(it.combinations(rows, minor_size), it.combinations(range(arity), minor_size))
    return [determinant([[row[c] for c in cols] for row in chosen]) for chosen, cols in pairs]


def jacobian_determinant(F):
    """
    >>> F = parse_map("x^2 - y^2, 2*x*y", ["x", "y"])
    >>> format_polynomial(jacobian_determinant(F))
    '4*x^2 + 4*y^2'
    """
    F = PolyMap(F)

    if len(F) != F.arity:
        raise ArityError(f"a {len(F)} component map on {F.arity} variables is not square")

    return determinant(jacobian_rows(F))


def embed(p, ring, positions):
    """Copy a polynomial into a larger ring, sending variable i to `positions[i]`

    Examples:
        >>> big = make_ring(["lam", "x", "y"])
        >>> f = parse_polynomial("x*y^2", ["x", "y"])
        >>> format_polynomial(embed(f, big, [1, 2]))
        'x*y^2'
    """
    terms = {}

    for monom, coeff in p.iterterms():
        exponents = [0] * ring.ngens

        for position, exp in zip(positions, monom):
            exponents[position] += exp

        terms[tuple(exponents)] = coeff

    return ring.from_dict(terms) if terms else ring.zero


def translate(p, shift):
    """The polynomial `x -> p(x + shift)`

    Examples:
        >>> f = parse_polynomial("x^2 + y", ["x", "y"])
        >>> format_polynomial(translate(f, (2, 0)))
        'x^2 + 4*x + y + 4'
    """
    gens = p.ring.gens
    replacements = [(g, g + to_rational(s)) for g, s in zip(gens, shift) if s]
    return p.compose(replacements) if replacements else p


def complex_real_form(text, variables):
    """Expand a complex polynomial into its real and imaginary parts

    Each complex variable `z` becomes the pair `re_z, im_z`, so a polynomial
    in m complex variables yields two polynomials in 2m real variables.

    Args:
        text (str): The complex polynomial (rational coefficients).
        variables (Sequence[str]): The complex variables.

    Returns:
        (Tuple[PolyElement, PolyElement]): The real part P and imaginary part Q.

    Examples:
        >>> P, Q = complex_real_form("z^2", ["z"])
        >>> format_polynomial(P), format_polynomial(Q)
        ('re_z^2 - im_z^2', '2*re_z*im_z')
    """
    f = parse_polynomial(text, variables)
    names = list(it.chain.from_iterable((f"re_{v}", f"im_{v}") for v in variables))
    ring = make_ring(names)
    pairs = [(ring.gens[2 * j], ring.gens[2 * j + 1]) for j in range(len(variables))]

    def multiply(a, b):
        return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]

    @functools.lru_cache(maxsize=None)
    def power(j, exp):
        return (ring.one, ring.zero) if not exp else multiply(power(j, exp - 1), pairs[j])

    real, imag = ring.zero, ring.zero

    for monom, coeff in f.iterterms():
        value = (ring.one, ring.zero)

        for j, exp in enumerate(monom):
            value = multiply(value, power(j, exp))

        real += value[0] * coeff
        imag += value[1] * coeff

    return real, imag


class FloatMap:
    """Vectorized float evaluation of a polynomial map

    Examples:
        >>> F = FloatMap(parse_map("x^2 - y^2, 2*x*y", ["x", "y"]))
        >>> F(np.array([[1.0, 2.0]])).tolist()
        [[-3.0, 4.0]]
    """

    def __init__(self, pmap):
        self.pmap = PolyMap(pmap)
        arity = self.pmap.arity
        self.terms = []

        for p in self.pmap:
            monoms = list(p.itermonoms())
            exps = np.array(monoms, dtype=float).reshape(len(monoms), arity)
            coeffs = np.array([to_float(c) for c in p.itercoeffs()], dtype=float)
            self.terms.append((exps, coeffs))

    def __call__(self, points):
        points = np.atleast_2d(np.asarray(points, dtype=float))
        columns = [
            np.prod(points[:, None, :] ** exps[None, :, :], axis=2) @ coeffs
            for exps, coeffs in self.terms
        ]
        return np.column_stack(columns)

    def exact(self, point):
        """Exact values at the rational point closest in binary to `point`"""
        return evaluate_map(self.pmap, [to_rational(float(v)) for v in point])
