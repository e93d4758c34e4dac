#!/usr/bin/env python
# vim: sw=4:ts=4:expandtab

"""
milnordeg.utils
~~~~~~~~~~~~~~~

Provides exact rational helpers, lattice enumeration and the settings shared
by every module

Honors some environment variables:

 - ``MILNORDEG_BUDGET``: term budget of a Groebner basis run (default 20000).
 - ``MILNORDEG_MAX_K``: largest k (and K) tried by the lifting schedules
   (default 4).
 - ``MILNORDEG_MAX_DEPTH``: largest mesh or grid refinement level used by
   the oracles (default 6).

Attributes:
    DEFAULTS (dict): Module level defaults, overridden by the environment and
        then by command line flags.
    RELATIONS (dict): Accepted spellings of the sign relations.
"""

import functools
import itertools as it
import math
import os

from sympy.polys.domains import QQ

DEFAULTS = {
    "budget": 20000,
    "max_k": 4,
    "max_depth": 6,
    "epsilon": QQ(1, 8),
    "radius": QQ(16),
    "delta": QQ(1, 64),
    "tube_radius": QQ(1, 2),
    "alpha_minus": QQ(-1),
    "alpha_plus": QQ(1),
    "closed_alpha_plus": QQ(1, 64),
    "c_schedule": tuple(QQ(1, 2**i) for i in range(7)),
    "radius_steps": 6,
    "probe_radii": (10, 100, 1000),
}

RELATIONS = {
    "le": "le",
    "<=": "le",
    "≤": "le",
    "ge": "ge",
    ">=": "ge",
    "≥": "ge",
    "eq": "eq",
    "=": "eq",
    "==": "eq",
}

SYMBOLS = {"le": "<=", "ge": ">=", "eq": "="}


@functools.lru_cache
def term_budget():
    return int(os.environ.get("MILNORDEG_BUDGET", DEFAULTS["budget"]))


@functools.lru_cache
def max_k():
    return int(os.environ.get("MILNORDEG_MAX_K", DEFAULTS["max_k"]))


@functools.lru_cache
def max_depth():
    return int(os.environ.get("MILNORDEG_MAX_DEPTH", DEFAULTS["max_depth"]))


def clear_settings():
    """Forget cached environment settings (used after the environment changes)"""
    for accessor in (term_budget, max_k, max_depth):
        accessor.cache_clear()


def to_rational(value):
    """Convert a number or a rational literal into an exact rational

    Floats are converted exactly, without rounding to a nearby fraction.

    Args:
        value (Union[str, int, float, Fraction, QQ]): The number.

    Returns:
        (QQ): The exact rational.

    Examples:
        >>> to_rational("3/6") == QQ(1, 2)
        True
        >>> to_rational(0.25) == QQ(1, 4)
        True
        >>> to_rational(-2) == QQ(-2)
        True
    """
    if isinstance(value, str):
        numerator, _, denominator = value.strip().partition("/")
        return QQ(int(numerator), int(denominator or 1))
    elif isinstance(value, float):
        return QQ(*value.as_integer_ratio())
    elif isinstance(value, int):
        return QQ(value)
    else:
        return QQ(int(value.numerator), int(value.denominator))


def format_rational(value):
    """Print a rational as `a/b`, omitting a unit denominator

    Examples:
        >>> format_rational(QQ(-3, 4))
        '-3/4'
        >>> format_rational(QQ(6, 3))
        '2'
    """
    value = to_rational(value)
    numerator, denominator = int(value.numerator), int(value.denominator)
    return f"{numerator}/{denominator}" if denominator != 1 else str(numerator)


def to_float(value):
    """
    >>> to_float(QQ(1, 8))
    0.125
    """
    return int(value.numerator) / int(value.denominator)


def get_relation(relation):
    """Normalize a relation spelling to one of `le`, `ge`, `eq`

    Examples:
        >>> get_relation("<=")
        'le'
        >>> get_relation("lt")
        Traceback (most recent call last):
        ...
        ValueError: unknown relation 'lt'
    """
    try:
        return RELATIONS[relation]
    except KeyError:
        raise ValueError(f"unknown relation {relation!r}") from None


def sphere_chi(n):
    """Euler characteristic of the unit sphere of R^n

    Examples:
        >>> sphere_chi(2), sphere_chi(3)
        (0, 2)
    """
    return 1 + (-1) ** (n - 1)


def gen_lattice_points(n):
    """Enumerate the integer lattice of R^n by increasing distance from 0

    Points of equal norm come in lexicographic order.

    Examples:
        >>> list(it.islice(gen_lattice_points(2), 6))
        [(0, 0), (-1, 0), (0, -1), (0, 1), (1, 0), (-1, -1)]
    """
    for norm in it.count():
        bound = math.isqrt(norm)
        span = range(-bound, bound + 1)
        shell = (p for p in it.product(span, repeat=n) if sum(c * c for c in p) == norm)
        yield from sorted(shell)


def halvings(start, steps):
    """
    >>> [str(r) for r in halvings(QQ(1, 8), 3)]
    ['1/8', '1/16', '1/32']
    """
    return [start / 2**i for i in range(steps)]


def doublings(start, steps):
    """
    >>> [str(r) for r in doublings(QQ(16), 3)]
    ['16', '32', '64']
    """
    return [start * 2**i for i in range(steps)]
