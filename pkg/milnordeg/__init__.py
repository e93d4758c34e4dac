#!/usr/bin/env python
# vim: sw=4:ts=4:expandtab

"""
milnordeg
~~~~~~~~~

Computes Euler characteristics of Milnor fibers and links of real polynomial
maps from topological degrees, and checks every value against independent
numerical oracles

Examples:
    literal blocks::

        milnordeg local-degree --vars x,y --map "2*x,-2*y"

Attributes:
    VERDICTS (tuple): All report verdicts, in severity order.
"""

__version__ = "0.4.0"

VERIFIED = "VERIFIED"
CONFLICT = "CONFLICT"
UNSUPPORTED = "UNSUPPORTED-SYMBOLIC"
UNSTABLE = "UNSTABLE"
UNCHECKED = "UNCHECKED"
VERDICTS = (VERIFIED, UNCHECKED, UNSUPPORTED, UNSTABLE, CONFLICT)

LOCAL_SIGNATURE = "local_signature"
INFINITY_SIGNATURE = "infinity_signature"
BEZOUTIAN_SIGNATURE = "bezoutian_signature"
WINDING_ORACLE = "winding_oracle"
SOLID_ANGLE_ORACLE = "solid_angle_oracle"


class MilnorError(Exception):
    """Base class of every error raised by the package"""

    pass


class ParseError(MilnorError):
    """Raised when an expression does not follow the polynomial grammar

    Args:
        message (str): What went wrong.
        position (int): Zero based offset into the parsed text.

    Examples:
        >>> str(ParseError("unexpected ')'", 4))
        "unexpected ')' at position 4"
    """

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownIdentifier(ParseError):
    """Raised for an identifier missing from the declared variable list"""

    pass


class ArityError(MilnorError):
    """Raised when polynomials of different arity are combined"""

    pass


class IndexRangeError(MilnorError):
    """Raised for a variable index or minor size outside the valid range"""

    pass


class ResourceLimitExceeded(MilnorError):
    """Raised when a Groebner basis run outgrows its budget

    Examples:
        >>> err = ResourceLimitExceeded("term budget 10 exceeded", basis_size=3)
        >>> err.basis_size
        3
    """

    def __init__(self, message, basis_size=0):
        super().__init__(f"{message} (partial basis of {basis_size} elements)")
        self.basis_size = basis_size


class NotZeroDimensional(MilnorError):
    """The ideal has infinitely many complex zeros

    Instances double as the marker returned by `quotient.quotient_basis`.

    Examples:
        >>> NotZeroDimensional("y").variable
        'y'
    """

    def __init__(self, variable):
        super().__init__(f"no pure power of {variable} among leading monomials")
        self.variable = variable


class OriginNotIsolated(MilnorError):
    """Raised when the ideal has complex zeros other than the origin"""

    pass


class DegenerateFunctional(MilnorError):
    """Raised when a linear functional vanishes on the Jacobian class"""

    pass


class ZeroOnSphere(MilnorError):
    """Raised when a map vanishes on the sampled circle or sphere"""

    pass


class BudgetExceeded(MilnorError):
    """Raised when an oracle needs more samples than allowed"""

    pass


class DegenerateImageTriangle(MilnorError):
    """Raised when an image triangle stays degenerate after refinement"""

    pass


class UnstableAtBudget(MilnorError):
    """Raised when consecutive refinements never agree"""

    pass


class ScheduleExhausted(MilnorError):
    """Raised when no parameter of a schedule passes its gates"""

    pass


class TranslationExhausted(MilnorError):
    """Raised when no lattice point satisfies the origin shift condition"""

    pass
