#!/usr/bin/env python
# vim: sw=4:ts=4:expandtab

"""
milnordeg.formulas.common
~~~~~~~~~~~~~~~~~~~~~~~~~

Provides the options shared by every formula, the parameter schedules and
the helpers turning symbolic and oracle computations into report quantities

Examples:
    basic usage::

        >>> options = FormulaOptions(k=2)
        >>> list(options.k_schedule)
        [2]
        >>> attempt(lambda: 3, "oracle:circle").quantity
        Quantity(value=3, provenance='oracle:circle')
"""

import logging
from dataclasses import dataclass, field, replace
from typing import NamedTuple

from .. import ArityError, MilnorError, UnstableAtBudget
from ..quotient import Budget
from ..report import Quantity, judge
from ..utils import DEFAULTS, max_k, to_rational

logger = logging.getLogger(__name__)

LOCAL_DEGREE = "LOCAL_DEGREE"
INFINITY_DEGREE = "INFINITY_DEGREE"
MILNOR_CHI = "MILNOR_CHI"
KHIMSHIASHVILI = "KHIMSHIASHVILI"
MAP_ISOLATED_CHI = "MAP_ISOLATED_CHI"
SZAFRANIEC_LINK0 = "SZAFRANIEC_LINK0"
NONISOLATED_TUBE_CHI = "NONISOLATED_TUBE_CHI"
LINK0_COMPONENT_RELATION = "LINK0_COMPONENT_RELATION"
LINK0_SUBTUPLE_RELATION = "LINK0_SUBTUPLE_RELATION"
LINK_INF = {"le": "LINK_INF_LE", "ge": "LINK_INF_GE", "eq": "LINK_INF_EQ"}
CLOSED_SET_LINK_INF = "CLOSED_SET_LINK_INF"
SEMITAME_LEVELS = "SEMITAME_LEVELS"
GLOBAL_SZA = "GLOBAL_SZA"
CLOSED_SET_MINUS_DEGREE = "CLOSED_SET_MINUS_DEGREE"
CLOSED_SET_LEVEL_GE = "CLOSED_SET_LEVEL_GE"
CLOSED_SET_LEVEL_EQ = "CLOSED_SET_LEVEL_EQ"
GLOBAL_SPHERE_FIBER = "GLOBAL_SPHERE_FIBER"
LINK_INF_COMPONENT_RELATION = "LINK_INF_COMPONENT_RELATION"

ASSUME_MILNOR_AB = "Milnor conditions (a) and (b) asserted by the user"
ASSUME_COND_AB = "Conditions (A) and (B) asserted by the user"
UNASSERTED = "{} not asserted: the value is conditional on them"


@dataclass(frozen=True)
class FormulaOptions:
    """Parameters of a formula run

    Unset schedule parameters (`c`, `k`, `K`) are searched; set ones are used
    as the only candidate.

    Attributes:
        budget (Budget): Groebner basis caps.
        c (QQ): Fixed lifting coefficient.
        k (int): Fixed exponent.
        K (int): Fixed exponent of omega in `omega^K f`.
        epsilon (QQ): First radius of small spheres.
        radius (QQ): First radius of large spheres.
        delta (QQ): Size of the regular value of tube fibers.
        tube_radius (QQ): Radius of the ball containing tube fibers.
        alpha_minus (QQ): Negative level of the semitame identities.
        alpha_plus (QQ): Positive level of the semitame identities.
        assume_milnor_ab (bool): Milnor conditions (a) and (b) hold.
        assume_cond_ab (bool): Conditions (A) and (B) hold.
        check (bool): Run the oracles.
    """

    budget: Budget = field(default_factory=Budget)
    c: object = None
    k: int = None
    K: int = None
    epsilon: object = DEFAULTS["epsilon"]
    radius: object = DEFAULTS["radius"]
    delta: object = DEFAULTS["delta"]
    tube_radius: object = DEFAULTS["tube_radius"]
    alpha_minus: object = DEFAULTS["alpha_minus"]
    alpha_plus: object = DEFAULTS["alpha_plus"]
    assume_milnor_ab: bool = False
    assume_cond_ab: bool = False
    check: bool = True

    def __post_init__(self):
        for name in ("c", "epsilon", "radius", "delta", "tube_radius", "alpha_minus", "alpha_plus"):
            value = getattr(self, name)

            if value is not None:
                object.__setattr__(self, name, to_rational(value))

        if self.alpha_minus >= 0 or self.alpha_plus <= 0:
            raise ValueError("alpha_minus must be negative and alpha_plus positive")

    @property
    def c_schedule(self):
        return (self.c,) if self.c else DEFAULTS["c_schedule"]

    @property
    def k_schedule(self):
        return (self.k,) if self.k else range(1, max_k() + 1)

    @property
    def pair_schedule(self):
        """`(K, k)` pairs, raised together"""
        if self.K or self.k:
            return ((self.K or self.k, self.k or self.K),)

        return tuple((k, k) for k in range(1, max_k() + 1))

    def update(self, **kwargs):
        """A copy with some parameters replaced (unknown names are errors)

        Examples:
            >>> from milnordeg.utils import format_rational
            >>> format_rational(FormulaOptions().update(delta="1/32").delta)
            '1/32'
        """
        return replace(self, **kwargs)


def assumption_notes(asserted, statement):
    return [statement] if asserted else [UNASSERTED.format(statement.split(" asserted")[0])]


class Outcome(NamedTuple):
    """A quantity, or the reason there is none

    `failed` tells an unstable oracle apart from one that does not apply.
    """

    quantity: Quantity = None
    failed: bool = False
    notes: list = []


def attempt(compute, provenance):
    """Run a computation, keeping expected mathematical failures as notes

    The computation returns an integer, or a `Quantity` carrying its own
    provenance.

    Examples:
        >>> from milnordeg import ArityError
        >>> def no_oracle():
        ...     raise ArityError("no sphere oracle for arity 4")
        >>> outcome = attempt(no_oracle, "oracle:sphere_mesh")
        >>> outcome.quantity is None, outcome.failed
        (True, False)
    """
    try:
        value = compute()
    except ArityError as err:
        return Outcome(notes=[f"{provenance} unavailable: {err}"])
    except MilnorError as err:
        logger.warning("%s failed: %s", provenance, err)
        return Outcome(failed=True, notes=[f"{provenance} failed: {err}"])

    if isinstance(value, Quantity):
        return Outcome(value)

    return Outcome(Quantity(int(value), provenance))


def stable_value(compute, radii):
    """The value on the first two consecutive radii that agree

    Returns:
        (Tuple[int, QQ, List[str]]): The value, the accepted radius and notes
            on radii that failed.

    Raises:
        UnstableAtBudget: No two consecutive radii agree.

    Examples:
        >>> stable_value(lambda r: 1 if r > 1 else 0, [4, 2, 1, "1/2"])[:2]
        (1, 2)
    """
    previous, notes = None, []

    for radius in radii:
        try:
            value = compute(radius)
        except UnstableAtBudget as err:
            notes.append(f"radius {radius}: {err}")
            previous = None
            continue

        if previous is not None and previous == value:
            return value, radius, notes

        previous = value

    raise UnstableAtBudget(f"no two consecutive radii agree ({'; '.join(notes) or 'values differ'})")


def parity_gate(report, arity, *quantities):
    """For an even number of variables, link characteristics are even"""
    values = [q.value for q in quantities if q is not None]

    if arity % 2 == 0 and values:
        report.gates["parity"] = all(value % 2 == 0 for value in values)


def finish(report, lhs, rhs, expected=None):
    """Attach both outcomes to a report and judge it"""
    report.lhs, report.rhs = lhs.quantity, rhs.quantity
    report.diagnostics.extend(lhs.notes)
    report.diagnostics.extend(rhs.notes)
    judge(report, expected, oracle_failed=rhs.failed, symbolic_failed=lhs.failed)
    logger.debug("%s: %s (lhs %s, rhs %s)", report.formula_id, report.verdict, report.lhs, report.rhs)
    return report
