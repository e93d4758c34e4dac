#!/usr/bin/env python
# vim: sw=4:ts=4:expandtab

"""
milnordeg.formulas.local
~~~~~~~~~~~~~~~~~~~~~~~~

Provides the formulas at the origin: local degrees, complex Milnor numbers,
the link of a zero set through Szafraniec's lifted function, and the Euler
characteristics of tube fibers

Examples:
    basic usage::

        >>> from milnordeg.poly import parse_map
        >>> report = chi_link_origin(parse_map("x", ["x", "y"]))
        >>> report.lhs.value, report.rhs.value, report.verdict
        (2, 2, 'VERIFIED')
"""

import itertools as it
import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .. import (
    ArityError,
    MilnorError,
    NotZeroDimensional,
    ResourceLimitExceeded,
    ScheduleExhausted,
    UnstableAtBudget,
)
from ..chi_oracle import Box, chi_region_grid, link_complex, perturbed, zero_set_chi
from ..degree_oracle import oracle_local_degree
from ..poly import (
    FloatMap,
    PolyMap,
    complex_real_form,
    evaluate,
    format_map,
    format_polynomial,
    gradient,
    jacobian_minors,
    omega,
    rho,
    sum_of_squares,
    variable_names,
)
from ..quotient import (
    IdealRecord,
    groebner_basis,
    local_multiplicity,
    normal_form,
    quotient_basis,
)
from ..report import DegreeResult, FormulaReport, Quantity
from ..signature import degree_at_infinity_elk, functional_signatures, local_degree_elk
from ..utils import DEFAULTS, halvings
from .common import (
    ASSUME_MILNOR_AB,
    KHIMSHIASHVILI,
    LINK0_COMPONENT_RELATION,
    LINK0_SUBTUPLE_RELATION,
    LOCAL_DEGREE,
    MAP_ISOLATED_CHI,
    MILNOR_CHI,
    NONISOLATED_TUBE_CHI,
    SZAFRANIEC_LINK0,
    FormulaOptions,
    Outcome,
    assumption_notes,
    attempt,
    finish,
    parity_gate,
    stable_value,
)

logger = logging.getLogger(__name__)

TUBE_MODES = {
    "isolated_map": MAP_ISOLATED_CHI,
    "nonisolated": NONISOLATED_TUBE_CHI,
    "khimshiashvili": KHIMSHIASHVILI,
}


@dataclass
class CriticalLociReport:
    """Generators of the critical loci of a map, with heuristic probes

    Attributes:
        sigma_F (IdealRecord): Maximal minors of the Jacobian matrix of F.
        milnor_set (IdealRecord): Minors of the Jacobian stacked over the
            gradient of rho (None when p = n).
        gamma_f_omega (IdealRecord): 2-minors of the gradients of f and
            omega (single functions only).
        inclusion (bool): Every Milnor set generator reduces to zero modulo
            the critical ideal.
        sampled_diagnostics (list): Notes on sign changes along large circles.
    """

    sigma_F: IdealRecord
    milnor_set: IdealRecord = None
    gamma_f_omega: IdealRecord = None
    inclusion: bool = None
    sampled_diagnostics: list = field(default_factory=list)


def _sign_changes(generators, radius, samples=720):
    angles = np.linspace(0, 2 * math.pi, samples, endpoint=False)
    points = np.zeros((samples, generators.arity))
    points[:, 0] = radius * np.cos(angles)
    points[:, 1] = radius * np.sin(angles)
    signs = np.sign(FloatMap(generators)(points))
    return int(np.count_nonzero(np.diff(np.vstack([signs, signs[:1]]), axis=0)))


def critical_loci_ideals(F, budget=None):
    """The critical set of F, the Milnor set of (F, rho) and the set Gamma

    The probes only count sign changes of the Milnor set minors along a great
    circle of growing radius; they hint at, and never decide, boundedness.

    Args:
        F (PolyMap): A map with p <= n components.
        budget (Budget): Groebner basis caps for the inclusion check.

    Returns:
        (CriticalLociReport): The three ideals and the notes.

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> loci = critical_loci_ideals(parse_map("x^2 + y^2", ["x", "y"]))
        >>> format_map(loci.sigma_F.generators), loci.inclusion
        ('2*x, 2*y', True)
        >>> format_map(critical_loci_ideals(parse_map("x", ["x", "y"])).gamma_f_omega.generators)
        'y'
    """
    F = PolyMap(F)
    p, n = len(F), F.arity

    if p > n:
        raise ArityError(f"{p} components on {n} variables")

    sigma = IdealRecord(jacobian_minors(F, minor_size=p))
    milnor = IdealRecord(jacobian_minors(F, [rho(F.ring)], p + 1)) if p < n else None
    gamma = IdealRecord(jacobian_minors(F, [omega(F.ring)], 2)) if p == 1 and n > 1 else None
    report = CriticalLociReport(sigma, milnor, gamma)

    if milnor is None:
        return report

    try:
        gb = groebner_basis(sigma, budget)
    except ResourceLimitExceeded as err:
        report.sampled_diagnostics.append(f"inclusion unchecked: {err}")
    else:
        report.inclusion = all(not normal_form(m, gb) for m in milnor.generators)

    nonzero = PolyMap([m for m in milnor.generators if m] or [milnor.generators[0]])

    for radius in DEFAULTS["probe_radii"] if n > 1 else ():
        count = _sign_changes(nonzero, radius)
        report.sampled_diagnostics.append(
            f"radius {radius}: Milnor set minors change sign {count} times on a sampled great circle"
        )

    return report


def _degree_quantity(result, provenance=None):
    return Quantity(result.degree, provenance or f"formula:{result.method}")


def local_degree_report(F, options=None):
    """The local degree at the origin, by signature and by the oracle

    Five random admissible functionals must give the same signature.

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> report = local_degree_report(parse_map("x^2 - y^2, 2*x*y", ["x", "y"]))
        >>> report.lhs.value, report.verdict, report.gates
        (2, 'VERIFIED', {'functional_independence': True})
    """
    options = options or FormulaOptions()
    F = PolyMap(F)
    report = FormulaReport(LOCAL_DEGREE, {"F": format_map(F)})

    def formula():
        result = local_degree_elk(F, options.budget)
        report.parameters["dimension"] = result.dimension

        if result.dimension:
            signatures = functional_signatures(F, budget=options.budget)
            report.gates["functional_independence"] = set(signatures) == {result.degree}

        return _degree_quantity(result)

    def oracle():
        result = oracle_local_degree(F, options.epsilon)
        report.parameters["epsilon"] = result.parameters["radius"]
        return _degree_quantity(result, f"oracle:{result.method}")

    rhs = attempt(oracle, "oracle:degree") if options.check else Outcome()
    return finish(report, attempt(formula, "formula:local_signature"), rhs)


class MilnorNumber(NamedTuple):
    mu: int
    chi: int


def milnor_number_chi(f, total=False, budget=None):
    """Milnor number of a complex polynomial and the Euler characteristic of its fiber

    The polynomial has rational coefficients and is read over the complex
    numbers. With m variables the fiber has the homotopy type of a bouquet of
    mu spheres of dimension m - 1.

    Args:
        f (PolyElement): The polynomial.
        total (bool): Count every critical point (total Milnor number)
            instead of the origin alone.
        budget (Budget): Groebner basis caps.

    Returns:
        (MilnorNumber): mu and chi.

    Raises:
        NotZeroDimensional: The critical set is not finite.

    Examples:
        >>> from milnordeg.poly import parse_polynomial
        >>> milnor_number_chi(parse_polynomial("z^2", ["z"]))
        MilnorNumber(mu=1, chi=2)
        >>> milnor_number_chi(parse_polynomial("z^3 - 3*z", ["z"]), total=True)
        MilnorNumber(mu=2, chi=3)
        >>> milnor_number_chi(parse_polynomial("z1^2 + z2^2", ["z1", "z2"]))
        MilnorNumber(mu=1, chi=0)
    """
    algebra = quotient_basis(groebner_basis(IdealRecord(gradient(f)), budget))

    if isinstance(algebra, NotZeroDimensional):
        raise algebra

    mu = algebra.dimension if total else local_multiplicity(algebra)
    return MilnorNumber(mu, 1 + (-1) ** (f.ring.ngens - 1) * mu)


def milnor_report(f, total=False, options=None, real_form=True):
    """Check the Milnor number formula against the real part of f

    The gradient of P = Re f has degree (-1)^m mu, so the fiber
    characteristic is also 1 - deg grad P. Without `real_form` the value is
    left unchecked.

    Examples:
        >>> from milnordeg.poly import parse_polynomial
        >>> report = milnor_report(parse_polynomial("z^3 - 3*z", ["z"]), total=True)
        >>> report.lhs.value, report.rhs.value, report.verdict
        (3, 3, 'VERIFIED')
    """
    options = options or FormulaOptions()
    names = variable_names(f.ring)
    report = FormulaReport(MILNOR_CHI, {"f": format_polynomial(f), "complex": names}, {"total": total})

    def formula():
        number = milnor_number_chi(f, total, options.budget)
        report.parameters["mu"] = number.mu
        return number.chi

    def by_real_form():
        P, _ = complex_real_form(format_polynomial(f), names)
        grad = gradient(P)

        if total:
            result = degree_at_infinity_elk(grad, options.budget, cross_check=options.check)
        else:
            result = local_degree_elk(grad, options.budget, localize=True)

            if options.check and grad.arity <= 3:
                result.check_with(oracle_local_degree(grad, options.epsilon))

        report.parameters["real_degree"] = result.degree

        if result.cross_check:
            report.gates["degree_cross_check"] = not result.conflict

        return Quantity(1 - result.degree, f"formula:real_form_{result.method}")

    rhs = attempt(by_real_form, "formula:real_form") if real_form else Outcome()
    return finish(report, attempt(formula, "formula:quotient_dimension"), rhs)


class Lift(NamedTuple):
    """Parameters of `g = h - c * rho^k` with the degree of its gradient at 0"""

    g: object
    c: object
    k: int
    degree: DegreeResult
    successor: DegreeResult


def _successor_degree(grad, options, symbolic):
    if symbolic:
        try:
            return local_degree_elk(grad, options.budget, localize=True)
        except MilnorError as err:
            if grad.arity > 3:
                raise

            logger.debug("successor degree by the oracle: %s", err)

    return oracle_local_degree(grad, options.epsilon)


def szafraniec_lift(h_list, options=None):
    """Find `g = h_1^2 + ... + h_s^2 - c * rho^k` isolated at the origin

    k ascends and c descends. A candidate is accepted when its gradient has
    no complex zero but the origin and the next k gives the same local degree.
    When the symbolic pass finds nothing and n <= 3, a second pass measures
    the degrees with the oracle.

    Args:
        h_list (PolyMap): Components vanishing at the origin.
        options (FormulaOptions): Schedules and budgets.

    Returns:
        (Lift): The accepted function and parameters.

    Raises:
        ScheduleExhausted: No candidate passed.

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> lift = szafraniec_lift(parse_map("x", ["x", "y"]))
        >>> str(lift.c), lift.k, lift.degree.degree
        ('1/2', 1, -1)
        >>> lift = szafraniec_lift(parse_map("x*y", ["x", "y"]))
        >>> str(lift.c), lift.k, lift.degree.degree
        ('1/8', 2, -3)
    """
    options = options or FormulaOptions()
    H = PolyMap(h_list)

    if any(evaluate(h, [0] * H.arity) for h in H):
        raise ValueError("every component must vanish at the origin")

    h, rho_ = sum_of_squares(H), rho(H.ring)
    notes = []

    for symbolic in (True, False):
        if not symbolic and H.arity > 3:
            break

        for k in options.k_schedule:
            for c in options.c_schedule:
                g = h - rho_**k * c

                try:
                    if symbolic:
                        degree = local_degree_elk(gradient(g), options.budget)
                    else:
                        degree = oracle_local_degree(gradient(g), options.epsilon)

                    successor = _successor_degree(gradient(h - rho_ ** (k + 1) * c), options, symbolic)
                except MilnorError as err:
                    notes.append(f"c={c}, k={k}: {err}")
                    continue

                if successor.degree == degree.degree:
                    logger.debug("lift accepted with c=%s, k=%d, degree %d", c, k, degree.degree)
                    return Lift(g, c, k, degree, successor)

                notes.append(f"c={c}, k={k}: degree {degree.degree} but {successor.degree} at k={k + 1}")

    raise ScheduleExhausted(f"no lifting parameters passed ({'; '.join(notes[-3:])})")


def _lift_quantity(report, H, options, transform):
    lift = szafraniec_lift(H, options)
    report.parameters.update(c=lift.c, k=lift.k, g=format_polynomial(lift.g))
    report.parameters["successor_degree"] = lift.successor.degree
    report.gates["k_stabilization"] = lift.successor.degree == lift.degree.degree
    return Quantity(transform(lift.degree.degree), f"formula:{lift.degree.method}")


def _small_sphere_oracle(report, compute, options, arity):
    radii = halvings(options.epsilon, DEFAULTS["radius_steps"])
    value, radius, notes = stable_value(compute, radii)
    report.parameters["epsilon"] = radius
    report.diagnostics.extend(notes)
    return Quantity(value, "oracle:circle" if arity == 2 else "oracle:sphere_mesh")


def chi_link_origin(h_list, options=None):
    """Euler characteristic of the link at the origin of `{h = 0}`

    The formula value is `1 - deg grad g` for the lifted function g; the
    oracle counts the zero set on small circles or 2-spheres.

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> report = chi_link_origin(parse_map("x, y", ["x", "y"]))
        >>> report.lhs.value, report.rhs.value
        (0, 0)
        >>> report = chi_link_origin(parse_map("x", ["x", "y", "z"]))
        >>> report.lhs.value, report.rhs.value
        (0, 0)
    """
    options = options or FormulaOptions()
    H = PolyMap(h_list)
    report = FormulaReport(SZAFRANIEC_LINK0, {"h": format_map(H)})

    def formula():
        return _lift_quantity(report, H, options, lambda degree: 1 - degree)

    def oracle():
        return _small_sphere_oracle(report, lambda r: zero_set_chi(H, r), options, H.arity)

    lhs = attempt(formula, "formula:local_signature")
    rhs = attempt(oracle, "oracle:link") if options.check else Outcome()
    parity_gate(report, H.arity, lhs.quantity, rhs.quantity)
    return finish(report, lhs, rhs)


def _tube_oracle(report, F, delta, options):
    def fiber_chi(level):
        constraints = [(f, "eq", level / (j + 1)) for j, f in enumerate(F)]
        return chi_region_grid(constraints, Box(options.tube_radius))

    def stable_fiber(level):
        value, halved = fiber_chi(level), fiber_chi(level / 2)

        if value != halved:
            raise UnstableAtBudget(f"fiber characteristics {value} and {halved} at delta and delta/2")

        return value

    value, level, notes = perturbed(stable_fiber, delta)
    report.diagnostics.extend(notes)

    if level != delta:
        report.parameters["perturbed_delta"] = level

    return value


def chi_tube_fiber(F, mode="isolated_map", options=None, sign=1):
    """Euler characteristic of the tube fiber `F^-1(delta)` inside a small ball

    Modes:
        - `khimshiashvili` (one function): `1 - sign(-delta)^n deg grad f`;
        - `isolated_map`: `1 - deg grad f_1` for n even, where every component
          has the same degree, and 1 for n odd, where every degree is 0;
        - `nonisolated`: `(1 - deg grad g) / 2` for n even and
          `(1 + deg grad g) / 2` for n odd, with g lifted from f_1. Milnor
          conditions (a) and (b) are taken on trust.

    Args:
        F (PolyMap): The map.
        mode (str): One of the modes above.
        options (FormulaOptions): delta, ball radius and schedules.
        sign (int): Sign of delta.

    Returns:
        (FormulaReport): The report.

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> f = parse_map("x^2 - y^2", ["x", "y"])
        >>> report = chi_tube_fiber(f, "khimshiashvili")
        >>> report.lhs.value, report.rhs.value, report.verdict
        (2, 2, 'VERIFIED')
        >>> report = chi_tube_fiber(parse_map("x, y", ["x", "y", "z"]))
        >>> report.lhs.value, report.rhs.value, report.gates
        (1, 1, {'component_degrees_zero': True})
    """
    options = options or FormulaOptions()
    F = PolyMap(F)
    n = F.arity

    if mode not in TUBE_MODES:
        raise ValueError(f"unknown tube fiber mode {mode!r}")
    elif mode == "khimshiashvili" and len(F) != 1:
        raise ArityError("the Khimshiashvili formula takes a single function")

    delta = options.delta * (1 if sign > 0 else -1)
    parameters = {"delta": delta, "tube_radius": options.tube_radius}
    report = FormulaReport(TUBE_MODES[mode], {"F": format_map(F)}, parameters)

    def khimshiashvili():
        result = local_degree_elk(gradient(F[0]), options.budget)
        report.parameters["degree"] = result.degree
        factor = (1 if delta < 0 else -1) ** n
        return Quantity(1 - factor * result.degree, f"formula:{result.method}")

    def isolated_map():
        degrees = [local_degree_elk(gradient(f), options.budget).degree for f in F]
        report.parameters["component_degrees"] = degrees

        if n % 2:
            report.gates["component_degrees_zero"] = not any(degrees)
            return Quantity(1, "formula:odd_dimension")

        report.gates["component_degrees_equal"] = len(set(degrees)) == 1
        return Quantity(1 - degrees[0], "formula:local_signature")

    def nonisolated():
        report.assumptions.extend(assumption_notes(options.assume_milnor_ab, ASSUME_MILNOR_AB))
        doubled = _lift_quantity(report, F[:1], options, lambda d: 1 - d if n % 2 == 0 else 1 + d)
        report.gates["integrality"] = doubled.value % 2 == 0
        return Quantity(doubled.value // 2, doubled.provenance)

    formulas = {"khimshiashvili": khimshiashvili, "isolated_map": isolated_map, "nonisolated": nonisolated}
    lhs = attempt(formulas[mode], "formula:local_signature")
    rhs = attempt(lambda: _tube_oracle(report, F, delta, options), "oracle:grid") if options.check else Outcome()
    return finish(report, lhs, rhs)


def component_link_relations(F, chi, options=None):
    """Check `chi(Lk0(f_j = 0))` against the tube fiber characteristic

    The link of each component's zero set has characteristic `2 chi` for n
    even and `2 - 2 chi` for n odd.

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> reports = component_link_relations(parse_map("x, y", ["x", "y", "z"]), 1)
        >>> [(r.lhs.value, r.rhs.value) for r in reports]
        [(0, 0), (0, 0)]
    """
    options = options or FormulaOptions()
    F = PolyMap(F)
    n = F.arity
    reports = []

    for j, f in enumerate(F):
        inputs = {"F": format_map(F), "component": j + 1}
        report = FormulaReport(LINK0_COMPONENT_RELATION, inputs, {"chi_tube_fiber": chi})
        value = 2 * chi if n % 2 == 0 else 2 - 2 * chi
        lhs = Outcome(Quantity(value, "formula:tube_relation"))

        def oracle(f=f, report=report):
            def compute(radius):
                return link_complex(f, radius).chi("eq")

            return _small_sphere_oracle(report, compute, options, n)

        rhs = attempt(oracle, "oracle:link") if options.check else Outcome()
        parity_gate(report, n, lhs.quantity, rhs.quantity)
        reports.append(finish(report, lhs, rhs))

    return reports


def _link_by_lift(F, indices, options):
    lift = szafraniec_lift(PolyMap([F[i] for i in indices]), options)
    return Quantity(1 - lift.degree.degree, f"formula:{lift.degree.method}")


def subtuple_link_relations(F, chi, options=None):
    """Check `chi(Lk0(V_J)) - chi(Lk0(V_I))` against the tube fiber characteristic

    J holds every component and I runs over the nonempty proper sub-tuples.
    For `|I| = l` the difference is `(-1)^(n - l) 2 chi`. Both links come
    from lifted functions; the Milnor conditions on every sub-tuple are
    taken on trust.

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> reports = subtuple_link_relations(parse_map("x, y", ["x", "y", "z"]), 1)
        >>> [(r.inputs["subtuple"], r.lhs.value, r.rhs.value) for r in reports]
        [((1,), 2, 2), ((2,), 2, 2)]
    """
    options = options or FormulaOptions()
    F = PolyMap(F)
    n, p = F.arity, len(F)
    provenance = "formula:local_signature"
    whole = attempt(lambda: _link_by_lift(F, range(p), options), provenance)
    reports = []

    for subtuple in it.chain.from_iterable(it.combinations(range(p), size) for size in range(1, p)):
        size = len(subtuple)
        inputs = {"F": format_map(F), "subtuple": tuple(i + 1 for i in subtuple)}
        report = FormulaReport(LINK0_SUBTUPLE_RELATION, inputs, {"chi_tube_fiber": chi, "l": size})
        report.assumptions.extend(assumption_notes(options.assume_milnor_ab, ASSUME_MILNOR_AB))
        part = attempt(lambda subtuple=subtuple: _link_by_lift(F, subtuple, options), provenance)

        if whole.quantity and part.quantity:
            difference = whole.quantity.value - part.quantity.value
            lhs = Outcome(Quantity(difference, part.quantity.provenance))
        else:
            lhs = Outcome(failed=whole.failed or part.failed, notes=whole.notes + part.notes)

        rhs = Outcome(Quantity((-1) ** (n - size) * 2 * chi, "formula:tube_relation"))
        reports.append(finish(report, lhs, rhs))

    return reports


def tube_fiber_reports(F, mode="isolated_map", options=None, sign=1, subtuples=False):
    """The tube fiber report, followed by the component link relations in
    the non-isolated mode and, with `subtuples`, the sub-tuple sweep"""
    report = chi_tube_fiber(F, mode, options, sign)

    if mode != "nonisolated" or report.value is None:
        return [report]

    reports = [report] + component_link_relations(F, report.value, options)

    if subtuples:
        reports.extend(subtuple_link_relations(F, report.value, options))

    return reports
