#!/usr/bin/env python
# vim: sw=4:ts=4:expandtab

"""
milnordeg.formulas.infinity
~~~~~~~~~~~~~~~~~~~~~~~~~~~

Provides the formulas at infinity: links at infinity of sign sets through
the augmented maps L-/L+, the semitame level identities, the closed set
corollaries and the Euler characteristic of the global sphere fiber

Every degree at infinity comes from a schedule of exponents. A value is
accepted when the next exponent reproduces it; when every exponent leaves
the system with infinitely many complex zeros, the origin is moved to a
lattice point where the function exceeds 1.

Examples:
    basic usage::

        >>> from milnordeg.poly import format_polynomial, parse_polynomial
        >>> maps = build_infinity_maps(parse_polynomial("x", ["x", "y"]), 1)
        >>> format_polynomial(maps.G_minus)
        '1/2*x^3 + 1/2*x*y^2 + x - 1'
        >>> len(maps.L_minus), maps.H_minus.powers
        (3, (2, 2, 1))
"""

import itertools as it
import logging
from dataclasses import dataclass
from typing import NamedTuple

from .. import (
    MilnorError,
    NotZeroDimensional,
    ResourceLimitExceeded,
    ScheduleExhausted,
    TranslationExhausted,
)
from ..chi_oracle import link_complex, perturbed, stable_link
from ..degree_oracle import oracle_degree_at_infinity
from ..poly import (
    PolyMap,
    RationalFunctionMap,
    embed,
    evaluate,
    format_map,
    format_polynomial,
    gradient,
    make_ring,
    omega,
    translate,
    variable_names,
)
from ..report import DegreeResult, FormulaReport, Quantity
from ..signature import degree_at_infinity_elk, positive_rescale_reduction
from ..utils import DEFAULTS, doublings, gen_lattice_points, get_relation, sphere_chi
from .common import (
    ASSUME_COND_AB,
    CLOSED_SET_LEVEL_EQ,
    CLOSED_SET_LEVEL_GE,
    CLOSED_SET_LINK_INF,
    CLOSED_SET_MINUS_DEGREE,
    GLOBAL_SPHERE_FIBER,
    GLOBAL_SZA,
    INFINITY_DEGREE,
    LINK_INF,
    LINK_INF_COMPONENT_RELATION,
    SEMITAME_LEVELS,
    FormulaOptions,
    Outcome,
    assumption_notes,
    attempt,
    finish,
    parity_gate,
    stable_value,
)
from .local import critical_loci_ideals

logger = logging.getLogger(__name__)

MAX_SHIFTS = 3
LATTICE_SCAN = 4096
SEMITAME = "semi-tameness of f taken on trust"
NONNEGATIVE = "f >= 0 taken on trust, X = {f = 0}"


@dataclass(frozen=True)
class InfinityMaps:
    """The auxiliary functions and maps built from f and the exponents k, K

    `Phi` is `omega^K f` (f itself without K). With `g-/+ = Phi -/+ omega^-k`:
    `G-/+ = omega^k Phi -/+ 1`, the gradients of `g-/+` as rational maps, and
    the augmented maps `L-/+ = (lam x + grad G, G)`, `H-/+ = (lam x + grad g, g)`
    whose first variable is the multiplier.
    """

    Phi: object
    k: int
    K: int
    shift: tuple
    G_minus: object
    G_plus: object
    g_minus: RationalFunctionMap
    g_plus: RationalFunctionMap
    grad_g_minus: RationalFunctionMap
    grad_g_plus: RationalFunctionMap
    L_minus: PolyMap
    L_plus: PolyMap
    H_minus: RationalFunctionMap
    H_plus: RationalFunctionMap

    @property
    def shifted(self):
        return any(self.shift)


def _multiplier_name(names):
    name = "lam"

    while name in names:
        name += "_"

    return name


def build_infinity_maps(f, k, K=None, shift=None):
    """Build every auxiliary function of the formulas at infinity

    Args:
        f (PolyElement): A non constant polynomial.
        k (int): Exponent of omega in `g-/+`.
        K (int): Exponent of omega in `Phi` (default: none).
        shift (Sequence[int]): New origin (default: none).

    Returns:
        (InfinityMaps): The maps, built from `f(x + shift)`.
    """
    if not any(sum(monom) for monom in f.itermonoms()):
        raise ValueError("f must not be constant")

    ring = f.ring
    n = ring.ngens
    shift = tuple(shift or (0,) * n)
    w = omega(ring)
    Phi = translate(f, shift)
    Phi = w**K * Phi if K else Phi
    top = w ** (k + 1)
    G_minus, G_plus = w**k * Phi - 1, w**k * Phi + 1
    grads = [top * d for d in gradient(Phi)]
    grad_minus = PolyMap(d + x * k for d, x in zip(grads, ring.gens))
    grad_plus = PolyMap(d - x * k for d, x in zip(grads, ring.gens))

    names = variable_names(ring)
    big = make_ring([_multiplier_name(names)] + names)
    positions = list(range(1, n + 1))
    lam, xs = big.gens[0], big.gens[1:]

    def lift(p):
        return embed(p, big, positions)

    def augmented(G):
        return PolyMap([lam * x + lift(d) for x, d in zip(xs, gradient(G))] + [lift(G)])

    def rational_augmented(grad, G):
        scaled = lift(top)
        numerators = PolyMap([lam * x * scaled + lift(d) for x, d in zip(xs, grad)] + [lift(G)])
        return RationalFunctionMap(numerators, (k + 1,) * n + (k,), offset=1)

    return InfinityMaps(
        Phi=Phi,
        k=k,
        K=K,
        shift=shift,
        G_minus=G_minus,
        G_plus=G_plus,
        g_minus=RationalFunctionMap(PolyMap([G_minus]), (k,)),
        g_plus=RationalFunctionMap(PolyMap([G_plus]), (k,)),
        grad_g_minus=RationalFunctionMap(grad_minus, (k + 1,) * n),
        grad_g_plus=RationalFunctionMap(grad_plus, (k + 1,) * n),
        L_minus=augmented(G_minus),
        L_plus=augmented(G_plus),
        H_minus=rational_augmented(grad_minus, G_minus),
        H_plus=rational_augmented(grad_plus, G_plus),
    )


def gen_shifts(f, positive=False):
    """Candidate origins: lattice points, nearest first, where f exceeds 1

    Without `positive` the current origin comes first whatever f(0) is.

    Examples:
        >>> from milnordeg.poly import parse_polynomial
        >>> f = parse_polynomial("x", ["x", "y"])
        >>> list(it.islice(gen_shifts(f), 2))
        [(0, 0), (2, 0)]
        >>> next(gen_shifts(parse_polynomial("-x^2", ["x"]), positive=True))
        Traceback (most recent call last):
        ...
        milnordeg.TranslationExhausted: f <= 1 on the first 4096 lattice points
    """
    n = f.ring.ngens
    origin = (0,) * n

    if not positive:
        yield origin

    found = False

    for point in it.islice(gen_lattice_points(n), LATTICE_SCAN):
        if (positive or point != origin) and evaluate(f, point) > 1:
            found = True
            yield point

    if not found:
        raise TranslationExhausted(f"f <= 1 on the first {LATTICE_SCAN} lattice points")


class ScheduledDegree(NamedTuple):
    result: DegreeResult
    parameter: object
    successor: DegreeResult


def scheduled_degree(build, schedule, successor, options):
    """Degree at infinity of `build(p)` for the first p its successor confirms

    Args:
        build (Callable): Parameter to square polynomial map.
        schedule (Iterable): Parameters, in order.
        successor (Callable): The parameter after a given one.
        options (FormulaOptions): Budget and oracle switch.

    Returns:
        (ScheduledDegree): The accepted degree, parameter and successor degree.

    Raises:
        ScheduleExhausted: No parameter is confirmed.
        ResourceLimitExceeded: A Groebner basis outgrew the budget.
    """
    notes = []

    for parameter in schedule:
        pmap = build(parameter)

        try:
            result = degree_at_infinity_elk(pmap, options.budget, cross_check=False)
            following = degree_at_infinity_elk(build(successor(parameter)), options.budget, cross_check=False)
        except NotZeroDimensional as err:
            notes.append(f"{parameter}: {err}")
            continue

        if result.degree != following.degree:
            notes.append(f"{parameter}: degree {result.degree} but {following.degree} after it")
            continue

        logger.debug("degree at infinity %d accepted at %s", result.degree, parameter)

        if options.check and pmap.arity <= 3:
            try:
                result.check_with(oracle_degree_at_infinity(pmap, options.radius))
            except MilnorError as err:
                result.diagnostics.append(f"oracle unavailable: {err}")

        return ScheduledDegree(result, parameter, following)

    raise ScheduleExhausted(f"no exponent confirmed ({'; '.join(notes[-3:])})")


def with_translation(f, compute, positive=False):
    """Run `compute(shift)` at the origin, then at translated origins

    Returns:
        (Tuple[object, tuple, List[str]]): The result, the shift used and
            notes on the shifts that failed.
    """
    notes = []

    for shift in it.islice(gen_shifts(f, positive), MAX_SHIFTS):
        try:
            result = compute(shift)
        except ScheduleExhausted as err:
            notes.append(f"shift {shift}: {err}")
            continue

        if any(shift):
            logger.debug("origin moved to %s", shift)

        return result, shift, notes

    raise ScheduleExhausted("; ".join(notes) or "no origin to try")


def _record_degree(report, name, scheduled):
    report.parameters[name] = scheduled.result.degree
    report.parameters[f"{name}_parameter"] = scheduled.parameter
    report.parameters[f"{name}_successor"] = scheduled.successor.degree
    report.gates["k_stabilization"] = report.gates.get("k_stabilization", True) and (
        scheduled.successor.degree == scheduled.result.degree
    )

    if scheduled.result.cross_check:
        passed = report.gates.get("degree_cross_check", True) and not scheduled.result.conflict
        report.gates["degree_cross_check"] = passed


def _infinity_oracle(report, compute, options, arity, provenance=None):
    radii = doublings(options.radius, DEFAULTS["radius_steps"])
    value, radius, notes = stable_value(compute, radii)
    report.parameters["radius"] = radius
    report.diagnostics.extend(notes)
    return Quantity(value, provenance or ("oracle:circle" if arity == 2 else "oracle:sphere_mesh"))


class DegreeSet(NamedTuple):
    """Degrees at infinity computed at one origin, or why they are missing"""

    degrees: dict
    shift: tuple
    notes: list
    failure: str = None
    over_budget: bool = False

    def outcome(self, report, value):
        if self.failure:
            return Outcome(failed=self.over_budget, notes=[self.failure])

        for name, scheduled in self.degrees.items():
            _record_degree(report, name, scheduled)

        if any(self.shift):
            report.parameters["shift"] = self.shift

        report.diagnostics.extend(self.notes)
        methods = {s.result.method for s in self.degrees.values()}
        return Outcome(Quantity(value, f"formula:{'+'.join(sorted(methods))}"))

    def __getitem__(self, name):
        return self.degrees[name].result.degree


def degree_set(f, builders, schedule, successor, options, positive=False):
    """Degrees at infinity of several maps built from f, at one common origin

    Args:
        f (PolyElement): The function deciding candidate origins.
        builders (dict): Name to `(shift, parameter) -> square map`.

    Returns:
        (DegreeSet): Never raises; a failure is kept as a note.
    """

    def compute(shift):
        return {
            name: scheduled_degree(lambda p, b=build: b(shift, p), schedule, successor, options)
            for name, build in builders.items()
        }

    try:
        degrees, shift, notes = with_translation(f, compute, positive)
    except MilnorError as err:
        logger.warning("symbolic degrees at infinity unavailable: %s", err)
        failure = f"formula:infinity_signature failed: {err}"
        return DegreeSet(None, (), [], failure, isinstance(err, ResourceLimitExceeded))

    return DegreeSet(degrees, shift, notes)


def infinity_degree_report(F, options=None):
    """The degree at infinity of a square map, by signature and by the oracle

    Examples:
        >>> from milnordeg.poly import parse_map
        >>> report = infinity_degree_report(parse_map("x^2 - 1, y", ["x", "y"]))
        >>> report.lhs.value, report.rhs.value, report.verdict
        (0, 0, 'VERIFIED')
    """
    options = options or FormulaOptions()
    F = PolyMap(F)
    report = FormulaReport(INFINITY_DEGREE, {"F": format_map(F)})

    def formula():
        result = degree_at_infinity_elk(F, options.budget, cross_check=False)
        report.parameters["dimension"] = result.dimension
        return Quantity(result.degree, f"formula:{result.method}")

    def oracle():
        result = oracle_degree_at_infinity(F, options.radius)
        report.parameters["radius"] = result.parameters["radius"]
        return Quantity(result.degree, f"oracle:{result.method}")

    rhs = attempt(oracle, "oracle:degree") if options.check else Outcome()
    return finish(report, attempt(formula, "formula:infinity_signature"), rhs)


def _link_maps(f, K=None):
    def L_minus(shift, k):
        return build_infinity_maps(f, k, K, shift).L_minus

    def L_plus(shift, k):
        return build_infinity_maps(f, k, K, shift).L_plus

    return {"minus": L_minus, "plus": L_plus}


def _successor(k):
    return k + 1


def _pair_successor(pair):
    return pair[0] + 1, pair[1] + 1


def chi_link_infinity(f, relation=None, closed_set=False, options=None):
    """Euler characteristic of the link at infinity of `{f rel 0}` from deg L-/L+

    With n variables: `{f <= 0}` gives `deg L-`; `{f >= 0}` gives `deg L+`
    (n even) or `2 - deg L+` (n odd); `{f = 0}` gives the sum (n even) or
    the difference (n odd). In closed set mode (f >= 0, X = {f = 0}) the
    link of X is `deg L-`, computed with f(0) > 1, and `deg L+` must vanish.

    Args:
        f (PolyElement): The function.
        relation (str): One of `le`, `ge`, `eq` (ignored in closed set mode).
        closed_set (bool): Closed set mode.
        options (FormulaOptions): Schedules, radii and budgets.

    Returns:
        (FormulaReport): The report; the oracle adds a Mayer-Vietoris gate.
    """
    options = options or FormulaOptions()
    n = f.ring.ngens
    relation = "eq" if closed_set else get_relation(relation or "eq")
    formula_id = CLOSED_SET_LINK_INF if closed_set else LINK_INF[relation]
    report = FormulaReport(formula_id, {"f": format_polynomial(f)}, {"relation": relation})
    names = {"le": ["minus"], "ge": ["plus"]}.get(relation, ["minus", "plus"])
    builders = {name: build for name, build in _link_maps(f).items() if name in names}

    if closed_set:
        report.assumptions.append(NONNEGATIVE)

    degrees = degree_set(f, builders, options.k_schedule, _successor, options, positive=closed_set)

    if degrees.failure:
        value = None
    elif closed_set:
        value = degrees["minus"]
        report.gates["plus_degree_zero"] = degrees["plus"] == 0
    elif relation == "le":
        value = degrees["minus"]
    elif relation == "ge":
        value = degrees["plus"] if n % 2 == 0 else 2 - degrees["plus"]
    else:
        sign = 1 if n % 2 == 0 else -1
        value = degrees["minus"] + sign * degrees["plus"]

    lhs = degrees.outcome(report, value)

    def compute(radius):
        complex_, _, notes = perturbed(lambda level: link_complex(f, radius, level), 0)
        report.diagnostics.extend(f"radius {radius}: {note}" for note in notes)
        report.gates["mayer_vietoris"] = complex_.additivity_holds(sphere_chi(n))
        return complex_.chi(relation)

    rhs = attempt(lambda: _infinity_oracle(report, compute, options, n), "oracle:link") if options.check else Outcome()

    if relation == "eq":
        parity_gate(report, n, lhs.quantity, rhs.quantity)

    return finish(report, lhs, rhs)


def _gradient_maps(f, closed_set, options):
    """Builders of the rescaled gradients of g-/+, their schedule and successor"""

    def build(name):
        def square_map(shift, parameter):
            K, k = parameter if closed_set else (None, parameter)
            return positive_rescale_reduction(getattr(build_infinity_maps(f, k, K, shift), name))

        return square_map

    builders = {"minus": build("grad_g_minus"), "plus": build("grad_g_plus")}

    if closed_set:
        return builders, options.pair_schedule, _pair_successor

    return builders, options.k_schedule, _successor


def _link_chi(report, f, radius, relation, level=0):
    """A sign set characteristic on a large sphere; a moved level is noted"""
    value, _, notes = stable_link(f, radius, relation, level)
    report.diagnostics.extend(f"radius {radius}: {note}" for note in notes)
    return value


def _level_sum(report, f, relation, levels, radius):
    first, second, base = (_link_chi(report, f, radius, relation, level) for level in levels)
    return first + second - base


def semitame_identities(f, closed_set=False, options=None):
    """The level identities of a semitame function, or the closed set corollaries

    Without `closed_set`, for each relation the sum
    `chi(Lk{f rel a-}) + chi(Lk{f rel a+}) - chi(Lk{f rel 0})` is
    `1 - deg grad g-` (`<=`), `1 - (-1)^n deg grad g+` (`>=`) and
    `2 - chi(S^{n-1}) - deg grad g- - (-1)^n deg grad g+` (`=`).

    In closed set mode, with `Phi = omega^K f`: `chi(Lk X) = 1 - deg grad g+`,
    `deg grad g- = 1`, `chi(Lk{Phi >= a+}) = 1 - (-1)^n deg grad g+` and
    `chi(Lk{Phi = a+}) - chi(Lk X) = 1 - chi(S^{n-1}) - (-1)^n deg grad g+`.

    Args:
        f (PolyElement): The function.
        closed_set (bool): Closed set mode (f >= 0, X = {f = 0}).
        options (FormulaOptions): Levels, schedules, radii and budgets.

    Returns:
        (List[FormulaReport]): Three reports, or four in closed set mode.
    """
    options = options or FormulaOptions()
    n = f.ring.ngens
    builders, schedule, successor = _gradient_maps(f, closed_set, options)
    degrees = degree_set(f, builders, schedule, successor, options, positive=closed_set)
    sign = (-1) ** n
    inputs = {"f": format_polynomial(f)}
    assumptions = [NONNEGATIVE] if closed_set else [SEMITAME]
    probes = critical_loci_ideals([f], options.budget).sampled_diagnostics if n > 1 else []

    def new_report(formula_id, **parameters):
        report = FormulaReport(formula_id, inputs, parameters)
        report.assumptions.extend(assumptions)
        report.diagnostics.extend(probes)
        return report

    def oracle(report, compute):
        return attempt(lambda: _infinity_oracle(report, compute, options, n), "oracle:link") if options.check else Outcome()

    if not closed_set:
        levels = (options.alpha_minus, options.alpha_plus, 0)
        parameters = {"alpha_minus": options.alpha_minus, "alpha_plus": options.alpha_plus}
        reports = []

        for relation in ("le", "ge", "eq"):
            report = new_report(SEMITAME_LEVELS, relation=relation, **parameters)

            if degrees.failure:
                value = None
            elif relation == "le":
                value = 1 - degrees["minus"]
            elif relation == "ge":
                value = 1 - sign * degrees["plus"]
            else:
                value = 2 - sphere_chi(n) - (degrees["minus"] + sign * degrees["plus"])

            lhs = degrees.outcome(report, value)
            rhs = oracle(report, lambda r, rel=relation: _level_sum(report, f, rel, levels, r))
            reports.append(finish(report, lhs, rhs))

        return reports

    return _closed_set_reports(f, degrees, new_report, oracle)


def _closed_set_reports(f, degrees, new_report, oracle):
    """The four closed set corollaries, from the degrees of grad g-/+"""
    n = f.ring.ngens
    sign = (-1) ** n
    alpha = DEFAULTS["closed_alpha_plus"]
    plus = None if degrees.failure else degrees["plus"]
    Phi = None

    if plus is not None:
        K = degrees.degrees["plus"].parameter[0]
        Phi = build_infinity_maps(f, 1, K, degrees.shift).Phi

    report = new_report(GLOBAL_SZA)
    lhs = degrees.outcome(report, None if plus is None else 1 - plus)
    rhs = oracle(report, lambda r: _link_chi(report, f, r, "eq"))
    parity_gate(report, n, lhs.quantity, rhs.quantity)
    reports = [finish(report, lhs, rhs)]

    report = new_report(CLOSED_SET_MINUS_DEGREE)
    lhs = degrees.outcome(report, None if plus is None else degrees["minus"])
    rhs = Outcome()

    if lhs.quantity:
        report.gates["corollary_value"] = lhs.quantity.value == 1
        cross = degrees.degrees["minus"].result.cross_check

        if cross:
            rhs = Outcome(Quantity(cross.degree, f"oracle:{cross.method}"))

    reports.append(finish(report, lhs, rhs))

    report = new_report(CLOSED_SET_LEVEL_GE, alpha_plus=alpha)
    lhs = degrees.outcome(report, None if plus is None else 1 - sign * plus)
    rhs = oracle(report, lambda r: _link_chi(report, Phi, r, "ge", alpha)) if Phi else Outcome()
    reports.append(finish(report, lhs, rhs))

    def level_difference(radius):
        shifted = _link_chi(report, Phi, radius, "eq", alpha)
        return shifted - _link_chi(report, Phi, radius, "eq")

    report = new_report(CLOSED_SET_LEVEL_EQ, alpha_plus=alpha)
    lhs = degrees.outcome(report, None if plus is None else 1 - sphere_chi(n) - sign * plus)
    rhs = oracle(report, level_difference) if Phi else Outcome()
    reports.append(finish(report, lhs, rhs))
    return reports


def chi_sphere_fiber_global(F, options=None):
    """Euler characteristic of the global sphere fiber of F / |F|

    With `g+ = omega^K f_1^2 + omega^-k` (after moving the origin so that
    f_1(0) > 1), chi is `(1 - deg grad g+) / 2` for n even and
    `(1 + deg grad g+) / 2` for n odd. Each component link at infinity then
    has characteristic `2 chi` (n even) or `2 - 2 chi` (n odd). Conditions
    (A) and (B) are taken on trust.

    Returns:
        (List[FormulaReport]): The fiber report and one relation per component.
    """
    options = options or FormulaOptions()
    F = PolyMap(F)
    n, f1 = F.arity, F[0]
    inputs = {"F": format_map(F)}
    assumptions = assumption_notes(options.assume_cond_ab, ASSUME_COND_AB)
    probes = critical_loci_ideals(F, options.budget).sampled_diagnostics if len(F) < n else []

    def build(shift, pair):
        K, k = pair
        return positive_rescale_reduction(build_infinity_maps(f1**2, k, K, shift).grad_g_plus)

    builders = {"plus": build}
    degrees = degree_set(f1, builders, options.pair_schedule, _pair_successor, options, positive=True)
    report = FormulaReport(GLOBAL_SPHERE_FIBER, inputs)
    report.assumptions.extend(assumptions)
    report.diagnostics.extend(probes)
    value = None

    if not degrees.failure:
        doubled = 1 - degrees["plus"] if n % 2 == 0 else 1 + degrees["plus"]
        report.gates["integrality"] = doubled % 2 == 0
        value = doubled // 2

    lhs = degrees.outcome(report, value)

    def link_chi(f, report):
        return lambda radius: _link_chi(report, f, radius, "eq")

    def fiber_from_link():
        link = _infinity_oracle(report, link_chi(f1, report), options, n)

        if n % 2 == 0:
            report.gates["parity"] = link.value % 2 == 0
            return Quantity(link.value // 2, "oracle:link_relation")

        return Quantity((2 - link.value) // 2, "oracle:link_relation")

    rhs = attempt(fiber_from_link, "oracle:link_relation") if options.check else Outcome()
    reports = [finish(report, lhs, rhs)]
    chi = lhs.quantity.value if lhs.quantity else None

    for j, f in enumerate(F):
        relation = FormulaReport(LINK_INF_COMPONENT_RELATION, dict(inputs, component=j + 1))
        relation.assumptions.extend(assumptions)

        if chi is None:
            lhs = Outcome(failed=degrees.over_budget, notes=["the sphere fiber characteristic is unavailable"])
        else:
            relation.parameters["chi_sphere_fiber"] = chi
            lhs = Outcome(Quantity(2 * chi if n % 2 == 0 else 2 - 2 * chi, "formula:link_relation"))

        def oracle(f=f, relation=relation):
            return _infinity_oracle(relation, link_chi(f, relation), options, n)

        rhs = attempt(oracle, "oracle:link") if options.check else Outcome()
        parity_gate(relation, n, lhs.quantity, rhs.quantity)
        reports.append(finish(relation, lhs, rhs))

    return reports
