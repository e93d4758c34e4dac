#!/usr/bin/env python
# vim: sw=4:ts=4:expandtab

"""
milnordeg.formulas.suite
~~~~~~~~~~~~~~~~~~~~~~~~

Provides the command table shared by the command line and the corpora, and
the corpus runner

A corpus entry is a dict::

    {
        "name": "saddle",
        "command": "local-degree",
        "vars": "x,y",
        "map": "2*x, -2*y",
        "params": {"epsilon": "1/4"},
        "expected": {"LOCAL_DEGREE": -1},
    }

`params` holds command flags (`relation`, `closed_set`, `mode`, `sign`,
`total`, `complex`) and `FormulaOptions` fields. `expected` maps a formula
id, optionally suffixed with `:relation` or `:component`, to an integer.

Examples:
    basic usage::

        >>> verify_formula_suite([])
        []
"""

import logging

from .. import CONFLICT
from ..poly import (
    PolyMap,
    complex_real_form,
    parse_map,
    parse_polynomial,
    split_variables,
)
from .common import FormulaOptions
from .infinity import (
    chi_link_infinity,
    chi_sphere_fiber_global,
    infinity_degree_report,
    semitame_identities,
)
from .local import (
    chi_link_origin,
    local_degree_report,
    milnor_report,
    tube_fiber_reports,
)

logger = logging.getLogger(__name__)

FLAGS = {"relation", "closed_set", "mode", "sign", "total", "complex", "subtuples"}


def _local_degree(source, flags, options):
    return [local_degree_report(source, options)]


def _infinity_degree(source, flags, options):
    return [infinity_degree_report(source, options)]


def _link0(source, flags, options):
    return [chi_link_origin(source, options)]


def _tube(source, flags, options):
    mode = flags.get("mode", "isolated_map")
    return tube_fiber_reports(source, mode, options, flags.get("sign", 1), flags.get("subtuples", False))


def _link_infinity(source, flags, options):
    closed_set = flags.get("closed_set", False)
    relations = [None] if closed_set else [flags["relation"]] if flags.get("relation") else ["le", "ge", "eq"]
    return [chi_link_infinity(source, relation, closed_set, options) for relation in relations]


def _global_fiber(source, flags, options):
    return chi_sphere_fiber_global(source, options)


def _semitame(source, flags, options):
    return semitame_identities(source, flags.get("closed_set", False), options)


def _milnor(source, flags, options):
    return [milnor_report(source, flags.get("total", False), options, flags.get("complex", True))]


# command: (input key, parser, runner)
COMMANDS = {
    "local-degree": ("map", parse_map, _local_degree),
    "infinity-degree": ("map", parse_map, _infinity_degree),
    "chi-link0": ("zeros", parse_map, _link0),
    "chi-fiber-tube": ("map", parse_map, _tube),
    "chi-link-inf": ("poly", parse_polynomial, _link_infinity),
    "chi-global-fiber": ("map", parse_map, _global_fiber),
    "semitame": ("poly", parse_polynomial, _semitame),
    "milnor-number": ("poly", parse_polynomial, _milnor),
}


def _expected_keys(report):
    extra = report.parameters.get("relation") or report.inputs.get("component")
    return [f"{report.formula_id}:{extra}", report.formula_id] if extra else [report.formula_id]


def expect(report, expected):
    """Turn a report into a CONFLICT when its value differs from an expected one

    Examples:
        >>> from milnordeg.report import FormulaReport, Quantity
        >>> report = FormulaReport("MILNOR_CHI", {}, lhs=Quantity(2, "formula"), verdict="UNCHECKED")
        >>> expect(report, {"MILNOR_CHI": 3}).verdict
        'CONFLICT'
    """
    key = next((key for key in _expected_keys(report) if key in expected), None)

    if key is not None and report.value is not None and report.value != expected[key]:
        report.diagnostics.append(f"expected {expected[key]}, got {report.value}")
        report.verdict = CONFLICT

    return report


def parse_complex_map(text, variables):
    """Real and imaginary parts of comma separated complex polynomials

    Examples:
        >>> from milnordeg.poly import format_map
        >>> format_map(parse_complex_map("z^2", ["z"]))
        're_z^2 - im_z^2, 2*re_z*im_z'
    """
    components = []

    for chunk in text.split(","):
        components.extend(complex_real_form(chunk, variables))

    return PolyMap(components)


def parse_source(command, variables, text, flags=None):
    """Parse the input of a command, reading maps as complex with `complex`"""
    try:
        key, parse, _ = COMMANDS[command]
    except KeyError:
        raise ValueError(f"unknown command {command!r}") from None

    if key == "map" and (flags or {}).get("complex"):
        return parse_complex_map(text, list(variables))

    return parse(text, list(variables))


def run_formulas(command, variables, text, flags=None, options=None):
    """Run one command on an inline input

    Args:
        command (str): A key of `COMMANDS`.
        variables (Sequence[str]): The variables.
        text (str): The polynomial or comma separated map.
        flags (dict): Command flags.
        options (FormulaOptions): Shared options.

    Returns:
        (List[FormulaReport]): The reports.

    Examples:
        >>> reports = run_formulas("chi-link0", ["x", "y"], "x")
        >>> [(r.formula_id, r.value) for r in reports]
        [('SZAFRANIEC_LINK0', 2)]
    """
    source = parse_source(command, variables, text, flags)
    runner = COMMANDS[command][2]
    return runner(source, flags or {}, options or FormulaOptions())


def evaluate_entry(entry, options=None):
    """Run the command of one corpus entry and apply its expected values"""
    options = options or FormulaOptions()
    command = entry["command"]

    if command not in COMMANDS:
        raise ValueError(f"unknown command {command!r} in entry {entry.get('name')!r}")

    key = COMMANDS[command][0]
    params = dict(entry.get("params", {}))
    flags = {name: params.pop(name) for name in FLAGS if name in params}
    options = options.update(**params) if params else options

    if key not in entry:
        raise ValueError(f"entry {entry.get('name')!r} needs a {key!r} field")

    reports = run_formulas(command, split_variables(entry["vars"]), entry[key], flags, options)

    for report in reports:
        report.inputs["entry"] = entry.get("name", command)
        expect(report, entry.get("expected", {}))

    return reports


def verify_formula_suite(corpus, options=None):
    """Run every entry of a corpus, in order

    Returns:
        (List[FormulaReport]): All reports, entry by entry.
    """
    reports = []

    for entry in corpus:
        logger.debug("running %s", entry.get("name", entry["command"]))
        reports.extend(evaluate_entry(entry, options))

    return reports
