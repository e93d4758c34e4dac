#!/usr/bin/env python
# vim: sw=4:ts=4:expandtab

"""
milnordeg.main
~~~~~~~~~~~~~~

Provides the command line: parses the inputs, dispatches to the formula and
oracle operations and writes the text or json report

Examples:
    literal blocks::

        milnordeg local-degree --vars x,y --map "2*x,-2*y"
        milnordeg chi-link-inf --vars x,y --poly x --relation le -f json
        milnordeg oracle chi --vars x,y --poly "x^2 - y^2" --radius 1
        milnordeg verify --suite local-basics --strict

Inputs given as a file path hold a header declaring the variables followed
by one polynomial or map per line::

    vars: x, y
    2*x, 2*y
    2*x, -2*y

Attributes:
    ORACLES (tuple): The kinds of the `oracle` command.
"""

import logging
import pathlib
import sys
import traceback
from argparse import ArgumentParser, RawTextHelpFormatter
from importlib import import_module, util
from operator import itemgetter
from pkgutil import iter_modules
from pprint import pprint
from typing import NamedTuple

from meza.io import IterStringIO, write

from . import MilnorError, __version__
from .chi_oracle import link_complex, zero_set_chi
from .degree_oracle import oracle_degree, oracle_degree_at_infinity, oracle_local_degree
from .formulas import COMMANDS, FormulaOptions, verify_formula_suite
from .formulas.suite import parse_source
from .poly import (
    PolyMap,
    format_map,
    format_polynomial,
    parse_map,
    parse_polynomial,
    split_variables,
)
from .quotient import Budget
from .report import (
    FormulaReport,
    Quantity,
    ReportEnvelope,
    emit_report,
    exit_code,
    judge,
)
from .utils import RELATIONS, get_relation, sphere_chi, to_rational

logger = logging.getLogger(__name__)

ORACLES = ("degree", "chi")
SUITES = import_module("milnordeg.suites")
MODULES = tuple(itemgetter(1)(m).replace("_", "-") for m in iter_modules(SUITES.__path__))


class Parser(ArgumentParser):
    """Argument parser exiting with status 1 on usage errors"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


parser = Parser(  # pylint: disable=invalid-name
    description="description: milnordeg computes Euler characteristics of Milnor fibers and links from degrees",
    prog="milnordeg",
    usage="%(prog)s [options] <command> [<kind>] [<dest>]",
    formatter_class=RawTextHelpFormatter,
)


def load_suite_module(name):
    return import_module(f"milnordeg.suites.{name.replace('-', '_')}")


def load_custom_module(filepath: str):
    """
    >>> mod = load_custom_module("milnordeg/suites/exploratory.py")
    >>> mod.__name__, len(mod.suite)
    ('exploratory', 1)
    """
    path = pathlib.Path(filepath)
    spec = util.spec_from_file_location(path.stem, path)
    module = util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


parser.add_argument(
    dest="command",
    nargs="?",
    choices=[*COMMANDS, "oracle", "verify"],
    metavar="command",
    help=f"one of {', '.join([*COMMANDS, 'oracle', 'verify'])}",
)
parser.add_argument(
    dest="rest",
    nargs="*",
    metavar="kind/dest",
    help="the oracle kind (degree or chi) for `oracle`, then the output file (default: stdout)",
)
parser.add_argument("--vars", metavar="NAMES", help="comma separated variables, e.g. x,y")
parser.add_argument("--map", metavar="EXPR", help="comma separated polynomials, or a file")
parser.add_argument("--poly", metavar="EXPR", help="a polynomial, or a file")
parser.add_argument("--zeros", metavar="EXPR", help="the polynomials of a zero set, or a file")
parser.add_argument(
    "--relation",
    choices=sorted(RELATIONS),
    help="the sign condition (default: all three for chi-link-inf, `eq` for oracle chi)",
)
parser.add_argument("--level", type=to_rational, default=0, help="threshold of oracle chi (default: 0)")
parser.add_argument("--radius", type=to_rational, help="sphere radius (default: 16 at infinity, 1 for oracle chi)")
parser.add_argument("--epsilon", type=to_rational, help="first radius of small spheres (default: 1/8)")
parser.add_argument(
    "--delta",
    type=to_rational,
    help="regular value of tube fibers, its sign included (default: 1/64)",
)
parser.add_argument("--k", type=int, help="fixed exponent k (default: searched)")
parser.add_argument("--K", type=int, help="fixed exponent K of omega^K f (default: searched)")
parser.add_argument("--c", type=to_rational, help="fixed lifting coefficient c (default: searched)")
parser.add_argument(
    "--mode",
    choices=["isolated_map", "nonisolated", "khimshiashvili"],
    default="isolated_map",
    help="tube fiber formula (default: isolated_map)",
)
parser.add_argument(
    "--subtuples",
    action="store_true",
    default=False,
    help="with --mode nonisolated, also compare the links of every sub-tuple of components",
)
parser.add_argument(
    "--assume-milnor-ab",
    action="store_true",
    default=False,
    help="assert Milnor conditions (a) and (b)",
)
parser.add_argument(
    "--assume-cond-ab",
    action="store_true",
    default=False,
    help="assert Conditions (A) and (B)",
)
parser.add_argument(
    "--complex",
    action="store_true",
    default=False,
    help=(
        "read maps as complex polynomials (real and imaginary parts); with\n"
        "milnor-number, check the Milnor number against the real part"
    ),
)
parser.add_argument(
    "--global",
    dest="total",
    action="store_true",
    default=False,
    help="total Milnor number, or the oracle degree at infinity",
)
parser.add_argument(
    "--closed-set",
    action="store_true",
    default=False,
    help="f >= 0 and X = {f = 0} (chi-link-inf and semitame)",
)
parser.add_argument("--suite", metavar="NAME", choices=MODULES, help="built-in corpus for verify")
parser.add_argument(
    "-x",
    "--custom",
    metavar="FILE_PATH",
    help="path to a custom corpus file exposing `suite`",
    type=load_custom_module,
)
parser.add_argument("-f", "--format", choices=["text", "json"], default="text", help="report format (default: text)")
parser.add_argument(
    "-S",
    "--strict",
    help="exit with 3 when a symbolic path is unsupported or an oracle unstable",
    action="store_true",
    default=False,
)
parser.add_argument("-B", "--budget", metavar="TERMS", type=int, help="Groebner basis term budget (default: 20000)")
parser.add_argument(
    "-L",
    "--list-suites",
    help="list the built-in corpora",
    action="store_true",
    default=False,
)
parser.add_argument(
    "-V", "--version", help="show version and exit", action="store_true", default=False
)
parser.add_argument(
    "-o",
    "--overwrite",
    action="store_true",
    default=False,
    help="overwrite destination file if it exists",
)
parser.add_argument(
    "-d",
    "--debug",
    action="store_true",
    default=False,
    help="display the options and arguments passed to the parser",
)
parser.add_argument(
    "-v", "--verbose", help="verbose output", action="store_true", default=False
)


class CommandRequest(NamedTuple):
    """A validated command: its inputs are parsed, its options built"""

    command: list
    name: str
    kind: str = None
    sources: tuple = ()
    flags: dict = None
    options: FormulaOptions = None
    corpus: tuple = ()
    strict: bool = False


def read_inputs(value, variables=None):
    """Variables and expressions of an inline expression or an input file

    Examples:
        >>> read_inputs("x^2 - y^2", ["x", "y"])
        (['x', 'y'], ['x^2 - y^2'])
        >>> read_inputs("data/test/saddles.txt")
        (['x', 'y'], ['2*x, 2*y', '2*x, -2*y', '3*x^2 - 3*y^2, -6*x*y'])
    """
    path = pathlib.Path(value)

    if not path.is_file():
        if not variables:
            raise ValueError("--vars is required with an inline expression")

        return list(variables), [value]

    with path.open(encoding="utf-8") as f:
        lines = [line.strip() for line in f if line.strip() and not line.lstrip().startswith("#")]

    header, *expressions = lines or [""]
    name, _, names = header.partition(":")

    if name.strip() != "vars":
        raise ValueError(f"{value}: the first line must declare the variables, e.g. `vars: x, y`")

    return split_variables(names), expressions


def make_options(args):
    kwargs = {
        "c": args.c,
        "k": args.k,
        "K": args.K,
        "assume_milnor_ab": args.assume_milnor_ab,
        "assume_cond_ab": args.assume_cond_ab,
    }

    if args.budget:
        kwargs["budget"] = Budget(args.budget)

    if args.epsilon:
        kwargs["epsilon"] = args.epsilon

    if args.radius:
        kwargs["radius"] = args.radius

    if args.delta:
        kwargs["delta"] = abs(args.delta)

    return FormulaOptions(**kwargs)


def _input_value(args, key):
    value = getattr(args, key)

    if value is None:
        raise ValueError(f"--{key} is required")

    return value


def make_request(args, argv):
    """Validate the arguments and parse every input before any computation"""
    variables = split_variables(args.vars) if args.vars else None
    options = make_options(args)
    echo = list(argv)
    rest = list(args.rest)
    kind = rest.pop(0) if args.command == "oracle" and rest else None

    if args.command == "oracle" and kind not in ORACLES:
        raise ValueError(f"oracle kind must be one of {', '.join(ORACLES)}")
    elif len(rest) > 1:
        raise ValueError(f"unexpected arguments {' '.join(rest[1:])}")

    if args.command == "verify":
        module = args.custom or (load_suite_module(args.suite) if args.suite else None)

        if module is None:
            raise ValueError("verify needs --suite or --custom")

        return CommandRequest(echo, "verify", options=options, corpus=module.suite, strict=args.strict)

    if args.command == "oracle":
        key = "map" if kind == "degree" else "zeros" if args.zeros else "poly"
        names, texts = read_inputs(_input_value(args, key), variables)
        parse = parse_polynomial if key == "poly" else parse_map
        sources = [parse(text, names) for text in texts]
        flags = {"relation": get_relation(args.relation or "eq"), "level": args.level, "radius": args.radius, "total": args.total}
        return CommandRequest(echo, "oracle", kind, sources, flags, options, strict=args.strict)

    flags = {
        "relation": get_relation(args.relation) if args.relation else None,
        "closed_set": args.closed_set,
        "mode": args.mode,
        "sign": -1 if args.delta and args.delta < 0 else 1,
        "total": args.total,
        "complex": args.complex,
        "subtuples": args.subtuples,
    }

    if args.complex and args.command != "milnor-number" and COMMANDS[args.command][0] != "map":
        raise ValueError(f"--complex does not apply to {args.command}")

    names, texts = read_inputs(_input_value(args, COMMANDS[args.command][0]), variables)
    sources = [parse_source(args.command, names, text, flags) for text in texts]
    return CommandRequest(echo, args.command, None, sources, flags, options, strict=args.strict)


def oracle_degree_result(pmap, flags, options):
    """The oracle degree at a fixed radius, or stabilized at 0 or at infinity"""
    if flags.get("radius"):
        return oracle_degree(pmap, flags["radius"])
    elif flags["total"]:
        return oracle_degree_at_infinity(pmap)
    else:
        return oracle_local_degree(pmap, options.epsilon)


def oracle_chi_report(source, flags, options):
    """The Euler characteristic of a sign set or zero set on a sphere, with its cells

    Examples:
        >>> f = parse_polynomial("x", ["x", "y"])
        >>> report = oracle_chi_report(f, {"relation": "le", "level": 0}, FormulaOptions())
        >>> report.lhs.value, report.parameters["cells"], report.verdict
        (1, {'V': 2, 'E': 1}, 'UNCHECKED')
    """
    radius = flags.get("radius") or to_rational(1)
    relation, level = flags["relation"], flags["level"]

    if isinstance(source, PolyMap):
        inputs = {"zeros": format_map(source)}
        parameters = {"radius": radius}
        value, provenance = zero_set_chi(source, radius), "oracle:zero_set"
    else:
        complex_ = link_complex(source, radius, level)
        inputs = {"f": format_polynomial(source)}
        parameters = {"radius": radius, "relation": relation, "level": level, "cells": complex_.counts(relation)}
        parameters.update(complex_.parameters)
        value, provenance = complex_.chi(relation), f"oracle:{'circle' if source.ring.ngens == 2 else 'sphere'}"

    report = FormulaReport("ORACLE_CHI", inputs, parameters, lhs=Quantity(value, provenance))

    if "cells" in parameters:
        report.gates["additivity"] = complex_.additivity_holds(sphere_chi(source.ring.ngens))

    return judge(report)


def run_command(request):
    """Run a validated request

    Returns:
        (Tuple[ReportEnvelope, int]): The closed envelope and the exit status.
    """
    envelope = ReportEnvelope(request.command)

    if request.name == "verify":
        envelope.reports.extend(verify_formula_suite(request.corpus, request.options))
    elif request.name == "oracle":
        for source in request.sources:
            if request.kind == "degree":
                envelope.reports.append(oracle_degree_result(source, request.flags, request.options))
            else:
                envelope.reports.append(oracle_chi_report(source, request.flags, request.options))
    else:
        runner = COMMANDS[request.name][2]

        for source in request.sources:
            envelope.reports.extend(runner(source, request.flags, request.options))

    envelope.close()
    return envelope, exit_code(envelope.reports, request.strict)


def run(args=None):  # noqa: C901
    """Parses the CLI options and runs the main program"""
    argv = sys.argv[1:] if args is None else args
    args = parser.parse_intermixed_args(args)

    if args.debug:
        pprint(dict(args._get_kwargs()))  # pylint: disable=W0212
        sys.exit(0)

    if args.version:
        print(f"v{__version__}")
        sys.exit(0)

    if args.list_suites:
        print(", ".join(MODULES))
        sys.exit(0)

    if not args.command:
        parser.print_usage(sys.stderr)
        sys.exit(1)

    level = logging.DEBUG if args.verbose else logging.WARNING
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        request = make_request(args, argv)
        envelope, code = run_command(request)
        content = emit_report(envelope, args.format)
    except (MilnorError, ValueError) as err:
        sys.exit(f"{parser.prog}: error: {err}")

    dest_path = args.rest[-1] if len(args.rest) > (args.command == "oracle") else None

    if dest_path and pathlib.Path(dest_path).exists() and not args.overwrite:
        sys.exit(f"{parser.prog}: error: {dest_path} exists, use -o to overwrite it")

    dest = open(dest_path, "w", encoding="utf-8") if dest_path else sys.stdout

    try:
        write(dest, IterStringIO(content), overwrite=args.overwrite)
    except Exception:  # pylint: disable=broad-except
        code = 1
        traceback.print_exc()
    finally:
        dest.close() if dest_path else None
        sys.exit(code)


if __name__ == "__main__":
    run()
