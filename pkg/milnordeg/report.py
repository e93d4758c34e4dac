#!/usr/bin/env python
# vim: sw=4:ts=4:expandtab

"""
milnordeg.report
~~~~~~~~~~~~~~~~

Provides the result records (degrees, formula reports, envelopes), the
verdict rules and the text and json renderers

Examples:
    basic usage::

        >>> report = FormulaReport("KHIMSHIASHVILI", {"f": "x^2 - y^2"})
        >>> report.lhs = Quantity(2, "formula:local_signature")
        >>> report.rhs = Quantity(2, "oracle:grid")
        >>> judge(report).verdict
        'VERIFIED'
"""

import itertools as it
import json
import time
from dataclasses import dataclass, field

from meza.process import group

from . import (
    CONFLICT,
    UNCHECKED,
    UNSTABLE,
    UNSUPPORTED,
    VERDICTS,
    VERIFIED,
    __version__,
)
from .utils import format_rational

COLUMNS = (("formula", 28), ("lhs", 6), ("rhs", 6), ("verdict", 22), ("method", 0))


def to_jsonable(value):
    """Convert parameters into json friendly values (rationals print as `a/b`)

    Examples:
        >>> from sympy.polys.domains import QQ
        >>> to_jsonable({"c": QQ(1, 8), "k": 2, "shift": (2, 0)})
        {'c': '1/8', 'k': 2, 'shift': [2, 0]}
    """
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    elif isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    elif isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    elif hasattr(value, "as_dict"):
        return value.as_dict()
    elif hasattr(value, "denominator"):
        return format_rational(value)
    else:
        return str(value)


@dataclass
class DegreeResult:
    """A mapping degree together with how it was obtained

    Attributes:
        degree (int): The degree.
        method (str): One of the method constants of the package.
        parameters (dict): Radii, lifting parameters and similar.
        diagnostics (list): Free form notes.
        dimension (int): Quotient algebra dimension (signature methods).
        cross_check (DegreeResult): An independent computation of the same degree.
    """

    degree: int
    method: str
    parameters: dict = field(default_factory=dict)
    diagnostics: list = field(default_factory=list)
    dimension: int = None
    cross_check: "DegreeResult" = None

    @property
    def conflict(self):
        return self.cross_check is not None and self.cross_check.degree != self.degree

    def check_with(self, other):
        """Attach an independent result and note a disagreement

        Examples:
            >>> symbolic = DegreeResult(-1, "local_signature")
            >>> symbolic.check_with(DegreeResult(1, "winding_oracle")).conflict
            True
        """
        self.cross_check = other

        if self.conflict:
            self.diagnostics.append(
                f"{self.method} gives {self.degree} but {other.method} gives {other.degree}"
            )

        return self

    def as_dict(self):
        return {
            "degree": self.degree,
            "method": self.method,
            "parameters": to_jsonable(self.parameters),
            "dimension": self.dimension,
            "diagnostics": list(self.diagnostics),
            "cross_check": self.cross_check.as_dict() if self.cross_check else None,
            "conflict": self.conflict,
        }


@dataclass(frozen=True)
class Quantity:
    """An integer with its provenance, e.g. `formula:infinity_signature`"""

    value: int
    provenance: str

    def as_dict(self):
        return {"value": self.value, "provenance": self.provenance}


@dataclass
class FormulaReport:
    """One checked instance of an Euler characteristic formula

    `lhs` is the value predicted by the degree formula and `rhs` the value
    measured by an oracle. Either may be missing.
    """

    formula_id: str
    inputs: dict
    parameters: dict = field(default_factory=dict)
    lhs: Quantity = None
    rhs: Quantity = None
    verdict: str = UNCHECKED
    diagnostics: list = field(default_factory=list)
    assumptions: list = field(default_factory=list)
    gates: dict = field(default_factory=dict)

    @property
    def method(self):
        quantity = self.lhs or self.rhs
        return quantity.provenance if quantity else "none"

    @property
    def value(self):
        quantity = self.lhs or self.rhs
        return quantity.value if quantity else None

    def as_dict(self):
        return {
            "formula_id": self.formula_id,
            "inputs": to_jsonable(self.inputs),
            "parameters": to_jsonable(self.parameters),
            "lhs": self.lhs.as_dict() if self.lhs else None,
            "rhs": self.rhs.as_dict() if self.rhs else None,
            "verdict": self.verdict,
            "method": self.method,
            "diagnostics": list(self.diagnostics),
            "assumptions": list(self.assumptions),
            "gates": dict(self.gates),
        }


def judge(report, expected=None, oracle_failed=False, symbolic_failed=False):
    """Set the verdict of a report from its values and gates

    Args:
        report (FormulaReport): The report, with `lhs`, `rhs` and `gates` set.
        expected (int): A value the formula must reproduce.
        oracle_failed (bool): An oracle was tried and did not stabilize.
        symbolic_failed (bool): The symbolic path was tried and gave up (over
            budget or not zero dimensional).

    Returns:
        (FormulaReport): The same report.

    Examples:
        >>> report = FormulaReport("LINK_INF_LE", {})
        >>> report.lhs = Quantity(1, "formula:infinity_signature")
        >>> judge(report).verdict
        'UNCHECKED'
        >>> judge(report, expected=2).verdict
        'CONFLICT'
        >>> report.rhs = Quantity(1, "oracle:circle")
        >>> report.gates["parity"] = False
        >>> judge(report).verdict
        'CONFLICT'
        >>> report = FormulaReport("GLOBAL_SPHERE_FIBER", {})
        >>> judge(report, symbolic_failed=True).verdict
        'UNSUPPORTED-SYMBOLIC'
    """
    lhs, rhs = report.lhs, report.rhs
    failed = [name for name, passed in report.gates.items() if not passed]

    if failed:
        report.diagnostics.append(f"failed gates: {', '.join(sorted(failed))}")
        report.verdict = CONFLICT
    elif expected is not None and report.value is not None and report.value != expected:
        report.diagnostics.append(f"expected {expected}, got {report.value}")
        report.verdict = CONFLICT
    elif lhs and rhs:
        report.verdict = VERIFIED if lhs.value == rhs.value else CONFLICT
    elif rhs:
        report.verdict = UNSUPPORTED
    elif lhs:
        report.verdict = UNSTABLE if oracle_failed else UNCHECKED
    elif symbolic_failed and not oracle_failed:
        report.verdict = UNSUPPORTED
    else:
        report.verdict = UNSTABLE

    return report


def summarize(reports):
    """Count verdicts, in severity order

    Examples:
        >>> reports = [FormulaReport("A", {}, verdict="CONFLICT")]
        >>> reports.append(FormulaReport("B", {}, verdict="VERIFIED"))
        >>> summarize(reports)
        {'VERIFIED': 1, 'CONFLICT': 1}
    """
    records = ({"verdict": getattr(r, "verdict", VERIFIED)} for r in reports)
    counts = {verdict: len(grp) for verdict, grp in group(records, "verdict")}
    return {verdict: counts[verdict] for verdict in VERDICTS if verdict in counts}


def exit_code(reports, strict=False):
    """Process status for a list of reports

    Examples:
        >>> exit_code([FormulaReport("A", {}, verdict="UNSTABLE")])
        0
        >>> exit_code([FormulaReport("A", {}, verdict="UNSTABLE")], strict=True)
        3
    """
    verdicts = set(summarize(reports))

    if CONFLICT in verdicts:
        return 2
    elif strict and verdicts & {UNSUPPORTED, UNSTABLE}:
        return 3
    else:
        return 0


@dataclass
class ReportEnvelope:
    command: list
    reports: list = field(default_factory=list)
    version: str = __version__
    started: float = None
    wall_time: float = 0.0

    def __post_init__(self):
        if self.started is None:
            self.started = time.time()

    def close(self):
        self.wall_time = round(time.time() - self.started, 3)
        return self

    @property
    def summary(self):
        return summarize(self.reports)

    def as_dict(self):
        return {
            "version": self.version,
            "command": list(self.command),
            "wall_time": self.wall_time,
            "summary": self.summary,
            "reports": [report.as_dict() for report in self.reports],
        }


class Renderer:
    """Base renderer, producing the output as a stream of strings"""

    def __init__(self, envelope):
        self.envelope = envelope

    def header(self):
        return None

    def gen_body(self):
        yield from ()

    def footer(self):
        return None

    def gen_content(self):
        header, footer = self.header(), self.footer()
        filtered = filter(None, [[header] if header else None, self.gen_body(), [footer] if footer else None])
        return it.chain.from_iterable(filtered)


class TextRenderer(Renderer):
    """A fixed width table, one row per report

    Examples:
        >>> envelope = ReportEnvelope(["verify"])
        >>> report = FormulaReport("MILNOR_CHI", {}, lhs=Quantity(2, "formula"))
        >>> envelope.reports.append(judge(report))
        >>> print(emit_report(envelope), end="")  #doctest: +NORMALIZE_WHITESPACE
        milnordeg v0.4.0: verify
        formula                        lhs   rhs verdict               method
        MILNOR_CHI                       2     - UNCHECKED             formula
        UNCHECKED: 1
    """

    def header(self):
        names = "".join(
            f"{name:<{width}}" if name in {"formula", "verdict"} else f"{name:>{width}} "
            for name, width in COLUMNS
        )
        return f"milnordeg v{self.envelope.version}: {' '.join(self.envelope.command)}\n{names.rstrip()}\n"

    @staticmethod
    def _cell(quantity):
        return "-" if quantity is None else str(quantity.value)

    def row(self, report):
        if isinstance(report, DegreeResult):
            name, lhs, rhs = "DEGREE", str(report.degree), "-"
            verdict, method = (CONFLICT if report.conflict else VERIFIED), report.method

            if report.cross_check:
                rhs = str(report.cross_check.degree)
        else:
            name, lhs, rhs = report.formula_id, self._cell(report.lhs), self._cell(report.rhs)
            verdict, method = report.verdict, report.method

        return f"{name:<28}{lhs:>6} {rhs:>6} {verdict:<22}{method}\n"

    def gen_body(self):
        for report in self.envelope.reports:
            yield self.row(report)

            for note in report.diagnostics:
                yield f"    {note}\n"

    def footer(self):
        counts = self.envelope.summary
        return ", ".join(f"{verdict}: {count}" for verdict, count in counts.items()) + "\n"


class JsonRenderer(Renderer):
    """
    >>> envelope = ReportEnvelope(["verify"])
    >>> json.loads(emit_report(envelope, "json"))["reports"]
    []
    """

    def gen_body(self):
        yield json.dumps(self.envelope.as_dict(), indent=2)
        yield "\n"


RENDERERS = {"text": TextRenderer, "json": JsonRenderer}


def emit_report(envelope, fmt="text"):
    """Serialize an envelope as a text table or a json document"""
    return "".join(RENDERERS[fmt](envelope).gen_content())
