import itertools as it

import pytest

from milnordeg import (
    CONFLICT,
    UNCHECKED,
    UNSUPPORTED,
    VERIFIED,
    ArityError,
    NotZeroDimensional,
    UnstableAtBudget,
)
from milnordeg.formulas import (
    FormulaOptions,
    build_infinity_maps,
    chi_link_origin,
    chi_sphere_fiber_global,
    chi_tube_fiber,
    critical_loci_ideals,
    evaluate_entry,
    infinity_degree_report,
    local,
    local_degree_report,
    milnor_number_chi,
    milnor_report,
    run_formulas,
    semitame_identities,
    subtuple_link_relations,
    szafraniec_lift,
    verify_formula_suite,
)
from milnordeg.formulas.common import attempt, stable_value
from milnordeg.formulas.infinity import gen_shifts
from milnordeg.formulas.suite import expect, parse_source
from milnordeg.poly import format_map, format_polynomial, parse_map, parse_polynomial
from milnordeg.quotient import Budget
from milnordeg.report import FormulaReport, Quantity

XY = ["x", "y"]
XYZ = ["x", "y", "z"]

saddle = {
    "name": "saddle",
    "command": "local-degree",
    "vars": "x,y",
    "map": "2*x, -2*y",
    "params": {"epsilon": "1/4"},
    "expected": {"LOCAL_DEGREE": -1},
}


@pytest.mark.parametrize(
    ["text", "variables", "total", "mu", "chi"],
    [
        ("z^2", ["z"], False, 1, 2),
        ("z^3 - 3*z", ["z"], True, 2, 3),
        ("z1^2 + z2^2", ["z1", "z2"], False, 1, 0),
        ("z1^3 + z2^2", ["z1", "z2"], False, 2, -1),
    ],
)
def test_milnor_number(text, variables, total, mu, chi):
    number = milnor_number_chi(parse_polynomial(text, variables), total=total)
    assert (number.mu, number.chi) == (mu, chi)


def test_milnor_number_needs_isolated_critical_points():
    with pytest.raises(NotZeroDimensional):
        milnor_number_chi(parse_polynomial("z1^2", ["z1", "z2"]))


def test_milnor_report_without_real_form():
    f = parse_polynomial("z^3 - 3*z", ["z"])
    report = milnor_report(f, total=True, real_form=False)
    assert (report.value, report.rhs, report.verdict) == (3, None, UNCHECKED)
    assert report.parameters["mu"] == 2


def test_link_at_origin():
    report = chi_link_origin(parse_map("x", XY))
    assert (report.lhs.value, report.rhs.value, report.verdict) == (2, 2, VERIFIED)
    assert report.gates["parity"]
    assert report.parameters["c"]


def test_lift_needs_vanishing_components():
    with pytest.raises(ValueError):
        szafraniec_lift(parse_map("x + 1", XY))


def test_tube_fiber_khimshiashvili():
    report = chi_tube_fiber(parse_map("x^2 - y^2", XY), "khimshiashvili")
    assert (report.lhs.value, report.rhs.value, report.verdict) == (2, 2, VERIFIED)
    assert report.formula_id == "KHIMSHIASHVILI"


def test_tube_fiber_in_odd_dimension():
    report = chi_tube_fiber(parse_map("x, y", XYZ))
    assert report.lhs.value == 1
    assert report.gates == {"component_degrees_zero": True}


def test_tube_fiber_modes():
    with pytest.raises(ValueError):
        chi_tube_fiber(parse_map("x", XY), "isolated")

    with pytest.raises(ArityError):
        chi_tube_fiber(parse_map("x, y", XY), "khimshiashvili")


def test_local_degree_report():
    report = local_degree_report(parse_map("x^2 - y^2, 2*x*y", XY))
    assert (report.lhs.value, report.rhs.value, report.verdict) == (2, 2, VERIFIED)
    assert report.gates == {"functional_independence": True}


def test_local_degree_report_without_oracle():
    options = FormulaOptions(check=False)
    report = local_degree_report(parse_map("2*x, -2*y", XY), options)
    assert (report.value, report.verdict) == (-1, UNCHECKED)


def test_infinity_degree_report():
    report = infinity_degree_report(parse_map("x^2 - 1, y", XY))
    assert (report.lhs.value, report.rhs.value, report.verdict) == (0, 0, VERIFIED)


def test_critical_loci():
    loci = critical_loci_ideals(parse_map("x^2 + y^2", XY))
    assert format_map(loci.sigma_F.generators) == "2*x, 2*y"
    assert loci.inclusion
    assert loci.sampled_diagnostics

    with pytest.raises(ArityError):
        critical_loci_ideals(parse_map("x, y, x*y", XY))


def test_infinity_maps():
    maps = build_infinity_maps(parse_polynomial("x", XY), 1)
    assert format_polynomial(maps.G_minus) == "1/2*x^3 + 1/2*x*y^2 + x - 1"
    assert format_polynomial(maps.G_plus) == "1/2*x^3 + 1/2*x*y^2 + x + 1"
    assert (len(maps.L_minus), maps.L_minus.arity) == (3, 3)
    assert not maps.shifted

    with pytest.raises(ValueError):
        build_infinity_maps(parse_polynomial("3", XY), 1)


def test_shifts_start_at_the_origin():
    shifts = list(it.islice(gen_shifts(parse_polynomial("x", XY)), 2))
    assert shifts == [(0, 0), (2, 0)]
    assert next(gen_shifts(parse_polynomial("x", XY), positive=True)) == (2, 0)


def test_options():
    assert FormulaOptions(k=2).pair_schedule == ((2, 2),)
    assert FormulaOptions(c="1/4").c_schedule == (FormulaOptions(c="1/4").c,)

    with pytest.raises(ValueError):
        FormulaOptions(alpha_minus=1)

    with pytest.raises(ValueError):
        FormulaOptions(alpha_plus="-1/2")


def test_attempt_marks_failures():
    def unstable():
        raise UnstableAtBudget("still changing")

    outcome = attempt(unstable, "oracle:grid")
    assert (outcome.quantity, outcome.failed) == (None, True)
    assert "still changing" in outcome.notes[0]


def test_stable_value_needs_agreement():
    with pytest.raises(UnstableAtBudget):
        stable_value(lambda radius: radius, [1, 2, 4])


def test_run_formulas():
    reports = run_formulas("chi-link0", XY, "x")
    assert [(r.formula_id, r.value) for r in reports] == [("SZAFRANIEC_LINK0", 2)]


def test_complex_maps():
    source = parse_source("local-degree", ["z"], "z^2", {"complex": True})
    assert format_map(source) == "re_z^2 - im_z^2, 2*re_z*im_z"

    with pytest.raises(ValueError):
        parse_source("nonsense", XY, "x")


def test_entry():
    (report,) = evaluate_entry(saddle)
    assert (report.value, report.verdict) == (-1, VERIFIED)
    assert report.inputs["entry"] == "saddle"


def test_entry_with_wrong_expectation():
    entry = dict(saddle, expected={"LOCAL_DEGREE": 1})
    (report,) = evaluate_entry(entry)
    assert report.verdict == CONFLICT
    assert "expected 1, got -1" in report.diagnostics


@pytest.mark.parametrize(
    "entry",
    [
        dict(saddle, command="degree"),
        {"name": "no map", "command": "local-degree", "vars": "x,y"},
    ],
)
def test_bad_entries(entry):
    with pytest.raises(ValueError):
        evaluate_entry(entry)


def test_expected_keys_prefer_relations():
    report = FormulaReport("LINK_INF_LE", {}, {"relation": "le"})
    report.lhs, report.verdict = Quantity(1, "formula"), VERIFIED
    expected = {"LINK_INF_LE:le": 2, "LINK_INF_LE": 1}
    assert expect(report, expected).verdict == CONFLICT


def test_empty_corpus():
    assert verify_formula_suite([]) == []


def test_tube_fiber_moves_an_unstable_delta(monkeypatch):
    delta = FormulaOptions().delta

    def fiber_chi(constraints, box):
        return 1 if constraints[0][2] == delta / 2 else 2

    monkeypatch.setattr(local, "chi_region_grid", fiber_chi)
    report = chi_tube_fiber(parse_map("x^2 - y^2", XY), "khimshiashvili")
    assert (report.rhs.value, report.verdict) == (2, VERIFIED)
    assert report.parameters["perturbed_delta"] == delta * 17 / 16
    assert any("level moved" in note for note in report.diagnostics)


def test_subtuple_links():
    reports = subtuple_link_relations(parse_map("x, y", XYZ), 1)
    assert [r.inputs["subtuple"] for r in reports] == [(1,), (2,)]
    assert [(r.lhs.value, r.rhs.value, r.verdict) for r in reports] == [(2, 2, VERIFIED)] * 2
    assert all(r.formula_id == "LINK0_SUBTUPLE_RELATION" for r in reports)
    assert reports[0].parameters["l"] == 1


def test_subtuple_links_disagree_with_a_wrong_fiber():
    reports = subtuple_link_relations(parse_map("x, y", XYZ), 2)
    assert {r.verdict for r in reports} == {CONFLICT}


def test_tube_fiber_reports_run_the_sweep_on_request(monkeypatch):
    def tube_fiber(*args):
        report = FormulaReport("NONISOLATED_TUBE_CHI", {})
        report.lhs = Quantity(1, "formula:local_signature")
        return report

    monkeypatch.setattr(local, "chi_tube_fiber", tube_fiber)
    monkeypatch.setattr(local, "component_link_relations", lambda F, chi, options: ["components"])
    monkeypatch.setattr(local, "subtuple_link_relations", lambda F, chi, options: ["sweep"])
    F = parse_map("x, y", XYZ)

    assert local.tube_fiber_reports(F, "nonisolated")[1:] == ["components"]
    assert local.tube_fiber_reports(F, "nonisolated", subtuples=True)[1:] == ["components", "sweep"]
    assert local.tube_fiber_reports(F, "isolated_map", subtuples=True)[1:] == []


def test_semitame_levels():
    reports = semitame_identities(parse_polynomial("x", XY))
    assert [r.parameters["relation"] for r in reports] == ["le", "ge", "eq"]
    assert [r.value for r in reports] == [1, 1, 0]
    assert CONFLICT not in {r.verdict for r in reports}


def test_closed_set_corollaries():
    f = parse_polynomial("(x^2 + y^2 - 4)^2", XY)
    reports = semitame_identities(f, closed_set=True)
    ids = ["GLOBAL_SZA", "CLOSED_SET_MINUS_DEGREE", "CLOSED_SET_LEVEL_GE", "CLOSED_SET_LEVEL_EQ"]
    assert [r.formula_id for r in reports] == ids
    assert [r.value for r in reports] == [0, 1, 0, 0]
    assert reports[1].gates == {"corollary_value": True}
    assert CONFLICT not in {r.verdict for r in reports}


def test_sphere_fiber_over_budget_is_unsupported():
    F = parse_map("x1, x2", ["x1", "x2", "x3", "x4"])
    reports = chi_sphere_fiber_global(F, FormulaOptions(budget=Budget(terms=4)))
    assert [r.formula_id for r in reports] == ["GLOBAL_SPHERE_FIBER"] + ["LINK_INF_COMPONENT_RELATION"] * 2
    assert {r.verdict for r in reports} == {UNSUPPORTED}
    assert any("term budget" in note for note in reports[0].diagnostics)
