#!/usr/bin/env python
# vim: sw=4:ts=4:expandtab

"""
milnordeg.formulas
~~~~~~~~~~~~~~~~~~

Provides the Euler characteristic formulas: each one builds its auxiliary
functions, searches its free parameters, computes the degrees it needs and
checks the result against an oracle in a `FormulaReport`

Examples:
    basic usage::

        >>> from milnordeg.poly import parse_map
        >>> chi_link_origin(parse_map("x", ["x", "y"])).verdict
        'VERIFIED'
"""

from .common import FormulaOptions  # noqa: F401
from .infinity import (  # noqa: F401
    InfinityMaps,
    build_infinity_maps,
    chi_link_infinity,
    chi_sphere_fiber_global,
    infinity_degree_report,
    semitame_identities,
)
from .local import (  # noqa: F401
    CriticalLociReport,
    Lift,
    MilnorNumber,
    chi_link_origin,
    chi_tube_fiber,
    component_link_relations,
    critical_loci_ideals,
    local_degree_report,
    milnor_number_chi,
    milnor_report,
    subtuple_link_relations,
    szafraniec_lift,
    tube_fiber_reports,
)
from .suite import (  # noqa: F401
    COMMANDS,
    evaluate_entry,
    run_formulas,
    verify_formula_suite,
)
