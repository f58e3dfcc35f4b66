"""Uncertainty certificates and decision rules for objectives over populations.

The package turns classic population-ethics impossibility arguments into
computable objects: exact-rational populations and social welfare orderings,
executable adequacy conditions with bounded audits, constraint graphs whose
cycles certify impossibility, partial-order machinery quantifying the minimal
incomparability any consistent objective must carry, belief matrices over
world pairs with exact linear-ordering-polytope feasibility, the minimax
violation bound for cyclic constraints, and decision rules (margin,
quantilized, partial-order) over the resulting uncertain objectives.
"""

__version__ = "0.1.0"

from .axioms import (
    AxiomId,
    AxiomInstance,
    CheckResult,
    SearchBounds,
    ViolationWitness,
    audit_swf,
    build_cycle,
    check_instance,
    second_theorem_cycle,
)
from .beliefs import (
    BeliefMatrix,
    CycleSpec,
    FeasibilityResult,
    MinimaxBound,
    OrderDistribution,
    check_path_coherence,
    exact_feasibility,
    matrix_from_distribution,
    minimax_cycle_bound,
    path_bounds,
    rotation_mixture,
    violation_probabilities,
)
from .constraints import (
    ConstraintGraph,
    Edge,
    ImpossibilityCertificate,
    PartialOrder,
    UncertaintyPattern,
    find_cycle,
    min_uncertainty_size,
    partial_order_from,
    pattern_is_valid,
    valid_uncertainty_patterns,
    validate_partial_order,
)
from .decisions import (
    DecisionOutcome,
    OutcomeKind,
    PartialPolicy,
    RuleConfig,
    decide_margin,
    decide_partial,
    decide_quantilized,
    prob_best,
)
from .ordering import Verdict
from .populations import (
    AverageWelfare,
    CriticalLevel,
    Population,
    TotalWelfare,
    World,
    average_welfare,
    is_perfectly_equal,
    population,
    population_union,
    swf_compare,
    swf_order,
    total_welfare,
)
from .rationals import as_rational, format_rational
from .scenario import Scenario, parse_scenario, serialize_scenario

__all__ = [name for name in dir() if not name.startswith("_")]
