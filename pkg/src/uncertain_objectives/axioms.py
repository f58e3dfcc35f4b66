"""Executable adequacy conditions over populations.

Ten conditions are encoded.  Four come from the equality/addition family:

* quality - some perfectly equal, very-high-welfare population is at least
  as good as any population of very-low-positive welfare.
* inequality_aversion - a perfectly equal population at an intermediate
  level, of matching size, is at least as good as a two-tier population.
* egalitarian_dominance - a perfectly equal population pointwise above an
  equally sized one is strictly better.
* dominance_addition - adding positive-welfare lives while raising everyone
  else never makes a population worse.

Six are "avoid the problematic verdict" conditions, the negations of the
classic conclusions that every total ordering must otherwise accept:

* avoid_repugnant - a huge population of barely-positive lives must not
  beat a small very-happy one.
* avoid_sadistic - adding a few horribly tortured people must not beat
  adding many people with positive welfare.
* avoid_very_anti_egalitarian - a same-size population with lower total and
  average welfare and more inequality must not win strictly.
* dominance - pointwise-happier (at equal size) must not be ranked worse.
* addition - if adding a worse-off group is bad, adding an even larger and
  even worse-off group must not be better.
* priority_compensation - for some n, creating n very-high-welfare lives
  compensates one person's drop from very-low-positive to slightly
  negative welfare.

Informal magnitudes ("very high", "very low positive", "horribly tortured")
are explicit rational thresholds carried by each instance; the structural
premise of every instance is checked at construction.  Universally
quantified conditions are audited by bounded exhaustive search over a welfare
grid, so a clean audit certifies only the searched space.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Iterator

from .constraints import ConstraintGraph, Edge
from .errors import BoundsTooLargeError, ConflictingWorldIdsError, InvalidInstanceError
from .ordering import Verdict
from .populations import (
    EMPTY_POPULATION,
    Population,
    SwfKind,
    World,
    pointwise_dominates,
    population_union,
    swf_order,
    total_welfare,
)
from .rationals import as_rational, format_rational


class AxiomId(enum.Enum):
    QUALITY = "quality"
    INEQUALITY_AVERSION = "inequality_aversion"
    EGALITARIAN_DOMINANCE = "egalitarian_dominance"
    DOMINANCE_ADDITION = "dominance_addition"
    AVOID_REPUGNANT = "avoid_repugnant"
    AVOID_SADISTIC = "avoid_sadistic"
    AVOID_VERY_ANTI_EGALITARIAN = "avoid_very_anti_egalitarian"
    DOMINANCE = "dominance"
    ADDITION = "addition"
    PRIORITY_COMPENSATION = "priority_compensation"


STRICT_AXIOMS = frozenset({AxiomId.EGALITARIAN_DOMINANCE, AxiomId.AVOID_VERY_ANTI_EGALITARIAN})


class CheckResult(enum.Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"
    UNCERTAINLY_SATISFIED = "uncertainly_satisfied"


OrderFn = Callable[[World, World], Verdict]


@dataclass(frozen=True)
class AxiomInstance:
    """One concrete configuration of an axiom's premise.

    The instance requires the verdict "claim_better is at least as good as
    claim_worse" (strictly better for strict axioms).  The addition axiom is
    conditional: its claim only binds when the gate comparison (worse of the
    gate pair ranked strictly below the better) holds.
    """

    axiom: AxiomId
    worlds: tuple[World, ...]
    claim_worse: str
    claim_better: str
    strict: bool
    params: dict = field(default_factory=dict)
    gate: tuple[str, str] | None = None  # (world, baseline): gate holds when world < baseline

    def __post_init__(self):
        ids = [w.id for w in self.worlds]
        if len(set(ids)) != len(ids):
            raise InvalidInstanceError(f"duplicate world ids in instance: {ids}")
        if self.claim_worse not in ids or self.claim_better not in ids:
            raise InvalidInstanceError("claim endpoints must be premise worlds")
        if self.strict != (self.axiom in STRICT_AXIOMS):
            raise InvalidInstanceError(
                f"{self.axiom.value} must be {'strict' if self.axiom in STRICT_AXIOMS else 'non-strict'}"
            )
        _VALIDATORS[self.axiom](self)

    def world(self, world_id: str) -> World:
        for w in self.worlds:
            if w.id == world_id:
                return w
        raise KeyError(world_id)

    def to_json(self) -> dict:
        def fmt(v):
            if isinstance(v, Fraction):
                return format_rational(v)
            if isinstance(v, Population):
                return v.to_json()
            return v

        return {
            "axiom": self.axiom.value,
            "worlds": {w.id: w.population.to_json() for w in self.worlds},
            "claim": {
                "worse": self.claim_worse,
                "better": self.claim_better,
                "strict": self.strict,
            },
            "gate": list(self.gate) if self.gate else None,
            "params": {k: fmt(v) for k, v in sorted(self.params.items())},
        }


def _require(cond: bool, message: str):
    if not cond:
        raise InvalidInstanceError(message)


def _validate_quality(inst: AxiomInstance):
    high = inst.world(inst.claim_better).population
    low = inst.world(inst.claim_worse).population
    very_high = inst.params["very_high"]
    very_low = inst.params["very_low"]
    _require(Fraction(0) < very_low < very_high, "thresholds need 0 < very_low < very_high")
    _require(high.size > 0, "high population must be nonempty")
    _require(len(high.groups) == 1, "high population must be perfectly equal")
    _require(high.min_level() >= very_high, "high population must sit at or above very_high")
    _require(low.size > 0, "low population must be nonempty")
    _require(low.min_level() > 0, "low population must have positive welfare")
    _require(low.max_level() <= very_low, "low population must sit at or below very_low")


def _validate_inequality_aversion(inst: AxiomInstance):
    mixed = inst.world(inst.claim_worse).population
    equal = inst.world(inst.claim_better).population
    _require(len(mixed.groups) == 2, "mixed population must have exactly two welfare tiers")
    (c_level, c_count), (a_level, a_count) = mixed.groups
    _require(c_count > a_count, "lower tier must be larger than upper tier")
    _require(len(equal.groups) == 1, "equal population must be perfectly equal")
    b_level = equal.min_level()
    _require(c_level < b_level < a_level, "equal level must lie strictly between the tiers")
    _require(equal.size == mixed.size, "equal population must match the mixed size")


def _validate_egalitarian_dominance(inst: AxiomInstance):
    better = inst.world(inst.claim_better).population
    worse = inst.world(inst.claim_worse).population
    _require(better.size > 0, "populations must be nonempty")
    _require(better.size == worse.size, "populations must have equal size")
    _require(len(better.groups) == 1, "dominating population must be perfectly equal")
    _require(
        better.min_level() > worse.max_level(),
        "every member of the equal population must be strictly happier",
    )


def _validate_dominance_addition(inst: AxiomInstance):
    base = inst.world(inst.claim_worse).population
    augmented = inst.world(inst.claim_better).population
    raised = inst.params["raised"]
    added = inst.params["added"]
    _require(raised.size == base.size, "raised part must match the base population size")
    _require(
        pointwise_dominates(raised, base, strict=False),
        "raised part must weakly dominate the base pointwise",
    )
    _require(added.size > 0, "added part must be nonempty")
    _require(added.min_level() > 0, "added lives must have positive welfare")
    _require(
        population_union(raised, added) == augmented,
        "augmented world must equal raised part plus added lives",
    )


def _validate_avoid_repugnant(inst: AxiomInstance):
    high = inst.world(inst.claim_better).population
    crowd = inst.world(inst.claim_worse).population
    very_high = inst.params["very_high"]
    very_low = inst.params["very_low"]
    _require(Fraction(0) < very_low < very_high, "thresholds need 0 < very_low < very_high")
    _require(high.size > 0, "high population must be nonempty")
    _require(high.min_level() >= very_high, "high population must sit at or above very_high")
    _require(crowd.size > high.size, "crowd must outnumber the high population")
    _require(crowd.min_level() > 0, "crowd welfare must be positive")
    _require(crowd.max_level() <= very_low, "crowd welfare must sit at or below very_low")


def _validate_avoid_sadistic(inst: AxiomInstance):
    base = inst.params["base"]
    tortured = inst.params["tortured"]
    positive = inst.params["positive"]
    very_high = inst.params["very_high"]
    torture_max = inst.params["torture_max"]
    _require(torture_max < 0, "torture threshold must be negative")
    _require(base.size > 0, "base population must be nonempty")
    _require(base.min_level() >= very_high, "base population must be very happy")
    _require(tortured.size > 0, "tortured addition must be nonempty")
    _require(tortured.max_level() <= torture_max, "tortured lives must sit at or below torture_max")
    _require(positive.size > 0, "positive addition must be nonempty")
    _require(positive.min_level() > 0, "positive addition must have positive welfare")
    _require(tortured.size < positive.size, "tortured addition must be the smaller one")
    _require(
        inst.world(inst.claim_worse).population == population_union(base, tortured),
        "tortured world must equal base plus tortured addition",
    )
    _require(
        inst.world(inst.claim_better).population == population_union(base, positive),
        "positive world must equal base plus positive addition",
    )


def _validate_avoid_very_anti_egalitarian(inst: AxiomInstance):
    better = inst.world(inst.claim_better).population
    worse = inst.world(inst.claim_worse).population
    _require(better.size >= 2, "needs at least two people")
    _require(better.size == worse.size, "populations must have equal size")
    _require(len(better.groups) == 1, "reference population must have uniform happiness")
    _require(len(worse.groups) > 1, "rival population must be unequal")
    _require(
        total_welfare(worse) < total_welfare(better),
        "rival population must have lower total (hence average) welfare",
    )


def _validate_dominance(inst: AxiomInstance):
    better = inst.world(inst.claim_better).population
    worse = inst.world(inst.claim_worse).population
    _require(better.size > 0, "populations must be nonempty")
    _require(
        pointwise_dominates(better, worse, strict=True),
        "dominating population must be pointwise strictly happier at equal size",
    )


def _validate_addition(inst: AxiomInstance):
    base = inst.world(inst.params["base_world"]).population
    b_part = inst.params["b"]
    c_part = inst.params["c"]
    _require(base.size > 0, "base population must be nonempty")
    _require(b_part.size > 0, "group b must be nonempty")
    _require(b_part.max_level() < base.min_level(), "group b must be worse off than the base")
    _require(c_part.size > b_part.size, "group c must be larger than group b")
    _require(c_part.max_level() < b_part.min_level(), "group c must be worse off than group b")
    _require(
        inst.world(inst.claim_better).population == population_union(base, b_part),
        "b-added world must equal base plus group b",
    )
    _require(
        inst.world(inst.claim_worse).population == population_union(base, c_part),
        "c-added world must equal base plus group c",
    )
    _require(inst.gate is not None, "addition instances carry a gate comparison")


def _validate_priority_compensation(inst: AxiomInstance):
    base = inst.params["base"]
    low = inst.params["low_level"]
    neg = inst.params["negative_level"]
    high = inst.params["high_level"]
    count = inst.params["count"]
    very_high = inst.params["very_high"]
    very_low = inst.params["very_low"]
    _require(Fraction(0) < low <= very_low, "lowered person must start at very low positive welfare")
    _require(neg < 0, "lowered person must end slightly below zero")
    _require(high >= very_high, "created lives must have very high welfare")
    _require(isinstance(count, int) and count >= 1, "must create at least one life")
    _require(
        inst.world(inst.claim_worse).population
        == population_union(base, Population([(low, 1)])),
        "before-world must equal base plus the very-low-positive person",
    )
    _require(
        inst.world(inst.claim_better).population
        == population_union(base, Population([(neg, 1), (high, count)])),
        "after-world must equal base plus the lowered person plus the created lives",
    )


_VALIDATORS = {
    AxiomId.QUALITY: _validate_quality,
    AxiomId.INEQUALITY_AVERSION: _validate_inequality_aversion,
    AxiomId.EGALITARIAN_DOMINANCE: _validate_egalitarian_dominance,
    AxiomId.DOMINANCE_ADDITION: _validate_dominance_addition,
    AxiomId.AVOID_REPUGNANT: _validate_avoid_repugnant,
    AxiomId.AVOID_SADISTIC: _validate_avoid_sadistic,
    AxiomId.AVOID_VERY_ANTI_EGALITARIAN: _validate_avoid_very_anti_egalitarian,
    AxiomId.DOMINANCE: _validate_dominance,
    AxiomId.ADDITION: _validate_addition,
    AxiomId.PRIORITY_COMPENSATION: _validate_priority_compensation,
}


# ---------------------------------------------------------------------------
# Instance factories
# ---------------------------------------------------------------------------

def quality_instance(high: World, low: World, very_high, very_low) -> AxiomInstance:
    return AxiomInstance(
        axiom=AxiomId.QUALITY,
        worlds=(high, low),
        claim_worse=low.id,
        claim_better=high.id,
        strict=False,
        params={"very_high": as_rational(very_high), "very_low": as_rational(very_low)},
    )


def inequality_aversion_instance(mixed: World, equal: World) -> AxiomInstance:
    return AxiomInstance(
        axiom=AxiomId.INEQUALITY_AVERSION,
        worlds=(mixed, equal),
        claim_worse=mixed.id,
        claim_better=equal.id,
        strict=False,
    )


def egalitarian_dominance_instance(better: World, worse: World) -> AxiomInstance:
    return AxiomInstance(
        axiom=AxiomId.EGALITARIAN_DOMINANCE,
        worlds=(better, worse),
        claim_worse=worse.id,
        claim_better=better.id,
        strict=True,
    )


def dominance_addition_instance(
    base: World, augmented: World, raised: Population, added: Population
) -> AxiomInstance:
    return AxiomInstance(
        axiom=AxiomId.DOMINANCE_ADDITION,
        worlds=(base, augmented),
        claim_worse=base.id,
        claim_better=augmented.id,
        strict=False,
        params={"raised": raised, "added": added},
    )


def avoid_repugnant_instance(high: World, crowd: World, very_high, very_low) -> AxiomInstance:
    return AxiomInstance(
        axiom=AxiomId.AVOID_REPUGNANT,
        worlds=(high, crowd),
        claim_worse=crowd.id,
        claim_better=high.id,
        strict=False,
        params={"very_high": as_rational(very_high), "very_low": as_rational(very_low)},
    )


def avoid_sadistic_instance(
    base: Population,
    tortured: Population,
    positive: Population,
    very_high,
    torture_max,
    tortured_id: str = "with_tortured",
    positive_id: str = "with_positive",
) -> AxiomInstance:
    tortured_world = World(tortured_id, population_union(base, tortured))
    positive_world = World(positive_id, population_union(base, positive))
    return AxiomInstance(
        axiom=AxiomId.AVOID_SADISTIC,
        worlds=(tortured_world, positive_world),
        claim_worse=tortured_world.id,
        claim_better=positive_world.id,
        strict=False,
        params={
            "base": base,
            "tortured": tortured,
            "positive": positive,
            "very_high": as_rational(very_high),
            "torture_max": as_rational(torture_max),
        },
    )


def avoid_very_anti_egalitarian_instance(better: World, worse: World) -> AxiomInstance:
    return AxiomInstance(
        axiom=AxiomId.AVOID_VERY_ANTI_EGALITARIAN,
        worlds=(better, worse),
        claim_worse=worse.id,
        claim_better=better.id,
        strict=True,
    )


def dominance_instance(better: World, worse: World) -> AxiomInstance:
    return AxiomInstance(
        axiom=AxiomId.DOMINANCE,
        worlds=(better, worse),
        claim_worse=worse.id,
        claim_better=better.id,
        strict=False,
    )


def addition_instance(
    base: World, b_part: Population, c_part: Population,
    b_added_id: str = "with_b",
    c_added_id: str = "with_c",
) -> AxiomInstance:
    b_world = World(b_added_id, population_union(base.population, b_part))
    c_world = World(c_added_id, population_union(base.population, c_part))
    return AxiomInstance(
        axiom=AxiomId.ADDITION,
        worlds=(base, b_world, c_world),
        claim_worse=c_world.id,
        claim_better=b_world.id,
        strict=False,
        params={"base_world": base.id, "b": b_part, "c": c_part},
        gate=(b_world.id, base.id),
    )


def priority_compensation_instance(
    base: Population,
    low_level,
    negative_level,
    high_level,
    count: int,
    very_high,
    very_low,
    before_id: str = "before",
    after_id: str = "after",
) -> AxiomInstance:
    low = as_rational(low_level)
    neg = as_rational(negative_level)
    high = as_rational(high_level)
    before = World(before_id, population_union(base, Population([(low, 1)])))
    after = World(after_id, population_union(base, Population([(neg, 1), (high, count)])))
    return AxiomInstance(
        axiom=AxiomId.PRIORITY_COMPENSATION,
        worlds=(before, after),
        claim_worse=before.id,
        claim_better=after.id,
        strict=False,
        params={
            "base": base,
            "low_level": low,
            "negative_level": neg,
            "high_level": high,
            "count": count,
            "very_high": as_rational(very_high),
            "very_low": as_rational(very_low),
        },
    )


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------

def check_instance(instance: AxiomInstance, order: OrderFn) -> CheckResult:
    """Evaluate the instance's required verdict under a comparison function.

    The required direction (or equality, for non-strict axioms) is SATISFIED;
    a strict reversal is VIOLATED, as is equality where the axiom demands
    strict preference; incomparability is UNCERTAINLY_SATISFIED.  The gated
    addition axiom is violated only when its gate holds and its claim is
    reversed, with incomparability propagating as uncertainty.
    """
    worse = instance.world(instance.claim_worse)
    better = instance.world(instance.claim_better)
    claim = order(worse, better)
    if instance.gate is not None:
        gate_world = instance.world(instance.gate[0])
        baseline = instance.world(instance.gate[1])
        gate = order(gate_world, baseline)
        # Three-valued conjunction of "gate holds" and "claim reversed".
        gate_t = {Verdict.LESS: True, Verdict.INCOMPARABLE: None}.get(gate, False)
        rev_t = {Verdict.GREATER: True, Verdict.INCOMPARABLE: None}.get(claim, False)
        if gate_t is False or rev_t is False:
            return CheckResult.SATISFIED
        if gate_t is True and rev_t is True:
            return CheckResult.VIOLATED
        return CheckResult.UNCERTAINLY_SATISFIED
    if claim is Verdict.INCOMPARABLE:
        return CheckResult.UNCERTAINLY_SATISFIED
    if claim is Verdict.GREATER:
        return CheckResult.VIOLATED
    if claim is Verdict.EQUAL and instance.strict:
        return CheckResult.VIOLATED
    return CheckResult.SATISFIED


def order_from_partial(po) -> OrderFn:
    """Adapt a PartialOrder over ids into a World-level comparison function."""

    def order(u: World, v: World) -> Verdict:
        return po.verdict(u.id, v.id)

    return order


# ---------------------------------------------------------------------------
# Bounded audits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchBounds:
    """Finite grid an audit quantifies over.

    ``levels`` is the welfare alphabet; populations draw up to ``max_groups``
    distinct levels with per-group counts 1..max_count.  Thresholds default
    to the grid extremes: very_high = max level, very_low = smallest positive
    level, torture_max = most negative level.  ``base`` pins the background
    population for the sadistic and priority-compensation audits.
    """

    levels: tuple[Fraction, ...]
    max_count: int
    max_groups: int = 2
    budget: int = 1_000_000
    very_high: Fraction | None = None
    very_low: Fraction | None = None
    torture_max: Fraction | None = None
    base: Population | None = None

    def __init__(
        self,
        levels,
        max_count,
        max_groups=2,
        budget=1_000_000,
        very_high=None,
        very_low=None,
        torture_max=None,
        base=None,
    ):
        lv = tuple(sorted({as_rational(x) for x in levels}))
        if not lv:
            raise ValueError("bounds need at least one welfare level")
        if max_count < 1 or max_groups < 1:
            raise ValueError("max_count and max_groups must be at least 1")
        object.__setattr__(self, "levels", lv)
        object.__setattr__(self, "max_count", int(max_count))
        object.__setattr__(self, "max_groups", int(max_groups))
        object.__setattr__(self, "budget", int(budget))
        object.__setattr__(self, "very_high", as_rational(very_high) if very_high is not None else None)
        object.__setattr__(self, "very_low", as_rational(very_low) if very_low is not None else None)
        object.__setattr__(self, "torture_max", as_rational(torture_max) if torture_max is not None else None)
        object.__setattr__(self, "base", base)

    def eff_very_high(self) -> Fraction:
        if self.very_high is not None:
            return self.very_high
        return self.levels[-1]

    def eff_very_low(self) -> Fraction:
        if self.very_low is not None:
            return self.very_low
        positive = [l for l in self.levels if l > 0]
        if not positive:
            raise ValueError("no positive level in the grid to act as very_low")
        return positive[0]

    def eff_torture_max(self) -> Fraction:
        if self.torture_max is not None:
            return self.torture_max
        if self.levels[0] >= 0:
            raise ValueError("no negative level in the grid to act as torture_max")
        return self.levels[0]

    def to_json(self) -> dict:
        return {
            "levels": [format_rational(l) for l in self.levels],
            "max_count": self.max_count,
            "max_groups": self.max_groups,
            "budget": self.budget,
            "very_high": format_rational(self.eff_very_high()),
            "very_low": self.very_low and format_rational(self.very_low),
            "torture_max": self.torture_max and format_rational(self.torture_max),
            "base": self.base.to_json() if self.base else None,
        }


def _pop_space(levels: tuple[Fraction, ...], bounds: SearchBounds, min_groups: int = 1) -> int:
    return sum(
        comb(len(levels), k) * bounds.max_count**k
        for k in range(min_groups, bounds.max_groups + 1)
    )


def _populations(
    levels: Iterable[Fraction], bounds: SearchBounds, min_groups: int = 1
) -> Iterator[Population]:
    """All populations over the level subset, lexicographic: group count,
    then level combination, then per-group counts (each ascending)."""
    levels = tuple(levels)
    for k in range(min_groups, bounds.max_groups + 1):
        for combo in itertools.combinations(levels, k):
            for counts in itertools.product(range(1, bounds.max_count + 1), repeat=k):
                yield Population(zip(combo, counts))


@dataclass(frozen=True)
class ViolationWitness:
    swf: SwfKind
    axiom: AxiomId
    instance: AxiomInstance
    observed: Verdict
    note: str = ""

    def replay(self) -> bool:
        """Re-run the comparison; True when the violation reproduces."""
        order = swf_order(self.swf)
        if check_instance(self.instance, order) is not CheckResult.VIOLATED:
            return False
        worse = self.instance.world(self.instance.claim_worse)
        better = self.instance.world(self.instance.claim_better)
        return order(worse, better) is self.observed

    def to_json(self) -> dict:
        from .populations import swf_label

        return {
            "swf": swf_label(self.swf),
            "axiom": self.axiom.value,
            "instance": self.instance.to_json(),
            "observed": self.observed.value,
            "note": self.note,
        }


def _check_budget(estimate: int, bounds: SearchBounds):
    if estimate > bounds.budget:
        raise BoundsTooLargeError(estimate, bounds.budget)


def _first_violation(instances: Iterator[AxiomInstance], swf: SwfKind, axiom: AxiomId, note=""):
    order = swf_order(swf)
    for inst in instances:
        if check_instance(inst, order) is CheckResult.VIOLATED:
            worse = inst.world(inst.claim_worse)
            better = inst.world(inst.claim_better)
            return ViolationWitness(
                swf=swf, axiom=axiom, instance=inst, observed=order(worse, better), note=note
            )
    return None


def audit_swf(swf: SwfKind, axiom: AxiomId, bounds: SearchBounds) -> ViolationWitness | None:
    """Exhaustively search the bounded grid for a violation of one axiom.

    Returns the first witness under a fixed deterministic enumeration order
    (nested lexicographic component streams), or None, which certifies only
    the searched space.  The two existentially quantified axioms (quality,
    priority_compensation) return a witness only when every candidate the
    grid offers fails, and the witness note records that the claim is
    bounded.
    """
    return _AUDITS[axiom](swf, bounds)


def _audit_avoid_repugnant(swf, bounds):
    vh, vl = bounds.eff_very_high(), bounds.eff_very_low()
    hi_levels = tuple(l for l in bounds.levels if l >= vh)
    lo_levels = tuple(l for l in bounds.levels if 0 < l <= vl)
    _check_budget(_pop_space(hi_levels, bounds) * _pop_space(lo_levels, bounds), bounds)

    def instances():
        for a in _populations(hi_levels, bounds):
            for z in _populations(lo_levels, bounds):
                if z.size > a.size:
                    yield avoid_repugnant_instance(World("a", a), World("z", z), vh, vl)

    return _first_violation(instances(), swf, AxiomId.AVOID_REPUGNANT)


def _audit_avoid_sadistic(swf, bounds):
    vh = bounds.eff_very_high()
    tm = bounds.eff_torture_max()
    hi_levels = tuple(l for l in bounds.levels if l >= vh)
    torture_levels = tuple(l for l in bounds.levels if l <= tm)
    pos_levels = tuple(l for l in bounds.levels if l > 0)
    bases = [bounds.base] if bounds.base is not None else None
    base_space = 1 if bases else _pop_space(hi_levels, bounds)
    _check_budget(
        base_space * _pop_space(torture_levels, bounds) * _pop_space(pos_levels, bounds),
        bounds,
    )

    def instances():
        base_stream = bases if bases else _populations(hi_levels, bounds)
        for b in base_stream:
            for t in _populations(torture_levels, bounds):
                for p in _populations(pos_levels, bounds):
                    if t.size < p.size:
                        yield avoid_sadistic_instance(b, t, p, vh, tm)

    return _first_violation(instances(), swf, AxiomId.AVOID_SADISTIC)


def _audit_avoid_very_anti_egalitarian(swf, bounds):
    uniform_space = len(bounds.levels) * bounds.max_count
    _check_budget(uniform_space * _pop_space(bounds.levels, bounds, min_groups=2), bounds)

    def instances():
        for level in bounds.levels:
            for count in range(2, bounds.max_count + 1):
                a = Population([(level, count)])
                for b in _populations(bounds.levels, bounds, min_groups=2):
                    if b.size == a.size and total_welfare(b) < total_welfare(a):
                        yield avoid_very_anti_egalitarian_instance(World("a", a), World("b", b))

    return _first_violation(instances(), swf, AxiomId.AVOID_VERY_ANTI_EGALITARIAN)


def _audit_dominance(swf, bounds):
    space = _pop_space(bounds.levels, bounds)
    _check_budget(space * space, bounds)

    def instances():
        for a in _populations(bounds.levels, bounds):
            for b in _populations(bounds.levels, bounds):
                if a.size == b.size and pointwise_dominates(a, b, strict=True):
                    yield dominance_instance(World("a", a), World("b", b))

    return _first_violation(instances(), swf, AxiomId.DOMINANCE)


def _audit_egalitarian_dominance(swf, bounds):
    uniform_space = len(bounds.levels) * bounds.max_count
    _check_budget(uniform_space * _pop_space(bounds.levels, bounds), bounds)

    def instances():
        for level in bounds.levels:
            for count in range(1, bounds.max_count + 1):
                a = Population([(level, count)])
                for b in _populations(bounds.levels, bounds):
                    if b.size == count and b.max_level() < level:
                        yield egalitarian_dominance_instance(World("a", a), World("b", b))

    return _first_violation(instances(), swf, AxiomId.EGALITARIAN_DOMINANCE)


def _audit_dominance_addition(swf, bounds):
    pos_levels = tuple(l for l in bounds.levels if l > 0)
    space = _pop_space(bounds.levels, bounds)
    _check_budget(space * space * _pop_space(pos_levels, bounds), bounds)

    def instances():
        for a in _populations(bounds.levels, bounds):
            for raised in _populations(bounds.levels, bounds):
                if raised.size != a.size or not pointwise_dominates(raised, a, strict=False):
                    continue
                for added in _populations(pos_levels, bounds):
                    yield dominance_addition_instance(
                        World("a", a),
                        World("a_plus", population_union(raised, added)),
                        raised,
                        added,
                    )

    return _first_violation(instances(), swf, AxiomId.DOMINANCE_ADDITION)


def _audit_inequality_aversion(swf, bounds):
    n_levels = len(bounds.levels)
    _check_budget(
        comb(n_levels, 2) * bounds.max_count**2 * n_levels, bounds
    )

    def instances():
        for a_level, c_level in itertools.combinations(reversed(bounds.levels), 2):
            for a_count in range(1, bounds.max_count + 1):
                for c_count in range(a_count + 1, bounds.max_count + 1):
                    mixed = Population([(a_level, a_count), (c_level, c_count)])
                    for b_level in bounds.levels:
                        if c_level < b_level < a_level:
                            equal = Population([(b_level, a_count + c_count)])
                            yield inequality_aversion_instance(
                                World("mixed", mixed), World("equal", equal)
                            )

    return _first_violation(instances(), swf, AxiomId.INEQUALITY_AVERSION)


def _audit_addition(swf, bounds):
    space = _pop_space(bounds.levels, bounds)
    _check_budget(space**3, bounds)

    def instances():
        for a in _populations(bounds.levels, bounds):
            for b in _populations(bounds.levels, bounds):
                if b.max_level() >= a.min_level():
                    continue
                for c in _populations(bounds.levels, bounds):
                    if c.size > b.size and c.max_level() < b.min_level():
                        yield addition_instance(World("a", a), b, c)

    return _first_violation(instances(), swf, AxiomId.ADDITION)


def _audit_quality(swf, bounds):
    vh, vl = bounds.eff_very_high(), bounds.eff_very_low()
    hi_levels = tuple(l for l in bounds.levels if l >= vh)
    lo_levels = tuple(l for l in bounds.levels if 0 < l <= vl)
    hi_space = len(hi_levels) * bounds.max_count
    _check_budget(hi_space * _pop_space(lo_levels, bounds), bounds)
    order = swf_order(swf)
    first_witness = None
    candidates = 0
    for level in hi_levels:
        for count in range(1, bounds.max_count + 1):
            candidates += 1
            high = World("a", Population([(level, count)]))
            beaten = None
            for low_pop in _populations(lo_levels, bounds):
                inst = quality_instance(high, World("z", low_pop), vh, vl)
                if check_instance(inst, order) is CheckResult.VIOLATED:
                    beaten = inst
                    break
            if beaten is None:
                return None  # this candidate survives, so the axiom holds here
            if first_witness is None:
                first_witness = beaten
    if first_witness is None:
        return None
    worse = first_witness.world(first_witness.claim_worse)
    better = first_witness.world(first_witness.claim_better)
    return ViolationWitness(
        swf=swf,
        axiom=AxiomId.QUALITY,
        instance=first_witness,
        observed=order(worse, better),
        note=(
            f"all {candidates} perfectly equal very-high candidates in the grid are "
            "beaten by some very-low-positive population (bounded claim)"
        ),
    )


def _audit_priority_compensation(swf, bounds):
    vh, vl = bounds.eff_very_high(), bounds.eff_very_low()
    base = bounds.base if bounds.base is not None else EMPTY_POPULATION
    low_levels = tuple(l for l in bounds.levels if 0 < l <= vl)
    neg_levels = tuple(l for l in bounds.levels if l < 0)
    hi_levels = tuple(l for l in bounds.levels if l >= vh)
    _check_budget(
        len(low_levels) * len(neg_levels) * len(hi_levels) * bounds.max_count, bounds
    )
    order = swf_order(swf)
    for low in low_levels:
        for neg in neg_levels:
            for high in hi_levels:
                all_fail = True
                last = None
                for count in range(1, bounds.max_count + 1):
                    inst = priority_compensation_instance(
                        base, low, neg, high, count, vh, vl
                    )
                    if check_instance(inst, order) is not CheckResult.VIOLATED:
                        all_fail = False
                        break
                    last = inst
                if all_fail and last is not None:
                    worse = last.world(last.claim_worse)
                    better = last.world(last.claim_better)
                    return ViolationWitness(
                        swf=swf,
                        axiom=AxiomId.PRIORITY_COMPENSATION,
                        instance=last,
                        observed=order(worse, better),
                        note=(
                            f"no count up to {bounds.max_count} compensates the drop "
                            f"from {low} to {neg} (bounded claim)"
                        ),
                    )
    return None


_AUDITS = {
    AxiomId.QUALITY: _audit_quality,
    AxiomId.INEQUALITY_AVERSION: _audit_inequality_aversion,
    AxiomId.EGALITARIAN_DOMINANCE: _audit_egalitarian_dominance,
    AxiomId.DOMINANCE_ADDITION: _audit_dominance_addition,
    AxiomId.AVOID_REPUGNANT: _audit_avoid_repugnant,
    AxiomId.AVOID_SADISTIC: _audit_avoid_sadistic,
    AxiomId.AVOID_VERY_ANTI_EGALITARIAN: _audit_avoid_very_anti_egalitarian,
    AxiomId.DOMINANCE: _audit_dominance,
    AxiomId.ADDITION: _audit_addition,
    AxiomId.PRIORITY_COMPENSATION: _audit_priority_compensation,
}


# ---------------------------------------------------------------------------
# Cycle building
# ---------------------------------------------------------------------------

def build_cycle(conditions: list[AxiomInstance]) -> ConstraintGraph:
    """Assemble instances sharing a world namespace into a constraint graph.

    One edge per instance, from its required-worse to its required-better
    world, labeled by axiom id.  The same id naming two different populations
    is a namespace conflict.
    """
    populations: dict[str, Population] = {}
    order: list[str] = []
    for inst in conditions:
        for w in inst.worlds:
            seen = populations.get(w.id)
            if seen is None:
                populations[w.id] = w.population
                order.append(w.id)
            elif seen != w.population:
                raise ConflictingWorldIdsError(
                    f"world id {w.id!r} names two different populations"
                )
    edges = tuple(
        Edge(worse=inst.claim_worse, better=inst.claim_better, label=inst.axiom.value)
        for inst in conditions
    )
    return ConstraintGraph(tuple(order), edges)


def second_theorem_cycle(
    very_high=90,
    very_low=1,
    base_level=100,
    base_size: int = 2,
    extra_size: int = 6,
) -> list[AxiomInstance]:
    """A concrete four-world impossibility cycle from the equality/addition
    conditions, with parameters derived from the thresholds.

    Worlds: A (equal, very high) is raised and padded with barely-positive
    extras into A+ (dominance_addition), A+ is leveled into the bigger equal
    population Z at very-low-positive welfare (inequality_aversion), Z is at
    most as good as the equal very-high A* (quality), and A beats A* pointwise
    at equal size (egalitarian_dominance), closing the cycle.
    """
    vh = as_rational(very_high)
    vl = as_rational(very_low)
    a_level = as_rational(base_level)
    if not 0 < vl < vh < a_level:
        raise ValueError("need 0 < very_low < very_high < base_level")
    if extra_size <= base_size:
        raise ValueError("the added group must outnumber the base population")
    raised_level = a_level + 1
    c_level = vl / 2
    b_level = vl
    a = World("a", Population([(a_level, base_size)]))
    raised = Population([(raised_level, base_size)])
    added = Population([(c_level, extra_size)])
    a_plus = World("a_plus", population_union(raised, added))
    z = World("z", Population([(b_level, base_size + extra_size)]))
    a_star = World("a_star", Population([(vh, base_size)]))
    return [
        dominance_addition_instance(a, a_plus, raised, added),
        inequality_aversion_instance(a_plus, z),
        quality_instance(a_star, z, vh, vl),
        egalitarian_dominance_instance(a, a_star),
    ]
