"""Scenario documents: the JSON interchange format of the CLI.

A scenario declares a world namespace (id -> population), constraints over
those worlds (raw labeled edges or structured axiom instances), and
optionally a belief matrix, an explicit order distribution, and a decision
rule configuration.  Rationals are written as integers, "p/q" strings, or
decimal strings; serialization is canonical (sorted keys, "p/q" forms), so
parse -> serialize -> parse is the identity on canonical documents.

Schema versions are carried in a ``$schema`` field and validated on parse.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .axioms import (
    AxiomId,
    AxiomInstance,
    addition_instance,
    avoid_repugnant_instance,
    avoid_sadistic_instance,
    avoid_very_anti_egalitarian_instance,
    dominance_addition_instance,
    dominance_instance,
    egalitarian_dominance_instance,
    inequality_aversion_instance,
    priority_compensation_instance,
    quality_instance,
)
from .beliefs import BeliefMatrix, OrderDistribution
from .constraints import ConstraintGraph, Edge
from .decisions import PartialPolicy, RuleConfig
from .errors import IntegrityError, SchemaError
from .populations import Population, World
from .rationals import as_rational, format_rational

SCENARIO_SCHEMA = "uncertain-objectives/scenario/v1"
MATRIX_SCHEMA = "uncertain-objectives/matrix/v1"


def _expect(cond: bool, path: str, message: str):
    if not cond:
        raise SchemaError(path, message)


def _parse_rational(value, path: str):
    try:
        return as_rational(value)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from exc


def parse_population(value, path: str) -> Population:
    _expect(isinstance(value, list), path, "population must be a list of [welfare, count] pairs")
    groups = []
    for i, pair in enumerate(value):
        _expect(
            isinstance(pair, list) and len(pair) == 2,
            f"{path}[{i}]",
            "expected a [welfare, count] pair",
        )
        level = _parse_rational(pair[0], f"{path}[{i}][0]")
        _expect(
            isinstance(pair[1], int) and not isinstance(pair[1], bool) and pair[1] > 0,
            f"{path}[{i}][1]",
            "count must be a positive integer",
        )
        groups.append((level, pair[1]))
    return Population(groups)


@dataclass
class Constraint:
    """One scenario constraint: always an edge, sometimes a full instance."""

    label: str
    edge: Edge
    instance: AxiomInstance | None
    raw: dict


@dataclass
class Scenario:
    worlds: dict[str, Population]
    constraints: list[Constraint] = field(default_factory=list)
    belief_matrix: BeliefMatrix | None = None
    distribution: OrderDistribution | None = None
    rule: RuleConfig | None = None

    def graph(self) -> ConstraintGraph:
        return ConstraintGraph(
            tuple(sorted(self.worlds)), tuple(c.edge for c in self.constraints)
        )

    def world(self, world_id: str) -> World:
        return World(world_id, self.worlds[world_id])

    def to_json(self) -> dict:
        doc: dict = {
            "$schema": SCENARIO_SCHEMA,
            "worlds": {wid: self.worlds[wid].to_json() for wid in sorted(self.worlds)},
            "constraints": [c.raw for c in self.constraints],
        }
        if self.belief_matrix is not None:
            doc["belief_matrix"] = matrix_to_json(self.belief_matrix, embed=True)
        if self.distribution is not None:
            doc["distribution"] = self.distribution.to_json()
        if self.rule is not None:
            doc["rule"] = {k: v for k, v in self.rule.to_json().items() if v is not None}
        return doc

    def canonical_text(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":")) + "\n"

    def digest(self) -> str:
        return "sha256:" + hashlib.sha256(self.canonical_text().encode()).hexdigest()


def serialize_scenario(s: Scenario) -> str:
    return json.dumps(s.to_json(), sort_keys=True, indent=2) + "\n"


def _world_ref(doc, key, path, worlds) -> World:
    _expect(key in doc, path, f"missing required field {key!r}")
    wid = doc[key]
    _expect(isinstance(wid, str), f"{path}.{key}", "world reference must be a string id")
    if wid not in worlds:
        raise IntegrityError(f"{path}.{key}: undeclared world id {wid!r}")
    return World(wid, worlds[wid])


def _parse_constraint(doc, i, worlds) -> Constraint:
    path = f"constraints[{i}]"
    _expect(isinstance(doc, dict), path, "constraint must be an object")
    label = doc.get("label", f"C{i + 1}")
    _expect(isinstance(label, str) and label, f"{path}.label", "label must be a nonempty string")

    if "axiom" not in doc:
        for key in ("from", "to"):
            _expect(key in doc, path, f"raw edge needs {key!r}")
            if doc[key] not in worlds:
                raise IntegrityError(f"{path}.{key}: undeclared world id {doc[key]!r}")
        return Constraint(
            label=label,
            edge=Edge(worse=doc["from"], better=doc["to"], label=label),
            instance=None,
            raw=doc,
        )

    name = doc["axiom"]
    try:
        axiom = AxiomId(name)
    except ValueError:
        raise SchemaError(f"{path}.axiom", f"unknown axiom id {name!r}") from None

    def ref(key):
        return _world_ref(doc, key, path, worlds)

    def pop(key):
        _expect(key in doc, path, f"missing required field {key!r}")
        return parse_population(doc[key], f"{path}.{key}")

    def rat(key):
        _expect(key in doc, path, f"missing required field {key!r}")
        return _parse_rational(doc[key], f"{path}.{key}")

    if axiom is AxiomId.QUALITY:
        inst = quality_instance(ref("high"), ref("low"), rat("very_high"), rat("very_low"))
    elif axiom is AxiomId.INEQUALITY_AVERSION:
        inst = inequality_aversion_instance(ref("mixed"), ref("equal"))
    elif axiom is AxiomId.EGALITARIAN_DOMINANCE:
        inst = egalitarian_dominance_instance(ref("better"), ref("worse"))
    elif axiom is AxiomId.DOMINANCE_ADDITION:
        inst = dominance_addition_instance(
            ref("base"), ref("augmented"), pop("raised"), pop("added")
        )
    elif axiom is AxiomId.AVOID_REPUGNANT:
        inst = avoid_repugnant_instance(
            ref("high"), ref("crowd"), rat("very_high"), rat("very_low")
        )
    elif axiom is AxiomId.AVOID_SADISTIC:
        tortured_world = ref("tortured_world")
        positive_world = ref("positive_world")
        inst = avoid_sadistic_instance(
            pop("base"),
            pop("tortured"),
            pop("positive"),
            rat("very_high"),
            rat("torture_max"),
            tortured_id=tortured_world.id,
            positive_id=positive_world.id,
        )
        _check_world_consistency(inst, worlds, path)
    elif axiom is AxiomId.AVOID_VERY_ANTI_EGALITARIAN:
        inst = avoid_very_anti_egalitarian_instance(ref("better"), ref("worse"))
    elif axiom is AxiomId.DOMINANCE:
        inst = dominance_instance(ref("better"), ref("worse"))
    elif axiom is AxiomId.ADDITION:
        b_world = ref("b_added_world")
        c_world = ref("c_added_world")
        inst = addition_instance(
            ref("base_world"),
            pop("b"),
            pop("c"),
            b_added_id=b_world.id,
            c_added_id=c_world.id,
        )
        _check_world_consistency(inst, worlds, path)
    else:  # PRIORITY_COMPENSATION
        before = ref("before")
        after = ref("after")
        count = doc.get("count")
        _expect(
            isinstance(count, int) and not isinstance(count, bool) and count >= 1,
            f"{path}.count",
            "count must be a positive integer",
        )
        inst = priority_compensation_instance(
            pop("base"),
            rat("low_level"),
            rat("negative_level"),
            rat("high_level"),
            count,
            rat("very_high"),
            rat("very_low"),
            before_id=before.id,
            after_id=after.id,
        )
        _check_world_consistency(inst, worlds, path)

    return Constraint(
        label=label,
        edge=Edge(worse=inst.claim_worse, better=inst.claim_better, label=label),
        instance=inst,
        raw=doc,
    )


def _check_world_consistency(inst: AxiomInstance, worlds, path: str):
    """Instance-built worlds must match the scenario's declared populations."""
    for w in inst.worlds:
        declared = worlds.get(w.id)
        if declared is not None and declared != w.population:
            raise IntegrityError(
                f"{path}: world {w.id!r} declares a population inconsistent "
                "with the axiom's construction"
            )


def parse_matrix(doc, path: str = "belief_matrix", worlds=None) -> BeliefMatrix:
    _expect(isinstance(doc, dict), path, "matrix must be an object")
    _expect("worlds" in doc and "z" in doc, path, "matrix needs 'worlds' and 'z'")
    ids = doc["worlds"]
    _expect(
        isinstance(ids, list) and all(isinstance(w, str) for w in ids),
        f"{path}.worlds",
        "worlds must be a list of string ids",
    )
    if worlds is not None:
        for w in ids:
            if w not in worlds:
                raise IntegrityError(f"{path}.worlds: undeclared world id {w!r}")
    z = doc["z"]
    _expect(isinstance(z, list), f"{path}.z", "z must be a list of rows")
    grid = []
    for i, row in enumerate(z):
        _expect(isinstance(row, list), f"{path}.z[{i}]", "row must be a list")
        grid.append([_parse_rational(v, f"{path}.z[{i}][{j}]") for j, v in enumerate(row)])
    tag = doc.get("evidence_tag", "")
    _expect(isinstance(tag, str), f"{path}.evidence_tag", "evidence_tag must be a string")
    try:
        return BeliefMatrix(ids, grid, tag)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from exc


def matrix_to_json(m: BeliefMatrix, embed: bool = False) -> dict:
    doc = {
        "worlds": list(m.worlds),
        "z": [
            [format_rational(v) if hasattr(v, "denominator") else v for v in row]
            for row in m.z
        ],
    }
    if m.evidence_tag:
        doc["evidence_tag"] = m.evidence_tag
    if not embed:
        doc["$schema"] = MATRIX_SCHEMA
    return doc


def parse_distribution(doc, path: str = "distribution", worlds=None) -> OrderDistribution:
    _expect(isinstance(doc, dict), path, "distribution must be an object")
    _expect("orders" in doc and "p" in doc, path, "distribution needs 'orders' and 'p'")
    orders = doc["orders"]
    _expect(isinstance(orders, list), f"{path}.orders", "orders must be a list")
    for i, o in enumerate(orders):
        _expect(
            isinstance(o, list) and all(isinstance(w, str) for w in o),
            f"{path}.orders[{i}]",
            "each order must be a list of world ids, best first",
        )
        if worlds is not None:
            for w in o:
                if w not in worlds:
                    raise IntegrityError(f"{path}.orders[{i}]: undeclared world id {w!r}")
    probs = doc["p"]
    _expect(isinstance(probs, list), f"{path}.p", "p must be a list")
    values = [_parse_rational(v, f"{path}.p[{i}]") for i, v in enumerate(probs)]
    try:
        return OrderDistribution(orders, values)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from exc


def _parse_rule(doc, path: str = "rule") -> RuleConfig:
    _expect(isinstance(doc, dict), path, "rule must be an object")
    kind = doc.get("kind")
    _expect(kind in ("margin", "quantilized", "partial"), f"{path}.kind",
            "kind must be margin, quantilized, or partial")
    seed = doc.get("seed", 0)
    _expect(isinstance(seed, int) and not isinstance(seed, bool), f"{path}.seed",
            "seed must be an integer")
    delta = tau = None
    policy = None
    if kind == "margin":
        _expect("delta" in doc, path, "margin rule needs delta")
        delta = _parse_rational(doc["delta"], f"{path}.delta")
        _expect(0 <= delta <= 1, f"{path}.delta", "delta must lie in [0, 1]")
    elif kind == "quantilized":
        _expect("tau" in doc, path, "quantilized rule needs tau")
        tau = _parse_rational(doc["tau"], f"{path}.tau")
        _expect(0 <= tau <= 1, f"{path}.tau", "tau must lie in [0, 1]")
    else:
        name = doc.get("policy")
        try:
            policy = PartialPolicy(name)
        except ValueError:
            raise SchemaError(
                f"{path}.policy",
                f"policy must be one of {[p.value for p in PartialPolicy]}, got {name!r}",
            ) from None
    return RuleConfig(kind=kind, delta=delta, tau=tau, policy=policy, seed=seed)


def parse_scenario(text) -> Scenario:
    """Parse and validate a scenario document from JSON text or bytes."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from exc
    _expect(isinstance(doc, dict), "$", "scenario must be a JSON object")
    schema = doc.get("$schema", SCENARIO_SCHEMA)
    _expect(schema == SCENARIO_SCHEMA, "$schema", f"expected {SCENARIO_SCHEMA!r}")
    unknown = set(doc) - {
        "$schema", "worlds", "constraints", "belief_matrix", "distribution", "rule",
    }
    _expect(not unknown, "$", f"unknown top-level fields: {sorted(unknown)}")

    _expect("worlds" in doc and isinstance(doc["worlds"], dict), "worlds",
            "worlds must be an object of id -> population")
    worlds: dict[str, Population] = {}
    for wid in sorted(doc["worlds"]):
        _expect(isinstance(wid, str) and wid, "worlds", "world ids must be nonempty strings")
        worlds[wid] = parse_population(doc["worlds"][wid], f"worlds.{wid}")

    constraints = []
    if "constraints" in doc:
        _expect(isinstance(doc["constraints"], list), "constraints", "must be a list")
        constraints = [
            _parse_constraint(c, i, worlds) for i, c in enumerate(doc["constraints"])
        ]

    matrix = None
    if "belief_matrix" in doc:
        matrix = parse_matrix(doc["belief_matrix"], "belief_matrix", worlds)

    distribution = None
    if "distribution" in doc:
        distribution = parse_distribution(doc["distribution"], "distribution", worlds)

    rule = None
    if "rule" in doc:
        rule = _parse_rule(doc["rule"])

    return Scenario(
        worlds=worlds,
        constraints=constraints,
        belief_matrix=matrix,
        distribution=distribution,
        rule=rule,
    )
