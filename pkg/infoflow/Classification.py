""" Classifications and infomorphisms """

from dataclasses import dataclass, field
from functools import cached_property
import logging

from infoflow.common import (
    DEFAULT_LIFT_CAP,
    EndpointMismatch,
    UnknownElement,
    ValidationResult,
    check_cap,
    check_total_map,
    is_identifier,
    require_total_map,
    subsets,
    validation,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Classification:
    name: str
    instances: frozenset = field(default_factory=frozenset)
    types: frozenset = field(default_factory=frozenset)
    incidence: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'instances', frozenset(self.instances))
        object.__setattr__(self, 'types', frozenset(self.types))
        object.__setattr__(self, 'incidence', frozenset(tuple(pair) for pair in self.incidence))

    @cached_property
    def intents(self) -> dict:
        result = {instance: set() for instance in self.instances}
        for instance, type_ in self.incidence:
            if instance in result:
                result[instance].add(type_)
        return {instance: frozenset(types) for instance, types in result.items()}

    @cached_property
    def extents(self) -> dict:
        result = {type_: set() for type_ in self.types}
        for instance, type_ in self.incidence:
            if type_ in result:
                result[type_].add(instance)
        return {type_: frozenset(instances) for type_, instances in result.items()}

    def classifies(self, instance: str, type_: str) -> bool:
        return (instance, type_) in self.incidence

    def to_dict(self) -> dict:
        return {
            'instances': sorted(self.instances),
            'types': sorted(self.types),
            'incidence': [list(pair) for pair in sorted(self.incidence)],
        }


@dataclass(frozen=True)
class Infomorphism:
    name: str
    source: Classification
    target: Classification
    type_map: dict
    instance_map: dict

    def to_dict(self) -> dict:
        return {
            'source': self.source.name,
            'target': self.target.name,
            'type_map': dict(sorted(self.type_map.items())),
            'instance_map': dict(sorted(self.instance_map.items())),
        }


def validate_classification(c: Classification) -> ValidationResult:
    defects = []
    if not is_identifier(c.name):
        defects.append(f"classification name {c.name!r} is not an identifier")
    for label, elements in (('instance', c.instances), ('type', c.types)):
        for element in sorted(elements, key=str):
            if not is_identifier(element):
                defects.append(f"{c.name}: {label} {element!r} is not an identifier")
    for instance, type_ in sorted(c.incidence, key=str):
        if instance not in c.instances or type_ not in c.types:
            defects.append(f"{c.name}: incidence pair ({instance}, {type_}) references an undeclared element")
    return validation(defects)

def intent(c: Classification, i: str) -> frozenset:
    if i not in c.instances:
        raise UnknownElement(f"{c.name}: unknown instance {i}")
    return c.intents[i]

def extent(c: Classification, types) -> frozenset:
    types = frozenset(types)
    unknown = types - c.types
    if unknown:
        raise UnknownElement(f"{c.name}: unknown type(s) {sorted(unknown)}")
    result = c.instances
    for type_ in types:
        result = result & c.extents[type_]
    return result

def identity_infomorphism(c: Classification) -> Infomorphism:
    return Infomorphism(
        f"id_{c.name}",
        c,
        c,
        {type_: type_ for type_ in c.types},
        {instance: instance for instance in c.instances},
    )

def _require_total(f: Infomorphism) -> None:
    require_total_map(f.type_map, f.source.types, f.target.types, f"{f.name} type map")
    require_total_map(f.instance_map, f.target.instances, f.source.instances, f"{f.name} instance map")

def invariance_counterexamples(f: Infomorphism) -> list:
    """Triples (target instance, source type, side) where invariance breaks.

    ``side`` names where the incidence holds: ``source`` when only
    (instance_map(b), t) is incident, ``target`` when only (b, type_map(t)) is.
    """
    _require_total(f)
    found = []
    for b in sorted(f.target.instances):
        a = f.instance_map[b]
        for t in sorted(f.source.types):
            at_source = f.source.classifies(a, t)
            at_target = f.target.classifies(b, f.type_map[t])
            if at_source != at_target:
                found.append((b, t, 'source' if at_source else 'target'))
    return found

def check_infomorphism(f: Infomorphism) -> ValidationResult:
    return validation(
        f"{f.name}: invariance fails at ({b}, {t}, {side})"
        for b, t, side in invariance_counterexamples(f)
    )

def compose_infomorphisms(f: Infomorphism, g: Infomorphism) -> Infomorphism:
    if f.target != g.source:
        raise EndpointMismatch(f"cannot compose {f.name} into {g.name}: {f.target.name} is not {g.source.name}")
    _require_total(f)
    _require_total(g)
    return Infomorphism(
        f"{f.name};{g.name}",
        f.source,
        g.target,
        {t: g.type_map[f.type_map[t]] for t in f.source.types},
        {c: f.instance_map[g.instance_map[c]] for c in g.target.instances},
    )

def instance_leq(c: Classification, i1: str, i2: str) -> bool:
    return intent(c, i1) >= intent(c, i2)

def theory_name(types) -> str:
    return "{" + ",".join(sorted(types)) + "}"

def lift_to_theory_classification(c: Classification, cap: int = DEFAULT_LIFT_CAP) -> Classification:
    check_cap("lift_to_theory_classification", 2 ** len(c.types), cap)
    theories = list(subsets(c.types))
    logger.debug("Lifting %s to %d theory-types", c.name, len(theories))
    incidence = {
        (instance, theory_name(theory))
        for instance in c.instances
        for theory in theories
        if theory <= c.intents[instance]
    }
    return Classification(
        f"theories({c.name})",
        c.instances,
        {theory_name(theory) for theory in theories},
        incidence,
    )

def flip(c: Classification) -> Classification:
    return Classification(
        f"flip({c.name})",
        c.types,
        c.instances,
        {(type_, instance) for instance, type_ in c.incidence},
    )

def check_map_defects(f: Infomorphism) -> list:
    return (check_total_map(f.type_map, f.source.types, f.target.types, f"{f.name} type map")
            + check_total_map(f.instance_map, f.target.instances, f.source.instances, f"{f.name} instance map"))
