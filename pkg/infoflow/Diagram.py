""" Diagrams over shape graphs, colimits and channels """

from dataclasses import dataclass, field
from math import prod
import logging

from networkx.utils import UnionFind

from infoflow.Classification import (
    Classification,
    Infomorphism,
    check_infomorphism,
    check_map_defects,
)
from infoflow.common import (
    DEFAULT_INSTANCE_CAP,
    EndpointMismatch,
    InvalidSystem,
    NoMediator,
    ValidationResult,
    check_cap,
    check_total_map,
    validation,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Edge:
    id: str
    source: str
    target: str


@dataclass(frozen=True)
class ShapeGraph:
    nodes: frozenset = field(default_factory=frozenset)
    edges: tuple = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'nodes', frozenset(self.nodes))
        object.__setattr__(self, 'edges', tuple(sorted(
            (edge if isinstance(edge, Edge) else Edge(*edge) for edge in self.edges),
            key=lambda edge: edge.id,
        )))

    def to_dict(self) -> dict:
        return {
            'nodes': sorted(self.nodes),
            'edges': [[edge.id, edge.source, edge.target] for edge in self.edges],
        }


@dataclass(frozen=True, eq=False)
class LanguageDiagram:
    shape: ShapeGraph
    node_language: dict
    edge_map: dict


@dataclass(frozen=True, eq=False)
class ClsDiagram:
    shape: ShapeGraph
    node_cls: dict
    edge_info: dict

    def language_diagram(self) -> LanguageDiagram:
        return LanguageDiagram(
            self.shape,
            {node: c.types for node, c in self.node_cls.items()},
            {edge_id: info.type_map for edge_id, info in self.edge_info.items()},
        )


@dataclass(frozen=True, eq=False)
class Channel:
    core: Classification
    legs: dict
    diagram: ClsDiagram = None


@dataclass(frozen=True)
class LanguageColimit:
    types: tuple
    cocone: dict
    classes: dict

    def to_dict(self) -> dict:
        return {
            'types': list(self.types),
            'cocone': {node: dict(sorted(m.items())) for node, m in sorted(self.cocone.items())},
        }


def validate_shape(shape: ShapeGraph) -> ValidationResult:
    # colimit class names are sum:<node>.<type>, so node ids carry no dot
    defects = [f"node id {node} contains '.'" for node in sorted(shape.nodes) if '.' in node]
    seen = set()
    for edge in shape.edges:
        if edge.id in seen:
            defects.append(f"edge id {edge.id} is repeated")
        seen.add(edge.id)
        for end in (edge.source, edge.target):
            if end not in shape.nodes:
                defects.append(f"edge {edge.id}: endpoint {end} is not a node")
    return validation(defects)

def validate_language_diagram(d: LanguageDiagram) -> ValidationResult:
    result = validate_shape(d.shape)
    if not result.ok:
        return result
    defects = [f"node {node} has no language" for node in sorted(d.shape.nodes - set(d.node_language))]
    for edge in d.shape.edges:
        if edge.id not in d.edge_map:
            defects.append(f"edge {edge.id} has no type function")
            continue
        defects.extend(check_total_map(
            d.edge_map[edge.id],
            d.node_language.get(edge.source, ()),
            d.node_language.get(edge.target, ()),
            f"edge {edge.id}",
        ))
    return validation(defects)

def validate_cls_diagram(d: ClsDiagram) -> ValidationResult:
    result = validate_shape(d.shape)
    if not result.ok:
        return result
    defects = [f"node {node} has no classification" for node in sorted(d.shape.nodes - set(d.node_cls))]
    for edge in d.shape.edges:
        info = d.edge_info.get(edge.id)
        if info is None:
            defects.append(f"edge {edge.id} has no infomorphism")
            continue
        if info.source != d.node_cls.get(edge.source) or info.target != d.node_cls.get(edge.target):
            defects.append(f"edge {edge.id}: infomorphism endpoints do not match the nodes")
            continue
        map_defects = check_map_defects(info)
        if map_defects:
            defects.extend(f"edge {edge.id}: {defect}" for defect in map_defects)
            continue
        defects.extend(f"edge {edge.id}: {defect}" for defect in check_infomorphism(info).defects)
    return validation(defects)


def class_name(node: str, type_: str) -> str:
    return f"sum:{node}.{type_}"

def colimit_language(d: LanguageDiagram) -> LanguageColimit:
    result = validate_language_diagram(d)
    if not result.ok:
        raise InvalidSystem("; ".join(result.defects))
    blocks = UnionFind()
    for node in sorted(d.shape.nodes):
        for type_ in sorted(d.node_language[node]):
            blocks[(node, type_)]
    for edge in d.shape.edges:
        mapping = d.edge_map[edge.id]
        for type_ in sorted(d.node_language[edge.source]):
            blocks.union((edge.source, type_), (edge.target, mapping[type_]))
    classes = {}
    cocone = {node: {} for node in d.shape.nodes}
    for block in blocks.to_sets():
        members = sorted(block)
        name = class_name(*members[0])
        classes[name] = members
        for node, type_ in members:
            cocone[node][type_] = name
    logger.debug("Colimit of %d nodes has %d classes", len(d.shape.nodes), len(classes))
    return LanguageColimit(tuple(sorted(classes)), cocone, dict(sorted(classes.items())))


def tuple_name(assignment: dict) -> str:
    return "<" + ",".join(f"{node}.{assignment[node]}" for node in sorted(assignment)) + ">"

def _compatible_tuples(d: ClsDiagram) -> list:
    order = sorted(d.shape.nodes)
    rank = {node: n for n, node in enumerate(order)}
    checks = {node: [] for node in order}
    for edge in d.shape.edges:
        later = max(edge.source, edge.target, key=rank.get)
        checks[later].append(edge)
    found = []
    assignment = {}

    def extend(depth: int) -> None:
        if depth == len(order):
            found.append(dict(assignment))
            return
        node = order[depth]
        for x in sorted(d.node_cls[node].instances):
            assignment[node] = x
            if all(
                d.edge_info[edge.id].instance_map[assignment[edge.target]] == assignment[edge.source]
                for edge in checks[node]
            ):
                extend(depth + 1)
            del assignment[node]

    extend(0)
    return found

def sum_classification(d: ClsDiagram, instance_cap: int = DEFAULT_INSTANCE_CAP) -> Channel:
    result = validate_cls_diagram(d)
    if not result.ok:
        raise InvalidSystem("; ".join(result.defects))
    required = prod(len(d.node_cls[node].instances) for node in d.shape.nodes)
    check_cap("sum_classification", required, instance_cap)
    colimit = colimit_language(d.language_diagram())
    tuples = {tuple_name(assignment): assignment for assignment in _compatible_tuples(d)}
    logger.debug("Sum core has %d of %d candidate tuples", len(tuples), required)
    incidence = set()
    for name, assignment in tuples.items():
        for class_, members in colimit.classes.items():
            node, type_ = members[0]
            if d.node_cls[node].classifies(assignment[node], type_):
                incidence.add((name, class_))
    core = Classification("core", tuples, colimit.types, incidence)
    legs = {
        node: Infomorphism(
            f"leg_{node}",
            d.node_cls[node],
            core,
            dict(colimit.cocone[node]),
            {name: assignment[node] for name, assignment in tuples.items()},
        )
        for node in d.shape.nodes
    }
    return Channel(core, legs, d)

def verify_channel_covers(ch: Channel, d: ClsDiagram) -> ValidationResult:
    if set(ch.legs) != set(d.shape.nodes):
        raise EndpointMismatch("channel legs do not match the diagram nodes")
    defects = []
    for node in sorted(d.shape.nodes):
        leg = ch.legs[node]
        if leg.source != d.node_cls[node] or leg.target != ch.core:
            defects.append(f"leg {node}: endpoints do not match")
            continue
        map_defects = check_map_defects(leg)
        if map_defects:
            defects.extend(f"leg {node}: {defect}" for defect in map_defects)
            continue
        defects.extend(f"leg {node}: {defect}" for defect in check_infomorphism(leg).defects)
    if defects:
        return validation(defects)
    for edge in d.shape.edges:
        info = d.edge_info[edge.id]
        source_leg, target_leg = ch.legs[edge.source], ch.legs[edge.target]
        for type_ in sorted(info.source.types):
            if target_leg.type_map[info.type_map[type_]] != source_leg.type_map[type_]:
                defects.append(f"edge {edge.id}: type {type_} does not commute")
        for instance in sorted(ch.core.instances):
            if info.instance_map[target_leg.instance_map[instance]] != source_leg.instance_map[instance]:
                defects.append(f"edge {edge.id}: instance {instance} does not commute")
    return validation(defects)

def mediating_morphism(ch: Channel, other: Channel) -> Infomorphism:
    if ch.diagram is None:
        raise NoMediator("the first channel must come from sum_classification")
    covering = verify_channel_covers(other, ch.diagram)
    if not covering.ok:
        raise NoMediator("; ".join(covering.defects))
    type_map = {}
    for node in sorted(ch.legs):
        for type_, class_ in sorted(ch.legs[node].type_map.items()):
            image = other.legs[node].type_map[type_]
            if type_map.setdefault(class_, image) != image:
                raise NoMediator(f"class {class_} has two images")
    instance_map = {}
    for instance in sorted(other.core.instances):
        name = tuple_name({node: leg.instance_map[instance] for node, leg in other.legs.items()})
        if name not in ch.core.instances:
            raise NoMediator(f"{instance} projects to an incompatible tuple")
        instance_map[instance] = name
    return Infomorphism(f"mediator_{other.core.name}", ch.core, other.core, type_map, instance_map)
