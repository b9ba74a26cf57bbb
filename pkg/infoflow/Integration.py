"""Information systems and semantic integration.

Closure runs in three phases over the sum of the system's language diagram:
direct flow of every node theory along the summing cocone, meet of the images
(the union of their axioms), and inverse flow of that sum theory back to each
node. The pulled-back theories stay virtual; only bounded deltas are listed.
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
import logging

from infoflow.Classification import Infomorphism, check_infomorphism, check_map_defects, validate_classification
from infoflow.Diagram import (
    Channel,
    ClsDiagram,
    LanguageColimit,
    LanguageDiagram,
    ShapeGraph,
    colimit_language,
    sum_classification,
    validate_shape,
)
from infoflow.Flow import InverseFlowTheory, direct_flow, inverse_flow
from infoflow.Logic import LocalLogic, logic_inverse_image, normalize
from infoflow.Sequent import Sequent, all_sequents, check_language
from infoflow.Theory import SequentTheory, check_theory_morphism, theory_leq, validate_theory
from infoflow.common import (
    DEFAULT_CLOSURE_CAP,
    DEFAULT_DELTA_BOUND,
    DEFAULT_INSTANCE_CAP,
    InvalidSystem,
    LanguageMismatch,
    UnknownElement,
    ValidationResult,
    check_cap,
    check_total_map,
    optional_progress,
    validation,
)

logger = logging.getLogger(__name__)

MONOCOSMIC = "monocosmic"
POLYCOSMIC = "polycosmic"
POINTWISE_INCONSISTENT = "pointwise-inconsistent"


@dataclass(frozen=True, eq=False)
class InformationSystem:
    shape: ShapeGraph
    node_theory: dict
    edge_map: dict
    node_cls: dict = field(default_factory=dict)
    edge_instance_map: dict = field(default_factory=dict)

    def language_diagram(self) -> LanguageDiagram:
        return LanguageDiagram(
            self.shape,
            {node: theory.types for node, theory in self.node_theory.items()},
            dict(self.edge_map),
        )

    @cached_property
    def colimit(self) -> LanguageColimit:
        return colimit_language(self.language_diagram())

    @cached_property
    def flowed(self) -> dict:
        return {
            node: direct_flow(self.colimit.cocone[node], self.node_theory[node], self.colimit.types)
            for node in sorted(self.shape.nodes)
        }

    @cached_property
    def sum_theory(self) -> SequentTheory:
        axioms = [axiom for theory in self.flowed.values() for axiom in theory.axioms]
        return SequentTheory(self.colimit.types, axioms)

    @cached_property
    def validity(self) -> ValidationResult:
        return validate_system(self)

    def closure_handle(self, node: str) -> InverseFlowTheory:
        if node not in self.shape.nodes:
            raise UnknownElement(f"unknown node {node}")
        return inverse_flow(self.colimit.cocone[node], self.sum_theory, self.node_theory[node].types)

    def is_populated(self) -> bool:
        return (
            all(self.node_cls.get(node) is not None for node in self.shape.nodes)
            and all(self.edge_instance_map.get(edge.id) is not None for edge in self.shape.edges)
        )

    def cls_diagram(self) -> ClsDiagram:
        infos = {}
        for edge in self.shape.edges:
            infos[edge.id] = Infomorphism(
                edge.id,
                self.node_cls[edge.source],
                self.node_cls[edge.target],
                dict(self.edge_map[edge.id]),
                dict(self.edge_instance_map[edge.id]),
            )
        return ClsDiagram(self.shape, dict(self.node_cls), infos)


@dataclass(frozen=True, eq=False)
class IntegrationResult:
    colimit: LanguageColimit
    sum_theory: SequentTheory
    closure_handles: dict
    verdict: str
    deltas: dict
    delta_bound: int
    channel: Channel = None
    closure_logics: dict = None

    @property
    def sum_language(self) -> tuple:
        return self.colimit.types

    @property
    def sum_theory_axioms(self) -> tuple:
        return self.sum_theory.axioms

    def to_dict(self) -> dict:
        report = {
            'sum_language': list(self.colimit.types),
            'cocone': self.colimit.to_dict()['cocone'],
            'sum_axioms': [axiom.to_dict() for axiom in self.sum_theory.axioms],
            'verdict': self.verdict,
            'delta_bound': self.delta_bound,
            'deltas': {node: [s.to_dict() for s in found] for node, found in sorted(self.deltas.items())},
        }
        if self.channel is not None:
            report['core'] = {
                'instances': len(self.channel.core.instances),
                'types': len(self.channel.core.types),
            }
            report['normal'] = {
                node: sorted(logic.normal) for node, logic in sorted(self.closure_logics.items())
            }
        return report


def validate_system(s: InformationSystem) -> ValidationResult:
    result = validate_shape(s.shape)
    if not result.ok:
        return result
    defects = []
    for node in sorted(s.shape.nodes):
        theory = s.node_theory.get(node)
        if theory is None:
            defects.append(f"node {node} has no theory")
            continue
        defects.extend(validate_theory(theory, f"node {node}").defects)
        c = s.node_cls.get(node)
        if c is not None:
            defects.extend(validate_classification(c).defects)
            if c.types != theory.types:
                defects.append(f"node {node}: classification types differ from the theory language")
    if defects:
        return validation(defects)
    for edge in s.shape.edges:
        mapping = s.edge_map.get(edge.id)
        if mapping is None:
            defects.append(f"edge {edge.id} has no type map")
            continue
        source, target = s.node_theory[edge.source], s.node_theory[edge.target]
        map_defects = check_total_map(mapping, source.types, target.types, f"edge {edge.id}")
        if map_defects:
            defects.extend(map_defects)
            continue
        defects.extend(f"edge {edge.id}: {defect}" for defect in check_theory_morphism(mapping, source, target).defects)
        instance_map = s.edge_instance_map.get(edge.id)
        source_cls, target_cls = s.node_cls.get(edge.source), s.node_cls.get(edge.target)
        if instance_map is not None and source_cls is not None and target_cls is not None:
            info = Infomorphism(edge.id, source_cls, target_cls, mapping, instance_map)
            info_defects = check_map_defects(info) or check_infomorphism(info).defects
            defects.extend(f"edge {edge.id}: {defect}" for defect in info_defects)
    return validation(defects)

def _require_valid(s: InformationSystem) -> None:
    result = s.validity
    if not result.ok:
        raise InvalidSystem("; ".join(result.defects))


def is_pointwise_consistent(s: InformationSystem) -> bool:
    _require_valid(s)
    return all(theory.is_consistent() for theory in s.flowed.values())

def is_monocosmic(s: InformationSystem) -> bool:
    _require_valid(s)
    return s.sum_theory.is_consistent()

def is_polycosmic(s: InformationSystem) -> bool:
    return is_pointwise_consistent(s) and not is_monocosmic(s)

def cosmology(s: InformationSystem) -> str:
    if not is_pointwise_consistent(s):
        return POINTWISE_INCONSISTENT
    if is_monocosmic(s):
        return MONOCOSMIC
    return POLYCOSMIC

def conflicting_pairs(s: InformationSystem) -> list:
    """Node pairs whose flowed theories are each consistent but jointly inconsistent."""
    _require_valid(s)
    consistent = [node for node, theory in s.flowed.items() if theory.is_consistent()]
    pairs = []
    for first, second in combinations(sorted(consistent), 2):
        joint = SequentTheory(s.colimit.types, s.flowed[first].axioms + s.flowed[second].axioms)
        if not joint.is_consistent():
            pairs.append((first, second))
    return pairs


def bounded_sequent_count(size: int, bound: int) -> int:
    sides = sum(comb(size, k) for k in range(min(size, bound) + 1))
    return sides * sides

def node_deltas(s: InformationSystem, node: str, delta_bound: int = DEFAULT_DELTA_BOUND,
                cap: int = DEFAULT_CLOSURE_CAP, show_progress: bool = False) -> tuple:
    theory = s.node_theory[node]
    check_cap(f"deltas at {node}", bounded_sequent_count(len(theory.types), delta_bound), cap)
    handle = s.closure_handle(node)
    return tuple(
        q for q in optional_progress(all_sequents(theory.types, delta_bound), show_progress)
        if handle.entails(q) and not theory.entails(q)
    )

def integrate(s: InformationSystem, cap: int = DEFAULT_CLOSURE_CAP, delta_bound: int = DEFAULT_DELTA_BOUND,
              instance_cap: int = DEFAULT_INSTANCE_CAP, show_progress: bool = False) -> IntegrationResult:
    _require_valid(s)
    logger.debug("Summing %d nodes", len(s.shape.nodes))
    colimit = s.colimit
    logger.debug("Direct flow: %d sum axioms over %d classes", len(s.sum_theory.axioms), len(colimit.types))
    handles = {node: s.closure_handle(node) for node in sorted(s.shape.nodes)}
    deltas = {
        node: node_deltas(s, node, delta_bound, cap, show_progress)
        for node in sorted(s.shape.nodes)
    }
    channel = None
    closure_logics = None
    if s.is_populated():
        logger.debug("Building the sum channel for the populated system")
        channel = sum_classification(s.cls_diagram(), instance_cap)
        sum_logic = normalize(LocalLogic(channel.core, SequentTheory(channel.core.types, s.sum_theory.axioms)))
        closure_logics = {
            node: logic_inverse_image(channel.legs[node], sum_logic)
            for node in sorted(s.shape.nodes)
        }
    return IntegrationResult(
        colimit,
        s.sum_theory,
        handles,
        cosmology(s),
        deltas,
        delta_bound,
        channel,
        closure_logics,
    )

def system_entails_at(s: InformationSystem, node: str, q: Sequent) -> bool:
    _require_valid(s)
    if node not in s.shape.nodes:
        raise UnknownElement(f"unknown node {node}")
    check_language(q, s.node_theory[node].types)
    return s.closure_handle(node).entails(q)

def _same_frame(s1: InformationSystem, s2: InformationSystem) -> None:
    if s1.shape != s2.shape:
        raise LanguageMismatch("systems have different shapes")
    for node in s1.shape.nodes:
        if s1.node_theory[node].types != s2.node_theory[node].types:
            raise LanguageMismatch(f"node {node} has different languages")
    for edge in s1.shape.edges:
        if dict(s1.edge_map[edge.id]) != dict(s2.edge_map[edge.id]):
            raise LanguageMismatch(f"edge {edge.id} has different type maps")

def system_leq(s1: InformationSystem, s2: InformationSystem) -> bool:
    _same_frame(s1, s2)
    return all(theory_leq(s1.node_theory[node], s2.node_theory[node]) for node in s1.shape.nodes)

def system_entails(s1: InformationSystem, s2: InformationSystem) -> bool:
    _same_frame(s1, s2)
    return all(
        system_entails_at(s1, node, q)
        for node in sorted(s2.shape.nodes)
        for q in s2.node_theory[node].axioms
    )

def system_closure(s: InformationSystem, cap: int = DEFAULT_CLOSURE_CAP, bound: int = None) -> InformationSystem:
    """The closure as an information system: every node carries its materialized closure handle."""
    _require_valid(s)
    theories = {}
    for node in sorted(s.shape.nodes):
        handle = s.closure_handle(node)
        if bound is None:
            theories[node] = handle.materialize(cap)
        else:
            types = s.node_theory[node].types
            check_cap(f"closure at {node}", bounded_sequent_count(len(types), bound), cap)
            theories[node] = SequentTheory(types, [q for q in all_sequents(types, bound) if handle.entails(q)])
    return InformationSystem(
        s.shape,
        theories,
        dict(s.edge_map),
        dict(s.node_cls),
        dict(s.edge_instance_map),
    )
