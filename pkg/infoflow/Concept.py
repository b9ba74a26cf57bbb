""" Formal concepts and concept lattices of a classification """

from dataclasses import dataclass, field
import logging

import graphviz
import networkx as nx

from infoflow.Classification import Classification, extent, flip, intent
from infoflow.common import CONCEPT_TYPE_GUARD, UnknownElement, check_cap, subsets

logger = logging.getLogger(__name__)

INSTANCES = 'instances'
TYPES = 'types'


@dataclass(frozen=True)
class FormalConcept:
    extent: frozenset = field(default_factory=frozenset)
    intent: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'extent', frozenset(self.extent))
        object.__setattr__(self, 'intent', frozenset(self.intent))

    @property
    def sort_key(self) -> tuple:
        return (len(self.extent), sorted(self.extent))

    def label(self) -> str:
        return f"{', '.join(sorted(self.extent))} | {', '.join(sorted(self.intent))}"

    def to_dict(self) -> dict:
        return {'extent': sorted(self.extent), 'intent': sorted(self.intent)}


@dataclass(frozen=True)
class ConceptLattice:
    concepts: tuple
    order: frozenset

    def leq(self, i: int, j: int) -> bool:
        return (i, j) in self.order

    def index(self, concept: FormalConcept) -> int:
        return self.concepts.index(concept)

    @property
    def top(self) -> int:
        return len(self.concepts) - 1

    @property
    def bottom(self) -> int:
        return 0


def derive(c: Classification, side: str, s) -> frozenset:
    s = frozenset(s)
    if side == INSTANCES:
        unknown = s - c.instances
        if unknown:
            raise UnknownElement(f"{c.name}: unknown instance(s) {sorted(unknown)}")
        common = c.types
        for instance in s:
            common = common & intent(c, instance)
        return common
    if side == TYPES:
        return extent(c, s)
    raise ValueError(f"side must be {INSTANCES!r} or {TYPES!r}")

def _closed_intent(c: Classification, types) -> frozenset:
    return derive(c, INSTANCES, derive(c, TYPES, types))

def _concept_of_intent(c: Classification, types) -> FormalConcept:
    return FormalConcept(derive(c, TYPES, types), types)

def concepts(c: Classification, guard: int = CONCEPT_TYPE_GUARD) -> list:
    """Closed intents generated in lectic order, then listed canonically."""
    check_cap("concepts", len(c.types), guard)
    attributes = sorted(c.types)
    current = _closed_intent(c, ())
    found = [current]
    while current != c.types:
        for position in range(len(attributes) - 1, -1, -1):
            attribute = attributes[position]
            if attribute in current:
                continue
            prefix = frozenset(attributes[:position])
            candidate = _closed_intent(c, (current & prefix) | {attribute})
            if candidate & prefix == current & prefix:
                current = candidate
                found.append(current)
                break
    logger.debug("%s has %d concepts", c.name, len(found))
    return sorted((_concept_of_intent(c, closed) for closed in found), key=lambda concept: concept.sort_key)

def concepts_brute_force(c: Classification) -> list:
    closed = {_closed_intent(c, types) for types in subsets(c.types)}
    return sorted((_concept_of_intent(c, types) for types in closed), key=lambda concept: concept.sort_key)

def lattice(c: Classification, guard: int = CONCEPT_TYPE_GUARD) -> ConceptLattice:
    found = tuple(concepts(c, guard))
    order = frozenset(
        (i, j)
        for i, lower in enumerate(found)
        for j, upper in enumerate(found)
        if lower.extent <= upper.extent
    )
    return ConceptLattice(found, order)

def _check_index(l: ConceptLattice, *indices) -> None:
    for i in indices:
        if not 0 <= i < len(l.concepts):
            raise UnknownElement(f"unknown concept index {i}")

def meet(l: ConceptLattice, i: int, j: int) -> FormalConcept:
    _check_index(l, i, j)
    common = l.concepts[i].extent & l.concepts[j].extent
    return next(concept for concept in l.concepts if concept.extent == common)

def join(l: ConceptLattice, i: int, j: int) -> FormalConcept:
    _check_index(l, i, j)
    common = l.concepts[i].intent & l.concepts[j].intent
    return next(concept for concept in l.concepts if concept.intent == common)

def object_concept(c: Classification, i: str) -> FormalConcept:
    own = derive(c, INSTANCES, {i})
    return FormalConcept(derive(c, TYPES, own), own)

def attribute_concept(c: Classification, t: str) -> FormalConcept:
    dual = object_concept(flip(c), t)
    return FormalConcept(dual.intent, dual.extent)


def hasse_edges(l: ConceptLattice) -> list:
    """Cover pairs (lower, upper) of the concept order."""
    strict = nx.DiGraph()
    strict.add_nodes_from(range(len(l.concepts)))
    strict.add_edges_from((i, j) for i, j in l.order if i != j)
    return sorted(nx.transitive_reduction(strict).edges())

def to_dot(l: ConceptLattice) -> str:
    dot = graphviz.Digraph('concepts', graph_attr={'rankdir': 'BT'}, node_attr={'shape': 'box'})
    for n, concept in enumerate(l.concepts):
        dot.node(f"c{n}", concept.label())
    for lower, upper in hasse_edges(l):
        dot.edge(f"c{lower}", f"c{upper}")
    return dot.source

def lattice_to_dict(l: ConceptLattice) -> dict:
    return {
        'concepts': [concept.to_dict() for concept in l.concepts],
        'covers': [list(pair) for pair in hasse_edges(l)],
    }
