""" Sequent theories, flat theories and the lattice of theories """

from dataclasses import dataclass, field
from functools import cached_property
import logging

from infoflow.Classification import Classification, extent
from infoflow.Entailment import (
    axiom_masks,
    entailed_masks,
    models_by_enumeration,
    satisfiable,
    sequent_clause,
    theory_clauses,
)
from infoflow import Entailment
from infoflow.Sequent import Sequent, TypeIndex, canonical, check_language, state_satisfies, State
from infoflow.common import (
    DEFAULT_CLOSURE_CAP,
    DEFAULT_STATE_CAP,
    LanguageMismatch,
    NotBijective,
    UnknownAxiom,
    ValidationResult,
    check_cap,
    is_identifier,
    optional_progress,
    require_total_map,
    validation,
)

logger = logging.getLogger(__name__)


class Theory:
    """A language plus a semantic entailment predicate.

    Subclasses must provide ``types`` and ``entails``; everything else is
    derived from them through states (subsets of the language).
    """

    types: frozenset

    @cached_property
    def index(self) -> TypeIndex:
        return TypeIndex(self.types)

    def entails(self, s: Sequent) -> bool:
        raise NotImplementedError

    def is_model(self, holds) -> bool:
        holds = frozenset(holds)
        return not self.entails(Sequent(holds, self.types - holds))

    def is_consistent(self) -> bool:
        return not self.entails(Sequent())

    def models(self, cap: int = DEFAULT_STATE_CAP) -> list:
        check_cap("model enumeration", 2 ** len(self.types), cap)
        return [
            self.index.decode(mask)
            for mask in range(1 << len(self.index))
            if self.is_model(self.index.decode(mask))
        ]

    def has_model_outside(self, states, cap: int = DEFAULT_STATE_CAP) -> bool:
        states = {frozenset(state) for state in states}
        return any(model not in states for model in self.models(cap))

    def materialize(self, cap: int = DEFAULT_CLOSURE_CAP, show_progress: bool = False) -> "SequentTheory":
        size = len(self.types)
        check_cap("closure", 4 ** size, cap)
        models = [self.index.encode(model) for model in optional_progress(self.models(cap), show_progress)]
        axioms = [self.index.decode_sequent(a, c) for a, c in entailed_masks(models, size)]
        logger.debug("Materialized closure over %d types: %d sequents", size, len(axioms))
        return SequentTheory(self.types, axioms)


@dataclass(frozen=True)
class SequentTheory(Theory):
    types: frozenset = field(default_factory=frozenset)
    axioms: tuple = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'types', frozenset(self.types))
        object.__setattr__(self, 'axioms', canonical(self.axioms))

    @cached_property
    def clauses(self) -> list:
        return theory_clauses(self.axioms, self.index)

    def entails(self, s: Sequent) -> bool:
        check_language(s, self.types)
        return Entailment.entails(self.axioms, s, self.index)

    def is_model(self, holds) -> bool:
        state = State(holds)
        return all(state_satisfies(axiom, state) for axiom in self.axioms)

    def is_consistent(self) -> bool:
        return satisfiable(self.clauses)

    def models(self, cap: int = DEFAULT_STATE_CAP) -> list:
        check_cap("model enumeration", 2 ** len(self.types), cap)
        masks = models_by_enumeration(axiom_masks(self.axioms, self.index), len(self.index))
        return [self.index.decode(mask) for mask in masks]

    def has_model_outside(self, states, cap: int = DEFAULT_STATE_CAP) -> bool:
        exclusions = [
            sequent_clause(Sequent(state, self.types - frozenset(state)), self.index)
            for state in states
        ]
        return satisfiable(self.clauses + exclusions)

    def to_dict(self) -> dict:
        return {
            'types': sorted(self.types),
            'axioms': [axiom.to_dict() for axiom in self.axioms],
        }


@dataclass(frozen=True)
class FlatTheory:
    types: frozenset
    members: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'types', frozenset(self.types))
        object.__setattr__(self, 'members', frozenset(self.members))


def validate_theory(t: SequentTheory, name: str = "theory") -> ValidationResult:
    defects = []
    for type_ in sorted(t.types, key=str):
        if not is_identifier(type_):
            defects.append(f"{name}: type {type_!r} is not an identifier")
    for axiom in t.axioms:
        outside = axiom.types - t.types
        if outside:
            defects.append(f"{name}: axiom {axiom} uses undeclared type(s) {sorted(outside)}")
    return validation(defects)

def is_consistent(t: Theory) -> bool:
    return t.is_consistent()

def entails(t: Theory, s: Sequent) -> bool:
    return t.entails(s)

def close(t: Theory, cap: int = DEFAULT_CLOSURE_CAP, show_progress: bool = False) -> SequentTheory:
    return t.materialize(cap, show_progress=show_progress)

def axioms_of(t: Theory, cap: int = DEFAULT_CLOSURE_CAP) -> tuple:
    if isinstance(t, SequentTheory):
        return t.axioms
    return t.materialize(cap).axioms

def _same_language(t1: Theory, t2: Theory) -> None:
    if t1.types != t2.types:
        raise LanguageMismatch(f"languages differ: {sorted(t1.types)} vs {sorted(t2.types)}")

def theory_leq(t1: Theory, t2: Theory, cap: int = DEFAULT_CLOSURE_CAP) -> bool:
    _same_language(t1, t2)
    return all(t1.entails(axiom) for axiom in axioms_of(t2, cap))

def theory_equivalent(t1: Theory, t2: Theory, cap: int = DEFAULT_CLOSURE_CAP) -> bool:
    return theory_leq(t1, t2, cap) and theory_leq(t2, t1, cap)

def is_closed(t: SequentTheory, cap: int = DEFAULT_CLOSURE_CAP) -> bool:
    return set(close(t, cap).axioms) == set(t.axioms)

def top_theory(types) -> SequentTheory:
    return SequentTheory(types, ())

def bottom_theory(types) -> SequentTheory:
    return SequentTheory(types, (Sequent(),))


@dataclass(frozen=True)
class Contract:
    axioms: tuple

@dataclass(frozen=True)
class Expand:
    axioms: tuple

@dataclass(frozen=True)
class Revise:
    delete: tuple
    add: tuple

@dataclass(frozen=True)
class Analogy:
    mapping: dict


def lot_navigate(t: SequentTheory, move) -> SequentTheory:
    if isinstance(move, Contract):
        missing = [axiom for axiom in move.axioms if axiom not in t.axioms]
        if missing:
            raise UnknownAxiom(f"cannot contract by axioms not in the theory: {', '.join(map(str, missing))}")
        removed = set(move.axioms)
        return SequentTheory(t.types, [axiom for axiom in t.axioms if axiom not in removed])
    if isinstance(move, Expand):
        for axiom in move.axioms:
            check_language(axiom, t.types, "expansion axiom")
        return SequentTheory(t.types, list(t.axioms) + list(move.axioms))
    if isinstance(move, Revise):
        return lot_navigate(lot_navigate(t, Contract(move.delete)), Expand(move.add))
    if isinstance(move, Analogy):
        if set(move.mapping) != set(t.types) or len(set(move.mapping.values())) != len(move.mapping):
            raise NotBijective("analogy requires a bijection on the whole language")
        return SequentTheory(
            set(move.mapping.values()),
            [axiom.rename(move.mapping) for axiom in t.axioms],
        )
    raise TypeError(f"unknown move {move!r}")

def check_theory_morphism(f: dict, t1: Theory, t2: Theory, cap: int = DEFAULT_CLOSURE_CAP) -> ValidationResult:
    require_total_map(f, t1.types, t2.types, "theory morphism")
    return validation(
        f"axiom {axiom} maps to {axiom.rename(f)}, which is not entailed"
        for axiom in axioms_of(t1, cap)
        if not t2.entails(axiom.rename(f))
    )


def _flat_language(c: Classification, ft: FlatTheory) -> None:
    if ft.types != c.types:
        raise LanguageMismatch(f"flat theory is not over the types of {c.name}")

def flat_entails(c: Classification, ft: FlatTheory, type_: str) -> bool:
    _flat_language(c, ft)
    if type_ not in c.types:
        raise LanguageMismatch(f"{type_} is not a type of {c.name}")
    return extent(c, ft.members) <= c.extents[type_]

def flat_closure(c: Classification, ft: FlatTheory) -> FlatTheory:
    _flat_language(c, ft)
    covered = extent(c, ft.members)
    return FlatTheory(c.types, {t for t in c.types if covered <= c.extents[t]})
