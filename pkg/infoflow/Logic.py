""" Local logics: classification, theory and normal instances """

from dataclasses import dataclass, field
import logging

from infoflow.Classification import Classification, Infomorphism
from infoflow.Entailment import entailed_masks
from infoflow.Flow import direct_flow, inverse_flow
from infoflow.Sequent import Sequent, State, check_language, state_satisfies
from infoflow.Theory import SequentTheory, Theory, theory_leq
from infoflow.common import (
    DEFAULT_CLOSURE_CAP,
    EndpointMismatch,
    LanguageMismatch,
    ValidationResult,
    check_cap,
    validation,
)

logger = logging.getLogger(__name__)


class NaturalTheory(Theory):
    """Every sequent satisfied by all instances, answered by scanning intents."""

    def __init__(self, classification: Classification) -> None:
        self.classification = classification
        self.types = classification.types

    def entails(self, s: Sequent) -> bool:
        check_language(s, self.types)
        return classification_satisfies(self.classification, s)

    def is_model(self, holds) -> bool:
        return frozenset(holds) in set(self.classification.intents.values())

    def is_consistent(self) -> bool:
        return len(self.classification.instances) > 0

    def models(self, cap: int = None) -> list:
        return sorted(set(self.classification.intents.values()), key=sorted)

    def __repr__(self) -> str:
        return f"NaturalTheory({self.classification.name})"


@dataclass(frozen=True, eq=False)
class LocalLogic:
    classification: Classification
    theory: Theory
    normal: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'normal', frozenset(self.normal))
        if self.theory.types != self.classification.types:
            raise LanguageMismatch(f"logic theory is not over the types of {self.classification.name}")

    def normal_intents(self) -> set:
        return {self.classification.intents[i] for i in self.normal}


def classification_satisfies(c: Classification, s: Sequent) -> bool:
    return all(state_satisfies(s, State(holds)) for holds in c.intents.values())

def validate_logic(l: LocalLogic) -> ValidationResult:
    defects = []
    for instance in sorted(l.normal - l.classification.instances):
        defects.append(f"normal instance {instance} is not an instance of {l.classification.name}")
    for instance in sorted(l.normal & l.classification.instances):
        if not l.theory.is_model(l.classification.intents[instance]):
            defects.append(f"normal instance {instance} violates the theory")
    return validation(defects)

def natural_logic(c: Classification, cap: int = DEFAULT_CLOSURE_CAP, virtual: bool = False) -> LocalLogic:
    if virtual:
        theory = NaturalTheory(c)
    else:
        theory = NaturalTheory(c).materialize(cap)
    return LocalLogic(c, theory, c.instances)

def is_sound(l: LocalLogic) -> bool:
    return all(l.theory.is_model(holds) for holds in l.classification.intents.values())

def is_complete(l: LocalLogic) -> bool:
    return not l.theory.has_model_outside(l.normal_intents())

def restriction(l: LocalLogic, cap: int = DEFAULT_CLOSURE_CAP) -> LocalLogic:
    c = l.classification
    size = len(c.types)
    check_cap("restriction", 4 ** size, cap)
    index = l.theory.index
    models = [index.encode(holds) for holds in c.intents.values()]
    models.extend(index.encode(model) for model in l.theory.models(cap))
    theory = SequentTheory(c.types, [index.decode_sequent(a, b) for a, b in entailed_masks(models, size)])
    return LocalLogic(c, theory, c.instances)

def normalize(l: LocalLogic) -> LocalLogic:
    c = l.classification
    return LocalLogic(c, l.theory, {i for i in c.instances if l.theory.is_model(c.intents[i])})

def logic_direct_image(f: Infomorphism, l: LocalLogic, cap: int = DEFAULT_CLOSURE_CAP) -> LocalLogic:
    if l.classification != f.source:
        raise EndpointMismatch(f"logic is not on the source of {f.name}")
    theory = direct_flow(f.type_map, l.theory, f.target.types, cap)
    normal = {b for b in f.target.instances if f.instance_map[b] in l.normal}
    return LocalLogic(f.target, theory, normal)

def logic_inverse_image(f: Infomorphism, l: LocalLogic) -> LocalLogic:
    if l.classification != f.target:
        raise EndpointMismatch(f"logic is not on the target of {f.name}")
    theory = inverse_flow(f.type_map, l.theory, f.source.types)
    normal = {f.instance_map[b] for b in l.normal}
    return LocalLogic(f.source, theory, normal)

def logic_leq(l1: LocalLogic, l2: LocalLogic, cap: int = DEFAULT_CLOSURE_CAP) -> bool:
    if l1.classification != l2.classification:
        raise EndpointMismatch("logics live on different classifications")
    return theory_leq(l1.theory, l2.theory, cap) and l1.normal >= l2.normal
