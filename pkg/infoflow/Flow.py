""" Direct and inverse flow of theories """

import logging

from infoflow.Classification import (
    Classification,
    Infomorphism,
    lift_to_theory_classification,
    theory_name,
)
from infoflow.Sequent import Sequent, check_language
from infoflow.Theory import FlatTheory, SequentTheory, Theory, axioms_of, flat_closure, flat_entails
from infoflow.common import (
    DEFAULT_CLOSURE_CAP,
    DEFAULT_LIFT_CAP,
    LanguageMismatch,
    require_total_map,
    subsets,
)

logger = logging.getLogger(__name__)


def direct_flow(f: dict, t: Theory, target_types, cap: int = DEFAULT_CLOSURE_CAP) -> SequentTheory:
    target_types = frozenset(target_types)
    require_total_map(f, t.types, target_types, "direct flow")
    return SequentTheory(target_types, [axiom.rename(f) for axiom in axioms_of(t, cap)])


class InverseFlowTheory(Theory):
    """Closure of a target theory pulled back along a type function; queries only."""

    def __init__(self, type_map: dict, target: Theory, types) -> None:
        self.type_map = dict(type_map)
        self.target = target
        self.types = frozenset(types)

    def entails(self, s: Sequent) -> bool:
        check_language(s, self.types)
        return self.target.entails(s.rename(self.type_map))

    def is_consistent(self) -> bool:
        return self.target.is_consistent()

    def __repr__(self) -> str:
        return f"InverseFlowTheory({sorted(self.types)} -> {sorted(self.target.types)})"


def inverse_flow(f: dict, t_target: Theory, source_types=None) -> InverseFlowTheory:
    if source_types is None:
        source_types = f.keys()
    require_total_map(f, frozenset(source_types), t_target.types, "inverse flow")
    return InverseFlowTheory(f, t_target, source_types)

def flat_direct_flow(f: dict, ft: FlatTheory, target_types) -> FlatTheory:
    target_types = frozenset(target_types)
    require_total_map(f, ft.types, target_types, "flat direct flow")
    return FlatTheory(target_types, {f[t] for t in ft.members})

def flat_inverse_flow(c_target: Classification, f: dict, ft_target: FlatTheory, source_types=None) -> FlatTheory:
    if source_types is None:
        source_types = f.keys()
    source_types = frozenset(source_types)
    require_total_map(f, source_types, c_target.types, "flat inverse flow")
    closed = flat_closure(c_target, ft_target).members
    return FlatTheory(source_types, {t for t in source_types if f[t] in closed})

def borrowing_holds(f: Infomorphism, ft: FlatTheory, t: str) -> bool:
    if ft.types != f.source.types or t not in f.source.types:
        raise LanguageMismatch(f"borrowing query is not over the source types of {f.name}")
    image = flat_direct_flow(f.type_map, ft, f.target.types)
    at_source = flat_entails(f.source, ft, t)
    at_target = flat_entails(f.target, image, f.type_map[t])
    return at_source == at_target

def lift_infomorphism(f: Infomorphism, cap: int = DEFAULT_LIFT_CAP) -> Infomorphism:
    """The infomorphism between instance-theory classifications; types move by direct flow."""
    source = lift_to_theory_classification(f.source, cap)
    target = lift_to_theory_classification(f.target, cap)
    return Infomorphism(
        f"theories({f.name})",
        source,
        target,
        {
            theory_name(theory): theory_name({f.type_map[t] for t in theory})
            for theory in subsets(f.source.types)
        },
        dict(f.instance_map),
    )
