from infoflow.Classification import (
    Classification,
    Infomorphism,
    check_infomorphism,
    compose_infomorphisms,
    extent,
    flip,
    identity_infomorphism,
    instance_leq,
    intent,
    lift_to_theory_classification,
    validate_classification,
)
from infoflow.Sequent import Sequent, State, parse_sequent, state_satisfies
from infoflow.Theory import (
    Analogy,
    Contract,
    Expand,
    FlatTheory,
    Revise,
    SequentTheory,
    bottom_theory,
    check_theory_morphism,
    close,
    entails,
    flat_closure,
    flat_entails,
    is_consistent,
    lot_navigate,
    theory_leq,
    top_theory,
)
from infoflow.Flow import (
    borrowing_holds,
    direct_flow,
    flat_direct_flow,
    flat_inverse_flow,
    inverse_flow,
    lift_infomorphism,
)
from infoflow.Logic import (
    LocalLogic,
    is_complete,
    is_sound,
    logic_direct_image,
    logic_inverse_image,
    logic_leq,
    natural_logic,
    normalize,
    restriction,
)
from infoflow.Diagram import (
    Channel,
    ClsDiagram,
    LanguageDiagram,
    ShapeGraph,
    colimit_language,
    mediating_morphism,
    sum_classification,
    verify_channel_covers,
)
from infoflow.Integration import (
    InformationSystem,
    IntegrationResult,
    integrate,
    is_monocosmic,
    is_pointwise_consistent,
    is_polycosmic,
    system_closure,
    system_entails,
    system_entails_at,
    system_leq,
    validate_system,
)
from infoflow.Concept import (
    ConceptLattice,
    FormalConcept,
    attribute_concept,
    concepts,
    derive,
    join,
    lattice,
    meet,
    object_concept,
)
from infoflow.bundle_support import Bundle, parse_bundle, serialize_bundle
from infoflow.common import ValidationResult
