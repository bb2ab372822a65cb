"""The cogroupoid H(e, f): presentations, structure maps and their laws."""
from .axioms import (
    AxiomPart,
    AxiomReport,
    Entry,
    LemmaReport,
    antipode_targets,
    lemma_targets,
    verify_antipode,
    verify_cocategory,
    verify_lemma_identities,
)
from .twisting import (
    ConnectivityReport,
    TwistingConditionsReport,
    TwistingPairReport,
    build_twisting_pair,
    twisting_maps,
    verify_cocycle_connectivity,
    verify_twisting_conditions,
)
from .structure import (
    ANTIPODE_VARIANTS,
    UQGPresentation,
    build_antipode,
    build_counit,
    build_delta,
    build_presentation,
    default_bound,
    relation_count,
)

__all__ = [
    "ANTIPODE_VARIANTS",
    "AxiomPart",
    "AxiomReport",
    "Entry",
    "LemmaReport",
    "UQGPresentation",
    "antipode_targets",
    "build_antipode",
    "build_counit",
    "build_delta",
    "build_presentation",
    "default_bound",
    "lemma_targets",
    "relation_count",
    "verify_antipode",
    "verify_cocategory",
    "verify_lemma_identities",
    "ConnectivityReport",
    "TwistingConditionsReport",
    "TwistingPairReport",
    "build_twisting_pair",
    "twisting_maps",
    "verify_cocycle_connectivity",
    "verify_twisting_conditions",
]
