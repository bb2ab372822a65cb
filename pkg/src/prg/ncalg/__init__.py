"""Free algebras over typed generators, presentations and ideal membership."""
from .membership import (
    FALSIFIED,
    INCONCLUSIVE,
    VERIFIED,
    IdealSearch,
    MembershipResult,
    MembershipWitness,
    MorphismReport,
    RelationCheck,
    WitnessTerm,
    check_morphism,
    combine_status,
    ideal_membership,
    ideal_membership_batch,
)
from .poly import GenSymbol, NCPoly, normal_word, parse_poly, parse_word, word_to_text
from .presentation import (
    GenMorphism,
    Presentation,
    identity_morphism,
    split_factors,
    tensor_morphism,
    tensor_presentation,
)
from .zhang import ZhangTwist, zhang_twisted_multiply


def normalize(terms) -> NCPoly:
    """Canonical polynomial from a raw ``(word, coefficient)`` list."""
    return NCPoly(terms)


def multiply(p: NCPoly, q: NCPoly, P: Presentation | None = None) -> NCPoly:
    return P.multiply(p, q) if P is not None else p.mul(q)


__all__ = [
    "FALSIFIED",
    "INCONCLUSIVE",
    "VERIFIED",
    "GenMorphism",
    "GenSymbol",
    "IdealSearch",
    "MembershipResult",
    "MembershipWitness",
    "MorphismReport",
    "NCPoly",
    "Presentation",
    "RelationCheck",
    "WitnessTerm",
    "ZhangTwist",
    "check_morphism",
    "combine_status",
    "ideal_membership",
    "ideal_membership_batch",
    "identity_morphism",
    "multiply",
    "normal_word",
    "normalize",
    "parse_poly",
    "parse_word",
    "split_factors",
    "tensor_morphism",
    "tensor_presentation",
    "word_to_text",
    "zhang_twisted_multiply",
]
