"""Misère-play outcomes, closures and quotient monoids of partizan games."""

from .closure import (
    Atlas,
    AtlasMismatchError,
    Element,
    closure_atoms,
    element_outcome,
    element_sum,
    enumerate_elements,
)
from .constructions import (
    ConstructionPlan,
    FamilyPrediction,
    ImpossibleTargetError,
    PlanUnavailableError,
    Subspace,
    augment_with_ender,
    blue_mutant_flower,
    flower_family,
    flower_family_cardinality,
    recognize_family,
    subspaces_containing_one,
    table1_set,
    tame_set,
    target_cardinality_plan,
)
from .games import Game, GameId, GameStore, ParseError, UnknownGameError, ZERO
from .nim import grundy, is_firm, mex, nim_misere_outcome, option_with_grundy
from .outcomes import Outcome, OutcomeEngine
from .quotient import (
    CongruenceReport,
    Presentation,
    QuotientMonoid,
    QuotientParams,
    UnresolvedClassError,
    bounded_class_count,
    check_congruence,
    class_of,
    compute_quotient,
    extract_presentation,
    indistinguishable,
    quotient_to_json,
)
from .verify import (
    CheckReport,
    search_size_three,
    verify_atomic_weight,
    verify_class_structure,
    verify_ender_outcomes,
    verify_flower_evaluation,
    verify_nim_strategy,
)

__version__ = "0.1.0"

__all__ = [
    "Atlas",
    "AtlasMismatchError",
    "CheckReport",
    "CongruenceReport",
    "ConstructionPlan",
    "Element",
    "FamilyPrediction",
    "Game",
    "GameId",
    "GameStore",
    "ImpossibleTargetError",
    "Outcome",
    "OutcomeEngine",
    "ParseError",
    "PlanUnavailableError",
    "Presentation",
    "QuotientMonoid",
    "QuotientParams",
    "Subspace",
    "UnknownGameError",
    "UnresolvedClassError",
    "ZERO",
    "augment_with_ender",
    "blue_mutant_flower",
    "bounded_class_count",
    "check_congruence",
    "class_of",
    "closure_atoms",
    "compute_quotient",
    "element_outcome",
    "element_sum",
    "enumerate_elements",
    "extract_presentation",
    "flower_family",
    "flower_family_cardinality",
    "grundy",
    "indistinguishable",
    "is_firm",
    "mex",
    "nim_misere_outcome",
    "option_with_grundy",
    "quotient_to_json",
    "recognize_family",
    "search_size_three",
    "subspaces_containing_one",
    "table1_set",
    "tame_set",
    "target_cardinality_plan",
    "verify_atomic_weight",
    "verify_class_structure",
    "verify_ender_outcomes",
    "verify_flower_evaluation",
    "verify_nim_strategy",
]
