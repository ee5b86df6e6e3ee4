"""Finite categories as monoids in graphs, colimits by exhaustive
universality checks, a KIF model checker, and finite classifications."""

__version__ = "0.1.0"

from .category import (
    CategoryValidationError,
    FiniteCategory,
    RawCategoryTables,
    category_violations,
    check_monoid_laws_as_graph_morphisms,
    is_bimorphism,
    is_epimorphism,
    is_isomorphism,
    is_monomorphism,
    make_category,
    opposite_category,
    validate_category,
)
from .classification import (
    Classification,
    Infomorphism,
    as_abstract_category,
    pushout_classification,
    verify_pushout_universality,
)
from .colimit import (
    colimit_objects,
    finite_cocompleteness,
    initial_objects,
    pushout_cocones,
    pushout_objects,
)
from .functor import Functor, validate_functor
from .graph import FiniteGraph, GraphMorphism, tensor

__all__ = [
    "CategoryValidationError", "Classification", "FiniteCategory", "FiniteGraph", "Functor",
    "GraphMorphism", "Infomorphism", "RawCategoryTables", "as_abstract_category",
    "category_violations", "check_monoid_laws_as_graph_morphisms", "colimit_objects",
    "finite_cocompleteness", "initial_objects", "is_bimorphism", "is_epimorphism",
    "is_isomorphism", "is_monomorphism", "make_category", "opposite_category",
    "pushout_classification", "pushout_cocones", "pushout_objects", "tensor",
    "validate_category", "validate_functor", "verify_pushout_universality",
]
