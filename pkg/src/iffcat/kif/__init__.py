"""Reader, analyzer and finite model checker for the KIF dialect."""

from .check import (
    ERROR,
    FALSE,
    SKIPPED,
    TRUE,
    Report,
    Verdict,
    check_axiom_file,
    check_sentence,
    check_text,
    load_sentences,
)
from .semantics import (
    ArityMismatch,
    DescriptionFailure,
    EvalError,
    FiniteFunction,
    KifModel,
    LazyFunction,
    NonFiniteSort,
    OutsideDomain,
    UnknownSymbol,
    count_satisfiers,
    evaluate,
)
from .sexpr import Atom, KifSyntaxError, SList, parse, pretty, to_text
from .standard import (
    MUTATION_KINDS,
    Mutation,
    StandardModel,
    build_standard_model,
    seeded_mutations,
)
from .syntax import AnalysisError, Sentence, analyze, free_constants

__all__ = [
    "ERROR", "FALSE", "SKIPPED", "TRUE", "AnalysisError", "ArityMismatch", "Atom",
    "DescriptionFailure", "EvalError", "FiniteFunction", "KifModel", "KifSyntaxError",
    "LazyFunction", "MUTATION_KINDS", "Mutation", "NonFiniteSort", "OutsideDomain",
    "Report", "SList", "Sentence", "StandardModel", "UnknownSymbol", "Verdict",
    "analyze", "build_standard_model", "check_axiom_file", "check_sentence",
    "check_text", "count_satisfiers", "evaluate", "free_constants", "load_sentences",
    "parse", "pretty", "seeded_mutations", "to_text",
]
