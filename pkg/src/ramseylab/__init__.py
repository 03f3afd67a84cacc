"""Public exports for ramseylab."""

from .corpus import builtin_corpus, worked_example
from .entropy import EntropyConfig, phi, ramsey_entropy
from .errors import BudgetExceeded, RamseyLabError, UnsupportedQuery, ValidationError
from .fincat import FinCategory, load_category, validate_category
from .main import main
from .partition import EntropyKind, Partition, check_entropy_axioms
from .ramsey import EssentialMode, arrow_check, degree_exact_finite, essential_check, essential_min
from .structcat import as_category, degree_oracle, parse_structure

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "EntropyConfig",
    "EntropyKind",
    "EssentialMode",
    "FinCategory",
    "Partition",
    "RamseyLabError",
    "UnsupportedQuery",
    "ValidationError",
    "arrow_check",
    "builtin_corpus",
    "as_category",
    "check_entropy_axioms",
    "degree_exact_finite",
    "degree_oracle",
    "essential_check",
    "essential_min",
    "load_category",
    "main",
    "parse_structure",
    "phi",
    "ramsey_entropy",
    "validate_category",
    "worked_example",
]
