"""Exact isolated-point solver for determinantal systems over prime fields."""
from .detstart import Bounds, DegreeProfile, bounds, column_degree, row_degree
from .errors import (
    DetsolveError,
    DimensionMismatch,
    Exhausted,
    InvalidProfile,
    ParseError,
    RetryableError,
    TooLarge,
)
from .field_linalg import DEFAULT_PRIME, FieldCtx, PrimeField
from .slp import Slp, SlpBuilder
from .solver import ProblemSpec, SolveReport, oracle_check, parse, print_spec, solve
from .zdp import ZeroDimParam

__all__ = [
    "Bounds", "DegreeProfile", "bounds", "column_degree", "row_degree",
    "DetsolveError", "DimensionMismatch", "Exhausted", "InvalidProfile", "ParseError",
    "RetryableError", "TooLarge",
    "DEFAULT_PRIME", "FieldCtx", "PrimeField",
    "Slp", "SlpBuilder",
    "ProblemSpec", "SolveReport", "oracle_check", "parse", "print_spec", "solve",
    "ZeroDimParam",
]
