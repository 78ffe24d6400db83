"""Graded algebra presentations, constructors, validation and the DSL."""

from .presentation import (
    GeneratorSpec,
    GradedAlgebraPresentation,
    ModuleSpec,
    ValidationReport,
    attach_differential,
    check_presentation,
    crossing_lines,
    free_skew_algebra,
    laurent_window,
    quotient_truncated_poly,
    resolution_dga,
    square_zero_extension,
)
from .dsl import DslError, parse_algebra_spec, pretty_print

__all__ = [
    "GeneratorSpec",
    "GradedAlgebraPresentation",
    "ModuleSpec",
    "ValidationReport",
    "attach_differential",
    "check_presentation",
    "crossing_lines",
    "free_skew_algebra",
    "laurent_window",
    "quotient_truncated_poly",
    "resolution_dga",
    "square_zero_extension",
    "DslError",
    "parse_algebra_spec",
    "pretty_print",
]
