"""Graded gentle one-cycle algebras and their twisted root categories."""
from .quiver import (
    AlgebraPresentation, Arrow, GradedQuiver, MultiCycle, OneCycle, Path, PresentationError, Tree, Walk,
    hom_finiteness_check, one_cycle_type, parse_presentation, paths_up_to, quiver_to_dot,
    serialize_presentation,
)
from .families import gamma, gamma_prime, kronecker
from .gentle import (
    CanonicalForm, ag_invariant, canonical_form, derived_equivalent, global_dimension_finite, is_gentle,
    root_params_equivalent_linear, root_params_equivalent_zigzag, threads, ungraded_realizable,
)

__all__ = [
    "AlgebraPresentation", "Arrow", "GradedQuiver", "MultiCycle", "OneCycle", "Path", "PresentationError",
    "Tree", "Walk", "hom_finiteness_check", "one_cycle_type", "parse_presentation", "paths_up_to",
    "quiver_to_dot", "serialize_presentation", "gamma", "gamma_prime", "kronecker", "CanonicalForm",
    "ag_invariant", "canonical_form", "derived_equivalent", "global_dimension_finite", "is_gentle",
    "root_params_equivalent_linear", "root_params_equivalent_zigzag", "threads", "ungraded_realizable",
]
