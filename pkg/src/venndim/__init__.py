"""Generalized Venn diagrams in dimension m >= 2: construction, Venn/simplicity/
reducibility checks and exact edge-count identities."""

from .analysis import (
    analyze,
    corollary1_witnesses,
    fully_reducible_via_r,
    is_fully_reducible_bruteforce,
    is_simple,
    is_venn,
    theorem3_check,
    theorem4_check,
)
from .cmap import CombinatorialMap, FreeCurve, delete_curves, edge_counts, faces_with_signs, validate_map
from .complex import LabeledComplex, region_census
from .constructors import builtin_map, edwards_grid, edwards_interior, trace_map
from .errors import BudgetExceeded, FormatError, InvalidDiagram, PreconditionError, VennError
from .grid import (
    GridDiagram,
    edge_components,
    intersection_locus,
    lift_prism,
    project_onto_surface,
    refine,
    restrict,
    validate_grid,
)
from .lifting import lift, lift_times
from .numerics import bound_consistency, conj3_bound, conj3_coefficients, det_identity_check, recurrence_edges

__version__ = "0.1.0"
