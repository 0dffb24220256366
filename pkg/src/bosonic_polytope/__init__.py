"""Spectral polytopes of bosonic w-ensembles: lineups, vertices, membership, exclusion constraints and an exact-diagonalization oracle."""

from .configs import (
    Configuration,
    Order,
    all_configurations,
    compare,
    count_configurations,
    lower_covers,
    minimal_successors,
    occupation_vector,
    precedes,
    upper_covers,
)
from .errors import (
    DegeneracyError,
    DegeneracyWarning,
    DimensionError,
    DomainError,
    NormalizationError,
    PolytopeError,
    PreconditionError,
    SizeError,
    UnsupportedError,
)
from .halfspace import Halfspace, HalfspaceSystem, analytic_halfspaces, check_system, numeric_facets
from .lineups import Lineup, count_lineups, enumerate_lineups, lift_lineup, realizing_gaps
from .polytope import (
    MembershipResult,
    SpectralPolytope,
    Vertex,
    WeightVector,
    batch_contains,
    build_vertices,
    contains,
    domain_inclusion,
    generic_weights,
    in_minkowski_sum,
    in_permutation_hull,
    majorizes,
    membership,
    minkowski_lift,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
