"""Exact invariants of semi-free Hamiltonian circle actions in dimension six.

The package computes with the fixed point data of a semi-free circle
action on a compact six-dimensional Hamiltonian manifold: localization
sums, equivariant restriction tables, wall-crossing consistency of the
reduced spaces, the enumeration of realizable shapes, and moment
polytopes of toric examples. All arithmetic is exact.
"""

from .algebra import (
    CarrierMismatchError,
    EquivariantClass,
    NotInvertibleError,
    ReducedClass,
    ReducedSpaceType,
    base_area,
    bundle_over,
    c1_reduced,
    fiber_area,
    fiber_class,
    integrate_component,
    invert_euler,
    mul,
    nontrivial_bundle,
    pair,
    projective_plane,
    trivial_bundle,
)
from .classifier import (
    BlowDownPoint,
    BlowUpPoint,
    ChainResult,
    CrossSurface,
    Crossing,
    EnumerationResult,
    TwistIdentification,
    adjunction_genus,
    dual_class_solve,
    enumerate_types,
    euler_chain_check,
    euler_transport,
    family_instance,
    wall_cross,
)
from .delzant import (
    LatticePolytope,
    PolytopeError,
    SlicePolygon,
    TwistUndefinedError,
    builtin_examples,
    delzant_check,
    detect_twist,
    edge_normal_degrees,
    extract_fixed_data,
    semifree_check,
    slice_polygon,
)
from .fixed_points import (
    FixedComponent,
    FixedPointData,
    InvalidDataError,
    SchemaError,
    betti_profile,
    classify_type,
    point,
    surface,
    validate,
)
from .localization import (
    DHPath,
    MultipleSolutionsError,
    NoSolutionError,
    RestrictionTable,
    abbv_integrate,
    b_plus_minus,
    c1_restriction,
    dh_path,
    equivariant_euler,
    solve_restriction_table,
    verify_redundant_equations,
    w2_vanishes,
)

__all__ = [
    "BlowDownPoint",
    "BlowUpPoint",
    "CarrierMismatchError",
    "ChainResult",
    "CrossSurface",
    "Crossing",
    "DHPath",
    "EnumerationResult",
    "EquivariantClass",
    "FixedComponent",
    "FixedPointData",
    "InvalidDataError",
    "LatticePolytope",
    "MultipleSolutionsError",
    "NoSolutionError",
    "PolytopeError",
    "ReducedClass",
    "ReducedSpaceType",
    "RestrictionTable",
    "SchemaError",
    "SlicePolygon",
    "TwistIdentification",
    "TwistUndefinedError",
    "NotInvertibleError",
    "abbv_integrate",
    "adjunction_genus",
    "b_plus_minus",
    "base_area",
    "betti_profile",
    "builtin_examples",
    "bundle_over",
    "c1_reduced",
    "c1_restriction",
    "classify_type",
    "fiber_area",
    "delzant_check",
    "detect_twist",
    "dh_path",
    "dual_class_solve",
    "edge_normal_degrees",
    "enumerate_types",
    "equivariant_euler",
    "euler_chain_check",
    "euler_transport",
    "extract_fixed_data",
    "family_instance",
    "fiber_class",
    "integrate_component",
    "invert_euler",
    "mul",
    "nontrivial_bundle",
    "pair",
    "point",
    "projective_plane",
    "semifree_check",
    "trivial_bundle",
    "slice_polygon",
    "solve_restriction_table",
    "surface",
    "validate",
    "verify_redundant_equations",
    "w2_vanishes",
    "wall_cross",
]
