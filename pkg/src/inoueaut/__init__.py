"""Exact computation of automorphism component groups of Inoue surfaces
from real quadratic number field data."""

from .exactnum import QuadComplex, QuadReal, Rational, in_discrete_subgroup
from .quadfield import (
    FieldDescriptor,
    FieldElement,
    chi,
    format_field_element,
    parse_field_element,
    parse_rational,
)
from .lattice import Lattice, LatticeQuotient, Matrix2Q
from .units import (
    DEFAULT_POWER_CAP,
    fundamental_unit,
    invariant_unit_generator,
    utheta_exponent,
)
from .surfacegroup import (
    AffineElement,
    InoueData,
    ParameterError,
    StandardFormError,
    SurfaceParams,
    is_standard_form_direct,
    is_standard_form_residue,
    make_generators,
    solve_standard_e,
    surface_group_contains,
    to_inoue_data,
)
from .components import (
    AmbientGroup,
    AutReport,
    ComponentGroup,
    CosetPair,
    GroupStructure,
    InternalConsistencyError,
    automorphism_report,
    build_ambient,
    component_group,
    membership_conditions,
    normalizer_oracle,
    oracle_crosscheck,
    order_bound,
)

__version__ = "0.1.0"

__all__ = [
    "QuadComplex",
    "QuadReal",
    "Rational",
    "in_discrete_subgroup",
    "FieldDescriptor",
    "FieldElement",
    "chi",
    "format_field_element",
    "parse_field_element",
    "parse_rational",
    "Lattice",
    "LatticeQuotient",
    "Matrix2Q",
    "DEFAULT_POWER_CAP",
    "fundamental_unit",
    "invariant_unit_generator",
    "utheta_exponent",
    "AffineElement",
    "InoueData",
    "ParameterError",
    "StandardFormError",
    "SurfaceParams",
    "is_standard_form_direct",
    "is_standard_form_residue",
    "make_generators",
    "solve_standard_e",
    "surface_group_contains",
    "to_inoue_data",
    "AmbientGroup",
    "AutReport",
    "ComponentGroup",
    "CosetPair",
    "GroupStructure",
    "InternalConsistencyError",
    "automorphism_report",
    "build_ambient",
    "component_group",
    "membership_conditions",
    "normalizer_oracle",
    "oracle_crosscheck",
    "order_bound",
]
