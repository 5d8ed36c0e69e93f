"""Rational homotopy of immersion spaces and Sullivan models of Stiefel bundles."""

from .cgda import (
    CgdaMorphism,
    Element,
    FreeCGDA,
    FreeGCA,
    Generator,
    apply_differential,
    check_d_squared,
    check_morphism,
    cohomology_dims,
    elem_mul,
    is_split_trivial,
    substitute_zero,
    tensor,
)
from .charclasses import (
    ClassVanishingProfile,
    TotalClass,
    dual_total_class,
    normal_bundle_classes,
    universal_pontryagin,
    verify_ahl_identity,
    whitney_sum_total,
)
from .descriptors import ComponentDescriptor, EMFactor
from .errors import (
    BadPartition,
    DegreeCapExceeded,
    HypothesisViolation,
    IndexOutOfRange,
    InvalidDegrees,
    MixedAlgebras,
    NegativeCoefficientWarning,
    ParseError,
    ValidationError,
    ZeroConstantTerm,
)
from .expr import dump, parse_dump, parse_expr
from .immersion import (
    check_hypotheses,
    closed_form_series,
    imm_component_even,
    imm_component_odd,
    imm_general_descriptor,
    moller_factors,
    rank_series_expansion,
)
from .manifolds import ManifoldData, catalog, format_manifold, lookup, parse_manifold
from .series import (
    GradedDims,
    RationalFunction,
    TruncatedSeries,
    expand,
    poincare_polynomial,
    series_inverse,
    series_mul,
)
from .stiefel import (
    BundleClasses,
    StiefelModelSpec,
    build_stiefel_model,
    build_universal_model,
    check_rational_triviality,
    fiber_model,
    formal_classes,
    stiefel_manifold_em_type,
)

__version__ = "0.1.0"
