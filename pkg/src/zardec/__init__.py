"""Exact Zariski decompositions of divisor classes on surface lattices."""

from .constructions import (
    BoundInput,
    Case1Witness,
    case1_model,
    case1_witness,
    case2_witness,
    k3_only_negative_curves_scan,
    negativity_bound,
)
from .errors import *  # noqa: F401,F403
from .exact_linalg import (
    RatMatrix,
    Rational,
    determinant,
    format_rational,
    is_negative_definite,
    parse_rational,
    solve_linear,
)
from .lattice import Curve, DivisorClass, Lattice, discriminant, intersect, restricted_gram
from .surface_models import (
    ConePosition,
    ProximityData,
    SurfaceModel,
    blowup_model,
    k3_closed_form_decomposition,
    k3_cone_position,
    k3_nef_representation,
    k3_theorem_a_model,
    minus_one_curves,
    pullback_extend,
    strict_transform_class,
)
from .zariski import (
    Box,
    Decomposition,
    Family,
    ScanReport,
    decompose,
    scan_denominators,
    verify_decomposition,
    zariski_denominator,
)

__version__ = "0.1.0"
