"""Feasibility checks for first and second moments of distributions and rigid bodies."""

from momentgate.core import (
    AugmentedMatrix,
    FeasibilityReport,
    MomentSet,
    PrincipalFrame,
    Status,
    ToleranceConfig,
    augmented_matrix,
    classify,
    cuboid_check,
    half_integer_gamma,
    principal_frame,
    surface_residual,
    volume_ratio,
)
from momentgate.errors import (
    InfeasibleInertia,
    InputError,
    InvalidInput,
    MomentGateError,
    NoRepair,
    NumericalFailure,
)
from momentgate.kernels import BACKEND
from momentgate.oracle import (
    DiscreteDistribution,
    brute_force_nearest,
    construct_witness,
    moments_of,
    quadratic_form,
    random_distribution,
)
from momentgate.repair import (
    RepairSuggestion,
    max_feasible_mass,
    nearest_com_on_ellipsoid,
    scale_com_to_boundary,
    suggest_repairs,
)
from momentgate.rigid_body import (
    Frame,
    RigidBodyParams,
    SemiAxes,
    Triangle,
    com_feasibility,
    inertia_to_moment_set,
    parallel_axis,
    parallel_axis_to_com,
    semiaxes,
    triangle_check,
)

__version__ = "0.1.0"
