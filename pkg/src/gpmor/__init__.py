"""POD basis interpolation on Grassmann manifolds with stability diagnostics."""

from .errors import (
    CutTimeUndefinedError,
    DataError,
    DegenerateRankError,
    DivisionDomainError,
    GpmError,
    LogMapDomainError,
    ParameterError,
    TangentDomainError,
)
from .grassmann import (
    GrassmannPoint,
    InjectivityCheck,
    PrincipalAngles,
    TangentVector,
    cut_time,
    diameter,
    exp_map,
    geodesic,
    geometric_distance,
    in_injectivity_domain,
    log_map,
    principal_angles,
    riemannian_distance,
)
from .interpolation import (
    InterpolationResult,
    SweepSample,
    TrainingSet,
    c2_sweep,
    interpolate,
    lagrange_weights,
)
from .metrics import ErrorSeries, error_series, frobenius_error, l2_error_series
from .snapshots import PodResult, SnapshotMatrix, compute_pod, reduced_model, singular_spectrum
from .stability import (
    C1Record,
    C2Record,
    C3Record,
    DistanceTable,
    StabilityReport,
    c3_distance_table,
    check_c1,
    check_c2,
    check_c3,
    grassmann_dimension,
)
from .synth import (
    FamilySpec,
    SynthFamily,
    gen_crossing_family,
    gen_nested_family,
    gen_nonnested_family,
    gen_rotation_family,
    generate,
)

__version__ = "0.1.0"

__all__ = [
    "CutTimeUndefinedError",
    "DataError",
    "DegenerateRankError",
    "DivisionDomainError",
    "GpmError",
    "LogMapDomainError",
    "ParameterError",
    "TangentDomainError",
    "GrassmannPoint",
    "InjectivityCheck",
    "PrincipalAngles",
    "TangentVector",
    "cut_time",
    "diameter",
    "exp_map",
    "geodesic",
    "geometric_distance",
    "in_injectivity_domain",
    "log_map",
    "principal_angles",
    "riemannian_distance",
    "InterpolationResult",
    "SweepSample",
    "TrainingSet",
    "c2_sweep",
    "interpolate",
    "lagrange_weights",
    "ErrorSeries",
    "error_series",
    "frobenius_error",
    "l2_error_series",
    "PodResult",
    "SnapshotMatrix",
    "compute_pod",
    "reduced_model",
    "singular_spectrum",
    "C1Record",
    "C2Record",
    "C3Record",
    "DistanceTable",
    "StabilityReport",
    "c3_distance_table",
    "check_c1",
    "check_c2",
    "check_c3",
    "grassmann_dimension",
    "FamilySpec",
    "SynthFamily",
    "gen_crossing_family",
    "gen_nested_family",
    "gen_nonnested_family",
    "gen_rotation_family",
    "generate",
]
