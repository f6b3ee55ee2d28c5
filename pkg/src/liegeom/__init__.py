"""Exact invariant geometry of low-dimensional metric Lie algebras.

The public surface: build a `MetricLieAlgebra` (directly, from the
catalog, or from the text format in `catalog`), then ask geometric
questions whose answers are exact in the deformation parameter.
"""

from .algebra import MetricLieAlgebra, SingularMetric, Violation, vector_str
from .catalog import (
    CatalogEntry,
    ParseError,
    ReferenceNote,
    ValidationFailed,
    abelian_control,
    berger,
    catalog,
    dumps,
    load,
    loads,
)
from .geometry import (
    CaseAnalysisIncomplete,
    EinsteinVerdict,
    EnergyReport,
    GeodesicClassification,
    HarmonicityReport,
    KillingVerdict,
    LedgerReport,
    SolitonVerdict,
    WalkerVerdict,
    einstein_check,
    energy_density,
    energy_report,
    geodesic_check,
    geodesic_classify,
    grad_norm_sq,
    harmonicity_classify,
    killing_solve,
    ledger_check,
    ricci_soliton_solve,
    rough_laplacian,
    solve_zero_set,
    walker_check,
)
from .numeric import NumericModel, SingularMetricAtPoint, evaluate_numeric, null_parallel_scan
from .scalars import (
    DivisionByZeroFunction,
    MultiPoly,
    Poly,
    PoleAtEvaluationPoint,
    RatFunc,
    Rational,
    ScalarSyntaxError,
    EPS,
    parse_scalar,
    scalar_str,
)
from .solvers import (
    EigenDecomposition,
    EigenPair,
    InterpolationDegreeExceeded,
    ParametricSolution,
    eigen_analyze,
    solve_parametric,
)

__version__ = "0.1.0"

__all__ = [
    "MetricLieAlgebra",
    "SingularMetric",
    "Violation",
    "vector_str",
    "CatalogEntry",
    "ParseError",
    "ReferenceNote",
    "ValidationFailed",
    "abelian_control",
    "berger",
    "catalog",
    "dumps",
    "load",
    "loads",
    "CaseAnalysisIncomplete",
    "EinsteinVerdict",
    "EnergyReport",
    "GeodesicClassification",
    "HarmonicityReport",
    "KillingVerdict",
    "LedgerReport",
    "SolitonVerdict",
    "WalkerVerdict",
    "einstein_check",
    "energy_density",
    "energy_report",
    "geodesic_check",
    "geodesic_classify",
    "grad_norm_sq",
    "harmonicity_classify",
    "killing_solve",
    "ledger_check",
    "ricci_soliton_solve",
    "rough_laplacian",
    "solve_zero_set",
    "walker_check",
    "NumericModel",
    "SingularMetricAtPoint",
    "evaluate_numeric",
    "null_parallel_scan",
    "DivisionByZeroFunction",
    "MultiPoly",
    "Poly",
    "PoleAtEvaluationPoint",
    "RatFunc",
    "Rational",
    "ScalarSyntaxError",
    "EPS",
    "parse_scalar",
    "scalar_str",
    "EigenDecomposition",
    "EigenPair",
    "InterpolationDegreeExceeded",
    "ParametricSolution",
    "eigen_analyze",
    "solve_parametric",
    "__version__",
]
