"""Exact computer algebra for Hilbert coefficients of m-primary ideals in
presented local rings: reductions, relative coefficients, Ratliff-Rush
closures, and Cohen-Macaulay diagnostics for associated graded rings.

All arithmetic is exact rational; no floating point is used anywhere.
"""

from .config import Config, DEFAULT
from .errors import (
    ArityMismatch,
    CapExceeded,
    ChainCapExceeded,
    DimensionMismatch,
    E0Mismatch,
    EngineError,
    FlagContradiction,
    LinkPropertyFailed,
    ManifestMismatch,
    NonPolynomialWindow,
    NotAReduction,
    NotContained,
    ParseError,
    PolySyntaxError,
    PropertyViolation,
    ReductionCheckFailed,
    SuperficialSearchFailed,
    UnknownVariable,
    ValidationError,
    ZeroPolynomial,
)
from .groebner import (
    GroebnerBasis,
    INFINITE,
    PowerCap,
    buchberger,
    count_standard_monomials,
    eliminate,
    groebner,
    normal_form,
)
from .hilbert import (
    CoefficientVector,
    FiltrationTable,
    HilbertSeries,
    RelativeCoefficients,
    coefficients,
    hs_table,
    relative_coefficients,
    series,
    series_reconstruct,
    w_series_check,
)
from .poly import (
    DEGREVLEX,
    LEX,
    MonomialOrder,
    Polynomial,
    block_order,
    format_polynomial,
    parse_polynomial,
)
from .problemfile import ProblemFile, load_problem, parse_problem
from .reduction import (
    DepthProbeResult,
    HMSums,
    ReductionCertificate,
    SuperficialSequence,
    explore_asymptotic,
    hm_sums,
    is_reduction,
    link_ideal,
    minimal_reduction,
    sequence_from_elements,
    superficial_sequence,
    vv_depth_probe,
)
from .ring import (
    IdealFlags,
    IdealHandle,
    LocalLength,
    RingPresentation,
    ideal,
    ideal_colon,
    ideal_intersect,
    ideal_power,
    ideal_product,
    ideal_sum,
    local_contains,
    local_equal,
    local_length,
    quotient_length,
)
from .rr import (
    RRClosureResult,
    RRSeriesBundle,
    rr_closed_check,
    rr_closure,
    rr_monotonicity_check,
    rr_series,
)
from .verify import (
    VerificationReport,
    verify,
    verify_ic_bound,
    verify_itoh,
    verify_narita,
    verify_northcott,
)

__version__ = "0.1.0"
