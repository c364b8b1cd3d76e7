"""Induced distributions of orthogonal polynomials: evaluation, inversion, sampling."""

from .errors import (
    DomainError,
    IllConditionedDesignError,
    InconsistentCoefficientsError,
    InducedError,
    InsufficientCoefficientsError,
    NumericError,
    OracleAccuracyError,
    TableParseError,
    UnsupportedMeasureError,
)
from .evaluation import (
    InducedDistribution,
    approx_median,
    get_distribution,
    idist,
    idist_freud,
    idist_halffreud,
    idist_halffreud_comp,
    idist_jacobi,
    jacobi_error_bound,
    jacobi_modified_table,
)
from .inversion import idist_inverse, induced_recurrence, markov_stiltjies_interval
from .measures import (
    Custom,
    Freud,
    HalfLineFreud,
    Jacobi,
    MeasureSpec,
    freud_from_halfline,
    halfline_from_freud,
    load_table,
    normalization_constant,
    recurrence_table,
    save_table,
)
from .modification import linear_modification, quadratic_modification, repeated_quadratic
from .recurrence import (
    QuadratureRule,
    RecurrenceTable,
    eval_poly,
    gauss_rule,
    normalized_seq,
    ratio_seq,
    reconstruct_poly,
)
from .sampling import (
    LSDesign,
    MultiIndexSet,
    TensorMeasure,
    equilibrium_cdf,
    equilibrium_experiment,
    gram_discrepancy,
    least_squares,
    ls_design,
    sample_count,
    sample_mixture,
    total_degree_set,
)

__version__ = "0.1.0"
