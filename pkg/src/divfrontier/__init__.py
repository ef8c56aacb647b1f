"""Precision-recall divergence frontiers between probability distributions.

Computes discrete Renyi frontiers, exponential-family KL frontiers, and
the limiting alpha -> 0 / alpha -> infinity cases, with estimation
utilities for generative-model evaluation from sample embeddings.
"""

__version__ = "0.1.0"

from .distributions import Alpha, GaussianParams, Histogram, histograms_equal
from .divergences import (
    ExpFamilySpec,
    bregman_kl,
    funk_metric,
    kl_discrete,
    kl_gaussian,
    renyi_discrete,
    renyi_gaussian,
)
from .discrete_frontier import (
    EXCLUSIVE,
    INCLUSIVE,
    FrontierCurve,
    PRDCurve,
    exclusive_curve_point,
    frontier,
    inclusive_curve_point,
    infinity_geodesic_point,
    kl_curve_point,
    pareto_filter,
    prd_from_infinity_frontier,
    prd_reference,
)
from .expfamily import (
    MomentParams,
    NaturalParams,
    bernoulli_family,
    gaussian_family,
    gaussian_to_natural,
    moment_to_natural,
    natural_to_gaussian,
    natural_to_moment,
)
from .expfam_frontier import expfam_curve_point, frontier_kl, kl_endpoints
from .estimation import (
    PipelineConfig,
    PipelineReport,
    QuantizationModel,
    evaluate_pipeline,
    fit_gaussian,
    knn_support_metrics,
    quantize,
)
from .oracle import (
    SimplexGrid,
    brute_force_frontier,
    certify_frontier,
    divergence_quadrature,
    enumerate_simplex,
    hausdorff_linf,
    max_dominance_violation,
    realizable_pairs,
)
from .io import (
    distribution_to_json,
    load_distribution,
    load_pipeline_config,
    load_samples_csv,
    read_pairs_csv,
    write_frontier_csv,
    write_json,
    write_prd_csv,
)
from .errors import (
    DimensionError,
    DivFrontierError,
    DivergenceUndefinedError,
    InsufficientDataError,
    ParameterError,
    ParseError,
)

__all__ = [
    "Alpha",
    "GaussianParams",
    "Histogram",
    "histograms_equal",
    "ExpFamilySpec",
    "bregman_kl",
    "funk_metric",
    "kl_discrete",
    "kl_gaussian",
    "renyi_discrete",
    "renyi_gaussian",
    "EXCLUSIVE",
    "INCLUSIVE",
    "FrontierCurve",
    "PRDCurve",
    "exclusive_curve_point",
    "frontier",
    "inclusive_curve_point",
    "infinity_geodesic_point",
    "kl_curve_point",
    "pareto_filter",
    "prd_from_infinity_frontier",
    "prd_reference",
    "MomentParams",
    "NaturalParams",
    "bernoulli_family",
    "gaussian_family",
    "gaussian_to_natural",
    "moment_to_natural",
    "natural_to_gaussian",
    "natural_to_moment",
    "expfam_curve_point",
    "frontier_kl",
    "kl_endpoints",
    "PipelineConfig",
    "PipelineReport",
    "QuantizationModel",
    "evaluate_pipeline",
    "fit_gaussian",
    "knn_support_metrics",
    "quantize",
    "SimplexGrid",
    "brute_force_frontier",
    "certify_frontier",
    "divergence_quadrature",
    "enumerate_simplex",
    "hausdorff_linf",
    "max_dominance_violation",
    "realizable_pairs",
    "distribution_to_json",
    "load_distribution",
    "load_pipeline_config",
    "load_samples_csv",
    "read_pairs_csv",
    "write_frontier_csv",
    "write_json",
    "write_prd_csv",
    "DimensionError",
    "DivFrontierError",
    "DivergenceUndefinedError",
    "InsufficientDataError",
    "ParameterError",
    "ParseError",
]
