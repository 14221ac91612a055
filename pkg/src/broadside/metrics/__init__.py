"""Design metrics: ten scores in [0, 1] plus aggregation and batch backends."""

from .backend import ENV_FLAG, active_backend, available_backends, eval_batch
from .packing import EvalContext, GeneArrays, build_context, pack_genotypes
from .params import (
    AESTHETIC_WEIGHTS,
    EvalReport,
    LEGIBILITY_METRICS,
    METRIC_NAMES,
    MetricParams,
    ObjectiveWeights,
    SEMANTIC_WEIGHTS,
    STAGES,
    aggregate_scores,
    report_from_row,
)
from .scores import (
    alignment,
    apply_emphasis_penalty,
    balance,
    box_luminance,
    evaluate,
    grid_appropriateness,
    justification,
    negative_space_fraction,
    optical_density,
    regularity,
    semantic_layout,
    semantic_typography,
    text_legibility,
    typeface_pairing,
    typography_components,
)

__all__ = [
    "AESTHETIC_WEIGHTS",
    "ENV_FLAG",
    "EvalContext",
    "EvalReport",
    "GeneArrays",
    "LEGIBILITY_METRICS",
    "METRIC_NAMES",
    "MetricParams",
    "ObjectiveWeights",
    "SEMANTIC_WEIGHTS",
    "STAGES",
    "active_backend",
    "aggregate_scores",
    "alignment",
    "apply_emphasis_penalty",
    "available_backends",
    "balance",
    "box_luminance",
    "build_context",
    "evaluate",
    "eval_batch",
    "grid_appropriateness",
    "justification",
    "negative_space_fraction",
    "optical_density",
    "pack_genotypes",
    "regularity",
    "report_from_row",
    "semantic_layout",
    "semantic_typography",
    "text_legibility",
    "typeface_pairing",
    "typography_components",
]
