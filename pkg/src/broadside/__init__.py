"""Evolve and evaluate one-column typographic posters.

The library has three layers:

- **measure** — font metrics (:mod:`broadside.fonts`), layout
  resolution (:mod:`broadside.layout`) and emotion analysis
  (:mod:`broadside.emotion`);
- **score** — ten design metrics and their weighted aggregation
  (:mod:`broadside.metrics`), with interchangeable numpy / numba batch
  backends;
- **search** — a constrained genetic algorithm with stochastic ranking
  (:mod:`broadside.evolution`) plus SVG rendering and run charts
  (:mod:`broadside.render`).
"""

from __future__ import annotations

from .color import ColorScheme, contrast_ratio, make_scheme
from .config import RunConfig, load_config
from .emotion import (
    EmotionProfile,
    analyze_lines,
    default_lexicon_path,
    load_lexicon,
    load_resources,
)
from .errors import BroadsideError, ConfigError, ResourceError
from .evolution import EvolutionConfig, EvolveResult, Individual, RunStats, evolve
from .fonts import FontCatalog, bundled_catalog, load_catalog
from .genotype import (
    Margins,
    PosterGenotype,
    TextBoxGene,
    parse_genotype,
    serialize_genotype,
    validate_genotype,
)
from .layout import LayoutBox, LayoutSolution, resolve_layout
from .metrics import (
    METRIC_NAMES,
    STAGES,
    EvalReport,
    MetricParams,
    ObjectiveWeights,
    eval_batch,
    evaluate,
)
from .render import plot_stats, render_poster_svg
from .textsplit import divide_lines, split_sentences, split_text

__version__ = "0.1.0"

__all__ = [
    "BroadsideError",
    "ColorScheme",
    "ConfigError",
    "EmotionProfile",
    "EvalReport",
    "EvolutionConfig",
    "EvolveResult",
    "FontCatalog",
    "Individual",
    "LayoutBox",
    "LayoutSolution",
    "METRIC_NAMES",
    "Margins",
    "MetricParams",
    "ObjectiveWeights",
    "PosterGenotype",
    "ResourceError",
    "RunConfig",
    "RunStats",
    "STAGES",
    "TextBoxGene",
    "__version__",
    "analyze_lines",
    "bundled_catalog",
    "contrast_ratio",
    "default_lexicon_path",
    "divide_lines",
    "eval_batch",
    "evaluate",
    "evolve",
    "load_catalog",
    "load_config",
    "load_lexicon",
    "load_resources",
    "make_scheme",
    "parse_genotype",
    "plot_stats",
    "render_poster_svg",
    "resolve_layout",
    "serialize_genotype",
    "split_sentences",
    "split_text",
    "validate_genotype",
]
