"""Metric parameters, objective weights and the evaluation report type.

Metric order is fixed and shared by every evaluation backend, the
statistics log and the chart renderer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np

from ..errors import ConfigError, RangeError

METRIC_NAMES = (
    "text_legibility",
    "grid_appropriateness",
    "alignment",
    "balance",
    "justification",
    "regularity",
    "typeface_pairing",
    "negative_space_fraction",
    "semantic_layout",
    "semantic_typography",
)

# The two legibility metrics form the constraint; the rest are objectives.
LEGIBILITY_METRICS = ("text_legibility", "grid_appropriateness")

AESTHETIC_WEIGHTS = MappingProxyType(
    {
        "alignment": 0.10,
        "regularity": 0.10,
        "balance": 0.20,
        "negative_space_fraction": 0.20,
        "justification": 0.30,
        "typeface_pairing": 0.10,
    }
)
SEMANTIC_WEIGHTS = MappingProxyType(
    {
        "semantic_layout": 0.50,
        "semantic_typography": 0.50,
    }
)

STAGES = ("S1", "S2", "S3")
STAGE_SEMANTIC = MappingProxyType({"S1": 1.0, "S2": 0.0, "S3": 0.5})
STAGE_AESTHETIC = MappingProxyType({"S1": 0.0, "S2": 1.0, "S3": 0.5})

LAYOUT_MODES = ("fixed", "relative")


@dataclass(frozen=True)
class MetricParams:
    """Tunable constants shared by all metric implementations."""

    # Pixel distances soften through tolerance / (tolerance + distance).
    distance_tolerance: float = 10.0
    # Under-filled width gaps are forgiven by this factor before scoring.
    justification_leniency: float = 3.0
    # Ideal percentage of the poster left uncovered by ink.
    optimal_negative_space: float = 50.0
    # "fixed": line heights score against the available height;
    # "relative": against the grid's own height.
    layout_mode: str = "fixed"
    # A typography feature is emphasised when its strength exceeds this.
    emphasis_threshold: float = 0.2
    # Alignment metric blend: width-difference term vs alignment-count term.
    alignment_width_weight: float = 0.8
    alignment_count_weight: float = 0.2

    def __post_init__(self) -> None:
        if self.distance_tolerance <= 0:
            raise RangeError("distance_tolerance must be positive")
        if self.justification_leniency <= 0:
            raise RangeError("justification_leniency must be positive")
        if self.optimal_negative_space <= 0 or self.optimal_negative_space > 100:
            raise RangeError("optimal_negative_space must be in (0, 100]")
        if self.layout_mode not in LAYOUT_MODES:
            raise ConfigError(f"layout_mode must be one of {LAYOUT_MODES}")
        if not 0 <= self.emphasis_threshold <= 1:
            raise RangeError("emphasis_threshold must be in [0, 1]")


def _weight_map(values: Mapping[str, float], allowed: Sequence[str], label: str) -> Mapping[str, float]:
    for name, weight in values.items():
        if name not in allowed:
            raise ConfigError(f"{label} weight for unknown metric {name!r}")
        if weight < 0:
            raise RangeError(f"{label} weight for {name!r} must be >= 0")
    return MappingProxyType(dict(values))


@dataclass(frozen=True)
class ObjectiveWeights:
    """Aesthetic/semantic metric weights plus per-stage blending."""

    aesthetic: Mapping[str, float] = AESTHETIC_WEIGHTS
    semantic: Mapping[str, float] = SEMANTIC_WEIGHTS
    stage_semantic: Mapping[str, float] = STAGE_SEMANTIC
    stage_aesthetic: Mapping[str, float] = STAGE_AESTHETIC

    def __post_init__(self) -> None:
        aes = _weight_map(self.aesthetic, METRIC_NAMES, "aesthetic")
        sem = _weight_map(self.semantic, METRIC_NAMES, "semantic")
        object.__setattr__(self, "aesthetic", aes)
        object.__setattr__(self, "semantic", sem)
        for mapping in (self.stage_semantic, self.stage_aesthetic):
            for stage in mapping:
                if stage not in STAGES:
                    raise ConfigError(f"unknown stage {stage!r}")

    def aesthetic_vector(self) -> np.ndarray:
        return np.array([self.aesthetic.get(name, 0.0) for name in METRIC_NAMES])

    def semantic_vector(self) -> np.ndarray:
        return np.array([self.semantic.get(name, 0.0) for name in METRIC_NAMES])

    def stage_blend(self, stage: str) -> tuple[float, float]:
        """(semantic share, aesthetic share) of the objective for a stage."""
        if stage not in STAGES:
            raise ConfigError(f"stage must be one of {STAGES}, got {stage!r}")
        return (self.stage_semantic.get(stage, 0.0), self.stage_aesthetic.get(stage, 0.0))


@dataclass(frozen=True)
class EvalReport:
    """All ten metric scores plus aggregates for one phenotype."""

    scores: tuple[float, ...]
    aesthetic_objective: float
    semantic_objective: float
    objective: float
    penalty: float

    def score(self, name: str) -> float:
        return self.scores[METRIC_NAMES.index(name)]

    @property
    def feasible(self) -> bool:
        return self.penalty == 0.0

    def as_dict(self) -> dict:
        payload = {name: self.scores[i] for i, name in enumerate(METRIC_NAMES)}
        payload["aesthetic_objective"] = self.aesthetic_objective
        payload["semantic_objective"] = self.semantic_objective
        payload["objective"] = self.objective
        payload["penalty"] = self.penalty
        return payload


def scores_in_order(scores: Mapping[str, float] | Sequence[float]) -> tuple[float, ...]:
    if isinstance(scores, Mapping):
        missing = [name for name in METRIC_NAMES if name not in scores]
        if missing:
            raise ConfigError(f"missing metric scores: {missing}")
        return tuple(float(scores[name]) for name in METRIC_NAMES)
    values = tuple(float(v) for v in scores)
    if len(values) != len(METRIC_NAMES):
        raise ConfigError(f"expected {len(METRIC_NAMES)} scores, got {len(values)}")
    return values


def aggregate_scores(
    scores: Mapping[str, float] | Sequence[float],
    weights: ObjectiveWeights,
    stage: str,
) -> EvalReport:
    """Combine raw metric scores into objectives and the constraint penalty."""
    ordered = scores_in_order(scores)
    aesthetic = 0.0
    semantic = 0.0
    for i, name in enumerate(METRIC_NAMES):
        aesthetic += weights.aesthetic.get(name, 0.0) * ordered[i]
        semantic += weights.semantic.get(name, 0.0) * ordered[i]
    w_sem, w_aes = weights.stage_blend(stage)
    objective = w_sem * semantic + w_aes * aesthetic
    legibility = ordered[METRIC_NAMES.index("text_legibility")]
    grid = ordered[METRIC_NAMES.index("grid_appropriateness")]
    penalty = 1.0 - (legibility + grid) / 2.0
    return EvalReport(
        scores=ordered,
        aesthetic_objective=aesthetic,
        semantic_objective=semantic,
        objective=objective,
        penalty=penalty,
    )


def report_from_row(row: np.ndarray) -> EvalReport:
    """Build a report from one backend output row (10 scores + 4 aggregates)."""
    return EvalReport(
        scores=tuple(float(v) for v in row[: len(METRIC_NAMES)]),
        aesthetic_objective=float(row[10]),
        semantic_objective=float(row[11]),
        objective=float(row[12]),
        penalty=float(row[13]),
    )
