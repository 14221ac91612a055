"""Constrained evolution of poster genotypes.

The constraint (legibility penalty) and the objective (stage-weighted
aesthetic/semantic blend) are kept separate and traded off by stochastic
ranking: a probabilistic bubble sort that compares by objective with
probability ``pf`` (or whenever both candidates are feasible) and by
penalty otherwise.  Selection is tournament over rank, recombination is
uniform crossover of the vertical-alignment gene and whole text boxes,
mutation perturbs each attribute independently, and the best individuals
by (penalty, -objective) survive unchanged.

All randomness flows through one numpy Generator, so a seed fixes the
entire run.  Draw order is part of the contract: initialisation draws
the vertical alignment then each box's typeface, weight, stretch, size
and alignment; crossover draws one coin per gene in that same box order;
mutation walks alignment, weight, stretch, typeface, size per box after
the vertical alignment.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .color import ColorScheme, DEFAULT_SCHEME
from .emotion import EmotionProfile
from .errors import ConfigError, MismatchedLines, RangeError
from .fonts import FontCatalog
from .genotype import (
    ALIGNMENTS,
    DEFAULT_FONT_SIZE_RANGE,
    Margins,
    PosterGenotype,
    TextBoxGene,
    VERTICAL_ALIGNMENTS,
)
from .layout import DEFAULT_LINE_HEIGHT_FACTOR
from .metrics import (
    EvalReport,
    METRIC_NAMES,
    MetricParams,
    ObjectiveWeights,
    STAGES,
    build_context,
    eval_batch,
    pack_genotypes,
    report_from_row,
)

DEFAULT_POSTER_SIZE = (141.0, 100.0)
DEFAULT_MARGINS = (5.0, 5.0, 5.0, 5.0)

# Size mutation adds an integer offset drawn from this inclusive range.
SIZE_DELTA_RANGE = (-5, 5)


@dataclass(frozen=True)
class EvolutionConfig:
    generations: int = 400
    population_size: int = 30
    elite_size: int = 1
    crossover_probability: float = 0.9
    mutation_probability: float = 0.1
    tournament_size: int = 10
    ranking_feasibility_bias: float = 0.45
    stage: str = "S3"
    seed: int = 0
    poster_width: float = DEFAULT_POSTER_SIZE[0]
    poster_height: float = DEFAULT_POSTER_SIZE[1]
    margins: tuple[float, float, float, float] = DEFAULT_MARGINS
    font_size_range: tuple[float, float] = DEFAULT_FONT_SIZE_RANGE

    def __post_init__(self) -> None:
        if self.generations < 0:
            raise RangeError("generations must be >= 0")
        if self.population_size < 1:
            raise RangeError("population_size must be >= 1")
        if not 0 <= self.elite_size <= self.population_size:
            raise RangeError("elite_size must be in [0, population_size]")
        for name in ("crossover_probability", "mutation_probability", "ranking_feasibility_bias"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise RangeError(f"{name} must be in [0, 1]")
        if self.tournament_size < 1:
            raise RangeError("tournament_size must be >= 1")
        if self.stage not in STAGES:
            raise ConfigError(f"stage must be one of {STAGES}, got {self.stage!r}")
        if self.poster_width <= 0 or self.poster_height <= 0:
            raise RangeError("poster size must be positive")
        lo, hi = self.font_size_range
        if lo <= 0 or lo > hi:
            raise RangeError("font_size_range must satisfy 0 < min <= max")


@dataclass
class Individual:
    genotype: PosterGenotype
    report: EvalReport | None = None

    @property
    def feasible(self) -> bool:
        return self.report is not None and self.report.penalty == 0.0

    def sort_key(self) -> tuple[float, float]:
        """Lexicographic key: lower penalty first, then higher objective."""
        return (self.report.penalty, -self.report.objective)


def init_population(
    lines: Sequence[str],
    config: EvolutionConfig,
    fonts: FontCatalog,
    rng: np.random.Generator,
) -> list[Individual]:
    """Uniform random population over the gene domains."""
    lines = tuple(lines)
    if not lines:
        raise MismatchedLines("at least one line is required")
    face_ids = fonts.ids()
    size_lo, size_hi = config.font_size_range
    margins = Margins(*config.margins)
    population = []
    for _ in range(config.population_size):
        vertical = VERTICAL_ALIGNMENTS[rng.integers(0, len(VERTICAL_ALIGNMENTS))]
        boxes = []
        for line in lines:
            face_id = face_ids[rng.integers(0, len(face_ids))]
            face = fonts.face(face_id)
            weight = float(rng.uniform(face.weight_axis.minimum, face.weight_axis.maximum))
            stretch = float(rng.uniform(face.stretch_axis.minimum, face.stretch_axis.maximum))
            size = float(rng.uniform(size_lo, size_hi))
            boxes.append(
                TextBoxGene(
                    content=line,
                    typeface=face_id,
                    weight=weight,
                    stretch=stretch,
                    size=size,
                    alignment=ALIGNMENTS[rng.integers(0, len(ALIGNMENTS))],
                )
            )
        population.append(
            Individual(
                PosterGenotype(
                    width=config.poster_width,
                    height=config.poster_height,
                    margins=margins,
                    vertical_alignment=vertical,
                    textboxes=tuple(boxes),
                )
            )
        )
    return population


def stochastic_rank(
    population: Sequence[Individual],
    feasibility_bias: float,
    rng: np.random.Generator,
) -> list[Individual]:
    """Probabilistic bubble sort, best first.

    Adjacent pairs compare by objective when both are feasible or with
    probability ``feasibility_bias``; otherwise by penalty.  The full
    coin matrix is drawn up front so the stream consumption is fixed
    regardless of early termination.
    """
    ranked = list(population)
    count = len(ranked)
    if count < 2:
        return ranked
    coins = rng.random((count, count - 1))
    for sweep in range(count):
        swapped = False
        for j in range(count - 1):
            first = ranked[j].report
            second = ranked[j + 1].report
            both_feasible = first.penalty == 0.0 and second.penalty == 0.0
            if both_feasible or coins[sweep, j] < feasibility_bias:
                out_of_order = first.objective < second.objective
            else:
                out_of_order = first.penalty > second.penalty
            if out_of_order:
                ranked[j], ranked[j + 1] = ranked[j + 1], ranked[j]
                swapped = True
        if not swapped:
            break
    return ranked


def tournament_select(
    ranked: Sequence[Individual],
    tournament_size: int,
    rng: np.random.Generator,
) -> Individual:
    """Best-ranked entrant wins; entrants are drawn with replacement."""
    entrants = rng.integers(0, len(ranked), size=tournament_size)
    return ranked[int(entrants.min())]


def crossover(
    first: PosterGenotype,
    second: PosterGenotype,
    rng: np.random.Generator,
) -> PosterGenotype:
    """Uniform crossover: a coin for the vertical alignment, then one
    per text box, taken wholesale from either parent."""
    if first.lines != second.lines:
        raise MismatchedLines("cannot recombine genotypes with different lines")
    vertical = first.vertical_alignment if rng.random() < 0.5 else second.vertical_alignment
    boxes = [
        box_a if rng.random() < 0.5 else box_b
        for box_a, box_b in zip(first.textboxes, second.textboxes)
    ]
    return replace(first, vertical_alignment=vertical, textboxes=tuple(boxes))


def _redraw(current: int, count: int, rng: np.random.Generator) -> int:
    """Uniform draw over the other count-1 options."""
    draw = int(rng.integers(0, count - 1))
    return draw + 1 if draw >= current else draw


def mutate(
    genotype: PosterGenotype,
    config: EvolutionConfig,
    fonts: FontCatalog,
    rng: np.random.Generator,
) -> PosterGenotype:
    """Independent per-attribute mutation at the configured probability.

    Weights and stretches redraw uniformly on their face's axis; a
    typeface change clamps them into the new face's axes.  Size moves by
    an integer offset and clamps to the configured range.
    """
    probability = config.mutation_probability
    face_ids = fonts.ids()
    size_lo, size_hi = config.font_size_range

    vertical = genotype.vertical_alignment
    if rng.random() < probability:
        vertical = VERTICAL_ALIGNMENTS[
            _redraw(VERTICAL_ALIGNMENTS.index(vertical), len(VERTICAL_ALIGNMENTS), rng)
        ]

    boxes = []
    for box in genotype.textboxes:
        alignment = box.alignment
        typeface = box.typeface
        weight = box.weight
        stretch = box.stretch
        size = box.size

        if rng.random() < probability:
            alignment = ALIGNMENTS[_redraw(ALIGNMENTS.index(alignment), len(ALIGNMENTS), rng)]
        face = fonts.face(typeface)
        if rng.random() < probability:
            weight = float(rng.uniform(face.weight_axis.minimum, face.weight_axis.maximum))
        if rng.random() < probability:
            stretch = float(rng.uniform(face.stretch_axis.minimum, face.stretch_axis.maximum))
        if len(face_ids) > 1 and rng.random() < probability:
            typeface = face_ids[_redraw(face_ids.index(typeface), len(face_ids), rng)]
            new_face = fonts.face(typeface)
            weight = min(max(weight, new_face.weight_axis.minimum), new_face.weight_axis.maximum)
            stretch = min(
                max(stretch, new_face.stretch_axis.minimum), new_face.stretch_axis.maximum
            )
        if rng.random() < probability:
            delta = int(rng.integers(SIZE_DELTA_RANGE[0], SIZE_DELTA_RANGE[1] + 1))
            size = float(min(max(size + delta, size_lo), size_hi))

        boxes.append(
            TextBoxGene(
                content=box.content,
                typeface=typeface,
                weight=weight,
                stretch=stretch,
                size=size,
                alignment=alignment,
            )
        )
    return replace(genotype, vertical_alignment=vertical, textboxes=tuple(boxes))


class RunStats:
    """Per-generation statistics log, serialisable to CSV.

    best_* columns describe the lexicographically best individual of the
    generation (penalty ascending, objective descending); mean_* columns
    average over the whole population.
    """

    COLUMNS = tuple(
        ["generation", "best_objective", "mean_objective", "best_penalty", "mean_penalty", "feasible_count"]
        + [f"best_{name}" for name in METRIC_NAMES]
        + [f"mean_{name}" for name in METRIC_NAMES]
    )

    def __init__(self) -> None:
        self.rows: list[tuple[float, ...]] = []

    def __len__(self) -> int:
        return len(self.rows)

    def record(self, generation: int, population: Sequence[Individual]) -> None:
        best = min(population, key=Individual.sort_key)
        reports = [individual.report for individual in population]
        row = [
            float(generation),
            best.report.objective,
            float(np.mean([r.objective for r in reports])),
            best.report.penalty,
            float(np.mean([r.penalty for r in reports])),
            float(sum(1 for r in reports if r.penalty == 0.0)),
        ]
        row.extend(best.report.scores)
        means = np.mean([r.scores for r in reports], axis=0)
        row.extend(float(v) for v in means)
        self.rows.append(tuple(row))

    def column(self, name: str) -> np.ndarray:
        index = self.COLUMNS.index(name)
        return np.array([row[index] for row in self.rows])

    def to_csv(self) -> str:
        buffer = io.StringIO()
        buffer.write(",".join(self.COLUMNS) + "\n")
        for row in self.rows:
            cells = [str(int(row[0]))]
            cells.extend(repr(value) for value in row[1:5])
            cells.append(str(int(row[5])))
            cells.extend(repr(value) for value in row[6:])
            buffer.write(",".join(cells) + "\n")
        return buffer.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "RunStats":
        lines = [line for line in text.splitlines() if line.strip()]
        if not lines or tuple(lines[0].split(",")) != cls.COLUMNS:
            raise ValueError("unrecognised statistics header")
        stats = cls()
        for line in lines[1:]:
            stats.rows.append(tuple(float(cell) for cell in line.split(",")))
        return stats


@dataclass(frozen=True)
class EvolveResult:
    best: Individual
    population: list[Individual]
    stats: RunStats


def _evaluate_population(
    population: Sequence[Individual],
    context,
    threads: int,
) -> None:
    pending = [individual for individual in population if individual.report is None]
    if not pending:
        return
    genes = pack_genotypes([individual.genotype for individual in pending], context)
    rows = eval_batch(context, genes, threads=threads)
    for individual, row in zip(pending, rows):
        individual.report = report_from_row(row)


def evolve(
    lines: Sequence[str],
    profile: EmotionProfile,
    config: EvolutionConfig,
    fonts: FontCatalog,
    weights: ObjectiveWeights = ObjectiveWeights(),
    params: MetricParams = MetricParams(),
    colors: ColorScheme = DEFAULT_SCHEME,
    line_height_factor: float = DEFAULT_LINE_HEIGHT_FACTOR,
    threads: int = 1,
    on_generation: Callable[[int, Sequence[Individual]], None] | None = None,
) -> EvolveResult:
    """Run the full loop and return the final best, population and stats."""
    rng = np.random.default_rng(config.seed)
    context = build_context(
        lines, profile, fonts, weights, params, config.stage, colors, line_height_factor
    )
    population = init_population(lines, config, fonts, rng)
    _evaluate_population(population, context, threads)

    stats = RunStats()
    stats.record(0, population)
    if on_generation is not None:
        on_generation(0, population)

    for generation in range(1, config.generations + 1):
        ranked = stochastic_rank(population, config.ranking_feasibility_bias, rng)
        elites = sorted(population, key=Individual.sort_key)[: config.elite_size]

        offspring: list[Individual] = []
        while len(offspring) < config.population_size - config.elite_size:
            parent_a = tournament_select(ranked, config.tournament_size, rng)
            parent_b = tournament_select(ranked, config.tournament_size, rng)
            if rng.random() < config.crossover_probability:
                child = crossover(parent_a.genotype, parent_b.genotype, rng)
            else:
                child = parent_a.genotype
            child = mutate(child, config, fonts, rng)
            offspring.append(Individual(child))

        population = offspring + elites
        _evaluate_population(population, context, threads)
        stats.record(generation, population)
        if on_generation is not None:
            on_generation(generation, population)

    best = min(population, key=Individual.sort_key)
    return EvolveResult(best=best, population=population, stats=stats)
