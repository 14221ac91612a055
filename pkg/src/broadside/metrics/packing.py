"""Array packing for the batch evaluation backends.

An EvalContext freezes everything shared by a whole evolutionary run
(line texts, font tables, emotion profile, parameters, weights) into
flat numpy arrays; GeneArrays holds the per-individual genes.  Both
backends consume exactly these structures, so their outputs can be
compared element-wise.

Per (line, face) the four corner advance sums are precomputed; a box's
text width is then one bilinear blend instead of a per-character walk.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..color import ColorScheme, DEFAULT_SCHEME, luma
from ..emotion import EmotionProfile
from ..errors import MismatchedLines, ProfileMismatch
from ..fonts import CATEGORIES, FontCatalog
from ..genotype import ALIGNMENTS, PosterGenotype, VERTICAL_ALIGNMENTS
from ..layout import DEFAULT_LINE_HEIGHT_FACTOR
from .params import LAYOUT_MODES, MetricParams, ObjectiveWeights

# Column layout of a backend output row.
OUT_COLUMNS = 14
COL_AESTHETIC = 10
COL_SEMANTIC = 11
COL_OBJECTIVE = 12
COL_PENALTY = 13


@dataclass(frozen=True)
class EvalContext:
    """Run-constant inputs for batch evaluation."""

    lines: tuple[str, ...]
    face_ids: tuple[str, ...]
    corner_sums: np.ndarray      # (lines, faces, 4) advance sums, font units
    units_per_em: np.ndarray     # (faces,)
    weight_min: np.ndarray       # (faces,)
    weight_max: np.ndarray
    stretch_min: np.ndarray
    stretch_max: np.ndarray
    category: np.ndarray         # (faces,) index into CATEGORIES
    charges: np.ndarray          # (lines,)
    charge_fractions: np.ndarray  # (lines,) position in the charge span
    optimal_heights: np.ndarray  # (lines,) percent
    reference_box: int           # first box with the minimum charge
    level_of_box: np.ndarray     # (lines,) charge level per box
    level_first_box: np.ndarray  # (levels,) first box of each level
    foreground_luma: float
    background_luma: float
    line_height_factor: float
    distance_tolerance: float
    justification_leniency: float
    optimal_negative_space: float
    layout_mode: int             # index into LAYOUT_MODES
    emphasis_threshold: float
    alignment_width_weight: float
    alignment_count_weight: float
    aesthetic_weights: np.ndarray  # (10,)
    semantic_weights: np.ndarray   # (10,)
    stage_semantic: float
    stage_aesthetic: float

    @property
    def box_count(self) -> int:
        return len(self.lines)

    @property
    def face_count(self) -> int:
        return len(self.face_ids)

    def face_index(self, face_id: str) -> int:
        return self.face_ids.index(face_id)


def build_context(
    lines: Sequence[str],
    profile: EmotionProfile,
    fonts: FontCatalog,
    weights: ObjectiveWeights = ObjectiveWeights(),
    params: MetricParams = MetricParams(),
    stage: str = "S3",
    colors: ColorScheme = DEFAULT_SCHEME,
    line_height_factor: float = DEFAULT_LINE_HEIGHT_FACTOR,
) -> EvalContext:
    lines = tuple(lines)
    if not lines:
        raise MismatchedLines("at least one line is required")
    if profile.lines != lines:
        raise ProfileMismatch("emotion profile lines do not match the evaluated lines")

    faces = tuple(fonts)
    face_ids = tuple(face.face_id for face in faces)
    corner_sums = np.empty((len(lines), len(faces), 4), dtype=np.float64)
    for line_index, line in enumerate(lines):
        for face_index, face in enumerate(faces):
            for corner in range(4):
                corner_sums[line_index, face_index, corner] = face.corner_sum(line, corner)

    charges = np.asarray(profile.charges, dtype=np.float64)
    charge_min = charges.min()
    charge_span = charges.max() - charge_min
    if charge_span > 0:
        fractions = (charges - charge_min) / charge_span
    else:
        fractions = np.zeros_like(charges)

    # Charge levels in order of first appearance.
    level_of_box = np.empty(len(lines), dtype=np.int64)
    level_first_box: list[int] = []
    seen: dict[float, int] = {}
    for box_index, charge in enumerate(charges):
        key = float(charge)
        if key not in seen:
            seen[key] = len(level_first_box)
            level_first_box.append(box_index)
        level_of_box[box_index] = seen[key]

    w_sem, w_aes = weights.stage_blend(stage)
    return EvalContext(
        lines=lines,
        face_ids=face_ids,
        corner_sums=corner_sums,
        units_per_em=np.array([face.units_per_em for face in faces], dtype=np.float64),
        weight_min=np.array([face.weight_axis.minimum for face in faces]),
        weight_max=np.array([face.weight_axis.maximum for face in faces]),
        stretch_min=np.array([face.stretch_axis.minimum for face in faces]),
        stretch_max=np.array([face.stretch_axis.maximum for face in faces]),
        category=np.array([CATEGORIES.index(face.category) for face in faces], dtype=np.int64),
        charges=charges,
        charge_fractions=fractions,
        optimal_heights=np.asarray(profile.optimal_heights, dtype=np.float64),
        reference_box=int(np.argmin(charges)),
        level_of_box=level_of_box,
        level_first_box=np.asarray(level_first_box, dtype=np.int64),
        foreground_luma=luma(colors.foreground),
        background_luma=luma(colors.background),
        line_height_factor=float(line_height_factor),
        distance_tolerance=params.distance_tolerance,
        justification_leniency=params.justification_leniency,
        optimal_negative_space=params.optimal_negative_space,
        layout_mode=LAYOUT_MODES.index(params.layout_mode),
        emphasis_threshold=params.emphasis_threshold,
        alignment_width_weight=params.alignment_width_weight,
        alignment_count_weight=params.alignment_count_weight,
        aesthetic_weights=weights.aesthetic_vector(),
        semantic_weights=weights.semantic_vector(),
        stage_semantic=w_sem,
        stage_aesthetic=w_aes,
    )


@dataclass(frozen=True)
class GeneArrays:
    """Per-individual genes, one row per genotype."""

    width: np.ndarray          # (P,)
    height: np.ndarray
    margin_left: np.ndarray    # percentages
    margin_top: np.ndarray
    margin_right: np.ndarray
    margin_bottom: np.ndarray
    vertical: np.ndarray       # (P,) index into VERTICAL_ALIGNMENTS
    align: np.ndarray          # (P, B) index into ALIGNMENTS
    face: np.ndarray           # (P, B) index into context face_ids
    weight: np.ndarray         # (P, B)
    stretch: np.ndarray
    size: np.ndarray

    @property
    def population_size(self) -> int:
        return len(self.width)

    def row_slice(self, start: int, stop: int) -> "GeneArrays":
        return GeneArrays(
            width=self.width[start:stop],
            height=self.height[start:stop],
            margin_left=self.margin_left[start:stop],
            margin_top=self.margin_top[start:stop],
            margin_right=self.margin_right[start:stop],
            margin_bottom=self.margin_bottom[start:stop],
            vertical=self.vertical[start:stop],
            align=self.align[start:stop],
            face=self.face[start:stop],
            weight=self.weight[start:stop],
            stretch=self.stretch[start:stop],
            size=self.size[start:stop],
        )


def pack_genotypes(
    genotypes: Sequence[PosterGenotype],
    context: EvalContext,
) -> GeneArrays:
    """Flatten genotypes that all carry the context's lines."""
    population = len(genotypes)
    boxes = context.box_count
    face_index = {face_id: i for i, face_id in enumerate(context.face_ids)}

    width = np.empty(population)
    height = np.empty(population)
    margin_left = np.empty(population)
    margin_top = np.empty(population)
    margin_right = np.empty(population)
    margin_bottom = np.empty(population)
    vertical = np.empty(population, dtype=np.int64)
    align = np.empty((population, boxes), dtype=np.int64)
    face = np.empty((population, boxes), dtype=np.int64)
    weight = np.empty((population, boxes))
    stretch = np.empty((population, boxes))
    size = np.empty((population, boxes))

    for row, genotype in enumerate(genotypes):
        if genotype.lines != context.lines:
            raise MismatchedLines(
                f"genotype {row} carries different lines than the evaluation context"
            )
        width[row] = genotype.width
        height[row] = genotype.height
        margin_left[row] = genotype.margins.left
        margin_top[row] = genotype.margins.top
        margin_right[row] = genotype.margins.right
        margin_bottom[row] = genotype.margins.bottom
        vertical[row] = VERTICAL_ALIGNMENTS.index(genotype.vertical_alignment)
        for column, box in enumerate(genotype.textboxes):
            align[row, column] = ALIGNMENTS.index(box.alignment)
            face[row, column] = face_index[box.typeface]
            weight[row, column] = box.weight
            stretch[row, column] = box.stretch
            size[row, column] = box.size

    return GeneArrays(
        width=width,
        height=height,
        margin_left=margin_left,
        margin_top=margin_top,
        margin_right=margin_right,
        margin_bottom=margin_bottom,
        vertical=vertical,
        align=align,
        face=face,
        weight=weight,
        stretch=stretch,
        size=size,
    )
