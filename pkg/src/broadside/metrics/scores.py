"""Reference implementations of the ten design metrics.

Every metric returns a score in [0, 1]; higher is better.  The first two
(text legibility, grid appropriateness) form the feasibility constraint,
the next six are aesthetic, the last two semantic.  The batch backends
mirror these formulas; tests hold all implementations together.
"""

from __future__ import annotations

import math

from ..color import ColorScheme, DEFAULT_SCHEME, luma
from ..emotion import EmotionProfile
from ..errors import ProfileMismatch
from ..fonts import FontCatalog
from ..genotype import ALIGNMENTS, PosterGenotype, VERTICAL_ALIGNMENTS
from ..layout import DEFAULT_LINE_HEIGHT_FACTOR, LayoutSolution, resolve_layout
from .params import (
    EvalReport,
    MetricParams,
    ObjectiveWeights,
    aggregate_scores,
)

__all__ = [
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
    "typography_components",
    "apply_emphasis_penalty",
    "optical_density",
    "box_luminance",
    "evaluate",
]


def _clamp01(value: float) -> float:
    if value < 0.0:
        return 0.0
    if value > 1.0:
        return 1.0
    return value


def text_legibility(layout: LayoutSolution) -> float:
    """How well every line fits the available width.

    A line at or under the width scores 1; an overflow loses score
    linearly and bottoms out at twice the available width.
    """
    total = 0.0
    for box in layout.boxes:
        if box.text_width <= layout.available_width:
            total += 1.0
        else:
            overflow = (box.text_width - layout.available_width) / layout.available_width
            total += max(0.0, 1.0 - overflow)
    return total / len(layout.boxes)


def grid_appropriateness(layout: LayoutSolution) -> float:
    """1 when the stacked lines fit the available height, else 0."""
    return 1.0 if layout.grid_height <= layout.available_height else 0.0


def alignment(layout: LayoutSolution, params: MetricParams = MetricParams()) -> float:
    """Similarity of consecutive line widths, blended with a preference
    for using few distinct horizontal alignments."""
    boxes = layout.boxes
    if len(boxes) > 1:
        distance = 0.0
        for left, right in zip(boxes, boxes[1:]):
            distance += abs(left.text_width - right.text_width)
        distance /= len(boxes) - 1
    else:
        distance = 0.0
    tolerance = params.distance_tolerance
    width_term = tolerance / (tolerance + distance)
    count_term = 1.0 / len({box.alignment for box in boxes})
    return (
        params.alignment_width_weight * width_term
        + params.alignment_count_weight * count_term
    )


def box_luminance(coverage: float, foreground_luma: float, background_luma: float) -> float:
    """Mean luminance of a cell whose ink covers the given fraction."""
    return coverage * foreground_luma + (1.0 - coverage) * background_luma


def optical_density(mean_luminance: float) -> float:
    """log10 of the mean luminance, floored so dark cells weigh nothing."""
    return math.log10(max(1.0, mean_luminance))


def balance(layout: LayoutSolution, genotype: PosterGenotype) -> float:
    """Distance between the layout's visual weight centre and the centre
    expected from the first box's alignment, normalised per axis."""
    width = genotype.width
    height = genotype.height
    total_weight = 0.0
    moment_x = 0.0
    moment_y = 0.0
    vertical_code = VERTICAL_ALIGNMENTS.index(genotype.vertical_alignment)
    for box in layout.boxes:
        align_code = ALIGNMENTS.index(box.alignment)
        anchor_x = box.x + box.cell_width * (align_code * 0.5)
        if vertical_code == 1:
            anchor_y = box.y + box.cell_height * 0.5 - box.cell_height / 12.0
        elif vertical_code == 2:
            anchor_y = box.y + box.cell_height
        else:
            anchor_y = box.y
        weight = (
            box.cell_width
            * box.cell_height
            * optical_density(box_luminance(box.ink_coverage, luma(box.foreground), luma(box.background)))
        )
        total_weight += weight
        moment_x += anchor_x * weight
        moment_y += anchor_y * weight
    if total_weight <= 0.0:
        return 1.0
    centre_x = moment_x / total_weight
    centre_y = moment_y / total_weight
    first_code = ALIGNMENTS.index(layout.boxes[0].alignment)
    expected_x = width * (first_code * 0.5)
    if vertical_code == 1:
        expected_y = height * 0.5 - height / 12.0
    elif vertical_code == 2:
        expected_y = height
    else:
        expected_y = 0.0
    dx = (centre_x - expected_x) / width
    dy = (centre_y - expected_y) / height
    return _clamp01(1.0 - math.sqrt((dx * dx + dy * dy) / 2.0))


def justification(layout: LayoutSolution, params: MetricParams = MetricParams()) -> float:
    """How close each line comes to exactly filling the available width;
    under-filling is forgiven by the leniency factor, overflow is not."""
    available = layout.available_width
    total = 0.0
    for box in layout.boxes:
        if box.text_width <= available:
            gap = (available - box.text_width) / params.justification_leniency
        else:
            gap = box.text_width - available
        total += max(0.0, 1.0 - gap / available)
    return total / len(layout.boxes)


def regularity(layout: LayoutSolution, params: MetricParams = MetricParams()) -> float:
    """Evenness of the vertical rhythm: similarity of consecutive
    baseline-to-baseline distances."""
    boxes = layout.boxes
    if len(boxes) <= 2:
        return 1.0
    pitches = [boxes[i + 1].y - boxes[i].y for i in range(len(boxes) - 1)]
    distance = 0.0
    for left, right in zip(pitches, pitches[1:]):
        distance += abs(left - right)
    distance /= len(pitches) - 1
    tolerance = params.distance_tolerance
    return tolerance / (tolerance + distance)


def typeface_pairing(genotype: PosterGenotype, fonts: FontCatalog) -> float:
    """Rewards keeping distinct typefaces within few categories."""
    used = [box.typeface for box in genotype.textboxes]
    distinct_faces = len(set(used))
    if distinct_faces <= 1:
        return 1.0
    distinct_categories = len({fonts.face(face_id).category for face_id in set(used)})
    return _clamp01((distinct_faces - distinct_categories) / (distinct_faces - 1))


def negative_space_fraction(
    layout: LayoutSolution,
    genotype: PosterGenotype,
    params: MetricParams = MetricParams(),
) -> float:
    """Closeness of the uncovered poster percentage to its optimum."""
    ink = 0.0
    for box in layout.boxes:
        ink += box.ink_coverage * (box.cell_width * box.cell_height)
    background_pct = 100.0 * (1.0 - ink / (genotype.width * genotype.height))
    optimum = params.optimal_negative_space
    return max(0.0, 1.0 - abs(background_pct - optimum) / optimum)


def _check_profile(profile: EmotionProfile, genotype: PosterGenotype) -> None:
    if profile.lines != genotype.lines:
        raise ProfileMismatch(
            "emotion profile lines do not match the genotype's box contents"
        )


def semantic_layout(
    layout: LayoutSolution,
    profile: EmotionProfile,
    params: MetricParams = MetricParams(),
) -> float:
    """How close each line's height share is to the share suggested by
    its emotional charge."""
    boxes = layout.boxes
    if len(profile.optimal_heights) != len(boxes):
        raise ProfileMismatch("emotion profile does not cover every box")
    if params.layout_mode == "fixed":
        reference = layout.available_height
        if reference <= 0.0:
            return 0.0
    else:
        reference = layout.grid_height
    total = 0.0
    for box, target in zip(boxes, profile.optimal_heights):
        share = 100.0 * box.cell_height / reference
        total += _clamp01(1.0 - abs(share - target) / 100.0)
    return total / len(boxes)


def apply_emphasis_penalty(
    score: float,
    emphases: tuple[float, float, float],
    threshold: float,
) -> float:
    """Divide the score by the number of simultaneously emphasised
    typographic features when more than one competes."""
    strong = sum(1 for value in emphases if value > threshold)
    if strong >= 2:
        return score / strong
    return score


def typography_components(
    genotype: PosterGenotype,
    profile: EmotionProfile,
    fonts: FontCatalog,
) -> tuple[tuple[float, float, float], tuple[float, float, float]]:
    """Per-feature scores and emphasis strengths for (weight, stretch,
    type design); the overall metric is the best feature, penalised when
    several are emphasised at once."""
    boxes = genotype.textboxes
    count = len(boxes)
    charges = [float(c) for c in profile.charges]
    if len(charges) != count:
        raise ProfileMismatch("emotion profile does not cover every box")

    charge_min = min(charges)
    charge_max = max(charges)
    charge_span = charge_max - charge_min
    fractions = [
        (c - charge_min) / charge_span if charge_span > 0 else 0.0 for c in charges
    ]
    ref = charges.index(charge_min)
    ref_face = fonts.face(boxes[ref].typeface)

    def feature(values: list[float], axis_span: float) -> tuple[float, float]:
        span = max(values) - min(values)
        reference = values[ref]
        total = 0.0
        drift = 0.0
        for value, fraction in zip(values, fractions):
            contrast = abs(value - reference)
            drift += contrast
            expected = span * fraction
            if axis_span > 0:
                total += _clamp01(1.0 - abs(contrast - expected) / axis_span)
            else:
                total += 1.0
        emphasis = (drift / count) / axis_span if axis_span > 0 else 0.0
        return total / count, emphasis

    weight_score, weight_emphasis = feature(
        [box.weight for box in boxes], ref_face.weight_axis.span
    )
    stretch_score, stretch_emphasis = feature(
        [box.stretch for box in boxes], ref_face.stretch_axis.span
    )

    # Type design: the first box of each charge level proposes that
    # level's face; a face cannot serve two levels.  Boxes of a defined
    # level deviate when they use a different face.
    assigned: dict[float, str] = {}
    taken: set[str] = set()
    undefined: set[float] = set()
    for box, charge in zip(boxes, charges):
        if charge in assigned or charge in undefined:
            continue
        if box.typeface in taken:
            undefined.add(charge)
        else:
            assigned[charge] = box.typeface
            taken.add(box.typeface)
    deviations = 0
    face_counts: dict[str, int] = {}
    for box, charge in zip(boxes, charges):
        face_counts[box.typeface] = face_counts.get(box.typeface, 0) + 1
        if charge in assigned and box.typeface != assigned[charge]:
            deviations += 1
    design_score = 1.0 - deviations / count
    design_emphasis = 1.0 - max(face_counts.values()) / count

    return (
        (weight_score, stretch_score, design_score),
        (weight_emphasis, stretch_emphasis, design_emphasis),
    )


def semantic_typography(
    genotype: PosterGenotype,
    profile: EmotionProfile,
    fonts: FontCatalog,
    params: MetricParams = MetricParams(),
) -> float:
    """How well type choices express the lines' emotional charges
    through exactly one feature at a time."""
    scores, emphases = typography_components(genotype, profile, fonts)
    return apply_emphasis_penalty(max(scores), emphases, params.emphasis_threshold)


def evaluate(
    genotype: PosterGenotype,
    layout: LayoutSolution | None,
    profile: EmotionProfile,
    fonts: FontCatalog,
    weights: ObjectiveWeights = ObjectiveWeights(),
    params: MetricParams = MetricParams(),
    stage: str = "S3",
    colors: ColorScheme = DEFAULT_SCHEME,
    line_height_factor: float = DEFAULT_LINE_HEIGHT_FACTOR,
) -> EvalReport:
    """Score one genotype on all ten metrics and aggregate.

    ``layout`` may be passed to reuse an already-resolved phenotype; it
    must come from the same genotype, colours and line-height factor.
    """
    _check_profile(profile, genotype)
    if layout is None:
        layout = resolve_layout(genotype, fonts, colors, line_height_factor)
    scores = {
        "text_legibility": text_legibility(layout),
        "grid_appropriateness": grid_appropriateness(layout),
        "alignment": alignment(layout, params),
        "balance": balance(layout, genotype),
        "justification": justification(layout, params),
        "regularity": regularity(layout, params),
        "typeface_pairing": typeface_pairing(genotype, fonts),
        "negative_space_fraction": negative_space_fraction(layout, genotype, params),
        "semantic_layout": semantic_layout(layout, profile, params),
        "semantic_typography": semantic_typography(genotype, profile, fonts, params),
    }
    return aggregate_scores(scores, weights, stage)
