"""Pure-numpy batch evaluation: all ten metrics over a population at once.

Mirrors the formulas in scores.py; every array is (population,) or
(population, boxes).  Output rows follow the column layout in packing.
"""

from __future__ import annotations

import numpy as np

from .packing import COL_AESTHETIC, COL_OBJECTIVE, COL_PENALTY, COL_SEMANTIC, EvalContext, GeneArrays, OUT_COLUMNS

# Coverage model constants; kept in sync with layout.py via tests.
_FILL = 0.7
_DENSITY_BASE = 0.2
_DENSITY_GAIN = 0.4
_STATIC_FRACTION = 0.5


def eval_batch_numpy(context: EvalContext, genes: GeneArrays) -> np.ndarray:
    population = genes.population_size
    boxes = context.box_count
    out = np.empty((population, OUT_COLUMNS))
    if population == 0:
        return out

    width = genes.width
    height = genes.height
    margin_left = genes.margin_left / 100.0 * width
    margin_top = genes.margin_top / 100.0 * width
    margin_right = genes.margin_right / 100.0 * width
    margin_bottom = genes.margin_bottom / 100.0 * width
    avail_w = width - margin_left - margin_right
    avail_h = height - margin_top - margin_bottom

    face = genes.face
    w_min = context.weight_min[face]
    w_span = context.weight_max[face] - w_min
    s_min = context.stretch_min[face]
    s_span = context.stretch_max[face] - s_min
    w_denom = np.where(w_span > 0, w_span, 1.0)
    s_denom = np.where(s_span > 0, s_span, 1.0)
    u = np.where(w_span > 0, (genes.weight - w_min) / w_denom, 0.0)
    v = np.where(s_span > 0, (genes.stretch - s_min) / s_denom, 0.0)

    corner = context.corner_sums[np.arange(boxes)[None, :], face, :]  # (P, B, 4)
    units = (
        corner[:, :, 0] * ((1.0 - u) * (1.0 - v))
        + corner[:, :, 1] * (u * (1.0 - v))
        + corner[:, :, 2] * ((1.0 - u) * v)
        + corner[:, :, 3] * (u * v)
    )
    text_w = units * genes.size / context.units_per_em[face]

    cell_h = genes.size * context.line_height_factor
    cum_h = np.cumsum(cell_h, axis=1)
    grid_h = cum_h[:, -1]

    vert = genes.vertical
    content_top = np.where(
        vert == 0,
        margin_top,
        np.where(
            vert == 1,
            margin_top + (avail_h - grid_h) / 2.0,
            margin_top + (avail_h - grid_h),
        ),
    )
    tops = content_top[:, None] + (cum_h - cell_h)

    aw_col = avail_w[:, None]

    # text legibility
    overflow = (text_w - aw_col) / aw_col
    legibility = np.where(text_w <= aw_col, 1.0, np.maximum(0.0, 1.0 - overflow))
    s_legibility = legibility.mean(axis=1)

    # grid appropriateness
    s_grid = np.where(grid_h <= avail_h, 1.0, 0.0)

    # alignment
    if boxes > 1:
        width_dist = np.abs(text_w[:, :-1] - text_w[:, 1:]).mean(axis=1)
    else:
        width_dist = np.zeros(population)
    tolerance = context.distance_tolerance
    distinct_aligns = (
        (genes.align == 0).any(axis=1).astype(np.float64)
        + (genes.align == 1).any(axis=1)
        + (genes.align == 2).any(axis=1)
    )
    s_alignment = (
        context.alignment_width_weight * (tolerance / (tolerance + width_dist))
        + context.alignment_count_weight * (1.0 / distinct_aligns)
    )

    # ink model shared by balance and negative space
    weight_fraction = np.where(w_span > 0, (genes.weight - w_min) / w_denom, _STATIC_FRACTION)
    density = _DENSITY_BASE + _DENSITY_GAIN * weight_fraction
    coverage = np.clip(text_w * _FILL * genes.size * density / (aw_col * cell_h), 0.0, 1.0)
    area = aw_col * cell_h
    luminance = coverage * context.foreground_luma + (1.0 - coverage) * context.background_luma
    optical = np.log10(np.maximum(1.0, luminance))
    visual_weight = area * optical

    # balance
    anchor_x = margin_left[:, None] + aw_col * (genes.align * 0.5)
    offset_mid = cell_h * 0.5 - cell_h / 12.0
    anchor_y = tops + np.where(
        vert[:, None] == 1, offset_mid, np.where(vert[:, None] == 2, cell_h, 0.0)
    )
    total_weight = visual_weight.sum(axis=1)
    safe_total = np.where(total_weight > 0, total_weight, 1.0)
    centre_x = (anchor_x * visual_weight).sum(axis=1) / safe_total
    centre_y = (anchor_y * visual_weight).sum(axis=1) / safe_total
    expected_x = width * (genes.align[:, 0] * 0.5)
    expected_y = np.where(
        vert == 1, height * 0.5 - height / 12.0, np.where(vert == 2, height, 0.0)
    )
    dx = (centre_x - expected_x) / width
    dy = (centre_y - expected_y) / height
    s_balance = np.clip(1.0 - np.sqrt((dx * dx + dy * dy) / 2.0), 0.0, 1.0)
    s_balance = np.where(total_weight > 0, s_balance, 1.0)

    # justification
    leniency = context.justification_leniency
    gap = np.where(text_w <= aw_col, (aw_col - text_w) / leniency, text_w - aw_col)
    s_justification = np.maximum(0.0, 1.0 - gap / aw_col).mean(axis=1)

    # regularity
    if boxes > 2:
        pitches = tops[:, 1:] - tops[:, :-1]
        pitch_dist = np.abs(pitches[:, :-1] - pitches[:, 1:]).mean(axis=1)
        s_regularity = tolerance / (tolerance + pitch_dist)
    else:
        s_regularity = np.ones(population)

    # typeface pairing
    face_sorted = np.sort(face, axis=1)
    distinct_faces = 1 + (np.diff(face_sorted, axis=1) != 0).sum(axis=1)
    cat_sorted = np.sort(context.category[face], axis=1)
    distinct_cats = 1 + (np.diff(cat_sorted, axis=1) != 0).sum(axis=1)
    s_pairing = np.where(
        distinct_faces <= 1,
        1.0,
        np.clip(
            (distinct_faces - distinct_cats) / np.maximum(distinct_faces - 1, 1),
            0.0,
            1.0,
        ),
    )

    # negative space
    ink = (coverage * area).sum(axis=1)
    background_pct = 100.0 * (1.0 - ink / (width * height))
    optimum = context.optimal_negative_space
    s_negative = np.maximum(0.0, 1.0 - np.abs(background_pct - optimum) / optimum)

    # semantic layout
    targets = context.optimal_heights[None, :]
    if context.layout_mode == 0:
        safe_ref = np.where(avail_h > 0, avail_h, 1.0)[:, None]
        share = 100.0 * cell_h / safe_ref
        s_sem_layout = np.clip(1.0 - np.abs(share - targets) / 100.0, 0.0, 1.0).mean(axis=1)
        s_sem_layout = np.where(avail_h > 0, s_sem_layout, 0.0)
    else:
        share = 100.0 * cell_h / grid_h[:, None]
        s_sem_layout = np.clip(1.0 - np.abs(share - targets) / 100.0, 0.0, 1.0).mean(axis=1)

    # semantic typography
    ref = context.reference_box
    fractions = context.charge_fractions[None, :]

    def feature(values: np.ndarray, axis_span: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        span = values.max(axis=1) - values.min(axis=1)
        contrast = np.abs(values - values[:, ref][:, None])
        expected = span[:, None] * fractions
        safe_axis = np.where(axis_span > 0, axis_span, 1.0)
        per_box = np.clip(1.0 - np.abs(contrast - expected) / safe_axis[:, None], 0.0, 1.0)
        score = np.where(axis_span > 0, per_box.mean(axis=1), 1.0)
        emphasis = np.where(axis_span > 0, contrast.mean(axis=1) / safe_axis, 0.0)
        return score, emphasis

    ref_face = face[:, ref]
    ref_w_span = context.weight_max[ref_face] - context.weight_min[ref_face]
    ref_s_span = context.stretch_max[ref_face] - context.stretch_min[ref_face]
    weight_score, weight_emph = feature(genes.weight, ref_w_span)
    stretch_score, stretch_emph = feature(genes.stretch, ref_s_span)

    levels = len(context.level_first_box)
    assigned = np.full((population, levels), -1, dtype=np.int64)
    defined = np.zeros((population, levels), dtype=bool)
    for level in range(levels):
        proposer = face[:, context.level_first_box[level]]
        clash = np.zeros(population, dtype=bool)
        for earlier in range(level):
            clash |= defined[:, earlier] & (assigned[:, earlier] == proposer)
        defined[:, level] = ~clash
        assigned[:, level] = proposer
    level_idx = context.level_of_box
    deviations = (
        defined[:, level_idx] & (face != assigned[:, level_idx])
    ).sum(axis=1)
    design_score = 1.0 - deviations / boxes
    max_face_count = np.zeros(population, dtype=np.int64)
    for face_id in range(context.face_count):
        np.maximum(max_face_count, (face == face_id).sum(axis=1), out=max_face_count)
    design_emph = 1.0 - max_face_count / boxes

    overall = np.maximum(np.maximum(weight_score, stretch_score), design_score)
    threshold = context.emphasis_threshold
    strong = (
        (weight_emph > threshold).astype(np.int64)
        + (stretch_emph > threshold)
        + (design_emph > threshold)
    )
    s_sem_typography = np.where(strong >= 2, overall / np.maximum(strong, 1), overall)

    out[:, 0] = s_legibility
    out[:, 1] = s_grid
    out[:, 2] = s_alignment
    out[:, 3] = s_balance
    out[:, 4] = s_justification
    out[:, 5] = s_regularity
    out[:, 6] = s_pairing
    out[:, 7] = s_negative
    out[:, 8] = s_sem_layout
    out[:, 9] = s_sem_typography

    scores = out[:, :10]
    out[:, COL_AESTHETIC] = scores @ context.aesthetic_weights
    out[:, COL_SEMANTIC] = scores @ context.semantic_weights
    out[:, COL_OBJECTIVE] = (
        context.stage_semantic * out[:, COL_SEMANTIC]
        + context.stage_aesthetic * out[:, COL_AESTHETIC]
    )
    out[:, COL_PENALTY] = 1.0 - (out[:, 0] + out[:, 1]) / 2.0
    return out
