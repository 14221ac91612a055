"""Jit-compiled batch evaluation: same contract as the numpy backend.

One scalar loop per individual, compiled with numba.  The kernel releases
the GIL so the dispatcher can spread row chunks over worker threads.
Importing this module requires numba; the dispatcher treats an import
failure as "backend unavailable".
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from .packing import EvalContext, GeneArrays, OUT_COLUMNS

_FILL = 0.7
_DENSITY_BASE = 0.2
_DENSITY_GAIN = 0.4
_STATIC_FRACTION = 0.5


@njit(cache=True, nogil=True)
def _kernel(
    width, height, mlp, mtp, mrp, mbp, vert, align, face, weight, stretch, size,
    corner_sums, upem, wmin, wmax, smin, smax, category,
    charge_fracs, opt_heights, ref_box, level_of_box, level_first_box,
    fg_luma, bg_luma, lhf, tolerance, leniency, opt_ns, layout_mode,
    threshold, w_width, w_count, aes_w, sem_w, stage_sem, stage_aes, out,
):
    population, boxes = align.shape
    faces = upem.shape[0]
    levels = level_first_box.shape[0]

    text_w = np.empty(boxes)
    cell_h = np.empty(boxes)
    tops = np.empty(boxes)
    coverage = np.empty(boxes)
    vis_w = np.empty(boxes)
    anchor_y = np.empty(boxes)
    face_counts = np.zeros(faces, dtype=np.int64)
    seen_face = np.zeros(faces, dtype=np.bool_)
    seen_cat = np.zeros(16, dtype=np.bool_)
    assigned = np.empty(levels, dtype=np.int64)
    defined = np.zeros(levels, dtype=np.bool_)

    for p in range(population):
        w = width[p]
        h = height[p]
        margin_left = mlp[p] / 100.0 * w
        margin_top = mtp[p] / 100.0 * w
        margin_right = mrp[p] / 100.0 * w
        margin_bottom = mbp[p] / 100.0 * w
        avail_w = w - margin_left - margin_right
        avail_h = h - margin_top - margin_bottom
        va = vert[p]

        grid_h = 0.0
        for b in range(boxes):
            f = face[p, b]
            w_span = wmax[f] - wmin[f]
            s_span = smax[f] - smin[f]
            u = (weight[p, b] - wmin[f]) / w_span if w_span > 0 else 0.0
            v = (stretch[p, b] - smin[f]) / s_span if s_span > 0 else 0.0
            units = (
                corner_sums[b, f, 0] * ((1.0 - u) * (1.0 - v))
                + corner_sums[b, f, 1] * (u * (1.0 - v))
                + corner_sums[b, f, 2] * ((1.0 - u) * v)
                + corner_sums[b, f, 3] * (u * v)
            )
            text_w[b] = units * size[p, b] / upem[f]
            cell_h[b] = size[p, b] * lhf
            grid_h += cell_h[b]

        if va == 0:
            content_top = margin_top
        elif va == 1:
            content_top = margin_top + (avail_h - grid_h) / 2.0
        else:
            content_top = margin_top + (avail_h - grid_h)
        y = content_top
        for b in range(boxes):
            tops[b] = y
            y += cell_h[b]

        # text legibility
        total = 0.0
        for b in range(boxes):
            if text_w[b] <= avail_w:
                total += 1.0
            else:
                total += max(0.0, 1.0 - (text_w[b] - avail_w) / avail_w)
        s_legibility = total / boxes

        # grid appropriateness
        s_grid = 1.0 if grid_h <= avail_h else 0.0

        # alignment
        width_dist = 0.0
        if boxes > 1:
            for b in range(boxes - 1):
                width_dist += abs(text_w[b] - text_w[b + 1])
            width_dist /= boxes - 1
        seen0 = False
        seen1 = False
        seen2 = False
        for b in range(boxes):
            if align[p, b] == 0:
                seen0 = True
            elif align[p, b] == 1:
                seen1 = True
            else:
                seen2 = True
        distinct_aligns = (1.0 if seen0 else 0.0) + (1.0 if seen1 else 0.0) + (1.0 if seen2 else 0.0)
        s_alignment = w_width * (tolerance / (tolerance + width_dist)) + w_count * (1.0 / distinct_aligns)

        # ink model
        for b in range(boxes):
            f = face[p, b]
            w_span = wmax[f] - wmin[f]
            fraction = (weight[p, b] - wmin[f]) / w_span if w_span > 0 else _STATIC_FRACTION
            density = _DENSITY_BASE + _DENSITY_GAIN * fraction
            cov = text_w[b] * _FILL * size[p, b] * density / (avail_w * cell_h[b])
            if cov < 0.0:
                cov = 0.0
            elif cov > 1.0:
                cov = 1.0
            coverage[b] = cov
            luminance = cov * fg_luma + (1.0 - cov) * bg_luma
            optical = math.log10(max(1.0, luminance))
            vis_w[b] = (avail_w * cell_h[b]) * optical

        # balance
        total_weight = 0.0
        moment_x = 0.0
        moment_y = 0.0
        for b in range(boxes):
            anchor_x = margin_left + avail_w * (align[p, b] * 0.5)
            if va == 1:
                anchor_y[b] = tops[b] + cell_h[b] * 0.5 - cell_h[b] / 12.0
            elif va == 2:
                anchor_y[b] = tops[b] + cell_h[b]
            else:
                anchor_y[b] = tops[b]
            total_weight += vis_w[b]
            moment_x += anchor_x * vis_w[b]
            moment_y += anchor_y[b] * vis_w[b]
        if total_weight > 0.0:
            centre_x = moment_x / total_weight
            centre_y = moment_y / total_weight
            expected_x = w * (align[p, 0] * 0.5)
            if va == 1:
                expected_y = h * 0.5 - h / 12.0
            elif va == 2:
                expected_y = h
            else:
                expected_y = 0.0
            dx = (centre_x - expected_x) / w
            dy = (centre_y - expected_y) / h
            value = 1.0 - math.sqrt((dx * dx + dy * dy) / 2.0)
            if value < 0.0:
                value = 0.0
            elif value > 1.0:
                value = 1.0
            s_balance = value
        else:
            s_balance = 1.0

        # justification
        total = 0.0
        for b in range(boxes):
            if text_w[b] <= avail_w:
                gap = (avail_w - text_w[b]) / leniency
            else:
                gap = text_w[b] - avail_w
            total += max(0.0, 1.0 - gap / avail_w)
        s_justification = total / boxes

        # regularity
        if boxes > 2:
            pitch_dist = 0.0
            for b in range(boxes - 2):
                pitch_a = tops[b + 1] - tops[b]
                pitch_b = tops[b + 2] - tops[b + 1]
                pitch_dist += abs(pitch_a - pitch_b)
            pitch_dist /= boxes - 2
            s_regularity = tolerance / (tolerance + pitch_dist)
        else:
            s_regularity = 1.0

        # typeface pairing
        for f in range(faces):
            seen_face[f] = False
        for c in range(16):
            seen_cat[c] = False
        distinct_faces = 0
        distinct_cats = 0
        for b in range(boxes):
            f = face[p, b]
            if not seen_face[f]:
                seen_face[f] = True
                distinct_faces += 1
                c = category[f]
                if not seen_cat[c]:
                    seen_cat[c] = True
                    distinct_cats += 1
        if distinct_faces <= 1:
            s_pairing = 1.0
        else:
            value = (distinct_faces - distinct_cats) / (distinct_faces - 1)
            if value < 0.0:
                value = 0.0
            elif value > 1.0:
                value = 1.0
            s_pairing = value

        # negative space
        ink = 0.0
        for b in range(boxes):
            ink += coverage[b] * (avail_w * cell_h[b])
        background_pct = 100.0 * (1.0 - ink / (w * h))
        s_negative = max(0.0, 1.0 - abs(background_pct - opt_ns) / opt_ns)

        # semantic layout
        if layout_mode == 0 and avail_h <= 0.0:
            s_sem_layout = 0.0
        else:
            reference = avail_h if layout_mode == 0 else grid_h
            total = 0.0
            for b in range(boxes):
                share = 100.0 * cell_h[b] / reference
                value = 1.0 - abs(share - opt_heights[b]) / 100.0
                if value < 0.0:
                    value = 0.0
                elif value > 1.0:
                    value = 1.0
                total += value
            s_sem_layout = total / boxes

        # semantic typography: weight and stretch features
        ref_face = face[p, ref_box]
        ref_w_span = wmax[ref_face] - wmin[ref_face]
        ref_s_span = smax[ref_face] - smin[ref_face]

        w_lo = weight[p, 0]
        w_hi = weight[p, 0]
        s_lo = stretch[p, 0]
        s_hi = stretch[p, 0]
        for b in range(1, boxes):
            if weight[p, b] < w_lo:
                w_lo = weight[p, b]
            if weight[p, b] > w_hi:
                w_hi = weight[p, b]
            if stretch[p, b] < s_lo:
                s_lo = stretch[p, b]
            if stretch[p, b] > s_hi:
                s_hi = stretch[p, b]
        w_used_span = w_hi - w_lo
        s_used_span = s_hi - s_lo

        if ref_w_span > 0:
            total = 0.0
            drift = 0.0
            for b in range(boxes):
                contrast = abs(weight[p, b] - weight[p, ref_box])
                drift += contrast
                expected = w_used_span * charge_fracs[b]
                value = 1.0 - abs(contrast - expected) / ref_w_span
                if value < 0.0:
                    value = 0.0
                elif value > 1.0:
                    value = 1.0
                total += value
            weight_score = total / boxes
            weight_emph = (drift / boxes) / ref_w_span
        else:
            weight_score = 1.0
            weight_emph = 0.0

        if ref_s_span > 0:
            total = 0.0
            drift = 0.0
            for b in range(boxes):
                contrast = abs(stretch[p, b] - stretch[p, ref_box])
                drift += contrast
                expected = s_used_span * charge_fracs[b]
                value = 1.0 - abs(contrast - expected) / ref_s_span
                if value < 0.0:
                    value = 0.0
                elif value > 1.0:
                    value = 1.0
                total += value
            stretch_score = total / boxes
            stretch_emph = (drift / boxes) / ref_s_span
        else:
            stretch_score = 1.0
            stretch_emph = 0.0

        # semantic typography: type design feature
        for level in range(levels):
            proposer = face[p, level_first_box[level]]
            clash = False
            for earlier in range(level):
                if defined[earlier] and assigned[earlier] == proposer:
                    clash = True
                    break
            defined[level] = not clash
            assigned[level] = proposer
        deviations = 0
        for f in range(faces):
            face_counts[f] = 0
        for b in range(boxes):
            f = face[p, b]
            face_counts[f] += 1
            level = level_of_box[b]
            if defined[level] and f != assigned[level]:
                deviations += 1
        max_count = 0
        for f in range(faces):
            if face_counts[f] > max_count:
                max_count = face_counts[f]
        design_score = 1.0 - deviations / boxes
        design_emph = 1.0 - max_count / boxes

        overall = weight_score
        if stretch_score > overall:
            overall = stretch_score
        if design_score > overall:
            overall = design_score
        strong = 0
        if weight_emph > threshold:
            strong += 1
        if stretch_emph > threshold:
            strong += 1
        if design_emph > threshold:
            strong += 1
        s_sem_typography = overall / strong if strong >= 2 else overall

        out[p, 0] = s_legibility
        out[p, 1] = s_grid
        out[p, 2] = s_alignment
        out[p, 3] = s_balance
        out[p, 4] = s_justification
        out[p, 5] = s_regularity
        out[p, 6] = s_pairing
        out[p, 7] = s_negative
        out[p, 8] = s_sem_layout
        out[p, 9] = s_sem_typography

        aesthetic = 0.0
        semantic = 0.0
        for m in range(10):
            aesthetic += aes_w[m] * out[p, m]
            semantic += sem_w[m] * out[p, m]
        out[p, 10] = aesthetic
        out[p, 11] = semantic
        out[p, 12] = stage_sem * semantic + stage_aes * aesthetic
        out[p, 13] = 1.0 - (out[p, 0] + out[p, 1]) / 2.0


def eval_batch_numba(context: EvalContext, genes: GeneArrays) -> np.ndarray:
    out = np.empty((genes.population_size, OUT_COLUMNS))
    if genes.population_size == 0:
        return out
    _kernel(
        genes.width, genes.height,
        genes.margin_left, genes.margin_top, genes.margin_right, genes.margin_bottom,
        genes.vertical, genes.align, genes.face, genes.weight, genes.stretch, genes.size,
        context.corner_sums, context.units_per_em,
        context.weight_min, context.weight_max, context.stretch_min, context.stretch_max,
        context.category,
        context.charge_fractions, context.optimal_heights,
        context.reference_box, context.level_of_box, context.level_first_box,
        context.foreground_luma, context.background_luma, context.line_height_factor,
        context.distance_tolerance, context.justification_leniency,
        context.optimal_negative_space, context.layout_mode,
        context.emphasis_threshold,
        context.alignment_width_weight, context.alignment_count_weight,
        context.aesthetic_weights, context.semantic_weights,
        context.stage_semantic, context.stage_aesthetic,
        out,
    )
    return out
