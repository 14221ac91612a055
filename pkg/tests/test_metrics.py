"""Targeted per-metric cases with hand-computed expectations."""

from __future__ import annotations

import math

import pytest

from broadside.color import ColorScheme
from broadside.errors import ConfigError, ProfileMismatch, RangeError
from broadside.layout import LayoutBox, LayoutSolution, resolve_layout
from broadside.metrics import (
    METRIC_NAMES,
    EvalReport,
    MetricParams,
    ObjectiveWeights,
    aggregate_scores,
    evaluate,
    report_from_row,
)
from broadside.metrics.params import scores_in_order
from broadside.metrics.scores import (
    alignment,
    apply_emphasis_penalty,
    balance,
    box_luminance,
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

from conftest import build_genotype

BLACK = (0, 0, 0)
WHITE = (255, 255, 255)


def mono_layout(mono_catalog, lines, *, size=10.0, width=120.0, height=100.0,
                alignment="left", valign="top", line_height_factor=1.2,
                weight=400.0, margins=(0.0, 0.0, 0.0, 0.0), colors=None):
    """TestMono layout: every character advances 600/1000 em, so a line of
    n characters at size s is exactly 0.6 * n * s wide."""
    genotype = build_genotype(
        lines,
        faces=("TestMono",),
        weight=weight,
        stretch=100.0,
        size=size,
        width=width,
        height=height,
        margins=margins,
        vertical_alignment=valign,
        alignment=alignment,
    )
    layout = resolve_layout(
        genotype,
        mono_catalog,
        colors if colors is not None else ColorScheme(BLACK, WHITE),
        line_height_factor,
    )
    return genotype, layout


def synthetic_box(**overrides) -> LayoutBox:
    values = dict(
        x=0.0,
        y=0.0,
        cell_width=100.0,
        cell_height=10.0,
        text_width=50.0,
        ink_coverage=0.1,
        alignment="left",
        foreground=BLACK,
        background=WHITE,
    )
    values.update(overrides)
    return LayoutBox(**values)


# ------------------------------------------------------ text legibility


def test_legibility_all_fit(mono_catalog):
    _, layout = mono_layout(mono_catalog, ["aaaa", "bbbbbb"], size=10.0)
    assert text_legibility(layout) == 1.0


def test_legibility_partial_overflow(mono_catalog):
    # 20 chars * 0.6 * 15 = 180 = 1.5 * the 120 available width -> 0.5.
    _, layout = mono_layout(mono_catalog, ["a" * 20], size=15.0)
    assert text_legibility(layout) == pytest.approx(0.5, abs=1e-12)


def test_legibility_bottoms_out_at_double_width(mono_catalog):
    # 40 chars * 0.6 * 10 = 240 = 2 * 120 -> exactly 0.
    _, layout = mono_layout(mono_catalog, ["a" * 40], size=10.0)
    assert text_legibility(layout) == 0.0
    _, layout = mono_layout(mono_catalog, ["a" * 50], size=10.0)
    assert text_legibility(layout) == 0.0  # clamped below


def test_legibility_averages_over_boxes(mono_catalog):
    _, layout = mono_layout(mono_catalog, ["aa", "a" * 40], size=10.0)
    assert text_legibility(layout) == pytest.approx(0.5, abs=1e-12)


# ------------------------------------------------- grid appropriateness


def test_grid_fits(mono_catalog):
    _, layout = mono_layout(mono_catalog, ["a", "b"], size=10.0, height=100.0)
    assert layout.grid_height == pytest.approx(24.0)
    assert grid_appropriateness(layout) == 1.0


def test_grid_overflows(mono_catalog):
    _, layout = mono_layout(mono_catalog, ["a", "b"], size=50.0, height=100.0)
    assert grid_appropriateness(layout) == 0.0


def test_grid_boundary_is_inclusive(mono_catalog):
    # Two 50-high cells exactly fill the 100 available height.
    _, layout = mono_layout(
        mono_catalog, ["a", "b"], size=25.0, height=100.0, line_height_factor=2.0
    )
    assert layout.grid_height == layout.available_height == 100.0
    assert grid_appropriateness(layout) == 1.0


# ------------------------------------------------------------ alignment


def test_alignment_uniform_widths_single_alignment(mono_catalog):
    _, layout = mono_layout(mono_catalog, ["abcd", "wxyz"], size=10.0)
    assert alignment(layout) == pytest.approx(1.0, abs=1e-12)


def test_alignment_width_distance_blend(mono_catalog):
    # Widths 24 and 30 differ by 6; tolerance 6 halves the width term:
    # 0.8 * 0.5 + 0.2 * 1 = 0.6.
    _, layout = mono_layout(mono_catalog, ["aaaa", "bbbbb"], size=10.0)
    params = MetricParams(distance_tolerance=6.0)
    assert alignment(layout, params) == pytest.approx(0.6, abs=1e-12)


def test_alignment_count_term(mono_catalog):
    genotype = build_genotype(
        ["abcd", "wxyz"], faces=("TestMono",), size=10.0, width=120.0,
        margins=(0.0, 0.0, 0.0, 0.0),
    )
    boxes = list(genotype.textboxes)
    boxes[1] = type(boxes[1])(
        content=boxes[1].content, typeface=boxes[1].typeface, weight=boxes[1].weight,
        stretch=boxes[1].stretch, size=boxes[1].size, alignment="center",
    )
    layout = resolve_layout(genotype.with_boxes(boxes), mono_catalog)
    # Same widths (width term 1), two distinct alignments (count term 1/2).
    assert alignment(layout) == pytest.approx(0.8 + 0.2 / 2, abs=1e-12)


def test_alignment_single_box_is_perfect(mono_catalog):
    _, layout = mono_layout(mono_catalog, ["solo"], size=10.0)
    assert alignment(layout) == pytest.approx(1.0, abs=1e-12)


# -------------------------------------------------------------- balance


def test_balance_centred_single_box_is_one(mono_catalog):
    genotype, layout = mono_layout(
        mono_catalog, ["ab"], size=10.0, width=100.0, height=100.0,
        alignment="center", valign="top",
    )
    assert balance(layout, genotype) == pytest.approx(1.0, abs=1e-12)


def test_balance_centred_full_height_middle_is_one(mono_catalog):
    genotype, layout = mono_layout(
        mono_catalog, ["ab"], size=50.0, width=100.0, height=100.0,
        alignment="center", valign="middle", line_height_factor=2.0,
    )
    assert balance(layout, genotype) == pytest.approx(1.0, abs=1e-12)


def test_balance_half_offset_is_half(mono_catalog):
    # Two equal-weight boxes anchored at (0,0)-left and (100,100)-right on
    # a 100x100 poster: the mass centre lands half a poster away from the
    # first box's expected corner, so B = 1 - sqrt(0.25) = 0.5 exactly.
    genotype = build_genotype(
        ["ab", "ab"], faces=("TestMono",), size=50.0, width=100.0, height=100.0,
        margins=(0.0, 0.0, 0.0, 0.0), vertical_alignment="top", alignment="left",
    )
    boxes = list(genotype.textboxes)
    boxes[1] = type(boxes[1])(
        content="ab", typeface="TestMono", weight=boxes[1].weight,
        stretch=boxes[1].stretch, size=50.0, alignment="right",
    )
    genotype = genotype.with_boxes(boxes)
    layout = resolve_layout(genotype, mono_catalog, line_height_factor=2.0)
    assert balance(layout, genotype) == pytest.approx(0.5, abs=1e-12)


def test_balance_zero_visual_weight_is_one(mono_catalog):
    # Black on black: luminance 0 everywhere, optical density 0.
    genotype, layout = mono_layout(
        mono_catalog, ["ab"], colors=ColorScheme(BLACK, BLACK)
    )
    assert balance(layout, genotype) == 1.0


def test_luminance_and_density_spot_values():
    assert box_luminance(0.0, 0.0, 255.0) == 255.0
    assert box_luminance(1.0, 0.0, 255.0) == 0.0
    assert box_luminance(0.5, 0.0, 255.0) == 127.5
    assert optical_density(255.0) == pytest.approx(math.log10(255.0))
    assert optical_density(255.0) == pytest.approx(2.40654, abs=1e-5)
    assert optical_density(0.0) == 0.0  # floored at 1
    assert optical_density(0.5) == 0.0


# -------------------------------------------------------- justification


def test_justification_partial_fill(mono_catalog):
    # Width 48 in 120 available: gap (120-48)/3 = 24 -> 1 - 24/120 = 0.8.
    _, layout = mono_layout(mono_catalog, ["a" * 8], size=10.0)
    assert layout.boxes[0].text_width == pytest.approx(48.0)
    assert justification(layout) == pytest.approx(0.8, abs=1e-12)


def test_justification_perfect_fill(mono_catalog):
    # 20 chars * 0.6 * 10 = 120 = the available width exactly.
    _, layout = mono_layout(mono_catalog, ["a" * 20], size=10.0)
    assert justification(layout) == pytest.approx(1.0, abs=1e-12)


def test_justification_zero_at_double_overflow(mono_catalog):
    _, layout = mono_layout(mono_catalog, ["a" * 40], size=10.0)
    assert justification(layout) == 0.0


def test_justification_overflow_not_softened(mono_catalog):
    # 25% overflow: no leniency division -> 1 - 0.25 = 0.75.
    _, layout = mono_layout(mono_catalog, ["a" * 25], size=10.0)
    assert justification(layout) == pytest.approx(0.75, abs=1e-12)


def test_justification_leniency_parameter(mono_catalog):
    _, layout = mono_layout(mono_catalog, ["a" * 8], size=10.0)
    # Same 72-wide gap, leniency 6: 1 - 12/120 = 0.9.
    assert justification(layout, MetricParams(justification_leniency=6.0)) == (
        pytest.approx(0.9, abs=1e-12)
    )


# ----------------------------------------------------------- regularity


def test_regularity_trivial_below_three_boxes(mono_catalog):
    _, layout = mono_layout(mono_catalog, ["a"], size=10.0)
    assert regularity(layout) == 1.0
    _, layout = mono_layout(mono_catalog, ["a", "b"], size=10.0)
    assert regularity(layout) == 1.0


def test_regularity_uniform_pitch_is_one(mono_catalog):
    _, layout = mono_layout(mono_catalog, ["a", "b", "c", "d"], size=10.0)
    assert regularity(layout) == pytest.approx(1.0, abs=1e-12)


def test_regularity_hand_computed_pitches():
    # Pitches 10, 20, 10 -> diffs 10, 10 -> mean 10 -> 10/(10+10) = 0.5.
    boxes = (
        synthetic_box(y=0.0),
        synthetic_box(y=10.0),
        synthetic_box(y=30.0),
        synthetic_box(y=40.0),
    )
    layout = LayoutSolution(
        boxes=boxes, available_width=100.0, available_height=100.0,
        grid_height=50.0, content_top=0.0,
    )
    assert regularity(layout) == pytest.approx(0.5, abs=1e-12)


# ----------------------------------------------------- typeface pairing


def test_pairing_single_face_perfect(catalog):
    genotype = build_genotype(["a", "b"], faces=("aurum-serif",))
    assert typeface_pairing(genotype, catalog) == 1.0


def test_pairing_two_faces_one_category(catalog):
    genotype = build_genotype(["a", "b"], faces=("aurum-serif", "gazette-text"))
    assert typeface_pairing(genotype, catalog) == pytest.approx(1.0, abs=1e-12)


def test_pairing_three_faces_two_categories_is_half(catalog):
    genotype = build_genotype(
        ["a", "b", "c"], faces=("aurum-serif", "gazette-text", "norden-sans")
    )
    assert typeface_pairing(genotype, catalog) == pytest.approx(0.5, abs=1e-12)


def test_pairing_all_distinct_categories_is_zero(catalog):
    genotype = build_genotype(
        ["a", "b", "c"], faces=("aurum-serif", "norden-sans", "stanza-mono")
    )
    assert typeface_pairing(genotype, catalog) == 0.0


# ------------------------------------------------------- negative space


def synthetic_layout(coverages, poster=100.0):
    boxes = tuple(
        synthetic_box(cell_width=poster, cell_height=poster / len(coverages),
                      ink_coverage=cov, y=i * poster / len(coverages))
        for i, cov in enumerate(coverages)
    )
    return LayoutSolution(
        boxes=boxes, available_width=poster, available_height=poster,
        grid_height=poster, content_top=0.0,
    )


def test_negative_space_all_background_scores_zero():
    genotype = build_genotype(["x"], width=100.0, height=100.0)
    layout = synthetic_layout([0.0])
    assert negative_space_fraction(layout, genotype) == 0.0


def test_negative_space_at_optimum_scores_one():
    genotype = build_genotype(["x"], width=100.0, height=100.0)
    layout = synthetic_layout([0.5])  # ink covers half the poster
    assert negative_space_fraction(layout, genotype) == pytest.approx(1.0, abs=1e-12)


def test_negative_space_deviation_from_optimum():
    genotype = build_genotype(["x"], width=100.0, height=100.0)
    assert negative_space_fraction(genotype=genotype, layout=synthetic_layout([0.25])) == (
        pytest.approx(0.5, abs=1e-12)  # 75% background
    )
    assert negative_space_fraction(genotype=genotype, layout=synthetic_layout([0.75])) == (
        pytest.approx(0.5, abs=1e-12)  # 25% background
    )
    assert negative_space_fraction(genotype=genotype, layout=synthetic_layout([1.0])) == 0.0


def test_negative_space_custom_optimum():
    genotype = build_genotype(["x"], width=100.0, height=100.0)
    params = MetricParams(optimal_negative_space=80.0)
    layout = synthetic_layout([0.2])  # 80% background
    assert negative_space_fraction(layout, genotype, params) == pytest.approx(1.0, abs=1e-12)


# ------------------------------------------------------ semantic layout


def test_semantic_layout_fixed_mode_hand_case(profile_for, mono_catalog):
    # Two cells each a quarter of the available height; equal charges want
    # 50% each: per-box 1 - |25 - 50|/100 = 0.75.
    genotype, layout = mono_layout(
        mono_catalog, ["aa", "bb"], size=12.5, height=120.0, width=100.0,
        line_height_factor=2.0, margins=(0.0, 10.0, 0.0, 10.0),
    )
    assert layout.available_height == pytest.approx(100.0)
    profile = profile_for(["aa", "bb"])
    assert list(profile.charges) == [0, 0]
    assert semantic_layout(layout, profile) == pytest.approx(0.75, abs=1e-12)


def test_semantic_layout_relative_mode(profile_for, mono_catalog):
    genotype, layout = mono_layout(mono_catalog, ["aa", "bb"], size=20.0)
    profile = profile_for(["aa", "bb"])
    # Equal cells are exactly the 50/50 the flat charges ask for.
    params = MetricParams(layout_mode="relative")
    assert semantic_layout(layout, profile, params) == pytest.approx(1.0, abs=1e-12)


def test_semantic_layout_zero_available_height(profile_for, mono_catalog):
    genotype, layout = mono_layout(
        mono_catalog, ["aa"], width=200.0, height=50.0, margins=(0.0, 20.0, 0.0, 20.0)
    )
    assert layout.available_height < 0
    profile = profile_for(["aa"])
    assert semantic_layout(layout, profile) == 0.0


def test_semantic_layout_profile_mismatch(profile_for, mono_catalog):
    _, layout = mono_layout(mono_catalog, ["aa", "bb"])
    profile = profile_for(["aa"])
    with pytest.raises(ProfileMismatch):
        semantic_layout(layout, profile)


# -------------------------------------------------- semantic typography


class FakeProfile:
    """Charges-only stand-in accepted by the typography scorers."""

    def __init__(self, lines, charges):
        import numpy as np

        self.lines = tuple(lines)
        self.charges = np.array(charges)
        self.optimal_heights = tuple(100.0 / len(lines) for _ in lines)


def test_typography_uniform_design_scores_one(mono_catalog):
    genotype = build_genotype(["a", "b"], faces=("TestMono",), weight=400.0)
    profile = FakeProfile(["a", "b"], [0, 0])
    scores, emphases = typography_components(genotype, profile, mono_catalog)
    assert scores == (1.0, 1.0, 1.0)
    assert emphases == (0.0, 0.0, 0.0)
    assert semantic_typography(genotype, profile, mono_catalog) == 1.0


def test_typography_weight_feature_three_boxes(mono_catalog):
    # Charges 0,1,2 -> fractions 0,0.5,1. Weights 100,100,500 on the
    # [100,900] axis: contrasts 0,0,400 vs expected 0,200,400 ->
    # per-box scores 1, 0.75, 1 -> weight score 11/12.
    genotype = build_genotype(["a", "b", "c"], faces=("TestMono",))
    boxes = [
        type(box)(content=box.content, typeface=box.typeface, weight=weight,
                  stretch=100.0, size=box.size, alignment=box.alignment)
        for box, weight in zip(genotype.textboxes, (100.0, 100.0, 500.0))
    ]
    genotype = genotype.with_boxes(boxes)
    profile = FakeProfile(["a", "b", "c"], [0, 1, 2])
    (weight_score, stretch_score, design_score), emphases = typography_components(
        genotype, profile, mono_catalog
    )
    assert weight_score == pytest.approx(11.0 / 12.0, abs=1e-12)
    assert stretch_score == pytest.approx(1.0, abs=1e-12)
    assert design_score == 1.0
    assert emphases[0] == pytest.approx((400.0 / 3.0) / 800.0, abs=1e-12)
    assert emphases[1] == 0.0


def test_typography_design_deviation(catalog):
    # Charge level 0 is defined by the first box's face; the second box
    # (same level, different face) deviates. Level 1 tries to claim the
    # already-taken face and stays undefined (no deviation).
    genotype = build_genotype(
        ["a", "b", "c"], faces=("aurum-serif", "norden-sans", "aurum-serif")
    )
    profile = FakeProfile(["a", "b", "c"], [0, 0, 1])
    (_, _, design_score), (_, _, design_emphasis) = typography_components(
        genotype, profile, catalog
    )
    assert design_score == pytest.approx(2.0 / 3.0, abs=1e-12)
    assert design_emphasis == pytest.approx(1.0 / 3.0, abs=1e-12)


def test_typography_distinct_faces_per_level(catalog):
    genotype = build_genotype(["a", "b"], faces=("aurum-serif", "norden-sans"))
    profile = FakeProfile(["a", "b"], [0, 2])
    (_, _, design_score), (_, _, design_emphasis) = typography_components(
        genotype, profile, catalog
    )
    assert design_score == 1.0
    assert design_emphasis == 0.5  # max face count 1 of 2 boxes


def test_emphasis_penalty_divides_by_competing_features():
    assert apply_emphasis_penalty(0.9, (0.3, 0.3, 0.3), 0.2) == pytest.approx(0.3)
    assert apply_emphasis_penalty(0.9, (0.3, 0.3, 0.1), 0.2) == pytest.approx(0.45)
    assert apply_emphasis_penalty(0.9, (0.3, 0.1, 0.1), 0.2) == 0.9
    assert apply_emphasis_penalty(0.9, (0.0, 0.0, 0.0), 0.2) == 0.9
    # The threshold is strict: exactly-at-threshold does not count.
    assert apply_emphasis_penalty(0.9, (0.2, 0.2, 0.2), 0.2) == 0.9


def test_typography_profile_mismatch(mono_catalog):
    genotype = build_genotype(["a", "b"], faces=("TestMono",))
    profile = FakeProfile(["a"], [0])
    with pytest.raises(ProfileMismatch):
        typography_components(genotype, profile, mono_catalog)


# ---------------------------------------------------------- aggregation


def test_aggregate_weighted_means_hand_computed():
    scores = {
        "text_legibility": 1.0,
        "grid_appropriateness": 1.0,
        "alignment": 0.1,
        "balance": 0.2,
        "justification": 0.3,
        "regularity": 0.4,
        "typeface_pairing": 0.5,
        "negative_space_fraction": 0.6,
        "semantic_layout": 0.7,
        "semantic_typography": 0.8,
    }
    aesthetic = (
        0.10 * 0.1 + 0.20 * 0.2 + 0.30 * 0.3 + 0.10 * 0.4 + 0.10 * 0.5 + 0.20 * 0.6
    )
    semantic = 0.50 * 0.7 + 0.50 * 0.8
    report = aggregate_scores(scores, ObjectiveWeights(), "S3")
    assert report.aesthetic_objective == pytest.approx(aesthetic, abs=1e-12)
    assert report.semantic_objective == pytest.approx(semantic, abs=1e-12)
    assert report.objective == pytest.approx(0.5 * semantic + 0.5 * aesthetic, abs=1e-12)
    assert report.penalty == 0.0
    assert report.feasible


def test_stage_blends():
    scores = dict.fromkeys(METRIC_NAMES, 0.0)
    scores.update(semantic_layout=1.0, semantic_typography=1.0)
    weights = ObjectiveWeights()
    assert aggregate_scores(scores, weights, "S1").objective == pytest.approx(1.0)
    assert aggregate_scores(scores, weights, "S2").objective == pytest.approx(0.0)
    assert aggregate_scores(scores, weights, "S3").objective == pytest.approx(0.5)


def test_penalty_from_legibility_metrics():
    scores = dict.fromkeys(METRIC_NAMES, 1.0)
    scores.update(text_legibility=0.5, grid_appropriateness=0.0)
    report = aggregate_scores(scores, ObjectiveWeights(), "S3")
    assert report.penalty == pytest.approx(0.75, abs=1e-12)
    assert not report.feasible


def test_report_accessors_and_row_round_trip():
    values = tuple(i / 10 for i in range(10))
    report = aggregate_scores(values, ObjectiveWeights(), "S3")
    assert report.score("alignment") == values[2]
    row = list(values) + [
        report.aesthetic_objective,
        report.semantic_objective,
        report.objective,
        report.penalty,
    ]
    import numpy as np

    rebuilt = report_from_row(np.array(row))
    assert rebuilt == report
    payload = report.as_dict()
    assert list(payload)[:10] == list(METRIC_NAMES)


def test_scores_in_order_validation():
    with pytest.raises(ConfigError):
        scores_in_order({"alignment": 1.0})
    with pytest.raises(ConfigError):
        scores_in_order((1.0, 2.0))


def test_metric_params_validation():
    with pytest.raises(RangeError):
        MetricParams(distance_tolerance=0.0)
    with pytest.raises(RangeError):
        MetricParams(justification_leniency=-1.0)
    with pytest.raises(RangeError):
        MetricParams(optimal_negative_space=0.0)
    with pytest.raises(ConfigError):
        MetricParams(layout_mode="floating")
    with pytest.raises(RangeError):
        MetricParams(emphasis_threshold=1.5)


def test_objective_weights_validation():
    with pytest.raises(ConfigError):
        ObjectiveWeights(aesthetic={"no_such_metric": 1.0})
    with pytest.raises(RangeError):
        ObjectiveWeights(aesthetic={"alignment": -0.1})
    with pytest.raises(ConfigError):
        ObjectiveWeights(stage_semantic={"S9": 1.0})
    with pytest.raises(ConfigError):
        ObjectiveWeights().stage_blend("S9")


# ------------------------------------------------------------- evaluate


def test_evaluate_resolves_layout_when_omitted(catalog, profile_for, make_genotype):
    genotype = make_genotype(["Don't worry.", "Be happy now!"], size=12.0)
    profile = profile_for(list(genotype.lines))
    layout = resolve_layout(genotype, catalog)
    explicit = evaluate(genotype, layout, profile, catalog)
    implicit = evaluate(genotype, None, profile, catalog)
    assert explicit == implicit
    assert all(0.0 <= value <= 1.0 for value in explicit.scores)


def test_evaluate_rejects_mismatched_profile(catalog, profile_for, make_genotype):
    genotype = make_genotype(["One line"])
    profile = profile_for(["Different line"])
    with pytest.raises(ProfileMismatch):
        evaluate(genotype, None, profile, catalog)
