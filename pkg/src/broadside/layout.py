"""Deterministic phenotype: a genotype becomes a one-column stack of boxes.

All four margin percentages resolve against the poster width (the CSS
rule for percentage margins).  Boxes span the full available width, each
one line tall (font size times the line-height factor), stacked in order
with no gaps; the whole stack is placed by the poster's vertical
alignment.  Ink coverage per box is an analytic stand-in for pixel
sampling: fill is proportional to how much of the cell the measured text
occupies, scaled by how heavy the weight coordinate sits in its axis.
"""

from __future__ import annotations

from dataclasses import dataclass

from .color import RGB, ColorScheme, DEFAULT_SCHEME
from .fonts import FontCatalog, measure_text
from .genotype import PosterGenotype

DEFAULT_LINE_HEIGHT_FACTOR = 1.2

# Coverage model constants: measured width counts at this fill density,
# and weight moves density between BASE and BASE + GAIN across its axis.
COVERAGE_WIDTH_FILL = 0.7
COVERAGE_WEIGHT_BASE = 0.2
COVERAGE_WEIGHT_GAIN = 0.4

# Normalised weight presumed for a face whose weight axis is static.
STATIC_AXIS_FRACTION = 0.5


def _clamp01(value: float) -> float:
    if value < 0.0:
        return 0.0
    if value > 1.0:
        return 1.0
    return value


def ink_coverage(
    text_width: float,
    font_size: float,
    weight_fraction: float,
    cell_width: float,
    cell_height: float,
) -> float:
    """Fraction of the cell covered by ink, in [0, 1]."""
    density = COVERAGE_WEIGHT_BASE + COVERAGE_WEIGHT_GAIN * weight_fraction
    ink = text_width * COVERAGE_WIDTH_FILL * font_size * density
    return _clamp01(ink / (cell_width * cell_height))


@dataclass(frozen=True)
class LayoutBox:
    """One positioned cell; x/y is the cell's top-left corner in pixels."""

    x: float
    y: float
    cell_width: float
    cell_height: float
    text_width: float
    ink_coverage: float
    alignment: str
    foreground: RGB
    background: RGB


@dataclass(frozen=True)
class LayoutSolution:
    boxes: tuple[LayoutBox, ...]
    available_width: float
    available_height: float
    grid_height: float
    content_top: float


def resolve_layout(
    genotype: PosterGenotype,
    fonts: FontCatalog,
    colors: ColorScheme = DEFAULT_SCHEME,
    line_height_factor: float = DEFAULT_LINE_HEIGHT_FACTOR,
) -> LayoutSolution:
    """Position every box; pure function of its arguments."""
    width = genotype.width
    margin_left = genotype.margins.left / 100.0 * width
    margin_top = genotype.margins.top / 100.0 * width
    margin_right = genotype.margins.right / 100.0 * width
    margin_bottom = genotype.margins.bottom / 100.0 * width
    available_width = width - margin_left - margin_right
    available_height = genotype.height - margin_top - margin_bottom

    heights = []
    widths = []
    fractions = []
    grid_height = 0.0
    for box in genotype.textboxes:
        face = fonts.face(box.typeface)
        instance = fonts.instance(box.typeface, box.weight, box.stretch)
        widths.append(measure_text(box.content, instance, box.size))
        cell_height = box.size * line_height_factor
        heights.append(cell_height)
        grid_height += cell_height
        if face.weight_axis.is_degenerate:
            fractions.append(STATIC_AXIS_FRACTION)
        else:
            fractions.append(face.weight_axis.fraction(box.weight))

    if genotype.vertical_alignment == "top":
        content_top = margin_top
    elif genotype.vertical_alignment == "middle":
        content_top = margin_top + (available_height - grid_height) / 2.0
    else:
        content_top = margin_top + (available_height - grid_height)

    boxes = []
    y = content_top
    for box, cell_height, text_width, fraction in zip(
        genotype.textboxes, heights, widths, fractions
    ):
        boxes.append(
            LayoutBox(
                x=margin_left,
                y=y,
                cell_width=available_width,
                cell_height=cell_height,
                text_width=text_width,
                ink_coverage=ink_coverage(
                    text_width, box.size, fraction, available_width, cell_height
                ),
                alignment=box.alignment,
                foreground=colors.foreground,
                background=colors.background,
            )
        )
        y += cell_height

    return LayoutSolution(
        boxes=tuple(boxes),
        available_width=available_width,
        available_height=available_height,
        grid_height=grid_height,
        content_top=content_top,
    )
