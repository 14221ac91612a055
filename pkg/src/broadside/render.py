"""Deterministic SVG output: posters and statistics charts.

Equal inputs produce byte-identical strings: numbers are rounded to at
most four decimals via the genotype's canonical formatter and element
order follows the input order.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .color import ColorScheme, DEFAULT_SCHEME
from .errors import EmptyStats
from .evolution import RunStats
from .genotype import PosterGenotype, canonical_number
from .layout import LayoutSolution
from .metrics import METRIC_NAMES

CHART_SERIES = METRIC_NAMES + ("objective", "penalty")

_PALETTE = {
    "text_legibility": "#d81b60",
    "grid_appropriateness": "#1e88e5",
    "alignment": "#5e35b1",
    "balance": "#00897b",
    "justification": "#f4511e",
    "regularity": "#43a047",
    "typeface_pairing": "#fb8c00",
    "negative_space_fraction": "#6d4c41",
    "semantic_layout": "#3949ab",
    "semantic_typography": "#c0ca33",
    "objective": "#000000",
    "penalty": "#e53935",
}

_ANCHORS = {"left": "start", "center": "middle", "right": "end"}


def _fmt(value: float) -> str:
    return str(canonical_number(value))


def render_poster_svg(
    genotype: PosterGenotype,
    layout: LayoutSolution,
    colors: ColorScheme = DEFAULT_SCHEME,
) -> str:
    """One <text> element per box on a filled background.

    The text baseline sits one em below the cell top (the nominal ascent
    of the line box).
    """
    width = _fmt(genotype.width)
    height = _fmt(genotype.height)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="{colors.to_hex(colors.background)}"/>',
    ]
    for gene, box in zip(genotype.textboxes, layout.boxes):
        if gene.alignment == "center":
            x = box.x + box.cell_width / 2.0
        elif gene.alignment == "right":
            x = box.x + box.cell_width
        else:
            x = box.x
        baseline = box.y + gene.size
        parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(baseline)}" '
            f'font-family="{escape(gene.typeface)}" font-size="{_fmt(gene.size)}" '
            f'font-weight="{_fmt(gene.weight)}" font-stretch="{_fmt(gene.stretch)}%" '
            f'text-anchor="{_ANCHORS[gene.alignment]}" '
            f'fill="{colors.to_hex(colors.foreground)}">{escape(gene.content)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


_CHART_WIDTH = 720.0
_CHART_HEIGHT = 360.0
_PLOT_LEFT = 52.0
_PLOT_TOP = 18.0
_PLOT_RIGHT = 540.0
_PLOT_BOTTOM = 318.0


def _chart_point(generation: float, value: float, last_generation: float) -> str:
    x = _PLOT_LEFT + (generation / last_generation) * (_PLOT_RIGHT - _PLOT_LEFT)
    y = _PLOT_BOTTOM - value * (_PLOT_BOTTOM - _PLOT_TOP)
    return f"{round(x, 2)},{round(y, 2)}"


def plot_stats(stats: RunStats, series: tuple[str, ...] = ("objective", "penalty")) -> str:
    """Line chart of best (solid) and population mean (dashed) per series."""
    for name in series:
        if name not in CHART_SERIES:
            raise ValueError(
                f"unknown chart series {name!r}; valid names: {', '.join(CHART_SERIES)}"
            )
    if len(stats) < 2:
        raise EmptyStats("need at least two generations of statistics to chart")

    generations = stats.column("generation")
    last = float(generations[-1])
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(_CHART_WIDTH)}" '
        f'height="{int(_CHART_HEIGHT)}" viewBox="0 0 {int(_CHART_WIDTH)} {int(_CHART_HEIGHT)}">',
        f'<rect width="{int(_CHART_WIDTH)}" height="{int(_CHART_HEIGHT)}" fill="#ffffff"/>',
    ]
    # axes and ticks
    parts.append(
        f'<line x1="{_PLOT_LEFT}" y1="{_PLOT_TOP}" x2="{_PLOT_LEFT}" y2="{_PLOT_BOTTOM}" '
        'stroke="#444444" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{_PLOT_LEFT}" y1="{_PLOT_BOTTOM}" x2="{_PLOT_RIGHT}" y2="{_PLOT_BOTTOM}" '
        'stroke="#444444" stroke-width="1"/>'
    )
    for i in range(5):
        value = i / 4.0
        y = _PLOT_BOTTOM - value * (_PLOT_BOTTOM - _PLOT_TOP)
        parts.append(
            f'<line x1="{_PLOT_LEFT - 4}" y1="{round(y, 2)}" x2="{_PLOT_LEFT}" y2="{round(y, 2)}" '
            'stroke="#444444" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_PLOT_LEFT - 8}" y="{round(y + 4, 2)}" font-family="sans-serif" '
            f'font-size="11" text-anchor="end" fill="#444444">{value:g}</text>'
        )
    for i in range(5):
        generation = round(last * i / 4.0)
        x = _PLOT_LEFT + (generation / last) * (_PLOT_RIGHT - _PLOT_LEFT)
        parts.append(
            f'<line x1="{round(x, 2)}" y1="{_PLOT_BOTTOM}" x2="{round(x, 2)}" '
            f'y2="{_PLOT_BOTTOM + 4}" stroke="#444444" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{round(x, 2)}" y="{_PLOT_BOTTOM + 18}" font-family="sans-serif" '
            f'font-size="11" text-anchor="middle" fill="#444444">{int(generation)}</text>'
        )
    parts.append(
        f'<text x="{(_PLOT_LEFT + _PLOT_RIGHT) / 2}" y="{_PLOT_BOTTOM + 34}" '
        'font-family="sans-serif" font-size="12" text-anchor="middle" '
        'fill="#444444">generation</text>'
    )

    legend_y = _PLOT_TOP + 6
    for name in series:
        colour = _PALETTE[name]
        best = stats.column(f"best_{name}")
        mean = stats.column(f"mean_{name}")
        best_points = " ".join(
            _chart_point(g, v, last) for g, v in zip(generations, best)
        )
        mean_points = " ".join(
            _chart_point(g, v, last) for g, v in zip(generations, mean)
        )
        parts.append(
            f'<polyline points="{best_points}" fill="none" stroke="{colour}" stroke-width="1.6"/>'
        )
        parts.append(
            f'<polyline points="{mean_points}" fill="none" stroke="{colour}" '
            'stroke-width="1.2" stroke-opacity="0.45" stroke-dasharray="4 3"/>'
        )
        parts.append(
            f'<line x1="{_PLOT_RIGHT + 12}" y1="{round(legend_y, 2)}" x2="{_PLOT_RIGHT + 34}" '
            f'y2="{round(legend_y, 2)}" stroke="{colour}" stroke-width="1.6"/>'
        )
        parts.append(
            f'<text x="{_PLOT_RIGHT + 40}" y="{round(legend_y + 4, 2)}" '
            f'font-family="sans-serif" font-size="11" fill="#222222">{escape(name)}</text>'
        )
        legend_y += 16
    parts.append(
        f'<text x="{_PLOT_RIGHT + 12}" y="{round(legend_y + 4, 2)}" font-family="sans-serif" '
        'font-size="10" fill="#777777">solid: best, dashed: mean</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def poster_filename(run_id: str, generation: int, rank: int) -> str:
    return f"poster_{run_id}_{generation}_{rank}.svg"


def genotype_filename(run_id: str, rank: int) -> str:
    return f"genotype_{run_id}_{rank}.json"


def stats_filename(run_id: str) -> str:
    return f"stats_{run_id}.csv"


def chart_filename(run_id: str, topic: str) -> str:
    return f"chart_{run_id}_{topic}.svg"
