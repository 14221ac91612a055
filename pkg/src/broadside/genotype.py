"""Poster genotype: the evolvable description of one design.

A genotype is a poster size, four percentage margins, one vertical
alignment for the whole stack of boxes, and an ordered list of text boxes.
Each box carries one line of text plus its typeface id, variation
coordinates (weight, stretch), font size and horizontal alignment.

The JSON form is canonical: fixed key order, numbers rounded to at most
four decimal places (integral values printed as integers), no
insignificant whitespace.  ``serialize(parse(doc)) == doc`` holds for any
document already in canonical form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import TYPE_CHECKING, Any, Sequence

from .errors import RangeError, SchemaError, UnknownTypeface

if TYPE_CHECKING:
    from .fonts import FontCatalog

ALIGNMENTS = ("left", "center", "right")
VERTICAL_ALIGNMENTS = ("top", "middle", "bottom")

# Inclusive font size bounds (px) used when no explicit range is configured.
DEFAULT_FONT_SIZE_RANGE = (6.0, 60.0)

# Margins are percentages and each must stay below this bound.
MAX_MARGIN_PERCENT = 50.0


@dataclass(frozen=True)
class TextBoxGene:
    """One line of text and the type choices applied to it."""

    content: str
    typeface: str
    weight: float
    stretch: float
    size: float
    alignment: str


@dataclass(frozen=True)
class Margins:
    """Margins as percentages of the poster width, one per side."""

    left: float
    top: float
    right: float
    bottom: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.left, self.top, self.right, self.bottom)


@dataclass(frozen=True)
class PosterGenotype:
    width: float
    height: float
    margins: Margins
    vertical_alignment: str
    textboxes: tuple[TextBoxGene, ...]

    @property
    def lines(self) -> tuple[str, ...]:
        return tuple(box.content for box in self.textboxes)

    def with_boxes(self, boxes: Sequence[TextBoxGene]) -> "PosterGenotype":
        return replace(self, textboxes=tuple(boxes))


def _require(mapping: dict, key: str, where: str) -> Any:
    if key not in mapping:
        raise SchemaError(f"{where}: missing key {key!r}")
    return mapping[key]


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{where}: expected a number, got {type(value).__name__}")
    return float(value)


def _string(value: Any, where: str) -> str:
    if not isinstance(value, str):
        raise SchemaError(f"{where}: expected a string, got {type(value).__name__}")
    return value


def _enum(value: Any, options: tuple[str, ...], where: str) -> str:
    name = _string(value, where)
    if name not in options:
        raise SchemaError(f"{where}: {name!r} is not one of {options}")
    return name


def validate_genotype(
    genotype: PosterGenotype,
    fonts: "FontCatalog",
    font_size_range: tuple[float, float] = DEFAULT_FONT_SIZE_RANGE,
) -> None:
    """Raise if any gene violates its domain.

    Box weight/stretch must sit inside the referenced face's axes, so a
    catalog is required; size bounds come from ``font_size_range``.
    """
    if genotype.width <= 0 or genotype.height <= 0:
        raise RangeError("poster width and height must be positive")
    for side, value in zip(("left", "top", "right", "bottom"), genotype.margins.as_tuple()):
        if not 0 <= value < MAX_MARGIN_PERCENT:
            raise RangeError(
                f"margin {side} must be in [0, {MAX_MARGIN_PERCENT}) percent, got {value}"
            )
    if genotype.vertical_alignment not in VERTICAL_ALIGNMENTS:
        raise SchemaError(
            f"verticalAlignment {genotype.vertical_alignment!r} is not one of {VERTICAL_ALIGNMENTS}"
        )
    if not genotype.textboxes:
        raise SchemaError("a genotype needs at least one text box")
    lo, hi = font_size_range
    for index, box in enumerate(genotype.textboxes):
        where = f"textboxes[{index}]"
        if box.alignment not in ALIGNMENTS:
            raise SchemaError(f"{where}: alignment {box.alignment!r} is not one of {ALIGNMENTS}")
        face = fonts.face(box.typeface)
        if not face.weight_axis.contains(box.weight):
            raise RangeError(
                f"{where}: weight {box.weight} outside axis "
                f"[{face.weight_axis.minimum}, {face.weight_axis.maximum}] of {box.typeface!r}"
            )
        if not face.stretch_axis.contains(box.stretch):
            raise RangeError(
                f"{where}: stretch {box.stretch} outside axis "
                f"[{face.stretch_axis.minimum}, {face.stretch_axis.maximum}] of {box.typeface!r}"
            )
        if not lo <= box.size <= hi:
            raise RangeError(f"{where}: size {box.size} outside [{lo}, {hi}]")


def parse_genotype(
    document: str,
    fonts: "FontCatalog",
    font_size_range: tuple[float, float] = DEFAULT_FONT_SIZE_RANGE,
) -> PosterGenotype:
    """Parse and validate a genotype JSON document.

    Unknown keys are ignored; missing keys and wrong types raise
    SchemaError, domain violations raise RangeError / UnknownTypeface.
    """
    try:
        raw = json.loads(document)
    except ValueError as exc:
        raise SchemaError(f"genotype is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise SchemaError("genotype document must be a JSON object")

    size = _require(raw, "size", "genotype")
    if not isinstance(size, dict):
        raise SchemaError("size must be an object")
    width = _number(_require(size, "width", "size"), "size.width")
    height = _number(_require(size, "height", "size"), "size.height")

    raw_margins = _require(raw, "margins", "genotype")
    if not isinstance(raw_margins, dict):
        raise SchemaError("margins must be an object")
    margins = Margins(
        left=_number(_require(raw_margins, "left", "margins"), "margins.left"),
        top=_number(_require(raw_margins, "top", "margins"), "margins.top"),
        right=_number(_require(raw_margins, "right", "margins"), "margins.right"),
        bottom=_number(_require(raw_margins, "bottom", "margins"), "margins.bottom"),
    )

    vertical = _enum(
        _require(raw, "verticalAlignment", "genotype"),
        VERTICAL_ALIGNMENTS,
        "verticalAlignment",
    )

    raw_boxes = _require(raw, "textboxes", "genotype")
    if not isinstance(raw_boxes, list):
        raise SchemaError("textboxes must be an array")
    boxes = []
    for index, raw_box in enumerate(raw_boxes):
        where = f"textboxes[{index}]"
        if not isinstance(raw_box, dict):
            raise SchemaError(f"{where}: must be an object")
        boxes.append(
            TextBoxGene(
                content=_string(_require(raw_box, "content", where), f"{where}.content"),
                typeface=_string(_require(raw_box, "typeface", where), f"{where}.typeface"),
                weight=_number(_require(raw_box, "weight", where), f"{where}.weight"),
                stretch=_number(_require(raw_box, "stretch", where), f"{where}.stretch"),
                size=_number(_require(raw_box, "size", where), f"{where}.size"),
                alignment=_enum(
                    _require(raw_box, "alignment", where), ALIGNMENTS, f"{where}.alignment"
                ),
            )
        )

    genotype = PosterGenotype(
        width=width,
        height=height,
        margins=margins,
        vertical_alignment=vertical,
        textboxes=tuple(boxes),
    )
    validate_genotype(genotype, fonts, font_size_range)
    return genotype


def canonical_number(value: float) -> int | float:
    """Round to four decimals; integral values collapse to int."""
    rounded = round(float(value), 4)
    if rounded == int(rounded):
        return int(rounded)
    return rounded


def serialize_genotype(genotype: PosterGenotype) -> str:
    """Canonical JSON form (see module docstring)."""
    payload = {
        "size": {
            "width": canonical_number(genotype.width),
            "height": canonical_number(genotype.height),
        },
        "margins": {
            "left": canonical_number(genotype.margins.left),
            "top": canonical_number(genotype.margins.top),
            "right": canonical_number(genotype.margins.right),
            "bottom": canonical_number(genotype.margins.bottom),
        },
        "verticalAlignment": genotype.vertical_alignment,
        "textboxes": [
            {
                "content": box.content,
                "typeface": box.typeface,
                "weight": canonical_number(box.weight),
                "stretch": canonical_number(box.stretch),
                "size": canonical_number(box.size),
                "alignment": box.alignment,
            }
            for box in genotype.textboxes
        ],
    }
    return json.dumps(payload, separators=(",", ":"), ensure_ascii=False)
