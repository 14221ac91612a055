"""Typeface catalog: variable-axis metadata and glyph advance tables.

A face exposes a weight axis and a stretch axis plus one advance table per
axis-extreme corner.  The advance of a character at an arbitrary
(weight, stretch) coordinate is the bilinear blend of the four corner
advances; characters missing from a table fall back to that corner's
default advance.  Text width is the plain sum of advances (no kerning),
scaled by ``size / units_per_em``.

Faces load from JSON metrics sidecars (fast, no font binary needed) or
from OpenType files via fontTools.  Static binaries yield degenerate axes.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DuplicateId, EmptyCatalog, FontParseError, RangeError, UnknownTypeface

CATEGORIES = ("serif", "sans-serif", "mono-space", "display", "script", "other")

# Corner layout: index 0 (wMin,sMin), 1 (wMax,sMin), 2 (wMin,sMax), 3 (wMax,sMax).
CORNER_KEYS = (
    "corner:wMin,sMin",
    "corner:wMax,sMin",
    "corner:wMin,sMax",
    "corner:wMax,sMax",
)

# Axis fallbacks for faces that do not declare variation (CSS defaults).
STATIC_WEIGHT = 400.0
STATIC_STRETCH = 100.0


@dataclass(frozen=True)
class Axis:
    """Closed variation range; minimum == maximum marks a static axis."""

    minimum: float
    default: float
    maximum: float

    def __post_init__(self) -> None:
        if not self.minimum <= self.default <= self.maximum:
            raise FontParseError(
                f"axis must satisfy min <= default <= max, got {self!r}"
            )

    @property
    def span(self) -> float:
        return self.maximum - self.minimum

    @property
    def is_degenerate(self) -> bool:
        return self.span == 0.0

    def contains(self, value: float) -> bool:
        return self.minimum <= value <= self.maximum

    def fraction(self, value: float) -> float:
        """Position of value inside the axis in [0, 1]; 0 when static."""
        if self.is_degenerate:
            return 0.0
        return (value - self.minimum) / self.span


@dataclass(frozen=True)
class FaceRecord:
    """One catalog entry: axes plus per-corner advance tables in font units."""

    face_id: str
    category: str
    units_per_em: int
    weight_axis: Axis
    stretch_axis: Axis
    corner_tables: tuple[Mapping[str, float], ...]
    corner_defaults: tuple[float, float, float, float]

    def corner_advance(self, char: str, corner: int) -> float:
        return self.corner_tables[corner].get(char, self.corner_defaults[corner])

    def corner_sum(self, text: str, corner: int) -> float:
        """Sum of corner advances over text, in font units."""
        table = self.corner_tables[corner]
        default = self.corner_defaults[corner]
        total = 0.0
        for char in text:
            total += table.get(char, default)
        return total


@dataclass(frozen=True)
class FaceInstance:
    """A face pinned to one (weight, stretch) coordinate."""

    face: FaceRecord
    weight: float
    stretch: float
    _blend: tuple[float, float, float, float] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        u = self.face.weight_axis.fraction(self.weight)
        v = self.face.stretch_axis.fraction(self.stretch)
        blend = ((1 - u) * (1 - v), u * (1 - v), (1 - u) * v, u * v)
        object.__setattr__(self, "_blend", blend)

    def advance(self, char: str) -> float:
        """Blended advance of one character, in font units."""
        face = self.face
        total = 0.0
        for corner in range(4):
            total += self._blend[corner] * face.corner_advance(char, corner)
        return total


def measure_text(text: str, instance: FaceInstance, size: float) -> float:
    """Width in pixels: advance sum scaled by size over units-per-em."""
    units = 0.0
    for char in text:
        units += instance.advance(char)
    return units * size / instance.face.units_per_em


@dataclass(frozen=True)
class FontCatalog:
    """Ordered, immutable id -> face mapping."""

    faces: tuple[FaceRecord, ...]
    _by_id: Mapping[str, FaceRecord] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        by_id: dict[str, FaceRecord] = {}
        for face in self.faces:
            if face.face_id in by_id:
                raise DuplicateId(f"duplicate face id {face.face_id!r}")
            by_id[face.face_id] = face
        if not by_id:
            raise EmptyCatalog("a catalog needs at least one face")
        object.__setattr__(self, "_by_id", by_id)

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self) -> Iterator[FaceRecord]:
        return iter(self.faces)

    def __contains__(self, face_id: str) -> bool:
        return face_id in self._by_id

    def ids(self) -> tuple[str, ...]:
        return tuple(face.face_id for face in self.faces)

    def face(self, face_id: str) -> FaceRecord:
        try:
            return self._by_id[face_id]
        except KeyError:
            raise UnknownTypeface(
                f"typeface {face_id!r} not in catalog {list(self._by_id)}"
            ) from None

    def index_of(self, face_id: str) -> int:
        face = self.face(face_id)
        return self.faces.index(face)

    def instance(self, face_id: str, weight: float, stretch: float) -> FaceInstance:
        face = self.face(face_id)
        if not face.weight_axis.contains(weight):
            raise RangeError(
                f"weight {weight} outside axis of {face_id!r} "
                f"[{face.weight_axis.minimum}, {face.weight_axis.maximum}]"
            )
        if not face.stretch_axis.contains(stretch):
            raise RangeError(
                f"stretch {stretch} outside axis of {face_id!r} "
                f"[{face.stretch_axis.minimum}, {face.stretch_axis.maximum}]"
            )
        return FaceInstance(face, weight, stretch)


def _parse_axis(raw: object, where: str) -> Axis:
    if (
        not isinstance(raw, (list, tuple))
        or len(raw) != 3
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in raw)
    ):
        raise FontParseError(f"{where}: axis must be [min, default, max] numbers")
    return Axis(float(raw[0]), float(raw[1]), float(raw[2]))


def _parse_corner_table(raw: object, where: str) -> tuple[dict[str, float], float]:
    if not isinstance(raw, dict):
        raise FontParseError(f"{where}: corner table must be an object")
    if "default" not in raw:
        raise FontParseError(f"{where}: corner table missing 'default'")
    table: dict[str, float] = {}
    default = 0.0
    for key, value in raw.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise FontParseError(f"{where}: advance for {key!r} must be a number")
        if value < 0:
            raise FontParseError(f"{where}: advance for {key!r} must be >= 0")
        if key == "default":
            default = float(value)
        elif len(key) == 1:
            table[key] = float(value)
        else:
            raise FontParseError(f"{where}: key {key!r} is neither 'default' nor a character")
    return table, default


def load_sidecar(path: Path) -> FaceRecord:
    """Load a face from a JSON metrics sidecar."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise FontParseError(f"{path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise FontParseError(f"{path}: sidecar must be a JSON object")

    for key in ("id", "category", "unitsPerEm", "advances"):
        if key not in raw:
            raise FontParseError(f"{path}: missing key {key!r}")
    face_id = raw["id"]
    if not isinstance(face_id, str) or not face_id:
        raise FontParseError(f"{path}: id must be a non-empty string")
    category = raw["category"]
    if category not in CATEGORIES:
        raise FontParseError(f"{path}: category {category!r} not one of {CATEGORIES}")
    upem = raw["unitsPerEm"]
    if isinstance(upem, bool) or not isinstance(upem, int) or upem <= 0:
        raise FontParseError(f"{path}: unitsPerEm must be a positive integer")

    # A missing axis degrades to a static one at the CSS default.
    if "weightAxis" in raw:
        weight_axis = _parse_axis(raw["weightAxis"], f"{path}: weightAxis")
    else:
        warnings.warn(f"{path}: no weightAxis, treating face as static weight")
        weight_axis = Axis(STATIC_WEIGHT, STATIC_WEIGHT, STATIC_WEIGHT)
    if "stretchAxis" in raw:
        stretch_axis = _parse_axis(raw["stretchAxis"], f"{path}: stretchAxis")
    else:
        warnings.warn(f"{path}: no stretchAxis, treating face as static stretch")
        stretch_axis = Axis(STATIC_STRETCH, STATIC_STRETCH, STATIC_STRETCH)

    advances = raw["advances"]
    if not isinstance(advances, dict):
        raise FontParseError(f"{path}: advances must be an object")
    if CORNER_KEYS[0] not in advances:
        raise FontParseError(f"{path}: advances missing {CORNER_KEYS[0]!r}")
    tables: list[dict[str, float]] = []
    defaults: list[float] = []
    for index, key in enumerate(CORNER_KEYS):
        if key in advances:
            table, default = _parse_corner_table(advances[key], f"{path}: {key}")
        else:
            # Tolerated only when the missing corner is unreachable anyway.
            weight_static = weight_axis.is_degenerate and index in (1, 3)
            stretch_static = stretch_axis.is_degenerate and index in (2, 3)
            if not (weight_static or stretch_static):
                raise FontParseError(f"{path}: advances missing {key!r}")
            table, default = dict(tables[0]), defaults[0]
        tables.append(table)
        defaults.append(default)

    return FaceRecord(
        face_id=face_id,
        category=category,
        units_per_em=upem,
        weight_axis=weight_axis,
        stretch_axis=stretch_axis,
        corner_tables=tuple(tables),
        corner_defaults=(defaults[0], defaults[1], defaults[2], defaults[3]),
    )


# OS/2 usWidthClass (1..9) to stretch percentage.
_WIDTH_CLASS_PERCENT = {1: 50.0, 2: 62.5, 3: 75.0, 4: 87.5, 5: 100.0, 6: 112.5, 7: 125.0, 8: 150.0, 9: 200.0}


def _binary_category(font) -> str:
    post = font.get("post")
    if post is not None and getattr(post, "isFixedPitch", 0):
        return "mono-space"
    os2 = font.get("OS/2")
    family_class = (getattr(os2, "sFamilyClass", 0) >> 8) if os2 is not None else 0
    if family_class in (1, 2, 3, 4, 5, 7):
        return "serif"
    if family_class == 8:
        return "sans-serif"
    if family_class == 9:
        return "display"
    if family_class == 10:
        return "script"
    return "other"


def _advance_table(font, cmap: Mapping[int, str]) -> tuple[dict[str, float], float]:
    hmtx = font["hmtx"]
    space = cmap.get(ord(" "))
    if space is not None:
        default = float(hmtx[space][0])
    else:
        default = float(font["head"].unitsPerEm) / 2.0
    table = {chr(code): float(hmtx[name][0]) for code, name in cmap.items()}
    return table, default


def load_binary(path: Path) -> FaceRecord:
    """Load a face from an OpenType binary; variable fonts are sampled
    at the four axis-extreme corners."""
    try:
        from fontTools.ttLib import TTFont
    except ImportError as exc:  # pragma: no cover
        raise FontParseError("fontTools is required to read binary fonts") from exc

    try:
        font = TTFont(str(path), lazy=True)
        cmap = font.getBestCmap()
    except Exception as exc:
        raise FontParseError(f"{path}: {exc}") from exc

    upem = int(font["head"].unitsPerEm)
    name_table = font.get("name")
    face_id = None
    if name_table is not None:
        for name_id in (6, 4, 1):
            record = name_table.getDebugName(name_id)
            if record:
                face_id = record
                break
    if not face_id:
        face_id = Path(path).stem

    fvar = font.get("fvar")
    axes = {axis.axisTag: axis for axis in fvar.axes} if fvar is not None else {}

    if "wght" in axes:
        wght = axes["wght"]
        weight_axis = Axis(float(wght.minValue), float(wght.defaultValue), float(wght.maxValue))
    else:
        os2 = font.get("OS/2")
        value = float(getattr(os2, "usWeightClass", STATIC_WEIGHT)) if os2 else STATIC_WEIGHT
        weight_axis = Axis(value, value, value)
    if "wdth" in axes:
        wdth = axes["wdth"]
        stretch_axis = Axis(float(wdth.minValue), float(wdth.defaultValue), float(wdth.maxValue))
    else:
        os2 = font.get("OS/2")
        klass = int(getattr(os2, "usWidthClass", 5)) if os2 else 5
        value = _WIDTH_CLASS_PERCENT.get(klass, STATIC_STRETCH)
        stretch_axis = Axis(value, value, value)

    corners = (
        (weight_axis.minimum, stretch_axis.minimum),
        (weight_axis.maximum, stretch_axis.minimum),
        (weight_axis.minimum, stretch_axis.maximum),
        (weight_axis.maximum, stretch_axis.maximum),
    )
    tables: list[dict[str, float]] = []
    defaults: list[float] = []
    if axes:
        from fontTools.varLib.instancer import instantiateVariableFont

        for weight, stretch in corners:
            location = {}
            if "wght" in axes:
                location["wght"] = weight
            if "wdth" in axes:
                location["wdth"] = stretch
            pinned = instantiateVariableFont(TTFont(str(path)), location, inplace=False)
            table, default = _advance_table(pinned, cmap)
            tables.append(table)
            defaults.append(default)
            pinned.close()
    else:
        table, default = _advance_table(font, cmap)
        tables = [table, dict(table), dict(table), dict(table)]
        defaults = [default] * 4

    category = _binary_category(font)
    font.close()
    return FaceRecord(
        face_id=face_id,
        category=category,
        units_per_em=upem,
        weight_axis=weight_axis,
        stretch_axis=stretch_axis,
        corner_tables=tuple(tables),
        corner_defaults=(defaults[0], defaults[1], defaults[2], defaults[3]),
    )


def load_face(path: Path) -> FaceRecord:
    path = Path(path)
    if path.suffix.lower() == ".json":
        return load_sidecar(path)
    return load_binary(path)


def load_catalog(paths: Iterable[Path]) -> FontCatalog:
    """Load faces in the given order; duplicate ids are an error."""
    faces = [load_face(Path(p)) for p in paths]
    return FontCatalog(tuple(faces))


def bundled_face_paths() -> tuple[Path, ...]:
    """Paths of the metrics sidecars shipped with the package."""
    root = Path(__file__).resolve().parent / "resources" / "faces"
    return tuple(sorted(root.glob("*.json")))


def bundled_catalog(include_test_faces: bool = False) -> FontCatalog:
    paths = bundled_face_paths()
    if not include_test_faces:
        paths = tuple(p for p in paths if not p.stem.startswith("test-"))
    return load_catalog(paths)
