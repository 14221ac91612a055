"""Run configuration: defaults, JSON config files and flag overrides.

Precedence, lowest to highest: built-in defaults, the config file, then
command-line overrides addressed as dotted paths ("evolution.seed").
The colour pair is validated against the minimum contrast ratio as soon
as the configuration is built.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from .color import ColorScheme, DEFAULT_MIN_CONTRAST, make_scheme
from .errors import ResourceError, SchemaError
from .evolution import EvolutionConfig
from .fonts import FontCatalog, bundled_catalog, load_catalog
from .genotype import DEFAULT_FONT_SIZE_RANGE
from .layout import DEFAULT_LINE_HEIGHT_FACTOR
from .metrics import MetricParams, ObjectiveWeights
from .textsplit import DEFAULT_ABBREVIATIONS, DEFAULT_LINE_RANGE

SECTIONS = ("fonts", "colors", "evolution", "metrics", "emotion", "split")

DEFAULT_LANGUAGE = "en"


@dataclass(frozen=True)
class RunConfig:
    font_paths: tuple[str, ...] | None  # None selects the bundled catalog
    colors: ColorScheme
    min_contrast: float
    evolution: EvolutionConfig
    params: MetricParams
    weights: ObjectiveWeights
    line_height_factor: float
    language: str
    line_range: tuple[int, int]
    abbreviations: frozenset[str]

    def catalog(self) -> FontCatalog:
        if self.font_paths is None:
            return bundled_catalog()
        missing = [path for path in self.font_paths if not Path(path).is_file()]
        if missing:
            raise ResourceError(f"font files not found: {missing}")
        return load_catalog([Path(path) for path in self.font_paths])


def _expect(value: Any, kind: type | tuple[type, ...], where: str) -> Any:
    if isinstance(value, bool) or not isinstance(value, kind):
        raise SchemaError(f"config {where}: unexpected type {type(value).__name__}")
    return value


def _as_rgb(value: Any, where: str) -> tuple[int, int, int]:
    _expect(value, list, where)
    if len(value) != 3:
        raise SchemaError(f"config {where}: expected [r, g, b]")
    channels = []
    for channel in value:
        if isinstance(channel, bool) or not isinstance(channel, int):
            raise SchemaError(f"config {where}: channels must be integers")
        channels.append(channel)
    return (channels[0], channels[1], channels[2])


def _merge_overrides(data: dict, overrides: Mapping[str, Any]) -> dict:
    for dotted, value in overrides.items():
        if value is None:
            continue
        section, _, key = dotted.partition(".")
        if not key:
            raise SchemaError(f"override {dotted!r} must look like 'section.key'")
        data.setdefault(section, {})[key] = value
    return data


def load_config(
    path: str | Path | None = None,
    overrides: Mapping[str, Any] | None = None,
) -> RunConfig:
    data: dict[str, dict] = {}
    if path is not None:
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ResourceError(f"cannot read config {path}: {exc}") from exc
        except ValueError as exc:
            raise SchemaError(f"config {path} is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise SchemaError("config document must be a JSON object")
        for section, body in raw.items():
            if section not in SECTIONS:
                raise SchemaError(f"config has unknown section {section!r}")
            if not isinstance(body, dict):
                raise SchemaError(f"config section {section!r} must be an object")
            data[section] = dict(body)
    if overrides:
        _merge_overrides(data, overrides)

    fonts_section = data.get("fonts", {})
    font_paths: tuple[str, ...] | None = None
    if "faces" in fonts_section:
        faces = _expect(fonts_section["faces"], list, "fonts.faces")
        font_paths = tuple(str(face) for face in faces)

    colors_section = data.get("colors", {})
    min_contrast = float(
        _expect(colors_section.get("min_contrast", DEFAULT_MIN_CONTRAST), (int, float), "colors.min_contrast")
    )
    foreground = (
        _as_rgb(colors_section["foreground"], "colors.foreground")
        if "foreground" in colors_section
        else (0, 0, 0)
    )
    background = (
        _as_rgb(colors_section["background"], "colors.background")
        if "background" in colors_section
        else (255, 255, 255)
    )
    colors = make_scheme(foreground, background, min_contrast)

    evolution_section = dict(data.get("evolution", {}))
    margins = evolution_section.pop("margins", None)
    size_range = evolution_section.pop("font_size_range", None)
    known = {
        "generations", "population_size", "elite_size", "crossover_probability",
        "mutation_probability", "tournament_size", "ranking_feasibility_bias",
        "stage", "seed", "poster_width", "poster_height",
    }
    unknown = set(evolution_section) - known
    if unknown:
        raise SchemaError(f"config evolution: unknown keys {sorted(unknown)}")
    kwargs: dict[str, Any] = dict(evolution_section)
    for int_key in ("generations", "population_size", "elite_size", "tournament_size", "seed"):
        if int_key in kwargs:
            kwargs[int_key] = int(_expect(kwargs[int_key], int, f"evolution.{int_key}"))
    for float_key in (
        "crossover_probability", "mutation_probability", "ranking_feasibility_bias",
        "poster_width", "poster_height",
    ):
        if float_key in kwargs:
            kwargs[float_key] = float(
                _expect(kwargs[float_key], (int, float), f"evolution.{float_key}")
            )
    if margins is not None:
        _expect(margins, list, "evolution.margins")
        if len(margins) != 4:
            raise SchemaError("config evolution.margins: expected [left, top, right, bottom]")
        kwargs["margins"] = tuple(float(v) for v in margins)
    if size_range is not None:
        _expect(size_range, list, "evolution.font_size_range")
        if len(size_range) != 2:
            raise SchemaError("config evolution.font_size_range: expected [min, max]")
        kwargs["font_size_range"] = tuple(float(v) for v in size_range)
    else:
        kwargs.setdefault("font_size_range", DEFAULT_FONT_SIZE_RANGE)
    try:
        evolution = EvolutionConfig(**kwargs)
    except TypeError as exc:
        raise SchemaError(f"config evolution: {exc}") from exc

    metrics_section = dict(data.get("metrics", {}))
    line_height_factor = float(
        _expect(
            metrics_section.pop("line_height_factor", DEFAULT_LINE_HEIGHT_FACTOR),
            (int, float),
            "metrics.line_height_factor",
        )
    )
    aesthetic = metrics_section.pop("aesthetic_weights", None)
    semantic = metrics_section.pop("semantic_weights", None)
    weight_kwargs: dict[str, Any] = {}
    if aesthetic is not None:
        weight_kwargs["aesthetic"] = _expect(aesthetic, dict, "metrics.aesthetic_weights")
    if semantic is not None:
        weight_kwargs["semantic"] = _expect(semantic, dict, "metrics.semantic_weights")
    weights = ObjectiveWeights(**weight_kwargs)
    try:
        params = MetricParams(**metrics_section)
    except TypeError as exc:
        raise SchemaError(f"config metrics: {exc}") from exc

    emotion_section = data.get("emotion", {})
    language = str(_expect(emotion_section.get("language", DEFAULT_LANGUAGE), str, "emotion.language"))

    split_section = data.get("split", {})
    line_range = DEFAULT_LINE_RANGE
    if "line_range" in split_section:
        raw_range = _expect(split_section["line_range"], list, "split.line_range")
        if len(raw_range) != 2:
            raise SchemaError("config split.line_range: expected [min, max]")
        line_range = (int(raw_range[0]), int(raw_range[1]))
    abbreviations = DEFAULT_ABBREVIATIONS
    if "abbreviations" in split_section:
        extra = _expect(split_section["abbreviations"], list, "split.abbreviations")
        abbreviations = DEFAULT_ABBREVIATIONS | {str(word).lower() for word in extra}

    return RunConfig(
        font_paths=font_paths,
        colors=colors,
        min_contrast=min_contrast,
        evolution=evolution,
        params=params,
        weights=weights,
        line_height_factor=line_height_factor,
        language=language,
        line_range=line_range,
        abbreviations=abbreviations,
    )


def bundled_text_paths() -> tuple[Path, ...]:
    root = Path(__file__).resolve().parent / "resources" / "texts"
    return tuple(sorted(root.glob("*.txt")))
