"""Command-line interface.

Subcommands: evolve, evaluate, split, emotions, render, plot.  Exit
codes: 0 success, 1 runtime failure, 2 configuration or input-document
error, 3 missing resource (fonts, lexicon, input files).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .color import ColorScheme
from .config import RunConfig, load_config
from .emotion import analyze_lines, default_lexicon_path, load_lexicon, load_resources
from .errors import BroadsideError, ConfigError, ResourceError
from .evolution import EvolveResult, Individual, RunStats, evolve
from .genotype import parse_genotype, serialize_genotype
from .layout import resolve_layout
from .metrics import METRIC_NAMES, evaluate
from .render import (
    CHART_SERIES,
    chart_filename,
    genotype_filename,
    plot_stats,
    poster_filename,
    render_poster_svg,
    stats_filename,
)
from .textsplit import divide_lines, split_sentences

CHART_TOPICS = {
    "objective": ("objective", "penalty"),
    "legibility": ("text_legibility", "grid_appropriateness"),
    "aesthetics": (
        "alignment",
        "balance",
        "justification",
        "regularity",
        "typeface_pairing",
        "negative_space_fraction",
    ),
    "semantics": ("semantic_layout", "semantic_typography"),
}


def _read_text_file(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ResourceError(f"cannot read {path}: {exc}") from exc


def _config_overrides(args: argparse.Namespace) -> dict:
    overrides: dict[str, object] = {}
    if getattr(args, "seed", None) is not None:
        overrides["evolution.seed"] = args.seed
    if getattr(args, "stage", None) is not None:
        overrides["evolution.stage"] = args.stage
    if getattr(args, "generations", None) is not None:
        overrides["evolution.generations"] = args.generations
    if getattr(args, "population", None) is not None:
        overrides["evolution.population_size"] = args.population
    if getattr(args, "lang", None) is not None:
        overrides["emotion.language"] = args.lang
    return overrides


def _load_run_config(args: argparse.Namespace) -> RunConfig:
    return load_config(getattr(args, "config", None), _config_overrides(args))


def _input_lines(args: argparse.Namespace, config: RunConfig) -> list[str]:
    """Lines from --lines-file verbatim, or --text split with the run seed."""
    if getattr(args, "lines_file", None):
        lines = [
            line.strip()
            for line in _read_text_file(args.lines_file).splitlines()
            if line.strip()
        ]
        if not lines:
            raise ConfigError(f"{args.lines_file} contains no lines")
        return lines
    if getattr(args, "text", None):
        rng = np.random.default_rng(config.evolution.seed)
        sentences = split_sentences(args.text, config.abbreviations)
        lines = divide_lines(sentences, rng, config.line_range)
        if not lines:
            raise ConfigError("the input text contains no words")
        return lines
    raise ConfigError("one of --text or --lines-file is required")


def _profile_for(lines: list[str], config: RunConfig):
    resources = load_resources(config.language)
    lexicon = load_lexicon(default_lexicon_path())
    return analyze_lines(lines, resources, lexicon)


def _report_payload(individual: Individual) -> dict:
    payload = individual.report.as_dict()
    payload["feasible"] = individual.feasible
    return payload


def cmd_evolve(args: argparse.Namespace) -> int:
    config = _load_run_config(args)
    fonts = config.catalog()
    lines = _input_lines(args, config)
    profile = _profile_for(lines, config)
    result: EvolveResult = evolve(
        lines,
        profile,
        config.evolution,
        fonts,
        weights=config.weights,
        params=config.params,
        colors=config.colors,
        line_height_factor=config.line_height_factor,
        threads=args.threads,
    )

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    run_id = args.run_id or f"{config.evolution.stage.lower()}_{config.evolution.seed}"

    (out_dir / stats_filename(run_id)).write_text(result.stats.to_csv(), encoding="utf-8")

    ranked = sorted(result.population, key=Individual.sort_key)
    top = min(args.top, len(ranked))
    generation = config.evolution.generations
    for rank in range(top):
        individual = ranked[rank]
        layout = resolve_layout(
            individual.genotype, fonts, config.colors, config.line_height_factor
        )
        svg = render_poster_svg(individual.genotype, layout, config.colors)
        (out_dir / poster_filename(run_id, generation, rank)).write_text(svg, encoding="utf-8")
        (out_dir / genotype_filename(run_id, rank)).write_text(
            serialize_genotype(individual.genotype) + "\n", encoding="utf-8"
        )

    if len(result.stats) >= 2:
        for topic, series in CHART_TOPICS.items():
            chart = plot_stats(result.stats, series)
            (out_dir / chart_filename(run_id, topic)).write_text(chart, encoding="utf-8")

    summary = {
        "run_id": run_id,
        "stage": config.evolution.stage,
        "seed": config.evolution.seed,
        "generations": config.evolution.generations,
        "lines": lines,
        "best": {
            "report": _report_payload(result.best),
            "genotype": json.loads(serialize_genotype(result.best.genotype)),
        },
        "out_dir": str(out_dir),
    }
    print(json.dumps(summary, indent=2, ensure_ascii=False))
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    config = _load_run_config(args)
    fonts = config.catalog()
    document = _read_text_file(args.genotype)
    genotype = parse_genotype(document, fonts, config.evolution.font_size_range)
    profile = _profile_for(list(genotype.lines), config)
    report = evaluate(
        genotype,
        None,
        profile,
        fonts,
        weights=config.weights,
        params=config.params,
        stage=config.evolution.stage,
        colors=config.colors,
        line_height_factor=config.line_height_factor,
    )
    payload = report.as_dict()
    payload["feasible"] = report.penalty == 0.0
    print(json.dumps(payload, indent=2, ensure_ascii=False))
    return 0


def cmd_split(args: argparse.Namespace) -> int:
    config = _load_run_config(args)
    line_range = config.line_range
    if args.min_chars is not None or args.max_chars is not None:
        line_range = (
            args.min_chars if args.min_chars is not None else line_range[0],
            args.max_chars if args.max_chars is not None else line_range[1],
        )
    rng = np.random.default_rng(config.evolution.seed)
    sentences = split_sentences(args.text, config.abbreviations)
    lines = divide_lines(sentences, rng, line_range)
    print(json.dumps({"sentences": sentences, "lines": lines}, indent=2, ensure_ascii=False))
    return 0


def cmd_emotions(args: argparse.Namespace) -> int:
    config = _load_run_config(args)
    lines = _input_lines(args, config)
    profile = _profile_for(lines, config)
    print(json.dumps(profile.to_dict(), indent=2, ensure_ascii=False))
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    config = _load_run_config(args)
    fonts = config.catalog()
    document = _read_text_file(args.genotype)
    genotype = parse_genotype(document, fonts, config.evolution.font_size_range)
    layout = resolve_layout(genotype, fonts, config.colors, config.line_height_factor)
    svg = render_poster_svg(genotype, layout, config.colors)
    if args.out == "-":
        sys.stdout.write(svg)
    else:
        Path(args.out).write_text(svg, encoding="utf-8")
    return 0


def cmd_plot(args: argparse.Namespace) -> int:
    stats_text = _read_text_file(args.stats)
    try:
        stats = RunStats.from_csv(stats_text)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    series = tuple(name.strip() for name in args.series.split(",") if name.strip())
    try:
        svg = plot_stats(stats, series)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if args.out == "-":
        sys.stdout.write(svg)
    else:
        Path(args.out).write_text(svg, encoding="utf-8")
    return 0


def _add_config_flags(parser: argparse.ArgumentParser, with_stage: bool = True) -> None:
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--seed", type=int, help="random seed")
    if with_stage:
        parser.add_argument("--stage", choices=("S1", "S2", "S3"), help="objective stage")
    parser.add_argument("--lang", help="language code for emotion resources")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="broadside",
        description="Evolve and evaluate one-column typographic posters.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    evolve_cmd = commands.add_parser("evolve", help="evolve posters from text")
    _add_config_flags(evolve_cmd)
    evolve_cmd.add_argument("--text", help="input text, split into lines by seed")
    evolve_cmd.add_argument("--lines-file", help="file with one poster line per row")
    evolve_cmd.add_argument("--generations", type=int, help="generations to run")
    evolve_cmd.add_argument("--population", type=int, help="population size")
    evolve_cmd.add_argument("--out-dir", required=True, help="artifact directory")
    evolve_cmd.add_argument("--top", type=int, default=3, help="final posters to write")
    evolve_cmd.add_argument("--threads", type=int, default=1, help="evaluation worker threads")
    evolve_cmd.add_argument("--run-id", help="artifact name stem (default: stage_seed)")
    evolve_cmd.set_defaults(handler=cmd_evolve)

    evaluate_cmd = commands.add_parser("evaluate", help="score one genotype JSON document")
    _add_config_flags(evaluate_cmd)
    evaluate_cmd.add_argument("--genotype", required=True, help="genotype JSON file")
    evaluate_cmd.set_defaults(handler=cmd_evaluate)

    split_cmd = commands.add_parser("split", help="split text into sentences and lines")
    _add_config_flags(split_cmd, with_stage=False)
    split_cmd.add_argument("--text", required=True, help="input text")
    split_cmd.add_argument("--min-chars", type=int, help="minimum target line length")
    split_cmd.add_argument("--max-chars", type=int, help="maximum line length")
    split_cmd.set_defaults(handler=cmd_split)

    emotions_cmd = commands.add_parser("emotions", help="score lines against the lexicon")
    _add_config_flags(emotions_cmd, with_stage=False)
    emotions_cmd.add_argument("--text", help="input text, split into lines by seed")
    emotions_cmd.add_argument("--lines-file", help="file with one line per row")
    emotions_cmd.set_defaults(handler=cmd_emotions)

    render_cmd = commands.add_parser("render", help="render a genotype to SVG")
    _add_config_flags(render_cmd, with_stage=False)
    render_cmd.add_argument("--genotype", required=True, help="genotype JSON file")
    render_cmd.add_argument("--out", default="-", help="output file ('-' for stdout)")
    render_cmd.set_defaults(handler=cmd_render)

    plot_cmd = commands.add_parser("plot", help="chart a statistics CSV")
    plot_cmd.add_argument("--stats", required=True, help="stats CSV from evolve")
    plot_cmd.add_argument(
        "--series",
        default="objective,penalty",
        help=f"comma-separated series names; valid: {', '.join(CHART_SERIES)}",
    )
    plot_cmd.add_argument("--out", default="-", help="output file ('-' for stdout)")
    plot_cmd.set_defaults(handler=cmd_plot)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except BroadsideError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
