"""Benchmark the jit and pure-numpy evaluation backends.

Builds a realistic evaluation context from a bundled text, packs random
populations of several sizes, and times ``eval_batch`` under each
backend (and thread count), reporting median wall time per batch and
per poster plus the worst row difference between backends.

Usage:
    python benchmarks/bench_backends.py [--sizes 64 512 4096] [--repeats 7]
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from broadside.config import bundled_text_paths
from broadside.emotion import analyze_lines, default_lexicon_path, load_lexicon, load_resources
from broadside.evolution import EvolutionConfig, init_population
from broadside.fonts import bundled_catalog
from broadside.metrics import build_context, eval_batch, pack_genotypes
from broadside.metrics.backend import available_backends
from broadside.textsplit import split_text


def time_batch(context, genes, backend: str, threads: int, repeats: int) -> float:
    eval_batch(context, genes, backend=backend, threads=threads)  # warm-up / JIT
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        eval_batch(context, genes, backend=backend, threads=threads)
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[64, 512, 4096])
    parser.add_argument("--repeats", type=int, default=7)
    parser.add_argument("--threads", type=int, nargs="+", default=[1, 4])
    args = parser.parse_args()

    catalog = bundled_catalog()
    lexicon = load_lexicon(default_lexicon_path())
    text_path = bundled_text_paths()[0]
    rng = np.random.default_rng(0)
    lines = split_text(text_path.read_text(encoding="utf-8").strip(), rng)
    profile = analyze_lines(lines, load_resources("en"), lexicon)
    context = build_context(lines, profile, catalog)

    backends = available_backends()
    print(f"lines: {len(lines)} ({text_path.name}), backends: {', '.join(backends)}")
    header = f"{'population':>10}  {'backend':>7}  {'threads':>7}  {'median':>10}  {'per poster':>11}"
    print(header)
    print("-" * len(header))

    for size in args.sizes:
        config = EvolutionConfig(population_size=size, seed=0)
        population = init_population(lines, config, catalog, np.random.default_rng(0))
        genes = pack_genotypes([ind.genotype for ind in population], context)

        rows = {}
        for backend in backends:
            rows[backend] = eval_batch(context, genes, backend=backend)
            for threads in args.threads:
                median = time_batch(context, genes, backend, threads, args.repeats)
                print(
                    f"{size:>10}  {backend:>7}  {threads:>7}"
                    f"  {median * 1e3:>8.2f}ms  {median / size * 1e6:>9.2f}us"
                )
        if len(rows) == 2:
            delta = float(np.abs(rows["numba"] - rows["numpy"]).max())
            print(f"{'':>10}  worst |numba - numpy| = {delta:.3e}")


if __name__ == "__main__":
    main()
