"""Backend selection for batch evaluation.

The jit backend is preferred when numba imports; the pure-numpy fallback
is always available.  ``BROADSIDE_BACKEND`` overrides the choice
("numba", "numpy", or "auto"/empty).  Both backends compute identical
rows, so selection never changes results, only speed.

Worker threads split the population into row chunks evaluated
concurrently (the jit kernel releases the GIL); chunk outputs are
reassembled in order, so the thread count never changes results either.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

import numpy as np

from ..errors import ConfigError
from ._numpy import eval_batch_numpy
from .packing import EvalContext, GeneArrays

ENV_FLAG = "BROADSIDE_BACKEND"

try:
    from ._numba import eval_batch_numba

    _HAS_NUMBA = True
except ImportError:  # pragma: no cover - depends on the environment
    eval_batch_numba = None
    _HAS_NUMBA = False


def available_backends() -> tuple[str, ...]:
    if _HAS_NUMBA:
        return ("numba", "numpy")
    return ("numpy",)


def active_backend(override: str | None = None) -> str:
    """Resolve the backend name from the override or the environment."""
    choice = override if override is not None else os.environ.get(ENV_FLAG, "auto")
    choice = choice.strip().lower() or "auto"
    if choice == "auto":
        return "numba" if _HAS_NUMBA else "numpy"
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not _HAS_NUMBA:
            raise ConfigError("backend 'numba' requested but numba is not importable")
        return "numba"
    raise ConfigError(
        f"unknown evaluation backend {choice!r}; expected 'auto', 'numba' or 'numpy'"
    )


def _batch_function(name: str) -> Callable[[EvalContext, GeneArrays], np.ndarray]:
    if name == "numba":
        return eval_batch_numba
    return eval_batch_numpy


def eval_batch(
    context: EvalContext,
    genes: GeneArrays,
    backend: str | None = None,
    threads: int = 1,
) -> np.ndarray:
    """Evaluate a packed population; rows align with the input order."""
    function = _batch_function(active_backend(backend))
    population = genes.population_size
    if threads <= 1 or population < 2 * threads:
        return function(context, genes)

    bounds = np.linspace(0, population, threads + 1).astype(int)
    chunks = [
        (int(bounds[i]), int(bounds[i + 1]))
        for i in range(threads)
        if bounds[i] < bounds[i + 1]
    ]
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(
            pool.map(lambda span: function(context, genes.row_slice(span[0], span[1])), chunks)
        )
    return np.vstack(parts)
