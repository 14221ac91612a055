"""Splitting input text into poster lines.

Two passes: sentence boundary detection (rule-based, abbreviation-aware)
and recursive line division.  A sentence longer than the configured
maximum is cut at the word boundary nearest a uniformly drawn target
length, repeatedly, so different seeds give different line counts for
the same text.
"""

from __future__ import annotations

import re
from typing import Sequence

import numpy as np

from .errors import DegenerateRange

DEFAULT_LINE_RANGE = (8, 16)

# Trailing-word abbreviations that do not end a sentence (period only).
DEFAULT_ABBREVIATIONS = frozenset(
    {
        "dr", "mr", "mrs", "ms", "prof", "sr", "jr", "st", "vs", "etc",
        "fig", "dept", "inc", "ltd", "av", "ex", "pp", "sra", "dra", "eng",
        "e.g", "i.e", "cf",
    }
)

_TERMINAL = re.compile(r"[.!?…]+")


def _preceding_word(text: str, index: int) -> str:
    """Word immediately before text[index], lowercased, without punctuation
    other than inner periods (so 'e.g' survives)."""
    start = index
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    word = text[start:index]
    return word.strip("\"'()[]«»“”‘’").lower()


def split_sentences(
    text: str,
    abbreviations: frozenset[str] = DEFAULT_ABBREVIATIONS,
) -> list[str]:
    """Split text into sentences.

    A terminal punctuation run [.!?…] ends a sentence when followed by
    whitespace leading to an uppercase letter, a new line, or the end of
    the text, unless the preceding word is a known abbreviation or a
    single initial such as "J.".
    """
    boundaries: list[int] = []
    for match in _TERMINAL.finditer(text):
        end = match.end()
        if end < len(text) and not text[end].isspace():
            continue
        follow = text[end:].lstrip(" \t")
        if follow and not (follow[0].isupper() or follow[0] == "\n"):
            continue
        if match.group(0).endswith(".") and "." not in match.group(0)[:-1]:
            word = _preceding_word(text, match.start())
            if word in abbreviations:
                continue
            if len(word) == 1 and word.isalpha():
                continue
        boundaries.append(end)

    sentences: list[str] = []
    start = 0
    for boundary in boundaries:
        piece = text[start:boundary].strip()
        if piece:
            sentences.append(piece)
        start = boundary
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def _cut_index(words: Sequence[str], target: int) -> int:
    """Word-boundary index whose left part length is nearest the target."""
    best_index = 1
    best_distance = None
    length = -1  # running length of " ".join(words[:j])
    for j in range(1, len(words)):
        length += 1 + len(words[j - 1])
        distance = abs(length - target)
        if best_distance is None or distance < best_distance:
            best_distance = distance
            best_index = j
    return best_index


def _divide(words: list[str], line_range: tuple[int, int], rng: np.random.Generator) -> list[str]:
    joined = " ".join(words)
    if len(joined) <= line_range[1] or len(words) == 1:
        return [joined]
    target = int(rng.integers(line_range[0], line_range[1] + 1))
    cut = _cut_index(words, target)
    return _divide(words[:cut], line_range, rng) + _divide(words[cut:], line_range, rng)


def divide_lines(
    sentences: Sequence[str],
    rng: np.random.Generator,
    line_range: tuple[int, int] = DEFAULT_LINE_RANGE,
) -> list[str]:
    """Divide sentences into poster lines no longer than line_range[1]
    characters (single words may still exceed it)."""
    low, high = line_range
    if not (isinstance(low, int) and isinstance(high, int)) or low <= 0 or low > high:
        raise DegenerateRange(f"line length range must satisfy 0 < min <= max, got {line_range}")
    lines: list[str] = []
    for sentence in sentences:
        words = sentence.split()
        if not words:
            continue
        lines.extend(_divide(words, (low, high), rng))
    return lines


def split_text(
    text: str,
    rng: np.random.Generator,
    line_range: tuple[int, int] = DEFAULT_LINE_RANGE,
    abbreviations: frozenset[str] = DEFAULT_ABBREVIATIONS,
) -> list[str]:
    """Sentence detection followed by line division."""
    return divide_lines(split_sentences(text, abbreviations), rng, line_range)
