"""Line-level emotion scoring against a word-association lexicon.

Each line passes through a fixed normalisation pipeline (lowercase,
contraction and slang expansion, emoji naming, negation-to-antonym
folding, URL/stopword removal, punctuation stripping) and the surviving
tokens are summed over a ten-dimension association lexicon: eight
emotions in alphabetical order, then positive and negative sentiment.
A line's emotional charge is the sum of its eight emotion counts; the
charge distribution yields the optimal relative height of each line.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import LexiconParseError, UnsupportedLanguage

EMOTIONS = (
    "anger",
    "anticipation",
    "disgust",
    "fear",
    "joy",
    "sadness",
    "surprise",
    "trust",
)
SENTIMENTS = ("positive", "negative")
DIMENSIONS = EMOTIONS + SENTIMENTS

SUPPORTED_LANGUAGES = ("en", "pt", "fr")

# Words that negate the token following them, per language.
NEGATIONS = {
    "en": frozenset({"not", "no", "never", "cannot", "nothing", "neither", "nor"}),
    "pt": frozenset({"não", "nao", "nunca", "nem", "jamais"}),
    "fr": frozenset({"ne", "n", "pas", "non", "jamais", "rien"}),
}

_URL = re.compile(r"^(?:https?://|www\.)\S+$")
_EDGE_PUNCT = re.compile(r"^\W+|\W+$", re.UNICODE)


class EmotionLexicon:
    """word -> ten-dimension association vector."""

    def __init__(self, associations: Mapping[str, np.ndarray]):
        self._associations = dict(associations)

    def __len__(self) -> int:
        return len(self._associations)

    def __contains__(self, word: str) -> bool:
        return word in self._associations

    def vector(self, word: str) -> np.ndarray:
        """Copy of the word's vector; all zeros for unknown words."""
        found = self._associations.get(word)
        if found is None:
            return np.zeros(len(DIMENSIONS), dtype=np.int64)
        return found.copy()


def load_lexicon(path: Path) -> EmotionLexicon:
    """Parse a tab-separated ``word<TAB>dimension<TAB>0|1`` lexicon."""
    index = {name: i for i, name in enumerate(DIMENSIONS)}
    table: dict[str, np.ndarray] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise LexiconParseError(f"{path}: {exc}") from exc
    for lineno, row in enumerate(text.splitlines(), start=1):
        if not row.strip():
            continue
        parts = row.split("\t")
        if len(parts) != 3:
            raise LexiconParseError(f"{path}:{lineno}: expected 3 tab-separated fields")
        word, dimension, flag = parts
        if dimension not in index:
            raise LexiconParseError(f"{path}:{lineno}: unknown dimension {dimension!r}")
        if flag not in ("0", "1"):
            raise LexiconParseError(f"{path}:{lineno}: flag must be 0 or 1, got {flag!r}")
        vector = table.setdefault(word, np.zeros(len(DIMENSIONS), dtype=np.int64))
        if flag == "1":
            vector[index[dimension]] = 1
    return EmotionLexicon(table)


def _load_json_map(path: Path, label: str) -> dict[str, str]:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise LexiconParseError(f"{label} map {path}: {exc}") from exc
    if not isinstance(raw, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in raw.items()
    ):
        raise LexiconParseError(f"{label} map {path}: must be a string-to-string object")
    return raw


def _word_pattern(keys: Iterable[str]) -> re.Pattern | None:
    ordered = sorted(keys, key=len, reverse=True)
    if not ordered:
        return None
    joined = "|".join(re.escape(key) for key in ordered)
    return re.compile(rf"(?<!\w)(?:{joined})(?!\w)")


@dataclass(frozen=True)
class TextResources:
    """Per-language preprocessing tables."""

    language: str
    contractions: Mapping[str, str]
    slang: Mapping[str, str]
    emoji: Mapping[str, str]
    antonyms: Mapping[str, str]
    stopwords: frozenset[str]
    negations: frozenset[str]

    @cached_property
    def _contraction_pattern(self) -> re.Pattern | None:
        return _word_pattern(self.contractions)

    @cached_property
    def _slang_pattern(self) -> re.Pattern | None:
        return _word_pattern(self.slang)


def lexicon_root() -> Path:
    return Path(__file__).resolve().parent / "resources" / "lexicon"


def load_resources(language: str, root: Path | None = None) -> TextResources:
    """Load the preprocessing tables for one language code."""
    base = Path(root) if root is not None else lexicon_root()
    stopword_path = base / f"stopwords.{language}.txt"
    if not stopword_path.is_file():
        raise UnsupportedLanguage(
            f"no stopword list for language {language!r} under {base}"
        )
    stopwords = frozenset(
        word.strip()
        for word in stopword_path.read_text(encoding="utf-8").splitlines()
        if word.strip()
    )
    return TextResources(
        language=language,
        contractions=_load_json_map(base / "contractions.json", "contraction"),
        slang=_load_json_map(base / "slang.json", "slang"),
        emoji=_load_json_map(base / "emoji.json", "emoji"),
        antonyms=_load_json_map(base / "antonyms.json", "antonym"),
        stopwords=stopwords,
        negations=NEGATIONS.get(language, frozenset()),
    )


def default_lexicon_path() -> Path:
    return lexicon_root() / "lexicon.tsv"


def _strip_token(token: str) -> str:
    return _EDGE_PUNCT.sub("", token)


def preprocess(line: str, resources: TextResources) -> list[str]:
    """Normalise one line into scoring tokens (see module docstring)."""
    text = line.lower()
    if resources._contraction_pattern is not None:
        text = resources._contraction_pattern.sub(
            lambda match: resources.contractions[match.group(0)], text
        )
    if resources._slang_pattern is not None:
        text = resources._slang_pattern.sub(
            lambda match: resources.slang[match.group(0)], text
        )
    for emoji, name in resources.emoji.items():
        if emoji in text:
            text = text.replace(emoji, f" {name} ")

    raw_tokens = text.split()

    # Fold "<negation> <word>" into the word's antonym when one is known.
    folded: list[str] = []
    i = 0
    while i < len(raw_tokens):
        stripped = _strip_token(raw_tokens[i])
        if stripped in resources.negations and i + 1 < len(raw_tokens):
            following = _strip_token(raw_tokens[i + 1])
            antonym = resources.antonyms.get(following)
            if antonym is not None:
                folded.append(antonym)
                i += 2
                continue
        folded.append(raw_tokens[i])
        i += 1

    tokens: list[str] = []
    for token in folded:
        if _URL.match(token):
            continue
        word = _strip_token(token)
        if not word or word in resources.stopwords:
            continue
        tokens.append(word)
    return tokens


@dataclass(frozen=True)
class EmotionProfile:
    """Per-line association vectors plus derived layout hints."""

    lines: tuple[str, ...]
    tokens: tuple[tuple[str, ...], ...]
    vectors: np.ndarray  # (lines, 10)
    charges: np.ndarray  # (lines,)
    dominants: tuple[str, ...]
    dominant: str
    optimal_heights: tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "language_dimensions": list(DIMENSIONS),
            "lines": [
                {
                    "text": self.lines[i],
                    "tokens": list(self.tokens[i]),
                    "vector": [int(v) for v in self.vectors[i]],
                    "charge": int(self.charges[i]),
                    "dominant": self.dominants[i],
                    "optimal_height": self.optimal_heights[i],
                }
                for i in range(len(self.lines))
            ],
            "dominant": self.dominant,
        }


def _dominant_name(vector: np.ndarray) -> str:
    emotions = vector[: len(EMOTIONS)]
    if int(emotions.sum()) == 0:
        return "neutral"
    return EMOTIONS[int(np.argmax(emotions))]


def optimal_heights(charges: Sequence[float]) -> tuple[float, ...]:
    """Percent of the available height each line should ideally take."""
    if len(charges) == 0:
        raise ValueError("at least one line is required")
    shifted = [1.0 + float(charge) for charge in charges]
    total = sum(shifted)
    return tuple(100.0 * value / total for value in shifted)


def analyze_lines(
    lines: Sequence[str],
    resources: TextResources,
    lexicon: EmotionLexicon,
) -> EmotionProfile:
    """Score every line and derive charges, dominants and optimal heights."""
    if not lines:
        raise ValueError("at least one line is required")
    token_lists = [tuple(preprocess(line, resources)) for line in lines]
    vectors = np.zeros((len(lines), len(DIMENSIONS)), dtype=np.int64)
    for row, tokens in enumerate(token_lists):
        for token in tokens:
            vectors[row] += lexicon.vector(token)
    charges = vectors[:, : len(EMOTIONS)].sum(axis=1)
    dominants = tuple(_dominant_name(vectors[row]) for row in range(len(lines)))
    return EmotionProfile(
        lines=tuple(lines),
        tokens=tuple(token_lists),
        vectors=vectors,
        charges=charges,
        dominants=dominants,
        dominant=_dominant_name(vectors.sum(axis=0)),
        optimal_heights=optimal_heights(charges),
    )
