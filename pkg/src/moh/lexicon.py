"""Wordlist dictionaries with edit-distance suggestion, and unigram frequency tables."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

import numpy as np

from .corpus import is_devanagari, is_latin_letter
from .distance import batch_distance, encode


class Language(str, Enum):
    ENGLISH = "english"
    DEVANAGARI_HINDI = "devanagari_hindi"


class LexiconError(ValueError):
    pass


def _in_script(word: str, language: Language) -> bool:
    if language is Language.ENGLISH:
        return all(ch == "'" or is_latin_letter(ch) for ch in word)
    return all(is_devanagari(ch) for ch in word)


class FrequencyModel:
    """Per-word occurrence counts; unseen words count zero."""

    def __init__(self, language: Language | str, counts: Mapping[str, int] | None = None):
        self.language = Language(language)
        table = {}
        for word, count in (counts or {}).items():
            count = int(count)
            if count < 0:
                raise LexiconError(f"negative count for {word!r}: {count}")
            table[unicodedata.normalize("NFC", word)] = count
        self.counts = MappingProxyType(table)

    def frequency(self, word: str) -> int:
        return self.counts.get(word, 0)

    def __deepcopy__(self, memo):
        return self

    def __len__(self) -> int:
        return len(self.counts)

    @classmethod
    def load(cls, path: str | Path, language: Language | str) -> "FrequencyModel":
        counts: dict[str, int] = {}
        with Path(path).open(encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.rstrip("\n")
                if not line.strip():
                    continue
                parts = line.split("\t")
                if len(parts) != 2:
                    raise LexiconError(f"{path}:{lineno}: expected word<TAB>count")
                try:
                    count = int(parts[1])
                except ValueError:
                    raise LexiconError(f"{path}:{lineno}: bad count {parts[1]!r}") from None
                if count < 0:
                    raise LexiconError(f"{path}:{lineno}: negative count")
                word = unicodedata.normalize("NFC", parts[0].strip())
                counts[word] = counts.get(word, 0) + count
        return cls(language, counts)


@dataclass(frozen=True)
class Dictionary:
    """A language wordlist answering membership and near-miss suggestion.

    English lookups are case-insensitive. Suggestions only consider words of
    the dictionary's own script, so a Latin token is never "corrected" into
    a Devanagari word or vice versa.
    """

    language: Language
    words: frozenset
    max_suggest_distance: int = 1
    frequencies: Optional[FrequencyModel] = None
    _buckets: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "language", Language(self.language))
        normalized = set()
        for word in self.words:
            word = unicodedata.normalize("NFC", word)
            if self.language is Language.ENGLISH:
                word = word.lower()
            if not word or not _in_script(word, self.language):
                raise LexiconError(f"{word!r} is not a valid {self.language.value} word")
            normalized.add(word)
        object.__setattr__(self, "words", frozenset(normalized))
        by_length: dict[int, list[str]] = {}
        for word in normalized:
            by_length.setdefault(len(word), []).append(word)
        for length, bucket in by_length.items():
            bucket.sort()
            self._buckets[length] = (bucket, encode(bucket))

    @classmethod
    def from_words(cls, language, words: Iterable[str], **kwargs) -> "Dictionary":
        return cls(Language(language), frozenset(words), **kwargs)

    @classmethod
    def load(cls, path: str | Path, language, **kwargs) -> "Dictionary":
        words = []
        with Path(path).open(encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                word = line.strip()
                if not word:
                    continue
                if " " in word or "\t" in word:
                    raise LexiconError(f"{path}:{lineno}: one word per line expected")
                words.append(word)
        try:
            return cls.from_words(language, words, **kwargs)
        except LexiconError as exc:
            raise LexiconError(f"{path}: {exc}") from None

    def _key(self, word: str) -> str:
        word = unicodedata.normalize("NFC", word)
        return word.lower() if self.language is Language.ENGLISH else word

    def detect(self, word: str) -> bool:
        return bool(word) and self._key(word) in self.words

    def suggest(self, word: str) -> Optional[str]:
        """Closest dictionary word within ``max_suggest_distance``.

        Ties go to the more frequent word (when a frequency model is
        attached), then to the lexicographically smaller one.
        """
        word = self._key(word)
        cap = self.max_suggest_distance
        if not word or cap < 1 or not _in_script(word, self.language):
            return None
        best = None
        for length in range(max(1, len(word) - cap), len(word) + cap + 1):
            if length not in self._buckets:
                continue
            bucket, encoded = self._buckets[length]
            dists = batch_distance(word, encoded)
            for idx in np.flatnonzero(dists <= cap):
                cand = bucket[idx]
                freq = self.frequencies.frequency(cand) if self.frequencies else 0
                rank = (int(dists[idx]), -freq, cand)
                if best is None or rank < best:
                    best = rank
        return None if best is None else best[2]

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word) -> bool:
        return self.detect(word)


def detect(dictionary: Dictionary, word: str) -> bool:
    return dictionary.detect(word)


def suggest(dictionary: Dictionary, word: str) -> Optional[str]:
    return dictionary.suggest(word)


def frequency(model: FrequencyModel, word: str) -> int:
    return model.frequency(word)
