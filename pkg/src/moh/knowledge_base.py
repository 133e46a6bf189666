"""The Roman-Hindi to Devanagari word map: building, pruning, persistence, lookup."""

from __future__ import annotations

import logging
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np

from .corpus import clean_text, has_devanagari
from .distance import encode
from .lexicon import Dictionary

logger = logging.getLogger(__name__)

_DANDAS = {"।", "॥"}


class KnowledgeBaseError(ValueError):
    pass


def normalize_key(roman: str) -> str:
    return unicodedata.normalize("NFC", roman.strip()).lower()


def normalize_value(devanagari: str) -> str:
    return unicodedata.normalize("NFC", devanagari.strip())


def validate_pair(key: str, value: str) -> Optional[str]:
    """Return a reason the pair violates the KB invariants, or None."""
    if not key:
        return "empty key"
    if any(ch.isspace() for ch in key):
        return f"key {key!r} contains whitespace"
    if key != key.lower():
        return f"key {key!r} is not lowercase"
    if has_devanagari(key):
        return f"key {key!r} is not Roman script"
    if not has_devanagari(value):
        return f"value {value!r} has no Devanagari character"
    return None


class KnowledgeBase(Mapping[str, str]):
    """Immutable roman-key to Devanagari map with a length-bucketed index.

    Keys in each length bucket are kept sorted so candidate scans run in
    lexicographic order. Encoded buckets for vectorized distance are built
    lazily on first fuzzy search.
    """

    def __init__(self, entries: Mapping[str, str] | Iterable[tuple[str, str]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        table: dict[str, str] = {}
        for key, value in items:
            key, value = normalize_key(key), normalize_value(value)
            reason = validate_pair(key, value)
            if reason:
                raise KnowledgeBaseError(reason)
            table.setdefault(key, value)
        self._entries = MappingProxyType(dict(sorted(table.items())))
        index: dict[int, list[str]] = {}
        for key in self._entries:
            index.setdefault(len(key), []).append(key)
        self._length_index = MappingProxyType({n: tuple(keys) for n, keys in sorted(index.items())})
        self._encoded: dict[int, np.ndarray] = {}

    @property
    def entries(self) -> Mapping[str, str]:
        return self._entries

    @property
    def length_index(self) -> Mapping[int, tuple[str, ...]]:
        return self._length_index

    def encoded_bucket(self, length: int) -> np.ndarray:
        arr = self._encoded.get(length)
        if arr is None:
            arr = encode(self._length_index.get(length, ()))
            self._encoded[length] = arr
        return arr

    def lookup(self, word: str) -> Optional[str]:
        return self._entries.get(word)

    def __getitem__(self, key: str) -> str:
        return self._entries[key]

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __repr__(self) -> str:
        return f"KnowledgeBase({len(self)} entries)"

    def __eq__(self, other) -> bool:
        if isinstance(other, KnowledgeBase):
            return dict(self._entries) == dict(other._entries)
        return NotImplemented

    __hash__ = None

    def __deepcopy__(self, memo):
        return self


def kb_lookup(kb: KnowledgeBase, word: str) -> Optional[str]:
    return kb.lookup(word)


@dataclass
class KbSources:
    pair_files: Sequence[Path] = ()
    sentence_pair_files: Sequence[Path] = ()
    profanity_file: Optional[Path] = None

    def __post_init__(self):
        self.pair_files = [Path(p) for p in self.pair_files]
        self.sentence_pair_files = [Path(p) for p in self.sentence_pair_files]
        if self.profanity_file is not None:
            self.profanity_file = Path(self.profanity_file)


@dataclass
class BuildReport:
    loaded: int = 0
    from_sentences: int = 0
    skipped_unaligned: int = 0
    conflicts: int = 0
    malformed: int = 0
    pruned: int = 0
    final: int = 0
    pruned_keys: list[str] = field(default_factory=list)

    def counts(self) -> dict[str, int]:
        return {
            "loaded": self.loaded,
            "from_sentences": self.from_sentences,
            "skipped_unaligned": self.skipped_unaligned,
            "conflicts": self.conflicts,
            "malformed": self.malformed,
            "pruned": self.pruned,
            "final": self.final,
        }


def _read_lines(path: Path) -> list[str]:
    try:
        with path.open(encoding="utf-8") as fh:
            return fh.read().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise KnowledgeBaseError(f"cannot read knowledge-base source {path}: {exc}") from exc


def iter_pairs(path: Path, report: BuildReport) -> Iterator[tuple[str, str]]:
    for lineno, line in enumerate(_read_lines(path), 1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            report.malformed += 1
            logger.debug("%s:%d: malformed pair line", path, lineno)
            continue
        key, value = normalize_key(parts[0]), normalize_value(parts[1])
        if validate_pair(key, value):
            report.malformed += 1
            continue
        yield key, value


def _sentence_tokens(text: str) -> list[str]:
    return [tok for tok in clean_text(text).split() if tok not in _DANDAS]


def iter_sentence_pairs(path: Path, report: BuildReport) -> Iterator[tuple[str, str]]:
    """Position-aligned word pairs from Devanagari/Roman sentence pairs.

    Column order is detected per line from the script; only sentence pairs
    with equal token counts are aligned.
    """
    for lineno, line in enumerate(_read_lines(path), 1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            report.malformed += 1
            continue
        left, right = parts
        if has_devanagari(left) and not has_devanagari(right):
            dev, roman = left, right
        elif has_devanagari(right) and not has_devanagari(left):
            roman, dev = left, right
        else:
            report.malformed += 1
            continue
        roman_tokens = _sentence_tokens(roman)
        dev_tokens = _sentence_tokens(dev)
        if not roman_tokens or len(roman_tokens) != len(dev_tokens):
            report.skipped_unaligned += 1
            continue
        for key, value in zip(roman_tokens, dev_tokens):
            key, value = normalize_key(key), normalize_value(value)
            if validate_pair(key, value):
                report.malformed += 1
                continue
            yield key, value


def build_kb(
    sources: KbSources, en_dict: Dictionary, hi_dict: Dictionary
) -> tuple[KnowledgeBase, BuildReport]:
    """Union the word-pair sources, add aligned sentence tokens, then prune.

    A pair is pruned when its key is an English word and its value is not a
    known Hindi word. When a key occurs more than once, the first file in
    declared order wins (pair files, then the profanity list, then sentence
    files) and the clash is counted as a conflict if the values differ.
    """
    report = BuildReport()
    table: dict[str, str] = {}

    def add(pairs) -> int:
        added = 0
        for key, value in pairs:
            existing = table.get(key)
            if existing is None:
                table[key] = value
                added += 1
            elif existing != value:
                report.conflicts += 1
        return added

    word_files = list(sources.pair_files)
    if sources.profanity_file is not None:
        word_files.append(sources.profanity_file)
    for path in word_files:
        report.loaded += add(iter_pairs(path, report))
    for path in sources.sentence_pair_files:
        report.from_sentences += add(iter_sentence_pairs(path, report))

    for key in list(table):
        if en_dict.detect(key) and not hi_dict.detect(table[key]):
            del table[key]
            report.pruned += 1
            report.pruned_keys.append(key)

    kb = KnowledgeBase(table)
    report.final = len(kb)
    logger.info("knowledge base built: %s", report.counts())
    return kb, report


def load_pairs(path: str | Path) -> KnowledgeBase:
    """Read a pair file leniently (bad lines skipped), e.g. the profanity list."""
    report = BuildReport()
    kb = KnowledgeBase(iter_pairs(Path(path), report))
    if report.malformed:
        logger.warning("%s: %d malformed lines skipped", path, report.malformed)
    return kb


def save_kb(kb: KnowledgeBase, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for key, value in kb.items():
            fh.write(f"{key}\t{value}\n")


def load_kb(path: str | Path) -> KnowledgeBase:
    """Strict loader: any malformed line is an error naming its line number."""
    path = Path(path)
    pairs = []
    for lineno, line in enumerate(_read_lines(path), 1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise KnowledgeBaseError(f"{path}:{lineno}: expected roman<TAB>devanagari")
        key, value = normalize_key(parts[0]), normalize_value(parts[1])
        reason = validate_pair(key, value)
        if reason:
            raise KnowledgeBaseError(f"{path}:{lineno}: {reason}")
        pairs.append((key, value))
    return KnowledgeBase(pairs)
