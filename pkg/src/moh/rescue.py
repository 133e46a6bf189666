"""Rescue of out-of-vocabulary tokens by Levenshtein similarity to KB keys."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from .corpus import has_devanagari
from .distance import batch_distance, lev_distance, lev_similarity
from .knowledge_base import KnowledgeBase
from .langid import NOT_RESCUED, RESCUED, LanguageTag, TaggedToken

__all__ = [
    "RescueConfig",
    "RescueResult",
    "lev_distance",
    "lev_similarity",
    "fuzzy_candidates",
    "best_match",
    "rescue_oov",
    "rescue_tokens",
]


@dataclass(frozen=True)
class RescueConfig:
    """Similarity threshold for OOV transfer.

    Comparisons against the threshold use its exact decimal value, so a
    candidate at similarity exactly 0.7 is rejected at threshold 0.70.
    """

    threshold: float = 0.70

    def __post_init__(self):
        if not 0.0 < float(self.threshold) < 1.0:
            raise ValueError(f"threshold must lie in (0, 1), got {self.threshold}")

    @property
    def exact_threshold(self) -> Fraction:
        return Fraction(repr(float(self.threshold)))


@dataclass(frozen=True)
class RescueResult:
    matched_key: str
    devanagari: str
    similarity: float


def _max_length_gap(length: int, other: int, t: Fraction) -> bool:
    """Whether a length pair can possibly exceed the threshold.

    Edit distance is at least the length difference, so a pair with
    ``|a - b| >= (1 - t) * max(a, b)`` can never have similarity above ``t``.
    """
    return abs(length - other) < (1 - t) * max(length, other)


def _candidate_lengths(word: str, kb: KnowledgeBase, t: Fraction) -> list[int]:
    n = len(word)
    return [length for length in kb.length_index if _max_length_gap(length, n, t)]


def fuzzy_candidates(word: str, kb: KnowledgeBase, cfg: RescueConfig = RescueConfig()) -> Iterator[str]:
    """Yield, in lexicographic order, every KB key that could pass the threshold."""
    t = cfg.exact_threshold
    buckets = [kb.length_index[n] for n in _candidate_lengths(word, kb, t)]
    return heapq.merge(*buckets)


def _passes(distance: int, longest: int, t: Fraction) -> bool:
    # similarity > t  <=>  (longest - distance) > t * longest
    return Fraction(longest - distance) > t * longest


def best_match(
    word: str, kb: KnowledgeBase, cfg: RescueConfig = RescueConfig(), prefilter: bool = True
) -> Optional[RescueResult]:
    """Highest-similarity KB key above the threshold, lexicographically first on ties.

    Distances are computed a whole length bucket at a time. With
    ``prefilter=False`` every bucket is scanned.
    """
    t = cfg.exact_threshold
    lengths = _candidate_lengths(word, kb, t) if prefilter else list(kb.length_index)
    best_key = None
    best_sim = Fraction(-1)
    for length in lengths:
        longest = max(length, len(word))
        if longest == 0:
            continue
        dists = batch_distance(word, kb.encoded_bucket(length))
        idx = int(np.argmin(dists))
        d = int(dists[idx])
        if not _passes(d, longest, t):
            continue
        sim = Fraction(longest - d, longest)
        key = kb.length_index[length][idx]
        if sim > best_sim or (sim == best_sim and key < best_key):
            best_key, best_sim = key, sim
    if best_key is None:
        return None
    return RescueResult(best_key, kb[best_key], float(best_sim))


def sequential_match(
    word: str, kb: KnowledgeBase, cfg: RescueConfig = RescueConfig()
) -> Optional[RescueResult]:
    """Candidate-by-candidate scan keeping the first strictly better similarity."""
    t = cfg.exact_threshold
    best_key = None
    best_sim = Fraction(0)
    for cand in fuzzy_candidates(word, kb, cfg):
        longest = max(len(cand), len(word))
        d = lev_distance(word, cand)
        sim = Fraction(longest - d, longest)
        if _passes(d, longest, t) and sim > best_sim:
            best_key, best_sim = cand, sim
    if best_key is None:
        return None
    return RescueResult(best_key, kb[best_key], float(best_sim))


def rescue_oov(
    token: TaggedToken,
    kb: KnowledgeBase,
    cfg: RescueConfig = RescueConfig(),
    sequential: bool = False,
) -> TaggedToken:
    """Turn an OOV token into ROM_HINDI via its best KB match, or into NA.

    Tokens with other tags are returned unchanged. Devanagari tokens are
    never matched against the Roman keys.
    """
    if token.tag is not LanguageTag.OOV:
        return token
    match = None
    if token.corrected and not has_devanagari(token.corrected):
        finder = sequential_match if sequential else best_match
        match = finder(token.corrected, kb, cfg)
    if match is None:
        return replace(token, tag=LanguageTag.NA, trace=token.trace + (NOT_RESCUED,))
    return replace(
        token,
        corrected=match.matched_key,
        tag=LanguageTag.ROM_HINDI,
        devanagari=match.devanagari,
        trace=token.trace + (RESCUED,),
    )


def rescue_tokens(
    tokens, kb: KnowledgeBase, cfg: RescueConfig = RescueConfig(), cache: dict | None = None
) -> list[TaggedToken]:
    """Rescue every OOV token of a post; ``cache`` memoizes matches per word."""
    out = []
    for token in tokens:
        if token.tag is LanguageTag.OOV and cache is not None:
            key = token.corrected
            if key not in cache:
                cache[key] = rescue_oov(token, kb, cfg)
            hit = cache[key]
            out.append(replace(hit, surface=token.surface))
        else:
            out.append(rescue_oov(token, kb, cfg))
    return out


def rescue_trace(before, after) -> list[dict]:
    """JSON-ready records for tokens that went through rescue."""
    records = []
    for old, new in zip(before, after):
        if old.tag is not LanguageTag.OOV:
            continue
        records.append(
            {
                "surface": old.surface,
                "matched_key": new.corrected if new.tag is LanguageTag.ROM_HINDI else None,
                "similarity": (
                    lev_similarity(old.corrected, new.corrected)
                    if new.tag is LanguageTag.ROM_HINDI
                    else None
                ),
                "tag": new.tag.value,
            }
        )
    return records
