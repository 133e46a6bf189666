"""Levenshtein edit distance over Unicode codepoints, scalar and batched."""

from __future__ import annotations

import numpy as np


def lev_distance(s1: str, s2: str) -> int:
    """Minimal number of single-codepoint insertions, deletions and substitutions.

    >>> lev_distance("namste", "namaste")
    1
    >>> lev_distance("nafrat", "namaste")
    4
    """
    if s1 == s2:
        return 0
    if len(s1) < len(s2):
        s1, s2 = s2, s1
    if not s2:
        return len(s1)
    previous = list(range(len(s2) + 1))
    for i, c1 in enumerate(s1, 1):
        current = [i]
        for j, c2 in enumerate(s2, 1):
            current.append(
                min(
                    previous[j] + 1,
                    current[j - 1] + 1,
                    previous[j - 1] + (c1 != c2),
                )
            )
        previous = current
    return previous[-1]


def lev_similarity(s1: str, s2: str) -> float:
    """``1 - distance / max(len)``; two empty strings count as identical."""
    longest = max(len(s1), len(s2))
    if longest == 0:
        return 1.0
    return 1.0 - lev_distance(s1, s2) / longest


def encode(words) -> np.ndarray:
    """Pack equal-length words into an ``(n, length)`` codepoint array."""
    words = list(words)
    if not words:
        return np.zeros((0, 0), dtype=np.int32)
    width = len(words[0])
    flat = np.fromiter(
        (ord(ch) for w in words for ch in w), dtype=np.int32, count=len(words) * width
    )
    return flat.reshape(len(words), width)


def batch_distance(word: str, candidates: np.ndarray) -> np.ndarray:
    """Distances from ``word`` to every row of an encoded equal-length bucket.

    One DP row is advanced per character of ``word``, vectorized over all
    candidates and over the row itself: the insertion chain
    ``cur[j] = min(t[j], cur[j-1] + 1)`` is resolved as
    ``j + cummin(t[k] - k)``.
    """
    n, width = candidates.shape
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    offsets = np.arange(width + 1, dtype=np.int64)
    prev = np.broadcast_to(offsets, (n, width + 1)).copy()
    for i, ch in enumerate(word, 1):
        mismatch = candidates != ord(ch)
        t = np.empty_like(prev)
        t[:, 0] = i
        t[:, 1:] = np.minimum(prev[:, 1:] + 1, prev[:, :-1] + mismatch)
        prev = np.minimum.accumulate(t - offsets, axis=1) + offsets
    return prev[:, width]
