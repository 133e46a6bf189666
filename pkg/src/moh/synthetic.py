"""Seeded synthetic knowledge bases and code-switched corpora with spelling variants."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distance import lev_distance
from .knowledge_base import KnowledgeBase
from .langid import Resources
from .lexicon import Dictionary, Language
from .transliterate import char_translit

VOWELS = "aeiou"
CONSONANTS = "bdghjklmnprstvy"

ENGLISH_FILLER = (
    "the", "movie", "people", "news", "today", "good", "bad", "please", "share",
    "watch", "video", "live", "match", "team", "game", "party", "vote", "money",
    "school", "office", "phone", "music", "song", "photo", "post", "comment",
    "follow", "thanks", "sorry", "friend", "time", "work", "city", "road",
    "rain", "water", "food", "train", "ticket", "market",
)


def random_word(rng: np.random.Generator, length: int, alphabet: str = "abcdefghijklmnopqrstuvwxyz") -> str:
    return "".join(alphabet[i] for i in rng.integers(0, len(alphabet), size=length))


def random_kb(n_keys: int, seed: int = 0, min_len: int = 3, max_len: int = 10) -> KnowledgeBase:
    """KB of distinct random lowercase keys mapped to their char-level Devanagari form."""
    rng = np.random.default_rng(seed)
    keys: set[str] = set()
    while len(keys) < n_keys:
        keys.add(random_word(rng, int(rng.integers(min_len, max_len + 1)), "abcdeghiklmnoprstu"))
    return KnowledgeBase({k: char_translit(k) for k in keys})


def syllable_word(rng: np.random.Generator, syllables: int) -> str:
    return "".join(
        CONSONANTS[rng.integers(len(CONSONANTS))] + VOWELS[rng.integers(len(VOWELS))]
        for _ in range(syllables)
    )


def vowel_edits(word: str) -> set[str]:
    """Every string one vowel insertion, deletion or substitution away from ``word``."""
    out = set()
    for i, ch in enumerate(word):
        if ch in VOWELS:
            out.add(word[:i] + word[i + 1 :])
            out.update(word[:i] + v + word[i + 1 :] for v in VOWELS if v != ch)
    for i in range(len(word) + 1):
        out.update(word[:i] + v + word[i:] for v in VOWELS)
    out.discard(word)
    return out


def unique_nearest(word: str, keys, threshold: float = 0.70) -> str | None:
    """Brute-force best key by similarity; None unless it is unique and above threshold."""
    scored = []
    for key in keys:
        longest = max(len(key), len(word))
        scored.append((1 - lev_distance(word, key) / longest, key))
    scored.sort(reverse=True)
    if not scored or scored[0][0] <= threshold:
        return None
    if len(scored) > 1 and scored[1][0] == scored[0][0]:
        return None
    return scored[0][1]


@dataclass
class VariantCorpus:
    texts: list[str]
    labels: list[int]
    resources: Resources
    variants: dict[str, list[str]]


def make_lexicon(rng: np.random.Generator, n_words: int, english: Dictionary) -> list[str]:
    words: list[str] = []
    taken: set[str] = set()
    while len(words) < n_words:
        w = syllable_word(rng, int(rng.integers(2, 4)))
        if w in taken or english.suggest(w) is not None or english.detect(w):
            continue
        taken.add(w)
        words.append(w)
    return words


def variant_pool(
    words: list[str], english: Dictionary, rng: np.random.Generator, max_variants: int = 8
) -> dict[str, list[str]]:
    """Vowel-edit variants whose unique nearest key is the word they came from."""
    keyset = set(words)
    pool: dict[str, list[str]] = {}
    for w in words:
        candidates = sorted(vowel_edits(w) - keyset)
        rng.shuffle(candidates)
        kept = []
        for cand in candidates:
            if english.detect(cand) or english.suggest(cand) is not None:
                continue
            if unique_nearest(cand, words) == w:
                kept.append(cand)
            if len(kept) == max_variants:
                break
        pool[w] = kept
    return pool


def variant_corpus(
    n_docs: int = 500,
    seed: int = 0,
    perturb: float = 0.30,
    n_keywords: int = 30,
    n_neutral: int = 60,
    keyword_purity: float = 0.8,
) -> VariantCorpus:
    """Two-class code-switched corpus where class evidence sits in Hindi keywords.

    Each document mixes two or three class keywords (drawn from its own class
    with probability ``keyword_purity``), neutral Hindi words and English
    filler. Every Hindi token is replaced, with probability ``perturb``, by a
    random spelling variant at one vowel edit from it.
    """
    rng = np.random.default_rng(seed)
    english = Dictionary.from_words(Language.ENGLISH, ENGLISH_FILLER)
    hindi = make_lexicon(rng, 2 * n_keywords + n_neutral, english)
    keywords = [hindi[:n_keywords], hindi[n_keywords : 2 * n_keywords]]
    neutral = hindi[2 * n_keywords :]
    pool = variant_pool(hindi, english, rng)

    def hindi_token(word: str) -> str:
        if pool[word] and rng.random() < perturb:
            return pool[word][rng.integers(len(pool[word]))]
        return word

    texts, labels = [], []
    for i in range(n_docs):
        label = i % 2
        tokens = []
        for _ in range(int(rng.integers(2, 4))):
            source = label if rng.random() < keyword_purity else 1 - label
            tokens.append(hindi_token(keywords[source][rng.integers(n_keywords)]))
        for _ in range(int(rng.integers(3, 6))):
            tokens.append(hindi_token(neutral[rng.integers(len(neutral))]))
        for _ in range(int(rng.integers(1, 4))):
            tokens.append(ENGLISH_FILLER[rng.integers(len(ENGLISH_FILLER))])
        order = rng.permutation(len(tokens))
        texts.append(" ".join(tokens[j] for j in order))
        labels.append(label)

    kb = KnowledgeBase({w: char_translit(w) for w in hindi})
    hi_dict = Dictionary.from_words(Language.DEVANAGARI_HINDI, set(kb.values()))
    resources = Resources(kb=kb, en_dict=english, hi_dict=hi_dict)
    return VariantCorpus(texts, labels, resources, pool)
