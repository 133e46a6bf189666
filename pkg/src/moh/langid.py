"""Word-level language identification and English/Roman-Hindi disambiguation."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional, Sequence

from .corpus import Post, has_devanagari
from .knowledge_base import KnowledgeBase, load_kb, load_pairs
from .lexicon import Dictionary, FrequencyModel, Language


class LanguageTag(str, Enum):
    ENGLISH = "ENGLISH"
    DEV_HINDI = "DEV_HINDI"
    ROM_HINDI = "ROM_HINDI"
    OOV = "OOV"
    NA = "NA"


# Branch identifiers recorded in TaggedToken.trace.
HI_DETECT = "hi_detect"
HI_SUGGEST = "hi_suggest"
EN_DETECT = "en_detect"
EN_SUGGEST = "en_suggest"
KB_HIT = "kb_hit"
ENGLISH_ONLY = "english_only"
HINDI_ONLY = "hindi_only"
FREQ_ENGLISH = "freq_english"
FREQ_HINDI = "freq_hindi"
UNKNOWN = "unknown"
DEVANAGARI_UNKNOWN = "devanagari_unknown"
RESCUED = "rescued"
NOT_RESCUED = "not_rescued"


@dataclass(frozen=True)
class TaggedToken:
    surface: str
    corrected: str
    tag: LanguageTag
    devanagari: Optional[str] = None
    trace: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        out = {"surface": self.surface, "corrected": self.corrected, "tag": self.tag.value}
        if self.devanagari is not None:
            out["devanagari"] = self.devanagari
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "TaggedToken":
        return cls(
            surface=data["surface"],
            corrected=data.get("corrected", data["surface"]),
            tag=LanguageTag(data["tag"]),
            devanagari=data.get("devanagari"),
        )


@dataclass(frozen=True)
class Resources:
    """Everything the tagger, rescue and transliteration stages read.

    Immutable, so copies (e.g. from ``sklearn.base.clone``) share it.
    """

    kb: KnowledgeBase
    en_dict: Dictionary
    hi_dict: Dictionary
    freq_en: FrequencyModel = field(default_factory=lambda: FrequencyModel(Language.ENGLISH))
    freq_hi: FrequencyModel = field(default_factory=lambda: FrequencyModel(Language.DEVANAGARI_HINDI))
    profanity_kb: KnowledgeBase = field(default_factory=KnowledgeBase)

    def __deepcopy__(self, memo):
        return self

    @classmethod
    def load(
        cls,
        kb: str | Path,
        en_dict: str | Path,
        hi_dict: str | Path,
        freq_en: str | Path | None = None,
        freq_hi: str | Path | None = None,
        profanity: str | Path | None = None,
        max_suggest_distance: int = 1,
    ) -> "Resources":
        fe = FrequencyModel.load(freq_en, Language.ENGLISH) if freq_en else FrequencyModel(Language.ENGLISH)
        fh = (
            FrequencyModel.load(freq_hi, Language.DEVANAGARI_HINDI)
            if freq_hi
            else FrequencyModel(Language.DEVANAGARI_HINDI)
        )
        return cls(
            kb=load_kb(kb),
            en_dict=Dictionary.load(
                en_dict, Language.ENGLISH, max_suggest_distance=max_suggest_distance, frequencies=fe
            ),
            hi_dict=Dictionary.load(
                hi_dict, Language.DEVANAGARI_HINDI, max_suggest_distance=max_suggest_distance
            ),
            freq_en=fe,
            freq_hi=fh,
            profanity_kb=load_pairs(profanity) if profanity else KnowledgeBase(),
        )


def tag_word(
    word: str,
    kb: KnowledgeBase,
    en_dict: Dictionary,
    hi_dict: Dictionary,
    freq_en: FrequencyModel,
    freq_hi: FrequencyModel,
) -> TaggedToken:
    """Tag one cleaned token.

    Hindi-dictionary detection and correction are tried first and are final.
    Otherwise the English dictionary (detect, then suggest) and the knowledge
    base each propose a reading; when both do, the English reading wins only
    if its English frequency is strictly greater than the Roman-Hindi
    frequency of the token.
    """
    trace: list[str] = []
    if hi_dict.detect(word):
        return TaggedToken(word, word, LanguageTag.DEV_HINDI, word, (HI_DETECT,))
    fixed = hi_dict.suggest(word)
    if fixed is not None:
        return TaggedToken(word, fixed, LanguageTag.DEV_HINDI, fixed, (HI_SUGGEST,))
    if has_devanagari(word):
        return TaggedToken(word, word, LanguageTag.OOV, None, (DEVANAGARI_UNKNOWN,))

    w_eng = None
    if en_dict.detect(word):
        w_eng = word
        trace.append(EN_DETECT)
    else:
        w_eng = en_dict.suggest(word)
        if w_eng is not None:
            trace.append(EN_SUGGEST)

    w_hin = kb.lookup(word)
    if w_hin is not None:
        trace.append(KB_HIT)

    if w_eng is not None and w_hin is None:
        trace.append(ENGLISH_ONLY)
    elif w_eng is None and w_hin is not None:
        trace.append(HINDI_ONLY)
    elif w_eng is not None and w_hin is not None:
        if freq_en.frequency(w_eng) > freq_hi.frequency(word):
            trace.append(FREQ_ENGLISH)
        else:
            trace.append(FREQ_HINDI)
    else:
        trace.append(UNKNOWN)

    tag = replay_trace(trace)
    if tag is LanguageTag.ENGLISH:
        return TaggedToken(word, w_eng, tag, None, tuple(trace))
    if tag is LanguageTag.ROM_HINDI:
        return TaggedToken(word, word, tag, w_hin, tuple(trace))
    return TaggedToken(word, word, tag, None, tuple(trace))


_OUTCOMES = {
    HI_DETECT: LanguageTag.DEV_HINDI,
    HI_SUGGEST: LanguageTag.DEV_HINDI,
    DEVANAGARI_UNKNOWN: LanguageTag.OOV,
    ENGLISH_ONLY: LanguageTag.ENGLISH,
    FREQ_ENGLISH: LanguageTag.ENGLISH,
    HINDI_ONLY: LanguageTag.ROM_HINDI,
    FREQ_HINDI: LanguageTag.ROM_HINDI,
    UNKNOWN: LanguageTag.OOV,
    RESCUED: LanguageTag.ROM_HINDI,
    NOT_RESCUED: LanguageTag.NA,
}


def replay_trace(trace: Sequence[str]) -> LanguageTag:
    """Recompute the tag a decision trace leads to.

    Checks that the recorded evidence is consistent with the final branch,
    e.g. a frequency comparison requires both an English and a KB reading.
    """
    if not trace:
        raise ValueError("empty trace")
    final = trace[-1]
    if final in (RESCUED, NOT_RESCUED):
        if replay_trace(trace[:-1]) is not LanguageTag.OOV:
            raise ValueError(f"rescue step on a non-OOV trace {list(trace)}")
        return _OUTCOMES[final]
    english = EN_DETECT in trace or EN_SUGGEST in trace
    hindi = KB_HIT in trace
    expected = {
        ENGLISH_ONLY: english and not hindi,
        HINDI_ONLY: hindi and not english,
        FREQ_ENGLISH: english and hindi,
        FREQ_HINDI: english and hindi,
        UNKNOWN: not english and not hindi,
    }
    if final in expected and not expected[final]:
        raise ValueError(f"inconsistent trace {list(trace)}")
    if final not in _OUTCOMES:
        raise ValueError(f"unknown branch {final!r}")
    return _OUTCOMES[final]


def tag_text(text: str, resources: Resources) -> list[TaggedToken]:
    r = resources
    return [tag_word(tok, r.kb, r.en_dict, r.hi_dict, r.freq_en, r.freq_hi) for tok in text.split()]


def tag_post(post: Post, resources: Resources) -> list[TaggedToken]:
    """Tag each whitespace token of a cleaned post, preserving order."""
    return tag_text(post.text, resources)
