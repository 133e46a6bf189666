"""Assembling normalized output text and the character-level simulation variants."""

from __future__ import annotations

import functools
import unicodedata
from dataclasses import dataclass
from enum import Enum
from importlib import resources as importlib_resources
from pathlib import Path
from typing import Optional, Sequence

from .corpus import has_devanagari, is_latin_letter
from .knowledge_base import KnowledgeBase
from .langid import LanguageTag, TaggedToken


_PLACEHOLDER = "\u0970"


class TransformVariant(str, Enum):
    MOH = "moh"
    INDIC = "indic"
    INDIC_P = "indic-p"
    INDIC_SKIP_EN_P = "indic-skip-en-p"


class ContractError(ValueError):
    """A stage received input that violates its precondition."""


@dataclass(frozen=True)
class CharRule:
    pattern: str
    replacement: str
    # Vowel sign used right after a consonant; None for consonant rules.
    sign: Optional[str] = None


class CharRuleTable:
    """Greedy longest-match Latin to Devanagari rules.

    Vowel rules may carry a dependent vowel sign that replaces the
    independent vowel when the previous rule emitted a consonant.
    """

    def __init__(self, rules: Sequence[CharRule]):
        self.rules = tuple(rules)
        self._by_pattern: dict[str, CharRule] = {}
        for rule in self.rules:
            p = rule.pattern
            if not (1 <= len(p) <= 3) or p != p.lower() or not p.isascii() or not p.isalpha():
                raise ValueError(f"bad rule pattern {p!r}")
            if not has_devanagari(rule.replacement):
                raise ValueError(f"rule {p!r} must produce Devanagari")
            self._by_pattern.setdefault(p, rule)
        missing = [c for c in "abcdefghijklmnopqrstuvwxyz" if c not in self._by_pattern]
        if missing:
            raise ValueError(f"rule table has no single-letter rule for {''.join(missing)}")
        self.max_len = max(len(p) for p in self._by_pattern)

    def __len__(self) -> int:
        return len(self.rules)

    @classmethod
    def load(cls, path: str | Path) -> "CharRuleTable":
        with Path(path).open(encoding="utf-8") as fh:
            text = fh.read()
        return cls(_parse_rules(text, str(path)))

    @classmethod
    def default(cls) -> "CharRuleTable":
        return _default_table()

    def transliterate(self, word: str) -> str:
        decomposed = unicodedata.normalize("NFD", word.lower())
        chars = "".join(ch for ch in decomposed if not unicodedata.combining(ch))
        out: list[str] = []
        after_consonant = False
        i = 0
        while i < len(chars):
            for size in range(min(self.max_len, len(chars) - i), 0, -1):
                rule = self._by_pattern.get(chars[i : i + size])
                if rule is not None:
                    break
            else:
                ch = chars[i]
                if not is_latin_letter(ch) and ch != "'":
                    out.append(ch)
                after_consonant = False
                i += 1
                continue
            if rule.sign is not None:
                out.append(rule.sign if after_consonant else rule.replacement)
                after_consonant = False
            else:
                out.append(rule.replacement)
                after_consonant = True
            i += size
        if not out and chars:
            # letters without any rule (e.g. "ß") still yield one token
            out.append(_PLACEHOLDER)
        return unicodedata.normalize("NFC", "".join(out))


def _parse_rules(text: str, source: str) -> list[CharRule]:
    rules = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) == 2:
            rules.append(CharRule(parts[0], unicodedata.normalize("NFC", parts[1])))
        elif len(parts) == 3:
            rules.append(
                CharRule(parts[0], unicodedata.normalize("NFC", parts[1]), unicodedata.normalize("NFC", parts[2]))
            )
        else:
            raise ValueError(f"{source}:{lineno}: expected pattern<TAB>replacement")
    return rules


@functools.cache
def _default_table() -> CharRuleTable:
    text = importlib_resources.files("moh.data").joinpath("char_rules.tsv").read_text("utf-8")
    return CharRuleTable(_parse_rules(text, "char_rules.tsv"))


def char_translit(word: str, rules: CharRuleTable | None = None) -> str:
    return (rules or CharRuleTable.default()).transliterate(word)


def moh_output(token: TaggedToken) -> str:
    if token.tag is LanguageTag.ROM_HINDI:
        return token.devanagari
    if token.tag in (LanguageTag.DEV_HINDI, LanguageTag.ENGLISH):
        return token.corrected
    if token.tag is LanguageTag.NA:
        return token.surface
    raise ContractError(f"token {token.surface!r} is still tagged OOV; run rescue first")


def moh_transform(tokens: Sequence[TaggedToken]) -> str:
    """Replace Roman-Hindi tokens by Devanagari and keep everything else in place."""
    return " ".join(moh_output(tok) for tok in tokens)


def _is_latin_token(word: str) -> bool:
    return not has_devanagari(word) and any(is_latin_letter(ch) for ch in word)


def simulate(
    variant: TransformVariant | str,
    tokens: Sequence[TaggedToken],
    profanity_kb: KnowledgeBase | None = None,
    rules: CharRuleTable | None = None,
) -> str:
    """Render tagged tokens under one of the transliteration variants.

    ``indic`` transliterates every Latin token character by character;
    ``indic-p`` first maps profanity-list words through the profanity KB;
    ``indic-skip-en-p`` additionally leaves ENGLISH-tagged tokens untouched.
    """
    variant = TransformVariant(variant)
    if variant is TransformVariant.MOH:
        return moh_transform(tokens)
    rules = rules or CharRuleTable.default()
    profanity_kb = profanity_kb if profanity_kb is not None else KnowledgeBase()
    out = []
    for tok in tokens:
        word = tok.surface
        if variant is not TransformVariant.INDIC and word in profanity_kb:
            out.append(profanity_kb[word])
        elif variant is TransformVariant.INDIC_SKIP_EN_P and tok.tag is LanguageTag.ENGLISH:
            out.append(word)
        elif _is_latin_token(word):
            out.append(rules.transliterate(word))
        else:
            out.append(word)
    return " ".join(out)
