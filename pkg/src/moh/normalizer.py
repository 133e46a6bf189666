"""Estimator front-end chaining cleaning, language ID, OOV rescue and transliteration."""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .corpus import clean_text
from .langid import LanguageTag, Resources, TaggedToken, tag_word
from .rescue import RescueConfig, rescue_oov
from .transliterate import CharRuleTable, TransformVariant, simulate


class MoHNormalizer(TransformerMixin, BaseEstimator):
    """Map code-switched posts to English + Devanagari text.

    Stateless apart from a per-word memo of tagging results, so ``fit`` only
    validates the parameters. Works as the first step of an sklearn
    ``Pipeline`` in front of :class:`moh.features.SurfaceVectorizer`.

    Parameters
    ----------
    resources : Resources
        Knowledge base, dictionaries, frequency tables and profanity list.
    variant : {"moh", "indic", "indic-p", "indic-skip-en-p"}
    threshold : float
        Similarity a rescued OOV word must strictly exceed.
    rules : CharRuleTable or None
        Character rules for the indic variants; None uses the bundled table.
    clean : bool
        Run :func:`moh.corpus.clean_text` on each input first.
    """

    def __init__(self, resources=None, variant="moh", threshold=0.70, rules=None, clean=True):
        self.resources = resources
        self.variant = variant
        self.threshold = threshold
        self.rules = rules
        self.clean = clean

    def fit(self, X=None, y=None):
        if not isinstance(self.resources, Resources):
            raise TypeError("resources must be a moh.langid.Resources instance")
        self.variant_ = TransformVariant(self.variant)
        self.rescue_config_ = RescueConfig(self.threshold)
        self.rules_ = self.rules if self.rules is not None else CharRuleTable.default()
        self.memo_: dict[str, TaggedToken] = {}
        return self

    def _token(self, word: str) -> TaggedToken:
        hit = self.memo_.get(word)
        if hit is None:
            r = self.resources
            hit = tag_word(word, r.kb, r.en_dict, r.hi_dict, r.freq_en, r.freq_hi)
            if self.variant_ is TransformVariant.MOH and hit.tag is LanguageTag.OOV:
                hit = rescue_oov(hit, r.kb, self.rescue_config_)
            self.memo_[word] = hit
        return hit

    def tag(self, text: str) -> list[TaggedToken]:
        """Tokens of one document; OOV tokens are already rescued for the MOH variant."""
        check_is_fitted(self, "memo_")
        if self.clean:
            text = clean_text(text)
        return [self._token(word) for word in text.split()]

    def tag_unrescued(self, text: str) -> list[TaggedToken]:
        check_is_fitted(self, "memo_")
        if self.clean:
            text = clean_text(text)
        r = self.resources
        return [tag_word(w, r.kb, r.en_dict, r.hi_dict, r.freq_en, r.freq_hi) for w in text.split()]

    def transform_one(self, text: str) -> str:
        tokens = self.tag(text)
        return simulate(self.variant_, tokens, self.resources.profanity_kb, self.rules_)

    def transform(self, X):
        return [self.transform_one(text) for text in X]

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.input_tags.string = True
        tags.input_tags.two_d_array = False
        return tags
