"""Normalization of Hindi-English code-switched text.

Word-level language identification, Levenshtein rescue of misspelt Roman
Hindi, Roman to Devanagari mapping that leaves English words alone, and a
small surface-feature classification harness.
"""

__version__ = "0.1.0"

from .classify import EvalReport, MultinomialNB, OvRLogisticRegression, evaluate, make_split
from .corpus import CorpusSchema, Post, clean_text, load_posts
from .distance import lev_distance, lev_similarity
from .features import SurfaceVectorizer, fit_vocabulary, transform
from .knowledge_base import KbSources, KnowledgeBase, build_kb, kb_lookup, load_kb, save_kb
from .langid import LanguageTag, Resources, TaggedToken, tag_post, tag_word
from .lexicon import Dictionary, FrequencyModel, Language
from .normalizer import MoHNormalizer
from .rescue import RescueConfig, fuzzy_candidates, rescue_oov
from .transliterate import CharRuleTable, TransformVariant, char_translit, moh_transform, simulate

__all__ = [
    "CharRuleTable", "CorpusSchema", "Dictionary", "EvalReport", "FrequencyModel", "KbSources",
    "KnowledgeBase", "Language", "LanguageTag", "MoHNormalizer", "MultinomialNB",
    "OvRLogisticRegression", "Post", "RescueConfig", "Resources", "SurfaceVectorizer",
    "TaggedToken", "TransformVariant", "build_kb", "char_translit", "clean_text", "evaluate",
    "fit_vocabulary", "fuzzy_candidates", "kb_lookup", "lev_distance", "lev_similarity",
    "load_kb", "load_posts", "make_split", "moh_transform", "rescue_oov", "save_kb",
    "simulate", "tag_post", "tag_word", "transform",
]
