import pytest
from hypothesis import given, settings, strategies as st

from moh.corpus import is_latin_letter
from moh.knowledge_base import KnowledgeBase
from moh.langid import LanguageTag, TaggedToken, tag_text
from moh.normalizer import MoHNormalizer
from moh.rescue import rescue_tokens
from moh.transliterate import (
    CharRule,
    CharRuleTable,
    ContractError,
    TransformVariant,
    char_translit,
    moh_transform,
    simulate,
)

TWEET = "ramu suchha journalist h haramkor nahi"


def rescued(text, resources):
    return rescue_tokens(tag_text(text, resources), resources.kb)


def test_tamatar_by_hand():
    # t -> त, a after consonant -> inherent (nothing), m -> म, ... r -> र
    assert char_translit("tamatar") == "त" + "म" + "त" + "र"


def test_vowel_signs_and_digraphs():
    assert char_translit("ramu") == "र" + "म" + "ु"
    assert char_translit("suchha") == "स" + "ु" + "छ"
    assert char_translit("aam") == "आम"
    assert char_translit("kheti") == "ख" + "े" + "त" + "ि"


def test_empty_word():
    assert char_translit("") == ""


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet=st.characters(codec="latin-1", categories=("Ll", "Lu", "Nd")), min_size=1, max_size=15))
def test_output_has_no_latin(word):
    out = char_translit(word)
    assert out
    assert not any(is_latin_letter(ch) for ch in out)


def test_rule_table_validation():
    base = [CharRule(c, "क") for c in "abcdefghijklmnopqrstuvwxyz"]
    assert len(CharRuleTable(base)) == 26
    with pytest.raises(ValueError, match="single-letter"):
        CharRuleTable(base[:-1])
    with pytest.raises(ValueError):
        CharRuleTable(base + [CharRule("abcd", "क")])
    with pytest.raises(ValueError):
        CharRuleTable(base + [CharRule("Ab", "क")])
    with pytest.raises(ValueError):
        CharRuleTable(base + [CharRule("ab", "ab")])


def test_load_rule_file(tmp_path):
    lines = [f"{c}\tक" for c in "abcdefghijklmnopqrstuvwxyz"] + ["kk\tख"]
    path = tmp_path / "rules.tsv"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    table = CharRuleTable.load(path)
    assert char_translit("kkk", table) == "खक"


def test_moh_row(resources_fx):
    tokens = rescued(TWEET, resources_fx)
    assert moh_transform(tokens) == "रामू सच्चा journalist है हरामखोर नहीं"


def test_spelling_variants_collapse(resources_fx):
    a = moh_transform(rescued("iss lye", resources_fx))
    b = moh_transform(rescued("iss liye", resources_fx))
    assert a == b == "इस लिए"


def test_all_english_kept(resources_fx):
    text = "check the weather today"
    assert moh_transform(rescued(text, resources_fx)) == text


def test_oov_is_a_contract_error():
    with pytest.raises(ContractError):
        moh_transform([TaggedToken("qq", "qq", LanguageTag.OOV)])


def test_na_passes_through(resources_fx):
    assert moh_transform(rescued("qwxz", resources_fx)) == "qwxz"


def test_variants_on_tweet(resources_fx):
    tokens = rescued(TWEET, resources_fx)
    prof = resources_fx.profanity_kb
    indic = simulate("indic", tokens, prof).split()
    indic_p = simulate("indic-p", tokens, prof).split()
    skip = simulate("indic-skip-en-p", tokens, prof).split()
    assert not any(is_latin_letter(ch) for word in indic for ch in word)
    assert indic[4] == char_translit("haramkor") != "हरामखोर"
    assert indic_p[4] == "हरामखोर" and indic_p[2] == char_translit("journalist")
    assert skip[2] == "journalist" and skip[4] == "हरामखोर"
    assert simulate("moh", tokens, prof) == moh_transform(tokens)


def test_indic_on_devanagari_is_identity(resources_fx):
    text = "नमस्ते मैं तुम"
    tokens = tag_text(text, resources_fx)
    assert simulate(TransformVariant.INDIC, tokens, resources_fx.profanity_kb) == text


def test_indic_p_equals_indic_without_profanity(resources_fx, fixtures_dir):
    from moh.corpus import clean_posts, load_posts

    prof = resources_fx.profanity_kb
    for post in clean_posts(load_posts(fixtures_dir / "corpus.csv")):
        tokens = rescued(post.text, resources_fx)
        if any(t.surface in prof for t in tokens):
            continue
        assert simulate("indic-p", tokens, prof) == simulate("indic", tokens, prof)


vocab = ["ramu", "suchha", "journalist", "h", "haramkor", "nahi", "tum", "namste", "qwxz", "नमस्ते", "weather", "lye"]


@settings(max_examples=100, deadline=None)
@given(words=st.lists(st.sampled_from(vocab), max_size=10), variant=st.sampled_from(list(TransformVariant)))
def test_token_count_and_order(resources_fx, words, variant):
    tokens = rescued(" ".join(words), resources_fx)
    out = simulate(variant, tokens, resources_fx.profanity_kb).split()
    assert len(out) == len(words)
    singles = [simulate(variant, [tok], resources_fx.profanity_kb) for tok in tokens]
    assert out == singles


def test_collapse_through_normalizer(resources_fx):
    norm = MoHNormalizer(resources_fx).fit()
    a, b = norm.transform(["iss lye", "Iss   LIYE!!"])
    assert a == b
