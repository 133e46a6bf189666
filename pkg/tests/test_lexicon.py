import pytest
from hypothesis import given, settings, strategies as st

from moh.lexicon import Dictionary, FrequencyModel, Language, LexiconError, frequency

from oracles import naive_lev


def en(*words, **kw):
    return Dictionary.from_words(Language.ENGLISH, words, **kw)


def test_detect():
    d = en("weather", "Problem")
    assert d.detect("weather")
    assert d.detect("WEATHER")
    assert d.detect("problem")
    assert not d.detect("")
    assert not d.detect("mausam")
    hi = Dictionary.from_words(Language.DEVANAGARI_HINDI, ["नमस्ते"])
    assert hi.detect("नमस्ते")


def test_suggest_examples():
    assert en("hello", "help").suggest("helo") == "hello"
    assert en("hello", "help", "world").suggest("xyzzy") is None
    assert en("cat", "car").suggest("caw") == "car"


def test_suggest_prefers_frequent_on_ties():
    freq = FrequencyModel(Language.ENGLISH, {"cat": 10, "car": 2})
    assert en("cat", "car", frequencies=freq).suggest("caw") == "cat"


def test_suggest_stays_in_script():
    hi = Dictionary.from_words(Language.DEVANAGARI_HINDI, ["क", "है"])
    assert hi.suggest("h") is None
    assert hi.suggest("ह") == "क" or hi.suggest("ह") == "है"
    assert en("a", "i").suggest("क") is None


def test_invalid_words_rejected():
    with pytest.raises(LexiconError):
        Dictionary.from_words(Language.DEVANAGARI_HINDI, ["namaste"])
    with pytest.raises(LexiconError):
        en("नमस्ते")


words = st.lists(st.text(alphabet="abcd", min_size=1, max_size=6), min_size=1, max_size=25)


@settings(max_examples=200, deadline=None)
@given(words, st.text(alphabet="abcd", min_size=1, max_size=6), st.integers(1, 2))
def test_suggest_against_brute_force(vocab, word, cap):
    d = en(*vocab, max_suggest_distance=cap)
    got = d.suggest(word)
    scored = sorted((naive_lev(word, w), w) for w in set(vocab))
    within = [(dist, w) for dist, w in scored if dist <= cap]
    if not within:
        assert got is None
    else:
        assert got == within[0][1]
        assert naive_lev(word, got) <= cap


def test_frequency_file(tmp_path):
    path = tmp_path / "f.tsv"
    path.write_text("tum\t9500\nmain\t300\nhai\t200\n", encoding="utf-8")
    model = FrequencyModel.load(path, Language.DEVANAGARI_HINDI)
    assert frequency(model, "tum") == 9500
    assert frequency(model, "unseen") == 0
    assert sum(model.counts.values()) == 9500 + 300 + 200


def test_frequency_rejects_negative(tmp_path):
    path = tmp_path / "f.tsv"
    path.write_text("tum\t-1\n", encoding="utf-8")
    with pytest.raises(LexiconError, match=":1:"):
        FrequencyModel.load(path, Language.ENGLISH)


def test_fixture_dictionaries(fixtures_dir):
    d = Dictionary.load(fixtures_dir / "en_words.txt", Language.ENGLISH)
    assert d.detect("journalist") and d.detect("what's")
    h = Dictionary.load(fixtures_dir / "hi_words.txt", Language.DEVANAGARI_HINDI)
    assert h.detect("नमस्ते") and not h.detect("सशक्त")
