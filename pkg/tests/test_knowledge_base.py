import pytest

from moh.knowledge_base import (
    KbSources,
    KnowledgeBase,
    KnowledgeBaseError,
    build_kb,
    kb_lookup,
    load_kb,
    save_kb,
)
from moh.lexicon import Dictionary, Language
from moh.synthetic import random_kb

EN = Language.ENGLISH
HI = Language.DEVANAGARI_HINDI


def write(tmp_path, name, lines):
    path = tmp_path / name
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    return path


def test_pruning_example(tmp_path):
    pairs = write(tmp_path, "p.tsv", ["namaste\tनमस्ते", "empowered\tसशक्त"])
    kb, report = build_kb(
        KbSources([pairs]),
        Dictionary.from_words(EN, ["empowered"]),
        Dictionary.from_words(HI, ["नमस्ते"]),
    )
    assert dict(kb) == {"namaste": "नमस्ते"}
    assert report.pruned == 1 and report.pruned_keys == ["empowered"]


def test_english_key_with_hindi_value_survives(tmp_path):
    pairs = write(tmp_path, "p.tsv", ["tum\tतुम"])
    kb, report = build_kb(
        KbSources([pairs]), Dictionary.from_words(EN, ["tum"]), Dictionary.from_words(HI, ["तुम"])
    )
    assert "tum" in kb and report.pruned == 0


def test_empty_sources(tmp_path):
    empty = write(tmp_path, "e.tsv", [])
    kb, report = build_kb(KbSources([empty]), Dictionary.from_words(EN, []), Dictionary.from_words(HI, []))
    assert len(kb) == 0
    assert all(v == 0 for v in report.counts().values())


def test_first_file_wins(tmp_path):
    a = write(tmp_path, "a.tsv", ["hai\tहै", "kya\tक्या"])
    b = write(tmp_path, "b.tsv", ["hai\tहैं", "kya\tक्या", "log\tलोग"])
    kb, report = build_kb(KbSources([a, b]), Dictionary.from_words(EN, []), Dictionary.from_words(HI, []))
    assert kb["hai"] == "है"
    assert report.conflicts == 1
    assert report.loaded == 3


def test_sentence_alignment(tmp_path):
    s = write(tmp_path, "s.tsv", [
        "वह अच्छा आदमी है\twoh accha aadmi hai",
        "mujhe paani\tमुझे पानी चाहिए",
        "no devanagari\tat all",
    ])
    kb, report = build_kb(KbSources(sentence_pair_files=[s]), Dictionary.from_words(EN, []), Dictionary.from_words(HI, []))
    assert dict(kb) == {"woh": "वह", "accha": "अच्छा", "aadmi": "आदमी", "hai": "है"}
    assert report.from_sentences == 4
    assert report.skipped_unaligned == 1
    assert report.malformed == 1


def test_unreadable_source_named(tmp_path):
    missing = tmp_path / "nope.tsv"
    with pytest.raises(KnowledgeBaseError, match="nope.tsv"):
        build_kb(KbSources([missing]), Dictionary.from_words(EN, []), Dictionary.from_words(HI, []))


def test_fixture_build_counts(fixtures_dir):
    """Counts worked out by reading the fixture files line by line.

    pairs_fire: 31 valid pairs + 1 malformed line; pairs_xlit: 14 pairs, one of
    which (hai) clashes with a different value; profanity: 3 pairs. Sentences:
    2 aligned pairs contribute woh/aadmi and mujhe/paani/chahiye, 1 pair has
    unequal token counts. empowered is the only English-only key.
    """
    en = Dictionary.load(fixtures_dir / "en_words.txt", EN)
    hi = Dictionary.load(fixtures_dir / "hi_words.txt", HI)
    kb, report = build_kb(
        KbSources(
            [fixtures_dir / "pairs_fire.tsv", fixtures_dir / "pairs_xlit.tsv"],
            [fixtures_dir / "sentences.tsv"],
            fixtures_dir / "profanity.tsv",
        ),
        en,
        hi,
    )
    assert report.loaded == 47
    assert report.from_sentences == 5
    assert report.skipped_unaligned == 1
    assert report.conflicts == 1
    assert report.malformed == 1
    assert report.pruned == 1
    assert report.final == 51 == len(kb)
    assert kb == load_kb(fixtures_dir / "kb.tsv")
    for key in kb:
        assert not (en.detect(key) and not hi.detect(kb[key]))


def test_lookup(kb_fx):
    assert kb_lookup(kb_fx, "namaste") == "नमस्ते"
    assert kb_lookup(kb_fx, "zzzz") is None
    assert kb_lookup(kb_fx, "haramkor") == "हरामखोर"


def test_round_trip(tmp_path):
    kb = KnowledgeBase({"a": "अ", "namaste": "नमस्ते", "tum": "तुम"})
    save_kb(kb, tmp_path / "kb.tsv")
    assert load_kb(tmp_path / "kb.tsv") == kb


def test_round_trip_1000(tmp_path):
    kb = random_kb(1000, seed=3)
    save_kb(kb, tmp_path / "kb.tsv")
    back = load_kb(tmp_path / "kb.tsv")
    assert dict(back) == dict(kb) and len(back) == 1000


def test_load_rejects_non_devanagari(tmp_path):
    path = write(tmp_path, "kb.tsv", ["namaste\tनमस्ते", "hello\thello"])
    with pytest.raises(KnowledgeBaseError, match=":2:"):
        load_kb(path)


def test_load_large(tmp_path):
    lines = [f"k{i:06d}x\tक{i}" for i in range(72635)]
    lines = ["".join(ch for ch in line.split("\t")[0] if not ch.isdigit()) for line in lines]
    # keys must be distinct; use base-26 letters instead of digits
    def key(i):
        s = ""
        for _ in range(4):
            s += "abcdefghijklmnopqrstuvwxyz"[i % 26]
            i //= 26
        return s
    path = write(tmp_path, "big.tsv", [f"{key(i)}\tक" for i in range(72635)])
    assert len(load_kb(path)) == 72635


def test_length_index_partitions_keys():
    kb = random_kb(500, seed=1)
    buckets = kb.length_index
    seen = [k for keys in buckets.values() for k in keys]
    assert sorted(seen) == sorted(kb) and len(seen) == len(set(seen))
    for length, keys in buckets.items():
        assert all(len(k) == length for k in keys)
        assert list(keys) == sorted(keys)


def test_invariants_enforced():
    with pytest.raises(KnowledgeBaseError):
        KnowledgeBase({"two words": "दो"})
    with pytest.raises(KnowledgeBaseError):
        KnowledgeBase({"ok": "ok"})
    assert "namaste" in KnowledgeBase({"Namaste": "नमस्ते"})
