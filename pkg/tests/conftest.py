from importlib import resources
from pathlib import Path

import pytest

from moh.knowledge_base import load_kb
from moh.langid import Resources

FIXTURES = Path(str(resources.files("moh.data.fixtures")))


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def resources_fx() -> Resources:
    return Resources.load(
        kb=FIXTURES / "kb.tsv",
        en_dict=FIXTURES / "en_words.txt",
        hi_dict=FIXTURES / "hi_words.txt",
        freq_en=FIXTURES / "freq_en.tsv",
        freq_hi=FIXTURES / "freq_hi.tsv",
        profanity=FIXTURES / "profanity.tsv",
    )


@pytest.fixture(scope="session")
def kb_fx():
    return load_kb(FIXTURES / "kb.tsv")
